#include "bigrel/kernel.hpp"

#include <algorithm>
#include <sstream>

namespace bigrel {

void validate_rule(const RewriteRule& r) {
    std::set<std::string> bound;
    for (const auto& a : r.lhs) a.collect_vars(bound);
    for (const auto& v : r.guard_binds) bound.insert(v);
    for (const auto& [v, ns] : r.fresh) bound.insert(v);
    std::set<std::string> used;
    for (const auto& a : r.rhs) a.collect_vars(used);
    for (const auto& v : used)
        if (!bound.count(v))
            throw std::invalid_argument("rule " + r.label + ": rhs variable " + v + " unbound");
}

NameSym NameSupply::fresh(Ns ns) {
    switch (ns) {
        case Ns::node: return fresh(ns, "n");
        case Ns::edge: return fresh(ns, "e");
        case Ns::name: return fresh(ns, "x");
        case Ns::ctrl: return fresh(ns, "k");
        case Ns::bigraph: return fresh(ns, "b");
    }
    return fresh(ns, "u");
}

NameSym NameSupply::fresh(Ns ns, const std::string& hint) {
    auto& n = counters_[{ns, hint}];
    return NameSym{ns, hint + "#" + std::to_string(n++)};
}

namespace {

bool match_atom(const Atom& pattern, const Atom& ground, Subst& s) {
    if (pattern.pred != ground.pred || pattern.args.size() != ground.args.size()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i)
        if (!match_term(pattern.args[i], ground.args[i], s)) return false;
    return true;
}

}  // namespace

std::vector<Match> Engine::match_rule(const RewriteRule& rule, const Multiset& state) const {
    std::vector<std::pair<Atom, std::int64_t>> pool(state.counts().begin(), state.counts().end());
    std::vector<std::int64_t> used(pool.size(), 0);
    std::vector<Match> out;
    std::set<std::pair<std::string, std::string>> seen;  // (subst text, consumed text)

    std::function<void(std::size_t, const Subst&)> go = [&](std::size_t i, const Subst& s) {
        if (i == rule.lhs.size()) {
            Subst full = s;
            if (rule.guard && !rule.guard(full)) return;
            Multiset consumed;
            for (std::size_t k = 0; k < pool.size(); ++k)
                if (used[k] > 0) consumed.add(pool[k].first, used[k]);
            auto key = std::make_pair(full.to_string(), consumed.to_text());
            if (seen.insert(key).second) out.push_back(Match{std::move(full), std::move(consumed)});
            return;
        }
        const Atom& pat = rule.lhs[i];
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (used[k] >= pool[k].second) continue;
            Subst s2 = s;
            if (!match_atom(pat, pool[k].first, s2)) continue;
            ++used[k];
            go(i + 1, s2);
            --used[k];
        }
    };
    go(0, Subst{});

    std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
        auto ta = a.consumed.to_text(), tb = b.consumed.to_text();
        if (ta != tb) return ta < tb;
        return a.subst < b.subst;
    });
    return out;
}

Multiset Engine::apply(const RewriteRule& rule, const Multiset& state, const Match& m) {
    Multiset next = state;
    if (!next.subtract(m.consumed))
        throw StaleMatchError("rule " + rule.label + ": consumed atoms are not in the state");
    Subst s = m.subst;
    for (const auto& [v, ns] : rule.fresh) {
        if (!s.bind(v, Term::sym(supply_.fresh(ns))))
            throw std::logic_error("fresh variable " + v + " already bound");
    }
    for (const auto& tmpl : rule.rhs) {
        Atom a{tmpl.pred, {}};
        a.args.reserve(tmpl.args.size());
        for (const auto& t : tmpl.args) a.args.push_back(s.apply(t));
        next.add(std::move(a));
    }
    return next;
}

RunResult Engine::run(std::span<const RewriteRule> rules, Multiset state, const Strategy& strategy,
                      std::uint64_t fuel) {
    Trace trace;
    trace.initial_digest = state.digest();
    std::mt19937_64 rng(strategy.seed);

    for (std::uint64_t step = 0;; ++step) {
        std::vector<RuleChoice> choices;
        if (strategy.kind == Strategy::Kind::first) {
            for (const auto& r : rules) {
                auto ms = match_rule(r, state);
                if (!ms.empty()) {
                    choices.push_back(RuleChoice{&r, std::move(ms.front())});
                    break;
                }
            }
        } else {
            for (const auto& r : rules)
                for (auto& m : match_rule(r, state)) choices.push_back(RuleChoice{&r, std::move(m)});
        }
        if (choices.empty()) break;
        if (step == fuel) {
            trace.fuel_exhausted = true;
            break;
        }

        std::size_t pick = 0;
        if (strategy.kind == Strategy::Kind::random) {
            pick = std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng);
        } else if (strategy.kind == Strategy::Kind::callback) {
            auto c = strategy.choose(choices, state);
            if (!c) break;
            if (*c >= choices.size()) throw std::out_of_range("strategy callback choice");
            pick = *c;
        }

        const RewriteRule& rule = *choices[pick].rule;
        const Match& m = choices[pick].match;
        Multiset before = state;
        state = apply(rule, state, m);

        Step s;
        s.label = rule.label;
        s.subst = m.subst;
        s.consumed = m.consumed;
        // produced = state - (before - consumed)
        Multiset rest = before;
        rest.subtract(m.consumed);
        Multiset produced = state;
        produced.subtract(rest);
        s.produced = std::move(produced);
        trace.steps.push_back(std::move(s));
    }

    trace.final_digest = state.digest();
    return RunResult{std::move(state), std::move(trace)};
}

namespace {

std::string join_atoms(const Multiset& ms) {
    std::string s;
    bool first = true;
    for (const auto& a : ms.expand()) {
        if (!first) s += ';';
        first = false;
        s += a.to_string();
    }
    return s;
}

}  // namespace

std::string Trace::to_text() const {
    std::ostringstream os;
    os << "trace 1 initial=" << initial_digest << " steps=" << steps.size()
       << (fuel_exhausted ? " fuel-exhausted" : "") << '\n';
    for (const auto& s : steps)
        os << s.label << '\t' << s.subst.to_string() << '\t' << join_atoms(s.consumed) << '\t'
           << join_atoms(s.produced) << '\n';
    os << "final=" << final_digest << '\n';
    return os.str();
}

Multiset replay(const Multiset& initial, const Trace& trace) {
    Multiset state = initial;
    for (const auto& s : trace.steps) {
        if (!state.subtract(s.consumed))
            throw std::runtime_error("replay: step " + s.label + " consumed atoms missing");
        state += s.produced;
    }
    return state;
}

}  // namespace bigrel
