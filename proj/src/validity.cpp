#include "bigrel/validity.hpp"

#include <sstream>

namespace bigrel {
namespace rel {

namespace {

Term v(const char* name) { return Term::var(name); }

// Every rule carries the bigraph identifier as a trailing variable so
// several bigraphs can sit in one kernel state.
Atom at(const char* pred, std::vector<Term> args) {
    args.push_back(Term::var("Bi"));
    return Atom{pred, std::move(args)};
}

}  // namespace

ValidityRuleSet validity_rules(const Signature& sig) {
    ValidityRuleSet out;
    auto add = [&](RewriteRule r) {
        validate_rule(r);
        out.rules.push_back(std::move(r));
    };

    // Base cases: empty roots, outer names and edges retire.
    add(RewriteRule{"dr",
                    {at(p_is_root, {v("R")}), at(p_has_child_p, {dst_r(v("R")), Term::nat(0)})},
                    {},
                    nullptr,
                    {},
                    {}});
    add(RewriteRule{"do",
                    {at(p_is_o_name, {v("O")}), at(p_has_child_l, {dst_o(v("O")), Term::nat(0)})},
                    {},
                    nullptr,
                    {},
                    {}});
    add(RewriteRule{"de",
                    {at(p_is_e_name, {v("E")}), at(p_has_child_l, {dst_e(v("E")), Term::nat(0)})},
                    {},
                    nullptr,
                    {},
                    {}});

    // Last port of a node.
    add(RewriteRule{"lgpsz",
                    {at(p_is_port, {v("P")}), at(p_lp, {v("P"), v("A")}),
                     at(p_vp, {v("A"), Term::nat(1)}), at(p_link, {src_p(v("P")), v("D")}),
                     at(p_has_child_l, {v("D"), Term::succ(v("N"))})},
                    {at(p_has_child_l, {v("D"), v("N")})},
                    nullptr,
                    {},
                    {}});
    // Inner name.
    add(RewriteRule{"lgi",
                    {at(p_is_i_name, {v("I")}), at(p_link, {src_i(v("I")), v("D")}),
                     at(p_has_child_l, {v("D"), Term::succ(v("N"))})},
                    {at(p_has_child_l, {v("D"), v("N")})},
                    nullptr,
                    {},
                    {}});
    // Site. (Spelled pgs in the forward-chaining program; same rule.)
    add(RewriteRule{"lgs",
                    {at(p_is_site, {v("S")}), at(p_prnt, {src_s(v("S")), v("D")}),
                     at(p_has_child_p, {v("D"), Term::succ(v("N"))})},
                    {at(p_has_child_p, {v("D"), v("N")})},
                    nullptr,
                    {},
                    {}});

    // Childless node whose control has arity 0.
    RewriteRule pgnz{"pgnz",
                     {at(p_is_node, {v("A")}), at(p_has_child_p, {dst_n(v("A")), Term::nat(0)}),
                      at(p_prnt, {src_n(v("A")), v("D")}),
                      at(p_has_child_p, {v("D"), Term::succ(v("N"))}), at(p_lc, {v("A"), v("K")})},
                     {at(p_has_child_p, {v("D"), v("N")})},
                     nullptr,
                     {},
                     {}};
    pgnz.guard = [sig](Subst& s) {
        const Term* k = s.lookup("K");
        return k && sig.has(k->symbol().id) && sig.arity(k->symbol().id) == 0;
    };
    add(std::move(pgnz));

    // Childless node with positive arity: opens the port count.
    RewriteRule pgns{"pgns",
                     {at(p_is_node, {v("A")}), at(p_has_child_p, {dst_n(v("A")), Term::nat(0)}),
                      at(p_prnt, {src_n(v("A")), v("D")}),
                      at(p_has_child_p, {v("D"), Term::succ(v("N"))}), at(p_lc, {v("A"), v("K")})},
                     {at(p_has_child_p, {v("D"), v("N")}), at(p_vp, {v("A"), v("N'")})},
                     nullptr,
                     {"N'"},
                     {}};
    pgns.guard = [sig](Subst& s) {
        const Term* k = s.lookup("K");
        if (!k || !sig.has(k->symbol().id)) return false;
        int a = sig.arity(k->symbol().id);
        if (a <= 0) return false;
        return s.bind("N'", Term::nat(static_cast<std::uint64_t>(a)));
    };
    add(std::move(pgns));

    // Port of a node that still has at least two pending ports.
    add(RewriteRule{"lgps",
                    {at(p_is_port, {v("P")}), at(p_lp, {v("P"), v("A")}),
                     at(p_vp, {v("A"), Term::succ(Term::succ(v("N'")))}),
                     at(p_link, {src_p(v("P")), v("D")}),
                     at(p_has_child_l, {v("D"), Term::succ(v("N"))})},
                    {at(p_vp, {v("A"), Term::succ(v("N'"))}), at(p_has_child_l, {v("D"), v("N")})},
                    nullptr,
                    {},
                    {}});

    return out;
}

namespace {

// Uniqueness side conditions: all elements unique, and has_child_p /
// has_child_l / vp unique on their first argument.
std::vector<std::string> uniqueness_violations(const Multiset& s) {
    std::vector<std::string> out;
    std::map<std::pair<std::string, std::string>, int> firsts;
    for (const auto& [a, n] : s.counts()) {
        if (n > 1) out.push_back("duplicate atom " + a.to_string());
        if (a.pred == p_has_child_p || a.pred == p_has_child_l || a.pred == p_vp) {
            // Key on (predicate, first argument + bigraph id).
            std::string k = a.args.front().to_string() + "@" + a.args.back().to_string();
            if (++firsts[{a.pred, k}] > 1)
                out.push_back(std::string(a.pred) + " not unique on " + a.args.front().to_string());
        }
    }
    return out;
}

}  // namespace

ValidityReport check_valid(const Multiset& s, const Signature& sig) {
    ValidityReport rep;
    rep.uniqueness_violations = uniqueness_violations(s);

    auto rules = validity_rules(sig);
    Engine eng;
    // Each rule consumes strictly more than it produces, so |S| steps
    // always suffice; fuel is a backstop, not a tunable.
    auto res = eng.run(rules.rules, s, Strategy::first(), static_cast<std::uint64_t>(s.size()) + 1);
    rep.trace = std::move(res.trace);
    rep.normal_form = std::move(res.state);

    if (!rep.uniqueness_violations.empty()) {
        rep.valid = false;
        rep.reason = "uniqueness violation: " + rep.uniqueness_violations.front();
    } else if (!rep.normal_form.empty()) {
        rep.valid = false;
        rep.reason = "normal form is not empty (" + std::to_string(rep.normal_form.size()) +
                     " atoms stuck)";
    } else {
        rep.valid = true;
    }
    return rep;
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InvalidMultiset("interpret: " + msg); }

int nat_index(const Term& t) {
    if (!t.is_nat()) bad("ordinal expected, got " + t.to_string());
    return static_cast<int>(t.nat_value());
}


Place place_of(const Term& t) {
    if (t.is_app() && t.fn() == "dst_r") return RootRef{nat_index(t.args()[0])};
    if (t.is_app() && t.fn() == "dst_n") return NodeRef{t.args()[0].symbol().id};
    bad("place expected, got " + t.to_string());
}

Child child_of(const Term& t) {
    if (t.is_app() && t.fn() == "src_s") return SiteRef{nat_index(t.args()[0])};
    if (t.is_app() && t.fn() == "src_n") return NodeRef{t.args()[0].symbol().id};
    bad("child expected, got " + t.to_string());
}

Point point_of(const Term& t) {
    if (t.is_app() && t.fn() == "src_i") return InnerRef{t.args()[0].symbol().id};
    if (t.is_app() && t.fn() == "src_p") {
        const Term& p = t.args()[0];
        if (!p.is_app() || p.fn() != "port") bad("port expected");
        return Port{p.args()[0].symbol().id, nat_index(p.args()[1])};
    }
    bad("point expected, got " + t.to_string());
}

Target target_of(const Term& t) {
    if (t.is_app() && t.fn() == "dst_o") return OuterRef{t.args()[0].symbol().id};
    if (t.is_app() && t.fn() == "dst_e") return EdgeRef{t.args()[0].symbol().id};
    bad("target expected, got " + t.to_string());
}

}  // namespace

Bigraph interpret(const Multiset& s, const Signature& sig) {
    auto rep = check_valid(s, sig);
    if (!rep.valid) bad("multiset is not valid: " + rep.reason);

    Bigraph b;
    b.sig = sig;
    std::set<int> roots, sites;
    std::set<Port> ports_seen;
    std::set<std::string> ids;

    for (const auto& [a, n] : s.counts()) {
        const auto& args = a.args;
        if (args.empty() || !args.back().is_sym() || args.back().symbol().ns != Ns::bigraph)
            bad("atom without bigraph identifier: " + a.to_string());
        ids.insert(args.back().symbol().id);
        if (ids.size() > 1) bad("multiset mixes several bigraph identifiers");
        if (a.pred == p_is_root) {
            roots.insert(nat_index(args[0]));
        } else if (a.pred == p_is_site) {
            sites.insert(nat_index(args[0]));
        } else if (a.pred == p_is_node) {
            b.nodes.insert(args[0].symbol().id);
        } else if (a.pred == p_is_e_name) {
            b.edges.insert(args[0].symbol().id);
        } else if (a.pred == p_is_o_name) {
            b.outer.names.insert(args[0].symbol().id);
        } else if (a.pred == p_is_i_name) {
            b.inner.names.insert(args[0].symbol().id);
        } else if (a.pred == p_lc) {
            b.ctrl[args[0].symbol().id] = args[1].symbol().id;
        } else if (a.pred == p_prnt) {
            b.prnt[child_of(args[0])] = place_of(args[1]);
        } else if (a.pred == p_link) {
            b.link[point_of(args[0])] = target_of(args[1]);
        } else if (a.pred == p_is_port) {
            ports_seen.insert(std::get<Port>(point_of(src_p(args[0]))));
        } else if (a.pred == p_lp || a.pred == p_has_child_p || a.pred == p_has_child_l ||
                   a.pred == p_vp) {
            // Redundant with the structure read above; consistency is
            // established by validity.
        } else {
            bad("unexpected predicate " + a.pred);
        }
    }

    // Ordinals must be exactly 0..k-1.
    auto contiguous = [](const std::set<int>& xs) {
        int i = 0;
        for (int x : xs)
            if (x != i++) return false;
        return true;
    };
    if (!contiguous(roots)) bad("root indices are not contiguous from 0");
    if (!contiguous(sites)) bad("site indices are not contiguous from 0");
    b.outer.width = static_cast<int>(roots.size());
    b.inner.width = static_cast<int>(sites.size());

    // The ports listed must be exactly those induced by the arities.
    std::set<Port> expected;
    for (const auto& q : b.ports()) expected.insert(q);
    if (expected != ports_seen) bad("port set does not match control arities");

    auto d = well_formed(b);
    if (!d.ok()) bad("decoded bigraph is not well formed:\n" + d.to_string());
    return b;
}

}  // namespace rel
}  // namespace bigrel
