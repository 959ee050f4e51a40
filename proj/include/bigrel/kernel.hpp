#ifndef BIGREL_KERNEL_HPP
#define BIGREL_KERNEL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigrel/multiset.hpp"

namespace bigrel {

// Multiset rewrite rule. The left-hand side is a multiset of atom
// patterns; the guard may inspect the substitution built by matching and
// bind the auxiliary variables listed in guard_binds (arity lookups use
// this). Fresh variables receive names from the engine's supply when the
// rule is applied.
struct RewriteRule {
    std::string label;
    std::vector<Atom> lhs;
    std::vector<Atom> rhs;
    std::function<bool(Subst&)> guard;  // may be empty
    std::vector<std::string> guard_binds;
    std::vector<std::pair<std::string, Ns>> fresh;
};

// Throws std::invalid_argument when rhs mentions variables not bound by
// lhs, guard_binds or fresh.
void validate_rule(const RewriteRule& r);

struct Match {
    Subst subst;
    Multiset consumed;
};

class StaleMatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deterministic per-instance fresh name source; names are "<prefix>#<n>"
// which cannot collide with parsed identifiers ('#' is rejected there).
class NameSupply {
public:
    NameSym fresh(Ns ns);
    NameSym fresh(Ns ns, const std::string& hint);

private:
    std::map<std::pair<Ns, std::string>, std::uint64_t> counters_;
};

struct Step {
    std::string label;
    Subst subst;
    Multiset consumed;
    Multiset produced;
};

struct Trace {
    std::uint64_t initial_digest = 0;
    std::uint64_t final_digest = 0;
    std::vector<Step> steps;
    bool fuel_exhausted = false;

    // Line-delimited structured text, one step per record; fields are
    // TAB-separated: label, bindings, consumed atoms, produced atoms
    // (atoms ';'-joined). Header and footer carry the digests.
    std::string to_text() const;
};

// Reconstructs the final multiset from the initial one (tests rely on
// this being exact). Throws when a step's consumed atoms are missing.
Multiset replay(const Multiset& initial, const Trace& trace);

struct RuleChoice {
    const RewriteRule* rule;
    Match match;
};

// first: lowest rule index, canonically first match. random: uniform over
// all (rule, match) pairs using the seed. callback: caller selects an
// index into the presented choices (or stops by returning nullopt).
struct Strategy {
    enum class Kind { first, random, callback } kind = Kind::first;
    std::uint64_t seed = 0;
    std::function<std::optional<std::size_t>(const std::vector<RuleChoice>&, const Multiset&)>
        choose;

    static Strategy first() { return {}; }
    static Strategy random(std::uint64_t seed) {
        Strategy s;
        s.kind = Kind::random;
        s.seed = seed;
        return s;
    }
    static Strategy callback(
        std::function<std::optional<std::size_t>(const std::vector<RuleChoice>&, const Multiset&)>
            fn) {
        Strategy s;
        s.kind = Kind::callback;
        s.choose = std::move(fn);
        return s;
    }
};

struct RunResult {
    Multiset state;
    Trace trace;
};

// Single-owner rewriting engine; values passed in and out are immutable
// snapshots, only the name supply is engine state.
class Engine {
public:
    // All matches of rule against state, in canonical order, deduplicated
    // up to which identical copies are consumed.
    std::vector<Match> match_rule(const RewriteRule& rule, const Multiset& state) const;

    // (state - consumed) + instantiated rhs. Throws StaleMatchError when
    // the match no longer fits the state.
    Multiset apply(const RewriteRule& rule, const Multiset& state, const Match& m);

    RunResult run(std::span<const RewriteRule> rules, Multiset state, const Strategy& strategy,
                  std::uint64_t fuel);

    NameSym fresh_name(Ns ns) { return supply_.fresh(ns); }
    NameSupply& supply() { return supply_; }

private:
    NameSupply supply_;
};

}  // namespace bigrel

#endif
