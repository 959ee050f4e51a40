#ifndef BIGREL_REACTION_HPP
#define BIGREL_REACTION_HPP

#include <map>
#include <string>
#include <vector>

#include "bigrel/bigraph.hpp"
#include "bigrel/kernel.hpp"

namespace bigrel {

// (L: <m,{}> -> J, R: <m',{}> -> J, eta: m' -> m). Ground rules are the
// m = m' = 0 case with an empty eta. Link-graph inner faces are empty;
// redexes are solid: every site sits under a node, every outer name of J
// carries at least one redex port, and redexes have at least one node.
struct ParametricReactionRule {
    std::string label;
    Bigraph redex;    // L
    Bigraph reactum;  // R
    std::map<int, int> eta;  // reactum site -> redex site
};

struct GroundReactionRule {
    std::string label;
    Bigraph redex;
    Bigraph reactum;
};

// Checks the shape conditions above; throws std::invalid_argument.
void validate_reaction_rule(const ParametricReactionRule& r);
ParametricReactionRule lift(const GroundReactionRule& r);

// An occurrence of the redex in the agent.
struct Occurrence {
    std::map<std::string, std::string> node_map;   // L node -> agent node
    std::map<std::string, std::string> edge_map;   // L edge -> agent edge
    std::map<std::string, Target> name_map;        // J outer name -> agent link
    std::map<int, Place> root_place;               // L root -> agent place
    std::map<int, std::vector<std::string>> site_params;  // L site -> agent subtree tops

    std::string canonical_key() const;
};

// agent == compose(context, compose(juxtapose(wiring, redex_image),
// parameter)); checked eagerly on construction.
struct Decomposition {
    Occurrence occ;
    Bigraph context;      // C
    Bigraph wiring;       // D: identity on the pass-through names
    Bigraph redex_image;  // L with support renamed into the agent
    Bigraph parameter;    // C': one root per redex site
};

// Enumerates the decompositions of a ground agent along a rule, in
// canonical order. Node images are injective and control-preserving,
// redex roots land on distinct context places, site parameters absorb
// the residual subtrees (all splits are enumerated when a node holds
// several sites).
std::vector<Decomposition> find_matches(const Bigraph& agent, const ParametricReactionRule& rule);

// eta-instantiation of a parameter (one root per redex site): cardinality
// 0 sites are deleted, 1 moved (support kept), >1 copied with fresh
// node names (ports follow); copies share edges and outer names. Edges
// left without points stay, idle.
Bigraph instantiate_eta(const std::map<int, int>& eta, int reactum_width, const Bigraph& parameter,
                        NameSupply& names);

// C o (D (x) R') o (eta C') with R' a fresh copy of the reactum.
Bigraph apply_reaction(const Bigraph& agent, const ParametricReactionRule& rule,
                       const Decomposition& dec, NameSupply& names);

enum class BrsStrategy { first, random, all, callback };

struct BrsOptions {
    BrsStrategy strategy = BrsStrategy::first;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 64;    // reaction count (first/random), depth (all)
    std::size_t max_states = 512;    // breadth-first state bound
    // Interactive chooser: given the current agent and the labelled
    // decompositions, returns an index or nullopt to stop.
    std::function<std::optional<std::size_t>(
        const Bigraph&, const std::vector<std::pair<std::string, const Decomposition*>>&)>
        choose;
};

struct BrsStep {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string rule;
};

struct BrsTrace {
    std::vector<Bigraph> states;  // states[0] is the initial agent
    std::vector<BrsStep> steps;
    std::vector<std::size_t> terminal;  // explored states with no matches
    bool step_bound_hit = false;
    bool state_bound_hit = false;
};

// Repeated match/apply under the chosen strategy. "all" explores
// breadth-first with lean-equivalence deduplication of states.
BrsTrace run_brs(const Bigraph& agent, const std::vector<ParametricReactionRule>& rules,
                 const BrsOptions& opts);

}  // namespace bigrel

#endif
