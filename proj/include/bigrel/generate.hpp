#ifndef BIGREL_GENERATE_HPP
#define BIGREL_GENERATE_HPP

#include <random>
#include <tuple>
#include <utility>

#include "bigrel/bigraph.hpp"

namespace bigrel {

// Bounds for the random well-formed bigraph generator. Names are drawn
// from per-call prefixes so two generated bigraphs can be kept disjoint.
struct GenParams {
    int max_nodes = 10;
    int max_controls = 4;
    int max_arity = 2;
    int max_roots = 3;
    int max_sites = 2;
    int max_inner = 2;
    int max_outer = 3;
    int max_edges = 2;
    bool ground = false;           // force <0, {}> inner interface
    std::string prefix = "a";      // node/edge name prefix
    const Signature* sig = nullptr;  // reuse a signature instead of generating one
};

Bigraph random_bigraph(std::mt19937_64& rng, const GenParams& params = {});

// (context G, argument F) with inner(G) == outer(F), disjoint supports.
// When plug_shaped is set, every root of F has exactly one child and
// every outer name of F has exactly one point; composition is then a
// plain union in the relational model.
std::pair<Bigraph, Bigraph> random_composable_pair(std::mt19937_64& rng, bool plug_shaped);

// Disjoint pair suitable for juxtaposition.
std::pair<Bigraph, Bigraph> random_juxtaposable_pair(std::mt19937_64& rng);

// (G, F, E) with G o F and F o E defined.
std::tuple<Bigraph, Bigraph, Bigraph> random_composable_triple(std::mt19937_64& rng);

}  // namespace bigrel

#endif
