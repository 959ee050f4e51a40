#ifndef BIGREL_EQUIV_HPP
#define BIGREL_EQUIV_HPP

#include <map>
#include <optional>
#include <string>

#include "bigrel/bigraph.hpp"

namespace bigrel {

// Witness for lean equivalence: bijections on nodes and edges that
// preserve controls and commute with prnt and link (identity on the
// shared interfaces).
struct LeanWitness {
    std::map<std::string, std::string> node_map;
    std::map<std::string, std::string> edge_map;
};

std::optional<LeanWitness> lean_equiv(const Bigraph& b, const Bigraph& g);

LeanWitness invert(const LeanWitness& w);
// Composes witnesses: first ab, then bc.
LeanWitness chain(const LeanWitness& ab, const LeanWitness& bc);

// Checks that w really is a structure-preserving bijection from b to g.
bool check_witness(const Bigraph& b, const Bigraph& g, const LeanWitness& w);

}  // namespace bigrel

#endif
