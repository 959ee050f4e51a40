#ifndef BIGREL_DOT_HPP
#define BIGREL_DOT_HPP

#include <string>

#include "bigrel/bigraph.hpp"
#include "bigrel/reaction.hpp"

namespace bigrel {

// Graphviz rendering: the place graph as a solid tree (roots as houses,
// nodes as ellipses, sites as dashed boxes), the link graph as dashed
// hyperedges fanning out from small junction vertices (diamonds for
// outer names, points for edges).
std::string bigraph_dot(const Bigraph& b, const std::string& title = "bigraph");

// The explored state graph with rule-labelled arrows.
std::string state_graph_dot(const BrsTrace& trace);

}  // namespace bigrel

#endif
