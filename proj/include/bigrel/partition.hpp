#ifndef BIGREL_PARTITION_HPP
#define BIGREL_PARTITION_HPP

#include "bigrel/bigraph.hpp"
#include "bigrel/encode.hpp"

namespace bigrel {
namespace rel {

// Three-way split of an encoding: out holds the root/outer-name facts
// (structural atoms, their child counters, and prnt/link arriving on
// them from nodes and ports), inn holds the site/inner-name facts and
// the prnt/link atoms leaving them, core is the remainder.
// out + core + inn == encode(c).
struct Partition {
    Multiset out;
    Multiset core;
    Multiset inn;
};
Partition partition(const Bigraph& c, const std::string& id = "B");

// Glue atoms replacing an interface when composing: for each root r of
// cp and the equal-indexed site s of c, a prnt atom from each child of r
// to the parent of s, and symmetrically link atoms routed through the
// inner names of c. Requires inner(c) == outer(cp).
Multiset eq_set(const Bigraph& c, const Bigraph& cp, const std::string& id = "B");

// Lifts the index shift of juxtaposition to atoms: site indices move by
// site_offset, root indices by root_offset.
Multiset shift_places(const Multiset& s, int site_offset, int root_offset);

}  // namespace rel
}  // namespace bigrel

#endif
