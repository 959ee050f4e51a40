#ifndef BIGREL_ENCODE_HPP
#define BIGREL_ENCODE_HPP

#include <string>

#include "bigrel/bigraph.hpp"
#include "bigrel/multiset.hpp"

namespace bigrel {
namespace rel {

// Relation symbols of the multiset representation.
inline constexpr const char* p_is_root = "is_root";
inline constexpr const char* p_is_node = "is_node";
inline constexpr const char* p_is_site = "is_site";
inline constexpr const char* p_is_port = "is_port";
inline constexpr const char* p_is_o_name = "is_o_name";
inline constexpr const char* p_is_i_name = "is_i_name";
inline constexpr const char* p_is_e_name = "is_e_name";
inline constexpr const char* p_prnt = "prnt";
inline constexpr const char* p_link = "link";
inline constexpr const char* p_lc = "lc";
inline constexpr const char* p_lp = "lp";
inline constexpr const char* p_has_child_p = "has_child_p";
inline constexpr const char* p_has_child_l = "has_child_l";
inline constexpr const char* p_vp = "vp";

// Term builders.
Term node_term(const std::string& id);
Term edge_term(const std::string& id);
Term name_term(const std::string& id);
Term ctrl_term(const std::string& id);
Term bigraph_term(const std::string& id);
Term root_term(int index);
Term site_term(int index);
Term port_term(const std::string& node, int index);

// Disjunctive-type injections.
Term src_n(Term t);
Term src_s(Term t);
Term src_p(Term t);
Term src_i(Term t);
Term dst_n(Term t);
Term dst_r(Term t);
Term dst_o(Term t);
Term dst_e(Term t);

Term place_term(const Place& p);    // dst_n / dst_r
Term child_term(const Child& c);    // src_n / src_s
Term point_term(const Point& p);    // src_p / src_i
Term target_term(const Target& t);  // dst_e / dst_o

// Argument counts for the symbols above (bigraph identifier included).
PredicateTable relational_predicates();

// The multiset representation of a well-formed bigraph; every atom
// carries the given bigraph identifier as its final argument. Throws
// std::invalid_argument when b is not well formed.
Multiset encode(const Bigraph& b, const std::string& id = "B");

// Text form: one atom per line, "pred(arg,...)@bigraph". Naturals print
// as decimals; s/z towers are accepted on input. Round trips exactly.
std::string to_text(const Multiset& s);
Multiset multiset_from_text(const std::string& text);

}  // namespace rel
}  // namespace bigrel

#endif
