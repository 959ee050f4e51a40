#ifndef BIGREL_CCS_HPP
#define BIGREL_CCS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "bigrel/bigraph.hpp"
#include "bigrel/reaction.hpp"

namespace bigrel {
namespace ccs {

// Finite CCS: no replication, no restriction. Channels are free names.
struct CcsTerm {
    enum class Kind { nil, send, get, sum, par };
    Kind kind = Kind::nil;
    std::string channel;         // send/get
    std::vector<CcsTerm> parts;  // continuation ([0]) for prefixes,
                                 // alternatives for sum, components for par

    static CcsTerm nil() { return {}; }
    static CcsTerm send(std::string ch, CcsTerm cont);
    static CcsTerm get(std::string ch, CcsTerm cont);
    static CcsTerm sum(std::vector<CcsTerm> alts);
    static CcsTerm par(std::vector<CcsTerm> comps);

    std::string to_string() const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at offset " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

// Grammar: `0`, `a.P` (input), `'a.P` (output, ASCII for an overbar),
// `P + Q`, `P | Q`, parentheses; `+` binds tighter than `|`; a bare
// channel name is the prefix with nil continuation. Sum alternatives
// must be prefixes.
CcsTerm parse_ccs(const std::string& text);

// Free channel names.
std::set<std::string> free_names(const CcsTerm& t);

// Milner-style encoding over ({get, send, sum}, arities 1, 1, 0): one
// root; every parallel component and every non-nil continuation is
// wrapped in a sum node; prefixes become get/send nodes whose port
// links to the channel's outer name. Nil compiles to an empty sum when
// it stands alone as a component.
Bigraph ccs_to_bigraph(const CcsTerm& t);

// The synchronisation rule as a parametric reaction rule: two sums
// under a shared root, a get and a send prefix on one shared name, four
// redex sites, two reactum sites with eta = {(0,0), (1,2)}.
ParametricReactionRule tau_rule();

}  // namespace ccs
}  // namespace bigrel

#endif
