#ifndef BIGREL_BRS_FILE_HPP
#define BIGREL_BRS_FILE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigrel/bigraph.hpp"
#include "bigrel/multiset.hpp"
#include "bigrel/reaction.hpp"

namespace bigrel {
namespace brs {

// A parsed .brs file: signature, agent, named reaction rules, run
// options. The format is line-comment '#', versioned by a leading
// "brs 1" line; see the README for the grammar.
//
// Agents from `agent atoms "..."` keep their raw multiset: it may fail
// to decode (that is what `validate` is for), in which case agent_ok is
// false and only validation can run.
struct BrsSpec {
    Signature sig;
    Bigraph agent;
    std::optional<Multiset> agent_atoms;
    bool agent_ok = true;
    std::vector<ParametricReactionRule> rules;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 32;
    std::size_t max_states = 256;
};

class BrsParseError : public std::runtime_error {
public:
    BrsParseError(const std::string& msg, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " +
                             msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

// base_dir resolves relative paths in `agent atoms "..."` clauses.
BrsSpec parse_spec_text(const std::string& text, const std::string& base_dir = ".");
BrsSpec parse_spec_file(const std::string& path);

}  // namespace brs
}  // namespace bigrel

#endif
