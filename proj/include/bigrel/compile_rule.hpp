#ifndef BIGREL_COMPILE_RULE_HPP
#define BIGREL_COMPILE_RULE_HPP

#include <vector>

#include "bigrel/encode.hpp"
#include "bigrel/kernel.hpp"
#include "bigrel/reaction.hpp"

namespace bigrel {
namespace rel {

// A reaction rule compiled to kernel rewrite rules over the atom
// encoding. One trigger per aliasing pattern of the rule's outer names
// (a context may identify them); firing a trigger consumes the redex
// atoms, emits the reactum's, and leaves one task token per redex site.
// The stage rules then delete, move or copy the parameter forests one
// atom at a time; tokens carry countdowns, so every run terminates.
// Task predicates are namespaced "<label>:...".
struct CompiledProgram {
    std::string label;
    std::vector<RewriteRule> triggers;
    std::vector<RewriteRule> stages;
};

// Requires (beyond the usual rule shape): at most one site per redex
// node. Multi-site nodes would make the parameter split ambiguous at
// the atom level - the token scheme cannot see which residual child
// belonged to which site.
CompiledProgram compile_reaction(const ParametricReactionRule& rule, const Signature& sig);

// One reaction step along the compiled program: enumerates trigger
// matches on the encoded agent and runs the stage rules to quiescence
// after each. Runs that jam (task tokens left over: the trigger fired
// on something that is not a decomposition) are dropped.
std::vector<Multiset> kernel_successors(const Multiset& state, const CompiledProgram& program,
                                        Engine& engine);

}  // namespace rel
}  // namespace bigrel

#endif
