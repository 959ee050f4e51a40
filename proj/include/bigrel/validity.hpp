#ifndef BIGREL_VALIDITY_HPP
#define BIGREL_VALIDITY_HPP

#include <string>
#include <vector>

#include "bigrel/bigraph.hpp"
#include "bigrel/encode.hpp"
#include "bigrel/kernel.hpp"

namespace bigrel {
namespace rel {

// The nine rewrite rules deciding bigraph validity, specialised to a
// signature via the arity guards of pgnz/pgns: dr, do, de, lgpsz, lgi,
// lgs, pgnz, pgns, lgps.
struct ValidityRuleSet {
    std::vector<RewriteRule> rules;
};
ValidityRuleSet validity_rules(const Signature& sig);

struct ValidityReport {
    bool valid = false;
    std::string reason;  // empty when valid
    Trace trace;
    Multiset normal_form;
    std::vector<std::string> uniqueness_violations;
};

// Rewrites S to a normal form under the validity rules (first-match
// strategy) and checks the uniqueness side conditions. S is valid iff
// the normal form is empty and uniqueness holds; the run takes at most
// |S| steps since every rule strictly shrinks the multiset.
ValidityReport check_valid(const Multiset& s, const Signature& sig);

class InvalidMultiset : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads a valid multiset back into a bigraph. The signature supplies
// the control arities (the atoms only name controls). Throws
// InvalidMultiset when S is not valid or not shaped like an encoding
// (e.g. non-contiguous root indices).
Bigraph interpret(const Multiset& s, const Signature& sig);

}  // namespace rel
}  // namespace bigrel

#endif
