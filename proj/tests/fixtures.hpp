// Shared fixtures: the vending machine agent built by hand from its
// structure definition (the canonical data; the CCS compiler must agree
// with it up to lean equivalence).
#ifndef BIGREL_TESTS_FIXTURES_HPP
#define BIGREL_TESTS_FIXTURES_HPP

#include "bigrel/bigraph.hpp"

namespace fixtures {

inline bigrel::Signature ccs_signature() {
    bigrel::Signature sig;
    sig.declare("sum", 0);
    sig.declare("get", 1);
    sig.declare("send", 1);
    return sig;
}

// 'c.co | c.'co + c.'t over Y = {c, co, t}: one root, eleven nodes,
// six ports, no edges.
inline bigrel::Bigraph vending_machine() {
    using namespace bigrel;
    Bigraph b;
    b.sig = ccs_signature();
    b.outer.width = 1;
    b.outer.names = {"c", "co", "t"};

    auto node = [&](const std::string& v, const std::string& k, const Place& parent) {
        b.nodes.insert(v);
        b.ctrl[v] = k;
        b.prnt[NodeRef{v}] = parent;
    };
    node("a", "sum", RootRef{0});
    node("b", "send", NodeRef{"a"});
    node("d", "sum", NodeRef{"b"});
    node("e", "get", NodeRef{"d"});
    node("f", "sum", RootRef{0});
    node("g", "get", NodeRef{"f"});
    node("h", "sum", NodeRef{"g"});
    node("i", "send", NodeRef{"h"});
    node("j", "get", NodeRef{"f"});
    node("k", "sum", NodeRef{"j"});
    node("l", "send", NodeRef{"k"});

    b.link[Port{"b", 1}] = OuterRef{"c"};
    b.link[Port{"e", 1}] = OuterRef{"co"};
    b.link[Port{"g", 1}] = OuterRef{"c"};
    b.link[Port{"i", 1}] = OuterRef{"co"};
    b.link[Port{"j", 1}] = OuterRef{"c"};
    b.link[Port{"l", 1}] = OuterRef{"t"};
    return b;
}

}  // namespace fixtures

#endif
