#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bigrel/ccs.hpp"
#include "bigrel/compile_rule.hpp"
#include "bigrel/equiv.hpp"
#include "bigrel/validity.hpp"
#include "ccs_oracle.hpp"
#include "fixtures.hpp"

using namespace bigrel;
using namespace bigrel::rel;
using bigrel::ccs::ccs_to_bigraph;
using bigrel::ccs::parse_ccs;
using bigrel::ccs::tau_rule;

namespace {

// Successor states along the compiled path, as bigraphs.
std::vector<Bigraph> kernel_step(const Bigraph& agent, const ParametricReactionRule& rule) {
    CompiledProgram prog = compile_reaction(rule, agent.sig);
    Engine eng;
    std::vector<Bigraph> out;
    for (const auto& ms : kernel_successors(encode(agent, "B"), prog, eng))
        out.push_back(interpret(ms, agent.sig));
    return out;
}

// Successor states along the direct path.
std::vector<Bigraph> direct_step(const Bigraph& agent, const ParametricReactionRule& rule) {
    NameSupply names;
    std::vector<Bigraph> out;
    for (const auto& dec : find_matches(agent, rule))
        out.push_back(apply_reaction(agent, rule, dec, names));
    return out;
}

// Set comparison up to lean equivalence (multiplicities collapsed).
bool same_states(std::vector<Bigraph> a, std::vector<Bigraph> b) {
    auto dedup = [](std::vector<Bigraph>& xs) {
        std::vector<Bigraph> out;
        for (auto& x : xs) {
            bool dup = false;
            for (const auto& y : out)
                if (lean_equiv(x, y)) dup = true;
            if (!dup) out.push_back(std::move(x));
        }
        return out;
    };
    auto da = dedup(a), db = dedup(b);
    if (da.size() != db.size()) return false;
    for (const auto& x : da) {
        bool hit = false;
        for (const auto& y : db)
            if (lean_equiv(x, y)) hit = true;
        if (!hit) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("ground rules compile to a single trigger with no stages") {
    GroundReactionRule g;
    g.label = "swap";
    g.redex = ccs_to_bigraph(parse_ccs("a"));
    g.reactum = ccs_to_bigraph(parse_ccs("'a"));
    ParametricReactionRule rule = lift(g);
    CompiledProgram prog = compile_reaction(rule, g.redex.sig);
    CHECK(prog.triggers.size() == 1);
    CHECK(prog.stages.empty());

    Bigraph agent = ccs_to_bigraph(parse_ccs("a"));
    CHECK(same_states(kernel_step(agent, rule), direct_step(agent, rule)));
}

TEST_CASE("tau program on the vending machine reaches both reducts") {
    Bigraph vm = fixtures::vending_machine();
    auto got = kernel_step(vm, tau_rule());
    REQUIRE(got.size() == 2);
    for (const auto& b : got) {
        CHECK(well_formed(b).ok());
        CHECK(b.outer.names == vm.outer.names);
    }
    CHECK(same_states(got, direct_step(vm, tau_rule())));
}

TEST_CASE("delete stages restore exact counter bookkeeping") {
    // L = root { n(k1) { site } }, R = root {}; the parameter vanishes,
    // its port decrements the shared name counter. Parameter controls
    // differ from the redex control, so the occurrence is unique.
    Signature sig;
    sig.declare("k1", 1);
    sig.declare("p1", 1);
    sig.declare("p0", 0);

    Bigraph L;
    L.sig = sig;
    L.outer.width = 1;
    L.outer.names = {"y"};
    L.inner.width = 1;
    L.nodes = {"n"};
    L.ctrl = {{"n", "k1"}};
    L.prnt[NodeRef{"n"}] = RootRef{0};
    L.prnt[SiteRef{0}] = NodeRef{"n"};
    L.link[Port{"n", 1}] = OuterRef{"y"};

    Bigraph R;
    R.sig = sig;
    R.outer.width = 1;
    R.outer.names = {"y"};

    ParametricReactionRule rule{"zap", L, R, {}};

    // Agent: root { n(k1) { a(p1){b(p0)} } } with both arity-1 ports on y.
    Bigraph agent;
    agent.sig = sig;
    agent.outer.width = 1;
    agent.outer.names = {"y"};
    agent.nodes = {"n", "a", "b"};
    agent.ctrl = {{"n", "k1"}, {"a", "p1"}, {"b", "p0"}};
    agent.prnt[NodeRef{"n"}] = RootRef{0};
    agent.prnt[NodeRef{"a"}] = NodeRef{"n"};
    agent.prnt[NodeRef{"b"}] = NodeRef{"a"};
    agent.link[Port{"n", 1}] = OuterRef{"y"};
    agent.link[Port{"a", 1}] = OuterRef{"y"};
    REQUIRE(well_formed(agent).ok());

    auto got = kernel_step(agent, rule);
    REQUIRE(got.size() == 1);
    CHECK(got[0].nodes.empty());
    CHECK(got[0].outer.names == std::set<std::string>{"y"});
    CHECK(same_states(got, direct_step(agent, rule)));
}

TEST_CASE("copy stages mint fresh trees and share link targets") {
    // L = root { n(k1) { site } }, R = root { m(p0){site}, m'(p0){site} }
    // with both reactum sites fed from the single redex site.
    Signature sig;
    sig.declare("k1", 1);
    sig.declare("p1", 1);
    sig.declare("p0", 0);

    Bigraph L;
    L.sig = sig;
    L.outer.width = 1;
    L.outer.names = {"y"};
    L.inner.width = 1;
    L.nodes = {"n"};
    L.ctrl = {{"n", "k1"}};
    L.prnt[NodeRef{"n"}] = RootRef{0};
    L.prnt[SiteRef{0}] = NodeRef{"n"};
    L.link[Port{"n", 1}] = OuterRef{"y"};

    Bigraph R;
    R.sig = sig;
    R.outer.width = 1;
    R.outer.names = {"y"};
    R.inner.width = 2;
    R.nodes = {"m0", "m1"};
    R.ctrl = {{"m0", "p0"}, {"m1", "p0"}};
    R.prnt[NodeRef{"m0"}] = RootRef{0};
    R.prnt[NodeRef{"m1"}] = RootRef{0};
    R.prnt[SiteRef{0}] = NodeRef{"m0"};
    R.prnt[SiteRef{1}] = NodeRef{"m1"};

    ParametricReactionRule rule{"dup", L, R, {{0, 0}, {1, 0}}};

    // Agent parameter: a(p1){ b(p0) } with a's port on y.
    Bigraph agent;
    agent.sig = sig;
    agent.outer.width = 1;
    agent.outer.names = {"y"};
    agent.nodes = {"n", "a", "b"};
    agent.ctrl = {{"n", "k1"}, {"a", "p1"}, {"b", "p0"}};
    agent.prnt[NodeRef{"n"}] = RootRef{0};
    agent.prnt[NodeRef{"a"}] = NodeRef{"n"};
    agent.prnt[NodeRef{"b"}] = NodeRef{"a"};
    agent.link[Port{"n", 1}] = OuterRef{"y"};
    agent.link[Port{"a", 1}] = OuterRef{"y"};
    REQUIRE(well_formed(agent).ok());

    auto got = kernel_step(agent, rule);
    REQUIRE(got.size() == 1);
    const Bigraph& res = got[0];
    CHECK(res.nodes.size() == 6);  // m0, m1, and two fresh copies of {a, b}
    // Name y carries the two copied k1 ports.
    int on_y = 0;
    for (const auto& [pt, t] : res.link)
        if (t == Target{OuterRef{"y"}}) ++on_y;
    CHECK(on_y == 2);
    CHECK(same_states(got, direct_step(agent, rule)));
}

TEST_CASE("copy to the same destination place groups the counter bumps") {
    // Both reactum sites under the root: the copies land side by side.
    Signature sig;
    sig.declare("k1", 1);
    sig.declare("k0", 0);

    Bigraph L;
    L.sig = sig;
    L.outer.width = 1;
    L.outer.names = {"y"};
    L.inner.width = 1;
    L.nodes = {"n"};
    L.ctrl = {{"n", "k1"}};
    L.prnt[NodeRef{"n"}] = RootRef{0};
    L.prnt[SiteRef{0}] = NodeRef{"n"};
    L.link[Port{"n", 1}] = OuterRef{"y"};

    Bigraph R;
    R.sig = sig;
    R.outer.width = 1;
    R.outer.names = {"y"};
    R.inner.width = 2;
    R.prnt[SiteRef{0}] = RootRef{0};
    R.prnt[SiteRef{1}] = RootRef{0};

    ParametricReactionRule rule{"fork", L, R, {{0, 0}, {1, 0}}};

    Bigraph agent;
    agent.sig = sig;
    agent.outer.width = 1;
    agent.outer.names = {"y"};
    agent.nodes = {"n", "a"};
    agent.ctrl = {{"n", "k1"}, {"a", "k0"}};
    agent.prnt[NodeRef{"n"}] = RootRef{0};
    agent.prnt[NodeRef{"a"}] = NodeRef{"n"};
    agent.link[Port{"n", 1}] = OuterRef{"y"};

    auto got = kernel_step(agent, rule);
    REQUIRE(got.size() == 1);
    CHECK(got[0].nodes.size() == 2);  // two fresh copies of a under the root
    CHECK(same_states(got, direct_step(agent, rule)));
}

TEST_CASE("kernel and direct successor sets coincide on random CCS agents") {
    std::mt19937_64 rng(1234);
    auto chan = [&]() { return std::string(1, static_cast<char>('a' + rng() % 2)); };
    auto rnd_prefix = [&](auto&& self, int budget) -> ccs::CcsTerm {
        ccs::CcsTerm cont =
            budget > 0 && rng() % 2 ? self(self, budget - 1) : ccs::CcsTerm::nil();
        return rng() % 2 ? ccs::CcsTerm::get(chan(), std::move(cont))
                         : ccs::CcsTerm::send(chan(), std::move(cont));
    };

    ParametricReactionRule tau = tau_rule();
    for (int iter = 0; iter < 25; ++iter) {
        std::vector<ccs::CcsTerm> comps;
        int prefixes = 2 + static_cast<int>(rng() % 5);  // up to 6
        int used = 0;
        while (used < prefixes) {
            if (rng() % 3 == 0) {
                comps.push_back(ccs::CcsTerm::sum({rnd_prefix(rnd_prefix, 1), rnd_prefix(rnd_prefix, 1)}));
                used += 2;
            } else {
                comps.push_back(rnd_prefix(rnd_prefix, 1));
                used += 1;
            }
        }
        ccs::CcsTerm t =
            comps.size() == 1 ? comps[0] : ccs::CcsTerm::par(std::move(comps));
        Bigraph agent = ccs_to_bigraph(t);

        auto direct = direct_step(agent, tau);
        auto kernel = kernel_step(agent, tau);
        REQUIRE(same_states(direct, kernel));
    }
}
