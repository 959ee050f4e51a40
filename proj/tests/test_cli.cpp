#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bigrel/ccs.hpp"
#include "bigrel/cli.hpp"
#include "bigrel/equiv.hpp"
#include "bigrel/validity.hpp"

using namespace bigrel;
using namespace bigrel::cli;

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "tests/fixtures"
#endif

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

brs::BrsSpec vending() { return brs::parse_spec_file(fixture("vending.brs")); }

int count_lines_with(const std::string& text, const std::string& needle) {
    int n = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (line.find(needle) != std::string::npos) ++n;
    return n;
}

}  // namespace

TEST_CASE("parse_spec: the shipped vending machine fixture") {
    brs::BrsSpec spec = vending();
    CHECK(spec.sig.arity("get") == 1);
    CHECK(spec.agent.nodes.size() == 11);
    REQUIRE(spec.rules.size() == 1);
    CHECK(spec.rules[0].label == "tau");
    CHECK(spec.rules[0].redex.inner.width == 4);
    CHECK(spec.rules[0].eta == std::map<int, int>{{0, 0}, {1, 2}});
    CHECK(spec.seed == 1);
    CHECK(spec.max_steps == 16);

    // The literal tau rule is the built-in one, up to renaming.
    auto w = lean_equiv(spec.rules[0].redex, ccs::tau_rule().redex);
    CHECK(w.has_value());
}

TEST_CASE("parse_spec: an empty rules block is a static bigraph") {
    brs::BrsSpec spec = brs::parse_spec_text(
        "brs 1 signature { sum:0 } agent ccs \"0\"");
    CHECK(spec.rules.empty());
    CHECK(spec.agent.nodes.size() == 1);
}

TEST_CASE("parse_spec: diagnostics carry positions") {
    // Missing version header.
    CHECK_THROWS_AS(brs::parse_spec_text("signature { sum:0 }"), brs::BrsParseError);
    // Undeclared control.
    CHECK_THROWS_AS(brs::parse_spec_text("brs 1 signature { sum:0 } agent bigraph { root { "
                                         "node a gett { } } }"),
                    brs::BrsParseError);
    // eta out of range.
    std::string bad_eta =
        "brs 1 signature { sum:0 get:1 send:1 } agent ccs \"0\" "
        "rule r { redex bigraph { names { outer: ch } root { node s1 sum { node p1 get { site 0 } "
        "} } links { port(p1,1) -> ch } } "
        "reactum bigraph { names { outer: ch } root { site 0 } } eta { 0 -> 7 } }";
    try {
        brs::parse_spec_text(bad_eta);
        CHECK(false);
    } catch (const brs::BrsParseError& e) {
        CHECK(std::string(e.what()).find("unknown redex site") != std::string::npos);
        CHECK(e.line >= 1);
    }
    // Non-total eta.
    std::string partial_eta =
        "brs 1 signature { sum:0 get:1 send:1 } agent ccs \"0\" "
        "rule r { redex bigraph { names { outer: ch } root { node s1 sum { node p1 get { site 0 } "
        "} } links { port(p1,1) -> ch } } "
        "reactum bigraph { names { outer: ch } root { site 0 } } }";
    CHECK_THROWS_AS(brs::parse_spec_text(partial_eta), brs::BrsParseError);
}

TEST_CASE("cmd_validate: the vending machine is valid, exit 0") {
    std::ostringstream out;
    CHECK(cmd_validate(vending(), out) == exit_ok);
    CHECK(out.str().find("atoms 70") != std::string::npos);
    CHECK(out.str().find("rewrite steps 21") != std::string::npos);
    CHECK(out.str().find("valid") != std::string::npos);
}

TEST_CASE("cmd_validate: the cyclic fixture is invalid, exit 1") {
    brs::BrsSpec spec = brs::parse_spec_file(fixture("cycle.brs"));
    CHECK_FALSE(spec.agent_ok);
    std::ostringstream out;
    CHECK(cmd_validate(spec, out) == exit_invalid);
    CHECK(out.str().find("invalid") != std::string::npos);
    // Reacting on a broken agent is refused.
    std::istringstream in;
    std::ostringstream rout;
    CHECK(cmd_react(spec, ReactArgs{}, in, rout) == exit_invalid);
}

TEST_CASE("cmd_validate: the empty agent is valid") {
    brs::BrsSpec spec = brs::parse_spec_text(
        "brs 1 signature { sum:0 } agent bigraph { root { } }");
    std::ostringstream out;
    CHECK(cmd_validate(spec, out) == exit_ok);
}

TEST_CASE("cmd_react: one step, all strategy, two successors") {
    ReactArgs args;
    args.steps = 1;
    args.strategy = "all";
    std::istringstream in;
    std::ostringstream out;
    CHECK(cmd_react(vending(), args, in, out) == exit_ok);
    CHECK(out.str().find("states 3") != std::string::npos);
    CHECK(count_lines_with(out.str(), "step s0 -tau->") == 2);
}

TEST_CASE("cmd_react: --steps 0 shows the initial state only") {
    ReactArgs args;
    args.steps = 0;
    args.strategy = "all";
    std::istringstream in;
    std::ostringstream out;
    CHECK(cmd_react(vending(), args, in, out) == exit_ok);
    CHECK(out.str().find("states 1") != std::string::npos);
}

TEST_CASE("cmd_react: direct and kernel paths agree on the state graph") {
    for (const char* via : {"direct", "kernel"}) {
        ReactArgs args;
        args.strategy = "all";
        args.steps = 8;
        args.via = via;
        std::istringstream in;
        std::ostringstream out;
        REQUIRE(cmd_react(vending(), args, in, out) == exit_ok);
        INFO(via);
        CHECK(out.str().find("states 4") != std::string::npos);
        CHECK(count_lines_with(out.str(), "step ") == 3);
        CHECK(count_lines_with(out.str(), "terminal") == 1);
    }
}

TEST_CASE("cmd_react: no match is reported with exit 0") {
    brs::BrsSpec spec = brs::parse_spec_text(
        "brs 1 signature { sum:0 get:1 send:1 } agent ccs \"0\"");
    ReactArgs args;
    std::istringstream in;
    std::ostringstream out;
    CHECK(cmd_react(spec, args, in, out) == exit_ok);
    CHECK(out.str().find("no match") != std::string::npos);
}

TEST_CASE("cmd_react: interactive stepping reads choices") {
    ReactArgs args;
    args.strategy = "interactive";
    std::istringstream in("1\n\n");
    std::ostringstream out;
    CHECK(cmd_react(vending(), args, in, out) == exit_ok);
    CHECK(out.str().find("matches:") != std::string::npos);
    CHECK(out.str().find("[1] tau") != std::string::npos);
    CHECK(out.str().find("states 2") != std::string::npos);
}

TEST_CASE("cmd_export: dot contains the expected shapes") {
    std::ostringstream out;
    CHECK(cmd_export(vending(), "dot", "", out) == exit_ok);
    CHECK(count_lines_with(out.str(), "shape=ellipse") == 11);
    CHECK(count_lines_with(out.str(), "shape=house") == 1);
    CHECK(count_lines_with(out.str(), "shape=diamond") == 3);

    brs::BrsSpec empty = brs::parse_spec_text(
        "brs 1 signature { sum:0 } agent bigraph { root { } }");
    std::ostringstream out2;
    CHECK(cmd_export(empty, "dot", "", out2) == exit_ok);
    CHECK(count_lines_with(out2.str(), "shape=ellipse") == 0);
}

TEST_CASE("cmd_export: atoms round trip through a temp file and re-validate") {
    std::string path = "atoms_roundtrip.tmp";
    std::ostringstream out;
    REQUIRE(cmd_export(vending(), "atoms", path, out) == exit_ok);

    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    Multiset back = rel::multiset_from_text(buf.str());
    CHECK(back == rel::encode(vending().agent, "B"));
    CHECK(rel::check_valid(back, vending().sig).valid);

    // And as an agent clause.
    std::string spec_text = "brs 1 signature { sum:0 get:1 send:1 } agent atoms \"" + path + "\"";
    brs::BrsSpec spec = brs::parse_spec_text(spec_text, ".");
    CHECK(spec.agent_ok);
    CHECK(lean_equiv(spec.agent, vending().agent).has_value());
    std::remove(path.c_str());
}

TEST_CASE("cmd_export: trace json lists states and steps") {
    std::ostringstream out;
    CHECK(cmd_export(vending(), "trace-json", "", out) == exit_ok);
    CHECK(out.str().find("\"bigrel-trace\"") != std::string::npos);
    CHECK(out.str().find("\"rule\": \"tau\"") != std::string::npos);

    CHECK(cmd_export(vending(), "nonsense", "", out) == exit_usage);
}

TEST_CASE("cmd_react: seeded runs are byte-identical") {
    ReactArgs args;
    args.strategy = "random";
    args.seed = 9;
    args.steps = 4;
    std::ostringstream a, b;
    std::istringstream in1, in2;
    CHECK(cmd_react(vending(), args, in1, a) == exit_ok);
    CHECK(cmd_react(vending(), args, in2, b) == exit_ok);
    CHECK(a.str() == b.str());
}
