// Acceptance suite: one test case per criterion, one [PASS] line each.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>
#include <random>
#include <sstream>

#include "bigrel/ccs.hpp"
#include "bigrel/cli.hpp"
#include "bigrel/compile_rule.hpp"
#include "bigrel/equiv.hpp"
#include "bigrel/generate.hpp"
#include "bigrel/partition.hpp"
#include "bigrel/validity.hpp"
#include "ccs_oracle.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bigrel;
using namespace bigrel::rel;
using bigrel::ccs::CcsTerm;
using bigrel::ccs::ccs_to_bigraph;
using bigrel::ccs::parse_ccs;
using bigrel::ccs::tau_rule;

namespace {

void pass(const std::string& line) { std::cout << "[PASS] " << line << std::endl; }

bool equiv_trimmed(const Bigraph& a, const Bigraph& b) {
    return lean_equiv(drop_idle_outer_names(a), drop_idle_outer_names(b)).has_value();
}

CcsTerm random_term(std::mt19937_64& rng, int max_prefixes) {
    auto chan = [&]() { return std::string(1, static_cast<char>('a' + rng() % 2)); };
    auto prefix = [&](auto&& self, int budget) -> CcsTerm {
        CcsTerm cont = budget > 0 && rng() % 2 ? self(self, budget - 1) : CcsTerm::nil();
        return rng() % 2 ? CcsTerm::get(chan(), std::move(cont))
                         : CcsTerm::send(chan(), std::move(cont));
    };
    std::vector<CcsTerm> comps;
    int budget = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_prefixes));
    int used = 0;
    while (used < budget) {
        if (budget - used >= 2 && rng() % 3 == 0) {
            comps.push_back(CcsTerm::sum({prefix(prefix, 1), prefix(prefix, 1)}));
            used += 2;
        } else {
            comps.push_back(prefix(prefix, 1));
            used += 1;
        }
    }
    return comps.size() == 1 ? comps[0] : CcsTerm::par(std::move(comps));
}

}  // namespace

TEST_CASE("criterion 1: vending-machine validity with the pinned atom count") {
    Bigraph vm = ccs_to_bigraph(parse_ccs("'c.co | c.'co + c.'t"));
    Multiset enc = encode(vm, "B");

    // Golden value from the counting oracle over the structure
    // definition; pinned, not recomputed from the encoder.
    REQUIRE(oracle::encoding_size(vm) == 70);
    REQUIRE(enc.size() == 70);

    auto rep = check_valid(enc, vm.sig);
    REQUIRE(rep.valid);
    REQUIRE(rep.normal_form.empty());
    REQUIRE(static_cast<std::int64_t>(rep.trace.steps.size()) <= enc.size());
    REQUIRE(static_cast<std::int64_t>(rep.trace.steps.size()) == oracle::validity_steps(vm));

    pass("criterion 1: vending machine encodes to 70 atoms and rewrites to the empty set in 21 <= 70 steps");
}

TEST_CASE("criterion 2: one-step reduction yields the two expected reducts") {
    Bigraph vm = ccs_to_bigraph(parse_ccs("'c.co | c.'co + c.'t"));
    BrsOptions opts;
    opts.strategy = BrsStrategy::all;
    opts.max_steps = 1;
    BrsTrace trace = run_brs(vm, {tau_rule()}, opts);

    REQUIRE(trace.states.size() == 3);  // the agent plus exactly two successors
    Bigraph coffee = ccs_to_bigraph(parse_ccs("co | 'co"));
    Bigraph tea = ccs_to_bigraph(parse_ccs("co | 't"));
    bool s1_coffee = equiv_trimmed(trace.states[1], coffee);
    bool s2_coffee = equiv_trimmed(trace.states[2], coffee);
    bool s1_tea = equiv_trimmed(trace.states[1], tea);
    bool s2_tea = equiv_trimmed(trace.states[2], tea);
    REQUIRE(((s1_coffee && s2_tea) || (s1_tea && s2_coffee)));

    // The same through the command line surface.
    brs::BrsSpec spec = brs::parse_spec_text(
        "brs 1 signature { sum:0 get:1 send:1 } agent ccs \"'c.co | c.'co + c.'t\"\n"
        "rule tau { redex bigraph { names { outer: ch } root { node s1 sum { node p1 get { site 0 "
        "} site 1 } node s2 sum { node p2 send { site 2 } site 3 } } links { port(p1,1) -> ch "
        "port(p2,1) -> ch } } reactum bigraph { names { outer: ch } root { site 0 site 1 } } eta "
        "{ 0 -> 0 1 -> 2 } }");
    cli::ReactArgs args;
    args.steps = 1;
    args.strategy = "all";
    std::istringstream in;
    std::ostringstream out;
    REQUIRE(cli::cmd_react(spec, args, in, out) == cli::exit_ok);
    REQUIRE(out.str().find("states 3") != std::string::npos);

    pass("criterion 2: one tau step gives exactly the coffee and tea reducts (exact up to lean equivalence)");
}

TEST_CASE("criterion 3: adequacy and inversion on 500 random bigraphs") {
    std::mt19937_64 rng(20240817);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        Bigraph b = random_bigraph(rng);  // <= 10 nodes, <= 4 controls
        Multiset enc = encode(b, "B");
        Bigraph back = interpret(enc, b.sig);
        REQUIRE(lean_equiv(back, b).has_value());
        REQUIRE(encode(back, "B") == enc);
        ++checked;
    }
    REQUIRE(checked == 500);
    pass("criterion 3: 500/500 round trips: interpret(encode(B)) equivalent to B, encodings equal");
}

TEST_CASE("criterion 4: confluence of validity runs on valid encodings") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        Bigraph b = random_bigraph(rng);
        Multiset enc = encode(b, "B");
        auto rules = validity_rules(b.sig);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Engine eng;
            auto res = eng.run(rules.rules, enc, Strategy::random(seed),
                               static_cast<std::uint64_t>(enc.size()) + 1);
            REQUIRE(res.state.empty());
        }
    }
    pass("criterion 4: 50 valid encodings x 20 random-strategy runs all reach the empty set");
}

TEST_CASE("criterion 5: composition and juxtaposition as multiset unions") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 200; ++i) {
        auto [c, cp] = random_composable_pair(rng, true);
        Multiset lhs = encode(compose(c, cp), "B");
        auto pc = partition(c, "B");
        auto pcp = partition(cp, "B");
        Multiset rhs = pc.out + pc.core + eq_set(c, cp, "B") + pcp.core + pcp.inn;
        REQUIRE(lhs == rhs);
    }
    for (int i = 0; i < 200; ++i) {
        auto [g, f] = random_juxtaposable_pair(rng);
        Multiset lhs = encode(juxtapose(g, f), "B");
        Multiset rhs = shift_places(encode(g, "B"), f.inner.width, f.outer.width) + encode(f, "B");
        REQUIRE(lhs == rhs);
    }
    pass("criterion 5: 200 composable pairs and 200 juxtaposed pairs decompose as exact multiset unions");
}

TEST_CASE("criterion 6: direct and compiled executions coincide") {
    std::mt19937_64 rng(60606);
    ParametricReactionRule tau = tau_rule();
    CompiledProgram prog = compile_reaction(tau, tau.redex.sig);

    int agents = 0, reactions = 0;
    for (int iter = 0; iter < 60; ++iter) {
        Bigraph agent = ccs_to_bigraph(random_term(rng, 6));
        ++agents;

        NameSupply names;
        std::vector<Bigraph> direct;
        for (const auto& dec : find_matches(agent, tau))
            direct.push_back(apply_reaction(agent, tau, dec, names));

        Engine eng;
        std::vector<Bigraph> kernel;
        for (const auto& ms : kernel_successors(encode(agent, "B"), prog, eng))
            kernel.push_back(interpret(ms, agent.sig));

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
        auto d = dedup(direct), k = dedup(kernel);
        REQUIRE(d.size() == k.size());
        for (const auto& x : d) {
            bool hit = false;
            for (const auto& y : k)
                if (lean_equiv(x, y)) hit = true;
            REQUIRE(hit);
        }
        reactions += static_cast<int>(d.size());
    }
    REQUIRE(agents == 60);
    std::ostringstream msg;
    msg << "criterion 6: direct and compiled successor sets coincide on " << agents
        << " random agents (" << reactions << " distinct reducts, zero mismatches)";
    pass(msg.str());
}

TEST_CASE("criterion 7: injected defects are rejected") {
    Bigraph vm = fixtures::vending_machine();
    Term B = bigraph_term("B");
    Signature sig = vm.sig;

    // prnt cycle: a's parent becomes its own descendant e.
    {
        Multiset s = encode(vm, "B");
        REQUIRE(s.remove(Atom{p_prnt, {src_n(node_term("a")), dst_r(Term::nat(0)), B}}));
        s.add(Atom{p_prnt, {src_n(node_term("a")), dst_n(node_term("e")), B}});
        auto rep = check_valid(s, sig);
        REQUIRE_FALSE(rep.valid);
        REQUIRE_FALSE(rep.normal_form.empty());
    }
    // Duplicated structural atom.
    {
        Multiset s = encode(vm, "B");
        s.add(Atom{p_is_node, {node_term("a"), B}});
        auto rep = check_valid(s, sig);
        REQUIRE_FALSE(rep.valid);
        REQUIRE_FALSE(rep.uniqueness_violations.empty());
    }
    // has_child_p count off by one.
    {
        Multiset s = encode(vm, "B");
        REQUIRE(s.remove(Atom{p_has_child_p, {dst_r(Term::nat(0)), Term::nat(2), B}}));
        s.add(Atom{p_has_child_p, {dst_r(Term::nat(0)), Term::nat(3), B}});
        auto rep = check_valid(s, sig);
        REQUIRE_FALSE(rep.valid);
        REQUIRE_FALSE(rep.normal_form.empty());
    }
    // Port count violating the arity: a second port on the unary get e.
    {
        Multiset s = encode(vm, "B");
        s.add(Atom{p_is_port, {port_term("e", 2), B}});
        s.add(Atom{p_lp, {port_term("e", 2), node_term("e"), B}});
        s.add(Atom{p_link, {src_p(port_term("e", 2)), dst_o(name_term("co")), B}});
        REQUIRE(s.remove(Atom{p_has_child_l, {dst_o(name_term("co")), Term::nat(2), B}}));
        s.add(Atom{p_has_child_l, {dst_o(name_term("co")), Term::nat(3), B}});
        auto rep = check_valid(s, sig);
        REQUIRE_FALSE(rep.valid);
        REQUIRE_FALSE(rep.normal_form.empty());
    }
    pass("criterion 7: cycle, duplicate, mis-count and arity defects are each rejected");
}

TEST_CASE("criterion 8: instantiation unit behaviour on a five-node parameter") {
    // root 0: u(k1){ v(k0), w(k1) }, root 1: x(k0){ y0(k0) };
    // u links the outer name, w an internal edge.
    Signature sig;
    sig.declare("k0", 0);
    sig.declare("k1", 1);
    Bigraph p;
    p.sig = sig;
    p.outer.width = 2;
    p.outer.names = {"y"};
    p.edges = {"e"};
    auto node = [&](const std::string& v, const std::string& k, const Place& parent) {
        p.nodes.insert(v);
        p.ctrl[v] = k;
        p.prnt[NodeRef{v}] = parent;
    };
    node("u", "k1", RootRef{0});
    node("v", "k0", NodeRef{"u"});
    node("w", "k1", NodeRef{"u"});
    node("x", "k0", RootRef{1});
    node("y0", "k0", NodeRef{"x"});
    p.link[Port{"u", 1}] = OuterRef{"y"};
    p.link[Port{"w", 1}] = EdgeRef{"e"};
    REQUIRE(well_formed(p).ok());
    REQUIRE(p.nodes.size() == 5);

    NameSupply names;

    // delete (cardinality 0): tree 0 vanishes with its port atoms.
    Bigraph del = instantiate_eta({{0, 1}}, 1, p, names);
    REQUIRE(del.nodes == std::set<std::string>{"x", "y0"});
    REQUIRE(del.link.empty());

    // move (cardinality 1): the subtree survives unchanged up to
    // equivalence - here literally, support preserved.
    Bigraph mv = instantiate_eta({{0, 0}, {1, 1}}, 2, p, names);
    REQUIRE(mv == p);

    // copy (cardinality 2): two equivalent trees with fresh disjoint
    // node and port names, sharing the outer name and the edge.
    Bigraph cp = instantiate_eta({{0, 0}, {1, 0}}, 2, p, names);
    REQUIRE(well_formed(cp).ok());
    REQUIRE(cp.nodes.size() == 6);
    for (const auto& v : p.nodes) REQUIRE_FALSE(cp.nodes.count(v));
    int on_y = 0, on_e = 0;
    for (const auto& [pt, t] : cp.link) {
        if (t == Target{OuterRef{"y"}}) ++on_y;
        if (t == Target{EdgeRef{"e"}}) ++on_e;
    }
    REQUIRE(on_y == 2);
    REQUIRE(on_e == 2);
    // Hand-derived shape of each copy: k1 root child with a k0 and a k1
    // below it.
    std::map<Place, int> kids;
    for (const auto& [c, q] : cp.prnt) kids[q] += 1;
    REQUIRE(kids[Place{RootRef{0}}] == 1);
    REQUIRE(kids[Place{RootRef{1}}] == 1);

    pass("criterion 8: delete/move/copy behave as derived by hand on the five-node parameter");
}
