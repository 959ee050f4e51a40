#include "bigrel/cli.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bigrel/compile_rule.hpp"
#include "bigrel/dot.hpp"
#include "bigrel/equiv.hpp"
#include "bigrel/validity.hpp"

namespace bigrel {
namespace cli {

namespace {

std::string describe(const Bigraph& b) {
    std::ostringstream os;
    os << "nodes=" << b.nodes.size() << " edges=" << b.edges.size() << " width=" << b.outer.width
       << " names=";
    bool first = true;
    for (const auto& y : b.outer.names) {
        if (!first) os << ',';
        first = false;
        os << y;
    }
    if (first) os << "-";
    return os.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

std::string brs_trace_text(const BrsTrace& t) {
    std::ostringstream os;
    os << "brstrace 1 states=" << t.states.size() << " steps=" << t.steps.size() << '\n';
    for (std::size_t i = 0; i < t.states.size(); ++i)
        os << "state " << i << ' ' << describe(t.states[i]) << '\n';
    for (const auto& s : t.steps) os << "step " << s.from << ' ' << s.to << ' ' << s.rule << '\n';
    for (std::size_t s : t.terminal) os << "terminal " << s << '\n';
    if (t.step_bound_hit) os << "step-bound\n";
    if (t.state_bound_hit) os << "state-bound\n";
    return os.str();
}

// The kernel execution path: states are interpreted back after every
// compiled-program step so dedup and display match the direct path.
struct KernelRunner {
    const brs::BrsSpec& spec;
    std::vector<rel::CompiledProgram> programs;
    Engine engine;

    explicit KernelRunner(const brs::BrsSpec& s) : spec(s) {
        for (const auto& r : s.rules) programs.push_back(rel::compile_reaction(r, s.sig));
    }

    std::vector<std::pair<std::string, Bigraph>> successors(const Bigraph& state) {
        std::vector<std::pair<std::string, Bigraph>> out;
        Multiset enc = rel::encode(state, "B");
        for (const auto& prog : programs)
            for (auto& ms : rel::kernel_successors(enc, prog, engine))
                out.emplace_back(prog.label, rel::interpret(ms, spec.sig));
        return out;
    }
};

BrsTrace run_kernel(const brs::BrsSpec& spec, BrsStrategy strategy, std::uint64_t seed,
                    std::uint64_t max_steps, std::size_t max_states,
                    const std::function<std::optional<std::size_t>(
                        const Bigraph&, const std::vector<std::pair<std::string, Bigraph>>&)>&
                        choose) {
    KernelRunner runner(spec);
    BrsTrace trace;
    trace.states.push_back(spec.agent);

    if (strategy == BrsStrategy::all) {
        std::vector<std::size_t> frontier{0};
        for (std::uint64_t depth = 0; depth < max_steps && !frontier.empty(); ++depth) {
            std::vector<std::size_t> next;
            for (std::size_t si : frontier) {
                auto succ = runner.successors(trace.states[si]);
                if (succ.empty()) {
                    trace.terminal.push_back(si);
                    continue;
                }
                for (auto& [label, b] : succ) {
                    std::optional<std::size_t> existing;
                    for (std::size_t k = 0; k < trace.states.size(); ++k)
                        if (lean_equiv(trace.states[k], b)) {
                            existing = k;
                            break;
                        }
                    std::size_t to;
                    if (existing) {
                        to = *existing;
                    } else {
                        if (trace.states.size() >= max_states) {
                            trace.state_bound_hit = true;
                            continue;
                        }
                        trace.states.push_back(std::move(b));
                        to = trace.states.size() - 1;
                        next.push_back(to);
                    }
                    trace.steps.push_back(BrsStep{si, to, label});
                }
            }
            frontier = std::move(next);
            if (depth + 1 == max_steps && !frontier.empty()) trace.step_bound_hit = true;
        }
        return trace;
    }

    std::mt19937_64 rng(seed);
    std::size_t current = 0;
    for (std::uint64_t step = 0;; ++step) {
        auto succ = runner.successors(trace.states[current]);
        if (succ.empty()) {
            trace.terminal.push_back(current);
            break;
        }
        if (step == max_steps) {
            trace.step_bound_hit = true;
            break;
        }
        std::size_t pick = 0;
        if (strategy == BrsStrategy::random) {
            pick = std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng);
        } else if (strategy == BrsStrategy::callback) {
            auto c = choose(trace.states[current], succ);
            if (!c) break;
            if (*c >= succ.size()) throw std::out_of_range("interactive choice");
            pick = *c;
        }
        trace.states.push_back(std::move(succ[pick].second));
        trace.steps.push_back(BrsStep{current, trace.states.size() - 1, succ[pick].first});
        current = trace.states.size() - 1;
    }
    return trace;
}

}  // namespace

int cmd_validate(const brs::BrsSpec& spec, std::ostream& out, const std::string& trace_out) {
    Multiset enc = spec.agent_atoms ? *spec.agent_atoms : rel::encode(spec.agent, "B");
    auto rep = rel::check_valid(enc, spec.sig);
    out << "atoms " << enc.size() << '\n';
    out << "rewrite steps " << rep.trace.steps.size() << '\n';
    if (!rep.normal_form.empty()) out << "stuck atoms " << rep.normal_form.size() << '\n';
    for (const auto& u : rep.uniqueness_violations) out << "uniqueness: " << u << '\n';
    out << (rep.valid ? "valid" : "invalid: " + rep.reason) << '\n';
    if (!trace_out.empty()) write_output(trace_out, rep.trace.to_text(), out);
    return rep.valid ? exit_ok : exit_invalid;
}

int cmd_react(const brs::BrsSpec& spec, const ReactArgs& args, std::istream& in,
              std::ostream& out) {
    if (!spec.agent_ok) {
        out << "agent atoms are not a valid encoding; run validate\n";
        return exit_invalid;
    }
    std::uint64_t steps = args.steps.value_or(spec.max_steps);
    std::uint64_t seed = args.seed.value_or(spec.seed);

    BrsStrategy strategy;
    if (args.strategy == "first")
        strategy = BrsStrategy::first;
    else if (args.strategy == "random")
        strategy = BrsStrategy::random;
    else if (args.strategy == "all")
        strategy = BrsStrategy::all;
    else if (args.strategy == "interactive")
        strategy = BrsStrategy::callback;
    else {
        out << "unknown strategy " << args.strategy << '\n';
        return exit_usage;
    }
    if (args.via != "direct" && args.via != "kernel") {
        out << "unknown execution path " << args.via << '\n';
        return exit_usage;
    }

    out << "react strategy=" << args.strategy << " via=" << args.via << " steps=" << steps << '\n';

    BrsTrace trace;
    if (args.via == "direct") {
        BrsOptions opts;
        opts.strategy = strategy;
        opts.seed = seed;
        opts.max_steps = steps;
        opts.max_states = spec.max_states;
        if (strategy == BrsStrategy::callback) {
            opts.choose = [&](const Bigraph&,
                              const std::vector<std::pair<std::string, const Decomposition*>>& ms)
                -> std::optional<std::size_t> {
                out << "matches:\n";
                for (std::size_t i = 0; i < ms.size(); ++i) {
                    out << "  [" << i << "] " << ms[i].first << " @";
                    for (const auto& [lv, av] : ms[i].second->occ.node_map)
                        out << ' ' << lv << "->" << av;
                    out << '\n';
                }
                out << "choice> " << std::flush;
                std::string line;
                if (!std::getline(in, line) || line.empty()) return std::nullopt;
                return static_cast<std::size_t>(std::stoul(line));
            };
        }
        trace = run_brs(spec.agent, spec.rules, opts);
    } else {
        auto choose = [&](const Bigraph&, const std::vector<std::pair<std::string, Bigraph>>& succ)
            -> std::optional<std::size_t> {
            out << "successors:\n";
            for (std::size_t i = 0; i < succ.size(); ++i)
                out << "  [" << i << "] " << succ[i].first << " -> " << describe(succ[i].second)
                    << '\n';
            out << "choice> " << std::flush;
            std::string line;
            if (!std::getline(in, line) || line.empty()) return std::nullopt;
            return static_cast<std::size_t>(std::stoul(line));
        };
        trace = run_kernel(spec, strategy, seed, steps, spec.max_states, choose);
    }

    for (std::size_t i = 0; i < trace.states.size(); ++i)
        out << "s" << i << ": " << describe(trace.states[i]) << '\n';
    for (const auto& s : trace.steps)
        out << "step s" << s.from << " -" << s.rule << "-> s" << s.to << '\n';
    out << "states " << trace.states.size() << '\n';
    if (!trace.terminal.empty()) {
        out << "terminal";
        for (std::size_t s : trace.terminal) out << " s" << s;
        out << '\n';
    }
    if (trace.states.size() == 1 && trace.steps.empty()) out << "no match\n";
    if (trace.step_bound_hit) out << "step bound reached\n";
    if (trace.state_bound_hit) out << "state bound reached\n";

    if (!args.trace_out.empty()) write_output(args.trace_out, brs_trace_text(trace), out);
    return exit_ok;
}

int cmd_export(const brs::BrsSpec& spec, const std::string& format, const std::string& output,
               std::ostream& out) {
    if (!spec.agent_ok) {
        out << "agent atoms are not a valid encoding; run validate\n";
        return exit_invalid;
    }
    if (format == "dot") {
        write_output(output, bigraph_dot(spec.agent, "agent"), out);
        return exit_ok;
    }
    if (format == "atoms") {
        write_output(output, "atoms 1\n" + rel::to_text(rel::encode(spec.agent, "B")), out);
        return exit_ok;
    }
    if (format == "state-dot") {
        BrsOptions opts;
        opts.strategy = BrsStrategy::all;
        opts.seed = spec.seed;
        opts.max_steps = spec.max_steps;
        opts.max_states = spec.max_states;
        write_output(output, state_graph_dot(run_brs(spec.agent, spec.rules, opts)), out);
        return exit_ok;
    }
    if (format == "trace-json") {
        BrsOptions opts;
        opts.strategy = BrsStrategy::all;
        opts.seed = spec.seed;
        opts.max_steps = spec.max_steps;
        opts.max_states = spec.max_states;
        BrsTrace trace = run_brs(spec.agent, spec.rules, opts);

        nlohmann::json j;
        j["format"] = "bigrel-trace";
        j["version"] = 1;
        j["states"] = nlohmann::json::array();
        for (std::size_t i = 0; i < trace.states.size(); ++i) {
            nlohmann::json s;
            s["index"] = i;
            s["summary"] = describe(trace.states[i]);
            s["atoms"] = rel::to_text(rel::encode(trace.states[i], "B"));
            j["states"].push_back(std::move(s));
        }
        j["steps"] = nlohmann::json::array();
        for (const auto& s : trace.steps)
            j["steps"].push_back({{"from", s.from}, {"to", s.to}, {"rule", s.rule}});
        j["terminal"] = trace.terminal;
        write_output(output, j.dump(2) + "\n", out);
        return exit_ok;
    }
    out << "unknown export format " << format << '\n';
    return exit_usage;
}

}  // namespace cli
}  // namespace bigrel
