#include <CLI11.hpp>
#include <iostream>

#include "bigrel/cli.hpp"

using namespace bigrel;

int main(int argc, char** argv) {
    CLI::App app{"bigraph rewriting over a relational multiset model"};
    app.require_subcommand(1);

    std::string spec_path;
    cli::ReactArgs react_args;
    std::uint64_t steps_flag = 0;
    std::uint64_t seed_flag = 0;
    std::string format = "dot";
    std::string output;

    std::string validate_trace;
    auto* validate = app.add_subcommand("validate", "check the agent's encoding");
    validate->add_option("spec", spec_path, "BRS file")->required();
    validate->add_option("--trace-out", validate_trace, "write the rewrite trace here");

    auto* react = app.add_subcommand("react", "run the reaction rules");
    react->add_option("spec", spec_path, "BRS file")->required();
    auto* steps_opt = react->add_option("--steps", steps_flag, "step bound");
    auto* seed_opt = react->add_option("--seed", seed_flag, "random seed");
    react->add_option("--strategy", react_args.strategy, "first|random|all|interactive")
        ->default_val("first");
    react->add_option("--via", react_args.via, "direct|kernel")->default_val("direct");
    react->add_option("--trace-out", react_args.trace_out, "write the structured trace here");

    auto* exp = app.add_subcommand("export", "export agent or trace artifacts");
    exp->add_option("spec", spec_path, "BRS file")->required();
    exp->add_option("--format", format, "dot|atoms|trace-json|state-dot")->default_val("dot");
    exp->add_option("--output", output, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::exit_usage;
    }

    brs::BrsSpec spec;
    try {
        spec = brs::parse_spec_file(spec_path);
    } catch (const brs::BrsParseError& e) {
        std::cerr << spec_path << ":" << e.what() << "\n";
        return cli::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return cli::exit_usage;
    }

    try {
        if (validate->parsed()) return cli::cmd_validate(spec, std::cout, validate_trace);
        if (react->parsed()) {
            if (*steps_opt) react_args.steps = steps_flag;
            if (*seed_opt) react_args.seed = seed_flag;
            return cli::cmd_react(spec, react_args, std::cin, std::cout);
        }
        if (exp->parsed()) return cli::cmd_export(spec, format, output, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    }
    return cli::exit_usage;
}
