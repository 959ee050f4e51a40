#ifndef BIGREL_CLI_HPP
#define BIGREL_CLI_HPP

#include <iostream>
#include <optional>
#include <string>

#include "bigrel/brs_file.hpp"

namespace bigrel {
namespace cli {

// Exit code contract: 0 success/valid, 1 invalid, 2 usage or parse
// error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_usage = 2;

struct ReactArgs {
    std::optional<std::uint64_t> steps;
    std::optional<std::uint64_t> seed;
    std::string strategy = "first";  // first | random | all | interactive
    std::string via = "direct";      // direct | kernel
    std::string trace_out;           // structured trace text, empty = none
};

// trace_out, when set, receives the full rewrite trace in the
// line-delimited text form.
int cmd_validate(const brs::BrsSpec& spec, std::ostream& out, const std::string& trace_out = "");
int cmd_react(const brs::BrsSpec& spec, const ReactArgs& args, std::istream& in,
              std::ostream& out);
// format: dot | atoms | trace-json | state-dot. Empty output path
// writes to out.
int cmd_export(const brs::BrsSpec& spec, const std::string& format, const std::string& output,
               std::ostream& out);

}  // namespace cli
}  // namespace bigrel

#endif
