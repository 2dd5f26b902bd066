#pragma once

#include <functional>
#include <vector>

#include <CLI11.hpp>

namespace hpm::cli {

// Registers the subcommands on app. After parsing, the single entry whose
// subcommand was given runs the command and returns its exit code.
struct Command {
  CLI::App* app;
  std::function<int()> run;
};
std::vector<Command> add_commands(CLI::App& app);

}  // namespace hpm::cli
