#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hpm/errors.hpp"
#include "output.hpp"

// Exit codes: 0 all checks pass, 1 numeric failure, 2 usage error.
int main(int argc, char** argv) {
  CLI::App app{"Moments of the Hua-Pickrell (generalized Cauchy) ensemble"};
  app.require_subcommand(1);
  auto cmds = hpm::cli::add_commands(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto& c : cmds) {
    if (!c.app->parsed()) continue;
    try {
      return c.run();
    } catch (const hpm::cli::UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return 2;
    } catch (const hpm::DomainError& e) {
      std::cerr << "domain error: " << e.what() << '\n';
      return 2;
    } catch (const hpm::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
