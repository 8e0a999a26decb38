#include <iostream>

#include <CLI11.hpp>

#include "isosing/error.hpp"
#include "isosing/version.hpp"
#include "isosing_cli/commands.hpp"
#include "isosing_cli/io.hpp"

using namespace isosing;
using namespace isosing::cli;

int main(int argc, char** argv) {
  CLI::App app{"Singular solutions of -Lap u + a e^{bu} = m |grad u|^q on the punctured unit disk"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "JSON run configuration");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "parallel sweep rows")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", o.seed, "reserved; all algorithms are deterministic");
  };
  CLI::App* solve = app.add_subcommand("solve", "solve one configuration, write profile CSV and report JSON");
  common(solve, true);
  CLI::App* verify = app.add_subcommand("verify", "verify a profile CSV against its configuration");
  common(verify, true);
  verify->add_option("--profile", o.profile, "profile CSV (default: <out>/profile.csv)");
  CLI::App* sweep = app.add_subcommand("sweep", "solve a parameter grid into one CSV table");
  common(sweep, true);
  CLI::App* oracle = app.add_subcommand("oracle", "closed-form and identity self-test");
  common(oracle, false);
  oracle->add_flag("--inject-sign-error", o.inject_sign_error, "negative control: flip the absorption sign");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*solve) return cmd_solve(o, std::cout);
    if (*verify) return cmd_verify(o, std::cout);
    if (*sweep) return cmd_sweep(o, std::cout);
    return cmd_oracle(o, std::cout);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
