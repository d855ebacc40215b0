#include <iostream>

#include <CLI11.hpp>

#include "pyjama/cli.hpp"
#include "pyjama/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pyjama stripe coverings, the 5/13 solenoid and strong approximation"};
  app.require_subcommand(1);

  pyjama::cli::RunConfig rc;
  std::string config_path;

  // options live on the top-level app; subcommands fall through to it
  app.fallthrough();
  app.add_option("--config", config_path, "input file")->required();
  app.add_option("--out", rc.output_dir, "output directory");
  app.add_option("--seed", rc.seed, "seed for sampled audits");
  app.add_option("--precision", rc.precision_k, "p-adic digits");
  app.add_flag("--refine", rc.refine, "re-split failing disk cells at half pitch (repeat or --refine=N)");
  app.add_flag("--svg,!--no-svg", rc.svg, "emit the SVG figure (default on)");
  const std::pair<const char*, const char*> commands[] = {
      {"verify-covering", "uncovered region of a rational stripe configuration"},
      {"obstructions", "catalog of rational obstruction points (a+bi)/m D"},
      {"irrational-cover", "certified disk coverage by the irrational-trick rotations"},
      {"rationality-check", "distance of the uncovered set to (1/n) D Z[i] minus D Z[i]"},
      {"orbit", "character sweep over a Theta orbit"},
      {"classify", "torsion and periodicity of a diagonal rational point"},
      {"density", "gap statistics for x2 x3 semigroups and circle rotations"},
      {"approx", "strong approximation certificate"},
      {"closure-index", "index of the closure of a rotation in the p-adic units"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  rc.command = pyjama::cli::parse_command(chosen->get_name());
  rc.input_path = config_path;
  return pyjama::cli::run(rc, std::cout, std::cerr);
}
