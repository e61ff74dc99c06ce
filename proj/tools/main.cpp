// chemoflux batch front door.
//
//   chemoflux <mode> --config <path> [--out <dir>] [--set key.path=value ...]
//
// Modes: simulate, picard, steady, averages, check.  Exit codes: 0 success,
// 2 configuration error, 3 numerical divergence, 4 self-check failure.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chemoflux/errors.hpp"
#include "chemoflux/run.hpp"

namespace {

struct ModeArgs {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
};

void add_mode(CLI::App& app, const std::string& name, const std::string& help, ModeArgs& args,
              bool config_required, CLI::App** sub_out) {
  CLI::App* sub = app.add_subcommand(name, help);
  CLI::Option* opt = sub->add_option("--config", args.config_path, "configuration file (JSON)");
  if (config_required) opt->required();
  sub->add_option("--out", args.out_dir, "output directory (overrides output.dir)");
  sub->add_option("--set", args.overrides, "override a config key, e.g. --set solver.dt_max=1e-4");
  *sub_out = sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-volume toolkit for a 1D cross-chemotaxis system"};
  app.require_subcommand(1);

  ModeArgs args;
  CLI::App* subs[5] = {};
  const char* names[5] = {"simulate", "picard", "steady", "averages", "check"};
  add_mode(app, "simulate", "march the four-field system and write field/diagnostic files",
           args, true, &subs[0]);
  add_mode(app, "picard", "run successive-approximation contraction studies", args, true,
           &subs[1]);
  add_mode(app, "steady", "evaluate steady closed forms / pseudo-time relaxation", args, true,
           &subs[2]);
  add_mode(app, "averages", "evaluate closed-form average dynamics", args, true, &subs[3]);
  add_mode(app, "check", "run the built-in verification battery", args, false, &subs[4]);

  CLI11_PARSE(app, argc, argv);

  std::string mode;
  for (int i = 0; i < 5; ++i) {
    if (subs[i] && subs[i]->parsed()) mode = names[i];
  }

  try {
    chemoflux::RunConfig cfg;
    if (!args.config_path.empty()) {
      cfg = chemoflux::parse_config_file(args.config_path, args.overrides);
    } else {
      cfg = chemoflux::parse_config("{}", args.overrides);
    }
    cfg.mode = chemoflux::parse_config("{\"mode\": \"" + mode + "\"}").mode;
    if (!args.out_dir.empty()) cfg.output.dir = args.out_dir;
    return chemoflux::run(cfg, std::cout);
  } catch (const chemoflux::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return chemoflux::kExitConfig;
  } catch (const chemoflux::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return chemoflux::kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
