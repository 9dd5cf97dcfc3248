// braggsim: conditional two-condensate entanglement sweeps over the
// Bragg-scattering coincidence model. Subcommands fig2..fig5 emit the preset
// parameter sweeps as CSV, `sweep` runs a generic grid, `check` runs the
// built-in cross-validation suites.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "braggsim/selfcheck.hpp"
#include "braggsim/sweep.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  double tau_max = std::nan("");
  std::vector<std::string> grids;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_grid) {
  cmd->add_option("--config", args.config_path, "JSON config file (RunConfig field names)");
  cmd->add_option("--out", args.out_path, "output CSV path (default stdout)");
  cmd->add_option("--set", args.overrides, "key=value config override (repeatable)");
  cmd->add_option("--tau-max", args.tau_max, "override tau_stop");
  if (with_grid) {
    cmd->add_option("--grid", args.grids,
                    "grid spec: start:stop:step (fig5 eta grid) or key=start:stop:step "
                    "(generic sweep, repeatable)");
  }
}

braggsim::RunConfig build_config(const CommonArgs& args) {
  braggsim::RunConfig config;
  if (!args.config_path.empty()) config = braggsim::parse_config(args.config_path);
  for (const std::string& assignment : args.overrides) {
    braggsim::apply_override(config, assignment);
  }
  if (!std::isnan(args.tau_max)) config.tau_stop = args.tau_max;
  braggsim::validate(config);
  return config;
}

std::vector<double> parse_grid_values(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {std::stod(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw std::invalid_argument("grid spec must be start:stop:step, got: " + text);
  }
  return braggsim::make_grid(std::stod(text.substr(0, c1)),
                             std::stod(text.substr(c1 + 1, c2 - c1 - 1)),
                             std::stod(text.substr(c2 + 1)));
}

void write_output(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << csv;
  if (!out) throw std::runtime_error("failed writing output file: " + out_path);
}

int run_figure(braggsim::Figure figure, const CommonArgs& args) {
  const braggsim::RunConfig config = build_config(args);

  std::vector<double> eta_grid;
  braggsim::SweepGrids grids;
  for (const std::string& spec : args.grids) {
    const auto eq = spec.find('=');
    if (figure == braggsim::Figure::fig5) {
      const std::string values = eq == std::string::npos ? spec : spec.substr(eq + 1);
      if (eq != std::string::npos && spec.substr(0, eq) != "eta") {
        throw std::invalid_argument("fig5 grid must be the eta grid, got key: " +
                                    spec.substr(0, eq));
      }
      eta_grid = parse_grid_values(values);
    } else {
      if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("sweep grid must look like key=start:stop:step, got: " +
                                    spec);
      }
      grids.emplace_back(spec.substr(0, eq), parse_grid_values(spec.substr(eq + 1)));
    }
  }

  const auto rows = braggsim::run_figure_sweep(config, figure, eta_grid, grids);
  write_output(braggsim::emit_csv(rows), args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-condensate Bragg-scattering coincidence simulator"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, braggsim::Figure>> figures = {
      {"fig2", braggsim::Figure::fig2}, {"fig3", braggsim::Figure::fig3},
      {"fig4", braggsim::Figure::fig4}, {"fig5", braggsim::Figure::fig5},
      {"sweep", braggsim::Figure::generic}};

  std::vector<CommonArgs> args(figures.size());
  std::vector<CLI::App*> cmds;
  for (size_t k = 0; k < figures.size(); ++k) {
    CLI::App* cmd = app.add_subcommand(
        figures[k].first, figures[k].first == "sweep" ? "generic grid sweep" :
                                                        "preset sweep " + figures[k].first);
    const bool with_grid = figures[k].first == "sweep" || figures[k].first == "fig5";
    add_common(cmd, args[k], with_grid);
    cmds.push_back(cmd);
  }
  CLI::App* check_cmd = app.add_subcommand("check", "run the built-in oracle suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check_cmd->parsed()) {
      return braggsim::run_self_checks(std::cout) ? 0 : 1;
    }
    for (size_t k = 0; k < figures.size(); ++k) {
      if (cmds[k]->parsed()) return run_figure(figures[k].second, args[k]);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
