#pragma once

#include <string>
#include <utility>
#include <vector>

#include "braggsim/witness.hpp"

namespace braggsim {

/// One run's parameters. Couplings and detunings are in units of the
/// quasiparticle energy; tau is the dimensionless interaction time. The probe
/// amplitudes are sqrt(n_p) e^{i theta}.
struct RunConfig {
  double eta_a = 7.7;
  double eta_b = 7.7;
  double delta_a = 1.0;
  double delta_b = 1.0;
  double n_p = 10.0;
  double theta_alpha = 0.0;
  double theta_beta = 0.0;
  double bs_t_mag = 0.7071067811865476;
  double phi = 0.0;
  double phi_prime = 0.0;
  double tau_start = 0.0;
  double tau_stop = 10.0;
  double tau_step = 0.05;
  int n_max = 2;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const RunConfig& config);

/// Reads a JSON object whose keys are exactly the RunConfig field names;
/// absent fields keep their defaults.
RunConfig parse_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);

/// Applies one `key=value` override (the CLI --set flag).
void apply_override(RunConfig& config, const std::string& assignment);

/// One evaluated sweep point. A point whose coincidence probability vanishes
/// is flagged: coincidence_weight is 0 and the witness fields are NaN.
struct SweepRow {
  double tau = 0.0;
  double eta_a = 0.0;
  double eta_b = 0.0;
  double n_p = 0.0;
  double theta_ab = 0.0;
  double min_pt_eig = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_minus_rhs = 0.0;
  bool violated = false;
  double xi_xp = 0.0;
  double coincidence_weight = 0.0;
  double n2 = 0.0;
  double n_tot = 0.0;
  double m_term = 0.0;
  double cross_abs = 0.0;
  bool flagged = false;  // not a CSV column; mirrored by the NaN fields
};

enum class Figure { fig2, fig3, fig4, fig5, generic };

Figure figure_from_name(const std::string& name);

/// Full pipeline for one grid point: propagate both condensates, project on
/// the coincidence, evaluate the witness report.
SweepRow evaluate_point(const RunConfig& config, double tau);

/// An inclusive start:stop:step grid.
std::vector<double> make_grid(double start, double stop, double step);

/// Named grids for the generic sweep, crossed in the given order (first key
/// outermost). Keys: tau, eta_a, eta_b, delta_a, delta_b, n_p, theta_alpha,
/// theta_beta. When tau is not supplied the point is evaluated at tau_stop.
using SweepGrids = std::vector<std::pair<std::string, std::vector<double>>>;

/// Preset sweeps:
///   fig2, fig3 - tau sweep at n_p in {10, 20}
///   fig4       - tau sweep at theta_ab in {0, pi/2}
///   fig5       - eta sweep (eta_grid, default 1:12:0.5) at tau = 5 for
///                theta_ab in {0, pi/2}
///   generic    - cross product of `grids`
std::vector<SweepRow> run_figure_sweep(const RunConfig& config, Figure figure,
                                       const std::vector<double>& eta_grid = {},
                                       const SweepGrids& grids = {});

/// Header plus one record per row, floats at 12 significant digits.
std::string emit_csv(const std::vector<SweepRow>& rows);

}  // namespace braggsim
