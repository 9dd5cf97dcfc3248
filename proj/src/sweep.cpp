#include "braggsim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace braggsim {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

double get_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) {
    throw std::invalid_argument(key + ": must be a number");
  }
  return j.at(key).get<double>();
}

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

SweepRow flagged_row(const RunConfig& config, double tau) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.tau = tau;
  row.eta_a = config.eta_a;
  row.eta_b = config.eta_b;
  row.n_p = config.n_p;
  row.theta_ab = config.theta_alpha - config.theta_beta;
  row.min_pt_eig = nan;
  row.lhs = nan;
  row.rhs = nan;
  row.lhs_minus_rhs = nan;
  row.violated = false;
  row.xi_xp = nan;
  row.coincidence_weight = 0.0;
  row.n2 = nan;
  row.n_tot = nan;
  row.m_term = nan;
  row.cross_abs = nan;
  row.flagged = true;
  return row;
}

std::vector<double> tau_grid(const RunConfig& config) {
  std::vector<double> grid;
  for (long long i = 0;; ++i) {
    const double tau = config.tau_start + static_cast<double>(i) * config.tau_step;
    if (tau > config.tau_stop + 0.5 * config.tau_step) break;
    grid.push_back(tau);
  }
  return grid;
}

void set_field(RunConfig& config, const std::string& key, double value) {
  if (key == "eta_a") config.eta_a = value;
  else if (key == "eta_b") config.eta_b = value;
  else if (key == "delta_a") config.delta_a = value;
  else if (key == "delta_b") config.delta_b = value;
  else if (key == "n_p") config.n_p = value;
  else if (key == "theta_alpha") config.theta_alpha = value;
  else if (key == "theta_beta") config.theta_beta = value;
  else if (key == "bs_t_mag") config.bs_t_mag = value;
  else if (key == "phi") config.phi = value;
  else if (key == "phi_prime") config.phi_prime = value;
  else if (key == "tau_start") config.tau_start = value;
  else if (key == "tau_stop") config.tau_stop = value;
  else if (key == "tau_step") config.tau_step = value;
  else if (key == "n_max") config.n_max = static_cast<int>(std::llround(value));
  else throw std::invalid_argument("unknown config field: " + key);
}

}  // namespace

void validate(const RunConfig& config) {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(config.eta_a) && std::abs(config.eta_a) < 1e3, "eta_a",
          "must be finite with magnitude < 1e3");
  require(finite(config.eta_b) && std::abs(config.eta_b) < 1e3, "eta_b",
          "must be finite with magnitude < 1e3");
  require(finite(config.delta_a), "delta_a", "must be finite");
  require(finite(config.delta_b), "delta_b", "must be finite");
  require(finite(config.n_p) && config.n_p >= 0.0 && config.n_p <= 1e6, "n_p",
          "must lie in [0, 1e6]");
  require(finite(config.theta_alpha), "theta_alpha", "must be finite");
  require(finite(config.theta_beta), "theta_beta", "must be finite");
  require(finite(config.bs_t_mag) && config.bs_t_mag >= 0.0 && config.bs_t_mag <= 1.0,
          "bs_t_mag", "must lie in [0, 1]");
  require(finite(config.phi), "phi", "must be finite");
  require(finite(config.phi_prime), "phi_prime", "must be finite");
  require(finite(config.tau_start) && config.tau_start >= 0.0, "tau_start", "must be >= 0");
  require(finite(config.tau_stop) && config.tau_stop >= config.tau_start, "tau_stop",
          "must be >= tau_start");
  require(finite(config.tau_step) && config.tau_step > 0.0, "tau_step", "must be > 0");
  require(config.n_max >= 2, "n_max", "must be >= 2");
}

RunConfig config_from_json_text(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config parse error: ") + err.what());
  }
  if (!parsed.is_object()) {
    throw std::invalid_argument("config parse error: top-level value must be an object");
  }
  RunConfig config;
  for (const auto& [key, value] : parsed.items()) {
    (void)value;
    if (key == "n_max") {
      if (!parsed.at(key).is_number_integer()) {
        throw std::invalid_argument("n_max: must be an integer");
      }
      config.n_max = parsed.at(key).get<int>();
    } else {
      set_field(config, key, get_number(parsed, key));
    }
  }
  validate(config);
  return config;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must look like key=value, got: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  double value = 0.0;
  try {
    size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": cannot parse numeric value '" + text + "'");
  }
  set_field(config, key, value);
}

Figure figure_from_name(const std::string& name) {
  if (name == "fig2") return Figure::fig2;
  if (name == "fig3") return Figure::fig3;
  if (name == "fig4") return Figure::fig4;
  if (name == "fig5") return Figure::fig5;
  if (name == "generic" || name == "sweep") return Figure::generic;
  throw std::invalid_argument("unknown figure name: " + name);
}

SweepRow evaluate_point(const RunConfig& config, double tau) {
  const ScatterCoeffs coeffs_a = propagate({cplx(config.eta_a, 0.0), config.delta_a}, tau);
  const ScatterCoeffs coeffs_b = propagate({cplx(config.eta_b, 0.0), config.delta_b}, tau);
  // snap rounding residue of cos/sin at right-angle phases so configured
  // quarter-phase probes cancel exactly where the algebra says they do
  auto probe_amplitude = [](double n_p, double theta) {
    cplx z = std::polar(std::sqrt(n_p), theta);
    if (std::abs(z.real()) < 1e-15 * std::abs(z)) z = cplx(0.0, z.imag());
    if (std::abs(z.imag()) < 1e-15 * std::abs(z)) z = cplx(z.real(), 0.0);
    return z;
  };
  const ProbeField probe_a{probe_amplitude(config.n_p, config.theta_alpha)};
  const ProbeField probe_b{probe_amplitude(config.n_p, config.theta_beta)};
  const BeamSplitter bs = make_beam_splitter(config.bs_t_mag, config.phi, config.phi_prime);

  JointState state;
  try {
    state = conditional_state(coeffs_a, coeffs_b, probe_a, probe_b, bs, config.n_max);
  } catch (const ZeroCoincidenceError&) {
    return flagged_row(config, tau);
  }
  const WitnessReport rep = evaluate_witness(state);

  SweepRow row;
  row.tau = tau;
  row.eta_a = config.eta_a;
  row.eta_b = config.eta_b;
  row.n_p = config.n_p;
  row.theta_ab = config.theta_alpha - config.theta_beta;
  row.min_pt_eig = rep.min_pt_eig;
  row.lhs = rep.lhs;
  row.rhs = rep.rhs;
  row.lhs_minus_rhs = rep.lhs - rep.rhs;
  row.violated = rep.violated;
  row.xi_xp = rep.xi_xp;
  row.coincidence_weight = state.raw_weight;
  row.n2 = rep.n2;
  row.n_tot = rep.n_tot;
  row.m_term = rep.m_term;
  row.cross_abs = std::abs(rep.cross);
  return row;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("grid step must be > 0");
  }
  if (stop < start) {
    throw std::invalid_argument("grid stop must be >= start");
  }
  std::vector<double> grid;
  for (long long i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + 0.5 * step) break;
    grid.push_back(v);
  }
  return grid;
}

std::vector<SweepRow> run_figure_sweep(const RunConfig& config, Figure figure,
                                       const std::vector<double>& eta_grid,
                                       const SweepGrids& grids) {
  validate(config);
  std::vector<SweepRow> rows;

  switch (figure) {
    case Figure::fig2:
    case Figure::fig3: {
      for (double n_p : {10.0, 20.0}) {
        RunConfig cfg = config;
        cfg.n_p = n_p;
        for (double tau : tau_grid(cfg)) rows.push_back(evaluate_point(cfg, tau));
      }
      break;
    }
    case Figure::fig4: {
      for (double theta : {0.0, kPi / 2.0}) {
        RunConfig cfg = config;
        cfg.theta_alpha = theta;
        cfg.theta_beta = 0.0;
        for (double tau : tau_grid(cfg)) rows.push_back(evaluate_point(cfg, tau));
      }
      break;
    }
    case Figure::fig5: {
      const std::vector<double> etas = eta_grid.empty() ? make_grid(1.0, 12.0, 0.5) : eta_grid;
      for (double theta : {0.0, kPi / 2.0}) {
        for (double eta : etas) {
          RunConfig cfg = config;
          cfg.theta_alpha = theta;
          cfg.theta_beta = 0.0;
          cfg.eta_a = eta;
          cfg.eta_b = eta;
          rows.push_back(evaluate_point(cfg, 5.0));
        }
      }
      break;
    }
    case Figure::generic: {
      if (grids.empty()) {
        RunConfig cfg = config;
        for (double tau : tau_grid(cfg)) rows.push_back(evaluate_point(cfg, tau));
        break;
      }
      // Cross product, first key outermost; odometer over grid indices.
      std::vector<size_t> idx(grids.size(), 0);
      bool done = false;
      while (!done) {
        RunConfig cfg = config;
        double tau = config.tau_stop;
        for (size_t k = 0; k < grids.size(); ++k) {
          const auto& [key, values] = grids[k];
          const double v = values.at(idx[k]);
          if (key == "tau") {
            tau = v;
          } else {
            set_field(cfg, key, v);
          }
        }
        validate(cfg);
        rows.push_back(evaluate_point(cfg, tau));
        done = true;
        for (size_t k = grids.size(); k-- > 0;) {
          if (++idx[k] < grids[k].second.size()) {
            done = false;
            break;
          }
          idx[k] = 0;
        }
      }
      break;
    }
  }
  return rows;
}

std::string emit_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "tau,eta_a,eta_b,n_p,theta_ab,min_pt_eig,lhs,rhs,lhs_minus_rhs,violated,xi_xp,"
      "coincidence_weight,n2,n_tot,m_term,cross_abs\n";
  for (const SweepRow& r : rows) {
    out += fmt(r.tau) + ',' + fmt(r.eta_a) + ',' + fmt(r.eta_b) + ',' + fmt(r.n_p) + ',' +
           fmt(r.theta_ab) + ',' + fmt(r.min_pt_eig) + ',' + fmt(r.lhs) + ',' + fmt(r.rhs) +
           ',' + fmt(r.lhs_minus_rhs) + ',' + (r.violated ? "1" : "0") + ',' + fmt(r.xi_xp) +
           ',' + fmt(r.coincidence_weight) + ',' + fmt(r.n2) + ',' + fmt(r.n_tot) + ',' +
           fmt(r.m_term) + ',' + fmt(r.cross_abs) + '\n';
  }
  return out;
}

}  // namespace braggsim
