#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "braggsim/bogoliubov.hpp"
#include "braggsim/fock.hpp"
#include "braggsim/selfcheck.hpp"
#include "braggsim/sweep.hpp"
#include "braggsim/witness.hpp"

namespace py = pybind11;
using namespace braggsim;

namespace {

std::vector<std::vector<cplx>> mat3_to_lists(const Mat3& m) {
  std::vector<std::vector<cplx>> out(3, std::vector<cplx>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j);
  }
  return out;
}

std::vector<std::vector<cplx>> state_to_lists(const JointState& state) {
  const int d = state.dim();
  std::vector<std::vector<cplx>> out(static_cast<size_t>(d), std::vector<cplx>(static_cast<size_t>(d)));
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) out[static_cast<size_t>(m)][static_cast<size_t>(n)] = state.at(m, n);
  }
  return out;
}

JointState state_from_lists(int n_max, const std::vector<std::vector<cplx>>& rows) {
  std::vector<cplx> flat;
  flat.reserve(static_cast<size_t>((n_max + 1) * (n_max + 1)));
  if (rows.size() != static_cast<size_t>(n_max + 1)) {
    throw std::invalid_argument("expected " + std::to_string(n_max + 1) + " rows");
  }
  for (const auto& row : rows) {
    if (row.size() != static_cast<size_t>(n_max + 1)) {
      throw std::invalid_argument("expected square amplitude matrix");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return JointState::from_unnormalized(n_max, std::move(flat));
}

}  // namespace

PYBIND11_MODULE(_braggsim, m) {
  m.doc() = "two-condensate Bragg-scattering coincidence simulator";

  py::register_exception<ZeroCoincidenceError>(m, "ZeroCoincidenceError");

  py::class_<ModeParams>(m, "ModeParams")
      .def(py::init<double>(), py::arg("x"))
      .def_readwrite("x", &ModeParams::x);

  py::class_<BogoliubovMode>(m, "BogoliubovMode")
      .def_readonly("u_q", &BogoliubovMode::u_q)
      .def_readonly("v_q", &BogoliubovMode::v_q)
      .def_readonly("f_q", &BogoliubovMode::f_q)
      .def_readonly("omega_b_over_mu", &BogoliubovMode::omega_b_over_mu);

  m.def("dispersion", [](double x) { return dispersion(ModeParams{x}); }, py::arg("x"));
  m.def("eta_from_physical", &eta_from_physical, py::arg("n_atoms"), py::arg("rabi"),
        py::arg("mode"));

  py::class_<CondensateDrive>(m, "CondensateDrive")
      .def(py::init<cplx, double>(), py::arg("eta_tilde"), py::arg("delta_tilde") = 1.0)
      .def_readwrite("eta_tilde", &CondensateDrive::eta_tilde)
      .def_readwrite("delta_tilde", &CondensateDrive::delta_tilde);

  py::class_<ScatterCoeffs>(m, "ScatterCoeffs")
      .def(py::init<cplx, cplx, cplx, double>(), py::arg("a_q"), py::arg("a_minus_q"),
           py::arg("a_c"), py::arg("tau") = 0.0)
      .def_readwrite("a_q", &ScatterCoeffs::a_q)
      .def_readwrite("a_minus_q", &ScatterCoeffs::a_minus_q)
      .def_readwrite("a_c", &ScatterCoeffs::a_c)
      .def_readwrite("tau", &ScatterCoeffs::tau)
      .def("symplectic_defect", &ScatterCoeffs::symplectic_defect);

  m.def("build_m_matrix",
        [](const CondensateDrive& drive) { return mat3_to_lists(build_m_matrix(drive)); },
        py::arg("drive"));
  m.def("propagate", &propagate, py::arg("drive"), py::arg("tau"));
  m.def("propagate_ode_oracle", &propagate_ode_oracle, py::arg("drive"), py::arg("tau"),
        py::arg("step"));

  py::class_<BeamSplitter>(m, "BeamSplitter")
      .def_readonly("t_mag", &BeamSplitter::t_mag)
      .def_readonly("phi", &BeamSplitter::phi)
      .def_readonly("phi_prime", &BeamSplitter::phi_prime)
      .def_property_readonly("r", &BeamSplitter::r)
      .def_property_readonly("t", &BeamSplitter::t)
      .def_property_readonly("r_prime", &BeamSplitter::r_prime)
      .def_property_readonly("t_prime", &BeamSplitter::t_prime);

  m.def("make_beam_splitter", &make_beam_splitter, py::arg("t_mag"), py::arg("phi") = 0.0,
        py::arg("phi_prime") = 0.0);

  py::class_<DetectorCouplings>(m, "DetectorCouplings")
      .def_readonly("d1_a", &DetectorCouplings::d1_a)
      .def_readonly("d1_b", &DetectorCouplings::d1_b)
      .def_readonly("d2_a", &DetectorCouplings::d2_a)
      .def_readonly("d2_b", &DetectorCouplings::d2_b);
  m.def("detector_couplings", &detector_couplings, py::arg("bs"));

  py::class_<ProbeField>(m, "ProbeField")
      .def(py::init<cplx>(), py::arg("amplitude"))
      .def_readwrite("amplitude", &ProbeField::amplitude);

  py::class_<JointState>(m, "JointState")
      .def_readonly("n_max", &JointState::n_max)
      .def_readonly("raw_weight", &JointState::raw_weight)
      .def_readonly("amp_scale", &JointState::amp_scale)
      .def("amplitudes", &state_to_lists)
      .def("at", [](const JointState& s, int m, int n) { return s.at(m, n); }, py::arg("m"),
           py::arg("n"));

  m.def("joint_state", &state_from_lists, py::arg("n_max"), py::arg("amplitudes"),
        "normalized JointState from a nested amplitude list");
  m.def("fix_global_phase", &fix_global_phase, py::arg("state"));
  m.def("conditional_state", &conditional_state, py::arg("coeffs_a"), py::arg("coeffs_b"),
        py::arg("probe_a"), py::arg("probe_b"), py::arg("bs"), py::arg("n_max") = 2);
  m.def("coincidence_weight", &coincidence_weight, py::arg("state"));
  m.def("brute_force_oracle", &brute_force_oracle, py::arg("coeffs_a"), py::arg("coeffs_b"),
        py::arg("probe_a"), py::arg("probe_b"), py::arg("bs"), py::arg("photon_cutoff"));

  m.def("schmidt_coefficients", &schmidt_coefficients, py::arg("state"));
  m.def("pt_spectrum_oracle", &pt_spectrum_oracle, py::arg("schmidt"));
  m.def("expectation", &expectation, py::arg("state"), py::arg("p"), py::arg("q"), py::arg("r"),
        py::arg("s"), "normal-ordered <A^dag^p A^q B^dag^r B^s>");
  m.def("pt_eigenvalues",
        [](const JointState& state) {
          return hermitian_eigenvalues(
              partial_transpose(density_matrix(state), state.n_max).entries);
        },
        py::arg("state"), "eigenvalues of the partially transposed density matrix, ascending");

  py::class_<Su11Moments>(m, "Su11Moments")
      .def_readonly("n2", &Su11Moments::n2)
      .def_readonly("n_tot", &Su11Moments::n_tot)
      .def_readonly("m_term", &Su11Moments::m_term)
      .def_readonly("cross", &Su11Moments::cross);

  py::class_<WitnessReport>(m, "WitnessReport")
      .def_readonly("n2", &WitnessReport::n2)
      .def_readonly("n_tot", &WitnessReport::n_tot)
      .def_readonly("m_term", &WitnessReport::m_term)
      .def_readonly("cross", &WitnessReport::cross)
      .def_readonly("var1", &WitnessReport::var1)
      .def_readonly("var2", &WitnessReport::var2)
      .def_readonly("lhs", &WitnessReport::lhs)
      .def_readonly("rhs", &WitnessReport::rhs)
      .def_readonly("violated", &WitnessReport::violated)
      .def_readonly("reduced_form", &WitnessReport::reduced_form)
      .def_readonly("min_pt_eig", &WitnessReport::min_pt_eig)
      .def_readonly("xi_xp", &WitnessReport::xi_xp);

  m.def("su11_moments", &su11_moments, py::arg("state"));
  m.def("su11_inequality", &su11_inequality, py::arg("state"));
  m.def("pt_variance_oracle", &pt_variance_oracle, py::arg("state"));
  m.def("negativity", &negativity, py::arg("state"));
  m.def("duan_simon_xi", &duan_simon_xi, py::arg("state"));
  m.def("evaluate_witness", &evaluate_witness, py::arg("state"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("eta_a", &RunConfig::eta_a)
      .def_readwrite("eta_b", &RunConfig::eta_b)
      .def_readwrite("delta_a", &RunConfig::delta_a)
      .def_readwrite("delta_b", &RunConfig::delta_b)
      .def_readwrite("n_p", &RunConfig::n_p)
      .def_readwrite("theta_alpha", &RunConfig::theta_alpha)
      .def_readwrite("theta_beta", &RunConfig::theta_beta)
      .def_readwrite("bs_t_mag", &RunConfig::bs_t_mag)
      .def_readwrite("phi", &RunConfig::phi)
      .def_readwrite("phi_prime", &RunConfig::phi_prime)
      .def_readwrite("tau_start", &RunConfig::tau_start)
      .def_readwrite("tau_stop", &RunConfig::tau_stop)
      .def_readwrite("tau_step", &RunConfig::tau_step)
      .def_readwrite("n_max", &RunConfig::n_max);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("tau", &SweepRow::tau)
      .def_readonly("eta_a", &SweepRow::eta_a)
      .def_readonly("eta_b", &SweepRow::eta_b)
      .def_readonly("n_p", &SweepRow::n_p)
      .def_readonly("theta_ab", &SweepRow::theta_ab)
      .def_readonly("min_pt_eig", &SweepRow::min_pt_eig)
      .def_readonly("lhs", &SweepRow::lhs)
      .def_readonly("rhs", &SweepRow::rhs)
      .def_readonly("lhs_minus_rhs", &SweepRow::lhs_minus_rhs)
      .def_readonly("violated", &SweepRow::violated)
      .def_readonly("xi_xp", &SweepRow::xi_xp)
      .def_readonly("coincidence_weight", &SweepRow::coincidence_weight)
      .def_readonly("n2", &SweepRow::n2)
      .def_readonly("n_tot", &SweepRow::n_tot)
      .def_readonly("m_term", &SweepRow::m_term)
      .def_readonly("cross_abs", &SweepRow::cross_abs)
      .def_readonly("flagged", &SweepRow::flagged);

  m.def("parse_config", &parse_config, py::arg("path"));
  m.def("config_from_json_text", &config_from_json_text, py::arg("text"));
  m.def("evaluate_point", &evaluate_point, py::arg("config"), py::arg("tau"));
  m.def("run_figure_sweep",
        [](const RunConfig& config, const std::string& figure, const std::vector<double>& eta_grid,
           const SweepGrids& grids) {
          return run_figure_sweep(config, figure_from_name(figure), eta_grid, grids);
        },
        py::arg("config"), py::arg("figure"), py::arg("eta_grid") = std::vector<double>{},
        py::arg("grids") = SweepGrids{});
  m.def("emit_csv", &emit_csv, py::arg("rows"));
  m.def("make_grid", &make_grid, py::arg("start"), py::arg("stop"), py::arg("step"));

  m.def("run_self_checks", []() {
    std::ostringstream out;
    const bool ok = run_self_checks(out);
    return py::make_tuple(ok, out.str());
  });
}
