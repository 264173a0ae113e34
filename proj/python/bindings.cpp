#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conoma/analysis.hpp"
#include "conoma/channel.hpp"
#include "conoma/core.hpp"
#include "conoma/oracle.hpp"
#include "conoma/schemes.hpp"

namespace py = pybind11;
using namespace conoma;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed-form power allocation for two-cell cooperative NOMA";

  py::class_<ScenarioParams>(m, "ScenarioParams")
      .def(py::init([](double p_max, double q, double noise, double rho) {
             return ScenarioParams{p_max, q, noise, rho};
           }),
           py::arg("p_max"), py::arg("q"), py::arg("noise"), py::arg("rho"))
      .def_readwrite("p_max", &ScenarioParams::p_max)
      .def_readwrite("q", &ScenarioParams::q)
      .def_readwrite("noise", &ScenarioParams::noise)
      .def_readwrite("rho", &ScenarioParams::rho)
      .def("__repr__", [](const ScenarioParams& p) {
        return "ScenarioParams(p_max=" + std::to_string(p.p_max) +
               ", q=" + std::to_string(p.q) + ", noise=" + std::to_string(p.noise) +
               ", rho=" + std::to_string(p.rho) + ")";
      });

  py::class_<ChannelPair>(m, "ChannelPair")
      .def(py::init([](std::complex<double> h1, std::complex<double> h2) {
             return ChannelPair{h1, h2};
           }),
           py::arg("h1"), py::arg("h2"))
      .def_readwrite("h1", &ChannelPair::h1)
      .def_readwrite("h2", &ChannelPair::h2);

  py::enum_<SchemeId>(m, "SchemeId")
      .value("S1", SchemeId::S1)
      .value("S2", SchemeId::S2)
      .value("S3", SchemeId::S3)
      .value("S4", SchemeId::S4);

  py::enum_<Branch>(m, "Branch")
      .value("FullDesired", Branch::FullDesired)
      .value("InteriorRoot", Branch::InteriorRoot)
      .value("SicAtFullPower", Branch::SicAtFullPower)
      .value("PowerBackoff", Branch::PowerBackoff);

  py::class_<AllocationResult>(m, "AllocationResult")
      .def_readonly("v1", &AllocationResult::v1)
      .def_readonly("v2", &AllocationResult::v2)
      .def_readonly("phase_w1", &AllocationResult::phase_w1)
      .def_readonly("phase_w2", &AllocationResult::phase_w2)
      .def_readonly("sinr_ue1", &AllocationResult::sinr_ue1)
      .def_readonly("sinr_ue2_at_ue1", &AllocationResult::sinr_ue2_at_ue1)
      .def_readonly("branch", &AllocationResult::branch);

  py::class_<SolverTrace>(m, "SolverTrace")
      .def_readonly("x_val", &SolverTrace::x_val)
      .def_readonly("y_val", &SolverTrace::y_val)
      .def_readonly("a_val", &SolverTrace::a_val)
      .def_readonly("w_val", &SolverTrace::w_val)
      .def_readonly("xi_val", &SolverTrace::xi_val)
      .def_readonly("f_at_zero", &SolverTrace::f_at_zero)
      .def_readonly("f_at_sqrt_p", &SolverTrace::f_at_sqrt_p)
      .def_readonly("alpha", &SolverTrace::alpha)
      .def_readonly("beta", &SolverTrace::beta);

  py::class_<SchemeOutcome>(m, "SchemeOutcome")
      .def_readonly("scheme_id", &SchemeOutcome::scheme_id)
      .def_readonly("feasible", &SchemeOutcome::feasible)
      .def_readonly("allocation", &SchemeOutcome::allocation)
      .def_readonly("rate_ue1", &SchemeOutcome::rate_ue1)
      .def_readonly("trace", &SchemeOutcome::trace);

  m.def("dbm_to_watts", &dbm_to_watts, py::arg("level_dbm"));
  m.def("watts_to_dbm", &watts_to_dbm, py::arg("watts"));
  m.def("rate_from_sinr", &rate_from_sinr, py::arg("sinr"));

  m.def("solve_scheme1", &solve_scheme1, py::arg("params"), py::arg("ch"));
  m.def("solve_scheme2", &solve_scheme2, py::arg("params"), py::arg("ch"));
  m.def("solve_scheme3", &solve_scheme3, py::arg("params"), py::arg("ch"));
  m.def("solve_scheme4", &solve_scheme4, py::arg("params"), py::arg("ch"));

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("alpha", &ComparisonReport::alpha)
      .def_readonly("beta", &ComparisonReport::beta)
      .def_readonly("rho_threshold", &ComparisonReport::rho_threshold)
      .def_readonly("rate_per_scheme", &ComparisonReport::rate_per_scheme)
      .def_readonly("best", &ComparisonReport::best);

  m.def("s4_vs_s3_threshold", &s4_vs_s3_threshold, py::arg("alpha"), py::arg("beta"));
  m.def(
      "empirical_crossover",
      [](const ScenarioParams& p, const ChannelPair& ch, double lo, double hi) {
        return empirical_crossover(p, ch, {lo, hi});
      },
      py::arg("params"), py::arg("ch"), py::arg("rho_lo"), py::arg("rho_hi"));
  m.def("rank_schemes", &rank_schemes, py::arg("params"), py::arg("ch"));

  py::class_<oracle::GridSpec>(m, "GridSpec")
      .def(py::init([](int points, int rounds, double shrink) {
             return oracle::GridSpec{points, rounds, shrink};
           }),
           py::arg("coarse_points") = 512, py::arg("refine_rounds") = 4,
           py::arg("shrink_factor") = 0.1);
  py::class_<oracle::PowerResult>(m, "OraclePowerResult")
      .def_readonly("feasible", &oracle::PowerResult::feasible)
      .def_readonly("p1", &oracle::PowerResult::p1)
      .def_readonly("sinr", &oracle::PowerResult::sinr);
  py::class_<oracle::AmplitudeResult>(m, "OracleAmplitudeResult")
      .def_readonly("feasible", &oracle::AmplitudeResult::feasible)
      .def_readonly("v1", &oracle::AmplitudeResult::v1)
      .def_readonly("v2", &oracle::AmplitudeResult::v2)
      .def_readonly("sinr", &oracle::AmplitudeResult::sinr);
  m.def("oracle_s2", &oracle::oracle_s2, py::arg("params"), py::arg("ch"),
        py::arg("grid") = oracle::GridSpec{});
  m.def("oracle_s3", &oracle::oracle_s3, py::arg("params"), py::arg("ch"),
        py::arg("grid") = oracle::GridSpec{});
  m.def("oracle_s4", &oracle::oracle_s4, py::arg("params"), py::arg("ch"),
        py::arg("grid") = oracle::GridSpec{});

  py::class_<channel::Geometry>(m, "Geometry")
      .def(py::init<>())
      .def_readwrite("bs_height", &channel::Geometry::bs_height)
      .def_readwrite("ue_altitude", &channel::Geometry::ue_altitude)
      .def_readwrite("horizontal_dist_bs1", &channel::Geometry::horizontal_dist_bs1)
      .def_readwrite("horizontal_dist_bs2", &channel::Geometry::horizontal_dist_bs2)
      .def_readwrite("carrier_freq", &channel::Geometry::carrier_freq)
      .def_readwrite("bandwidth", &channel::Geometry::bandwidth)
      .def_readwrite("downtilt", &channel::Geometry::downtilt);
  m.def("noise_power", &channel::noise_power, py::arg("geom"),
        py::arg("psd_dbm_hz") = channel::kDefaultNoisePsdDbmHz);
  m.def(
      "scenario_from_geometry",
      [](const channel::Geometry& g, double p_dbm, double q_dbm, double rho,
         std::uint64_t seed) {
        return channel::scenario_from_geometry(g, {p_dbm, q_dbm, rho}, seed);
      },
      py::arg("geom"), py::arg("p_dbm"), py::arg("q_dbm"), py::arg("rho"),
      py::arg("seed"));
}
