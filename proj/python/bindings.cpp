#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ddmcorr/config.hpp"
#include "ddmcorr/error.hpp"
#include "ddmcorr/measures.hpp"
#include "ddmcorr/model.hpp"
#include "ddmcorr/runner.hpp"
#include "ddmcorr/scenarios.hpp"
#include "ddmcorr/validation.hpp"

namespace py = pybind11;
using namespace ddmcorr;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CMatrix from_numpy(const ComplexArray& a) {
  if (a.ndim() != 2) throw InvalidArgument("expected a 2-D array");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return CMatrix(r, c, std::vector<cplx>(a.data(), a.data() + r * c));
}

ComplexArray to_numpy(const CMatrix& m) {
  ComplexArray out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

MeasuredQubit side_from(const std::string& s) {
  if (s == "A") return MeasuredQubit::A;
  if (s == "B") return MeasuredQubit::B;
  throw InvalidArgument("side must be 'A' or 'B'");
}

py::dict samples_to_dict(const std::vector<CorrelationSample>& samples) {
  auto column = [&](auto field) {
    py::array_t<double> col(static_cast<py::ssize_t>(samples.size()));
    auto* p = col.mutable_data();
    for (const auto& s : samples) *p++ = s.*field;
    return col;
  };
  py::dict d;
  d["t_ns"] = column(&CorrelationSample::t);
  d["coherence_D"] = column(&CorrelationSample::coherence_D);
  d["discord_Q"] = column(&CorrelationSample::discord_Q);
  d["discord_raw"] = column(&CorrelationSample::discord_raw);
  d["classical_C"] = column(&CorrelationSample::classical_C);
  d["mutual_I"] = column(&CorrelationSample::mutual_I);
  d["concurrence"] = column(&CorrelationSample::concurrence);
  d["eof"] = column(&CorrelationSample::eof);
  d["purity"] = column(&CorrelationSample::purity);
  d["trace_err"] = column(&CorrelationSample::trace_err);
  d["argmax_theta"] = column(&CorrelationSample::argmax_theta);
  d["argmax_phi"] = column(&CorrelationSample::argmax_phi);
  d["coh_A"] = column(&CorrelationSample::coh_A);
  d["coh_B"] = column(&CorrelationSample::coh_B);
  return d;
}

RunConfig config_from(const py::object& cfg) {
  if (cfg.is_none()) return parse_config("{}");
  if (py::isinstance<py::str>(cfg)) return parse_config(cfg.cast<std::string>());
  const py::module_ json = py::module_::import("json");
  return parse_config(json.attr("dumps")(cfg).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Correlation dynamics of two qubits coupled through a lossy resonator";
  m.attr("__version__") = version_string();

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def(
      "simulate",
      [](const py::object& cfg) {
        const RunConfig rc = config_from(cfg);
        Evolution<CorrelationSample> ev;
        {
          py::gil_scoped_release release;
          ev = simulate(rc);
        }
        py::dict out = samples_to_dict(ev.samples);
        const auto diag = diagnostics_json(rc, ev.diagnostics, ev.samples);
        out["diagnostics"] = py::module_::import("json").attr("loads")(diag.dump());
        return out;
      },
      py::arg("config") = py::none(),
      "Run a configuration (dict, JSON string or None for defaults); returns columns as numpy arrays.");

  m.def(
      "parse_config", [](const std::string& text) { return config_to_json(parse_config(text)).dump(); },
      py::arg("text"), "Validate a JSON configuration and return it with defaults filled in (as JSON text).");

  m.def(
      "initial_state",
      [](const std::string& family, double amplitude_sq, std::size_t resonator_fock, std::size_t n_max) {
        ScenarioSpec sc;
        const auto fam = parse_family(family);
        if (!fam) throw InvalidArgument("unknown family '" + family + "'");
        sc.family = *fam;
        sc.amplitude_sq = amplitude_sq;
        sc.resonator_fock = resonator_fock;
        sc.params.n_max = n_max;
        return to_numpy(initial_state(sc));
      },
      py::arg("family") = "bell_psi", py::arg("amplitude_sq") = 0.5, py::arg("resonator_fock") = 1,
      py::arg("n_max") = 5);

  m.def(
      "reduce_to_qubits", [](const ComplexArray& rho, std::size_t n_max) {
        return to_numpy(reduce_to_qubits(from_numpy(rho), SpaceLayout(n_max)));
      },
      py::arg("rho"), py::arg("n_max") = 5);

  m.def(
      "measures",
      [](const ComplexArray& rho_ab, const std::string& side) {
        const CMatrix rho = from_numpy(rho_ab);
        const DiscordResult d = discord_analysis(rho, side_from(side));
        py::dict out;
        out["coherence_D"] = l1_coherence(rho);
        out["discord_Q"] = d.discord;
        out["discord_raw"] = d.discord_raw;
        out["classical_C"] = d.classical_correlation;
        out["mutual_I"] = d.mutual_information;
        out["concurrence"] = concurrence(rho);
        out["eof"] = eof(rho);
        out["argmax_theta"] = d.argmax.theta;
        out["argmax_phi"] = d.argmax.phi;
        return out;
      },
      py::arg("rho_ab"), py::arg("side") = "B", "All correlation measures of a 4x4 two-qubit state.");

  m.def("entropy_vn", [](const ComplexArray& rho) { return entropy_vn(from_numpy(rho)); });
  m.def("concurrence", [](const ComplexArray& rho) { return concurrence(from_numpy(rho)); });
  m.def(
      "quantum_discord",
      [](const ComplexArray& rho, const std::string& side) { return quantum_discord(from_numpy(rho), side_from(side)); },
      py::arg("rho_ab"), py::arg("side") = "B");

  m.def("qubit_gap", &qubit_gap, py::arg("delta"), py::arg("t_tunnel"));
  m.def("coupling_coefficient", &coupling_coefficient, py::arg("e_charge"), py::arg("c_c"), py::arg("c_tot"),
        py::arg("omega0"), py::arg("length"), py::arg("c0_per_length"));

  m.def(
      "run_validation",
      [](double dt, std::uint64_t seed, std::vector<int> only, std::string scratch_dir) {
        ValidationOptions opts;
        opts.dt = dt;
        opts.seed = seed;
        opts.only = std::move(only);
        opts.scratch_dir = std::move(scratch_dir);
        ValidationReport report;
        {
          py::gil_scoped_release release;
          report = run_validation(opts);
        }
        return py::module_::import("json").attr("loads")(report.to_json().dump());
      },
      py::arg("dt") = 0.002, py::arg("seed") = 20101109, py::arg("only") = std::vector<int>{},
      py::arg("scratch_dir") = "");
}
