// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinqec/codes.hpp"
#include "spinqec/noise.hpp"
#include "spinqec/protocol.hpp"
#include "spinqec/pulses.hpp"
#include "spinqec/random.hpp"
#include "spinqec/resources.hpp"

namespace py = pybind11;
using namespace spinqec;

namespace {

ErrorKind error_kind_from(const std::string& name) {
  if (name == "none") return ErrorKind::None;
  if (name == "X" || name == "x") return ErrorKind::X;
  if (name == "Y" || name == "y") return ErrorKind::Y;
  if (name == "Z" || name == "z") return ErrorKind::Z;
  throw std::invalid_argument("error kind must be one of none, X, Y, Z");
}

Axis axis_from(const std::string& name) {
  if (name == "X" || name == "x") return Axis::X;
  if (name == "Y" || name == "y") return Axis::Y;
  if (name == "Z" || name == "z") return Axis::Z;
  throw std::invalid_argument("axis must be one of X, Y, Z");
}

PulseAlphabet alphabet_from(const std::string& name) {
  if (name == "default" || name == "adjacent") return PulseAlphabet::Adjacent;
  if (name == "extended") return PulseAlphabet::Extended;
  throw std::invalid_argument("alphabet must be 'default' or 'extended'");
}

CodeFamily family_from(const std::string& name) {
  if (name == "even") return CodeFamily::Even;
  if (name == "odd") return CodeFamily::Odd;
  throw std::invalid_argument("family must be 'even' (d=4N(N+1)) or 'odd' (d=4N(N+1)+2)");
}

OperatorSet operators_from(const std::string& name, const CodePair& code) {
  if (name == "single") return OperatorSet::SingleSpin;
  if (name == "collective") return OperatorSet::Collective;
  if (name == "auto")
    return code.system.num_spins() == 1 ? OperatorSet::SingleSpin : OperatorSet::Collective;
  throw std::invalid_argument("operators must be 'auto', 'single' or 'collective'");
}

PulseErrorModel model_from(const std::string& kind, double fidelity) {
  if (kind == "ideal" || fidelity >= 1.0) return PulseErrorModel::ideal();
  if (kind == "depolarizing") return PulseErrorModel::depolarizing(fidelity);
  if (kind == "over-rotation") return PulseErrorModel::over_rotation(fidelity);
  throw std::invalid_argument("model must be 'ideal', 'depolarizing' or 'over-rotation'");
}

QecOptions options_from(const std::string& model, double pulse_fidelity,
                        const std::string& alphabet, const std::string& cascade,
                        int channel_order) {
  QecOptions o;
  o.pulse_model = model_from(model, pulse_fidelity);
  o.alphabet = alphabet_from(alphabet);
  o.cascade = MeasurementCascade::from_string(cascade);
  o.channel_order = channel_order;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spin-qudit quantum error correction toolkit";
#ifdef SPINQEC_VERSION
  m.attr("__version__") = SPINQEC_VERSION;
#else
  m.attr("__version__") = "dev";
#endif

  py::register_exception<ConstructionError>(m, "ConstructionError");
  py::register_exception<DegenerateError>(m, "DegenerateError");

  // ----------------------------------------------------------------- spin core
  py::class_<SpinSystem>(m, "SpinSystem")
      .def(py::init<double>(), py::arg("spin"))
      .def(py::init<std::vector<double>>(), py::arg("spins"))
      .def_property_readonly("spins", &SpinSystem::spins)
      .def_property_readonly("dim", &SpinSystem::dim)
      .def("level_index", &SpinSystem::level_index, py::arg("m"))
      .def("level_m", &SpinSystem::level_m, py::arg("index"))
      .def("uniform_level_index", &SpinSystem::uniform_level_index, py::arg("m"))
      .def("__repr__", [](const SpinSystem& s) {
        std::string r = "SpinSystem([";
        for (std::size_t i = 0; i < s.num_spins(); ++i)
          r += (i ? ", " : "") + std::to_string(s.spins()[i]);
        return r + "])";
      });

  m.def(
      "spin_operators",
      [](double spin) {
        const SpinOperators ops = spin_operators(spin);
        return py::make_tuple(ops.x, ops.y, ops.z);
      },
      py::arg("spin"), "Angular-momentum matrices (S_X, S_Y, S_Z) for one spin.");
  m.def(
      "collective_operators",
      [](const SpinSystem& sys) {
        const SpinOperators ops = collective_operators(sys);
        return py::make_tuple(ops.x, ops.y, ops.z);
      },
      py::arg("system"));
  m.def(
      "apply_collective",
      [](const SpinSystem& sys, const std::string& axis, const Vec& v) {
        return apply_collective(sys, axis_from(axis), v);
      },
      py::arg("system"), py::arg("axis"), py::arg("state"));
  m.def("kron", &kron, py::arg("a"), py::arg("b"));

  // --------------------------------------------------------------------- codes
  py::class_<CodePair>(m, "CodePair")
      .def_property_readonly("system", [](const CodePair& c) { return c.system; })
      .def_property_readonly("zero_logical", [](const CodePair& c) { return c.zero_logical; })
      .def_property_readonly("one_logical", [](const CodePair& c) { return c.one_logical; })
      .def_readonly("order", &CodePair::order)
      .def_readonly("name", &CodePair::name)
      .def("__repr__", [](const CodePair& c) {
        return "CodePair(d=" + std::to_string(c.system.dim()) +
               ", order=" + std::to_string(c.order) +
               (c.name.empty() ? std::string() : ", name='" + c.name + "'") + ")";
      });

  py::class_<KlReport>(m, "KlReport")
      .def_readonly("order", &KlReport::order)
      .def_readonly("tolerance", &KlReport::tolerance)
      .def_readonly("passed", &KlReport::passed)
      .def_readonly("max_cross_violation", &KlReport::max_cross_violation)
      .def_readonly("max_diag_violation", &KlReport::max_diag_violation)
      .def_readonly("max_gram_deviation", &KlReport::max_gram_deviation)
      .def_readonly("gram_is_identity", &KlReport::gram_is_identity)
      .def_property_readonly("error_gram", [](const KlReport& r) { return r.error_gram; })
      .def("__repr__", [](const KlReport& r) {
        return std::string("KlReport(order=") + std::to_string(r.order) +
               (r.passed ? ", passed" : ", FAILED") + ")";
      });

  m.def("spin72_code", &spin72_code);
  m.def("catalog_code", [](const std::string& name) { return catalog_code(name); },
        py::arg("name"));
  m.def("catalog_names", &catalog_names);
  m.def(
      "generate_code",
      [](int order, const std::string& family) {
        return generate_code(order, family_from(family));
      },
      py::arg("order"), py::arg("family"));
  m.def("multi_qudit_code",
        [](const std::string& name) { return multi_qudit_code(name); }, py::arg("name"));
  m.def(
      "verify_kl",
      [](const CodePair& code, int order, const std::string& operators, double tolerance) {
        return verify_kl(code, order, operators_from(operators, code), tolerance);
      },
      py::arg("code"), py::arg("order"), py::arg("operators") = "auto",
      py::arg("tolerance") = kDefaultTol);
  m.def("error_basis", &error_basis, py::arg("code"));

  // -------------------------------------------------------------------- pulses
  py::class_<Pulse>(m, "Pulse")
      .def_readonly("lower", &Pulse::lower)
      .def_readonly("upper", &Pulse::upper)
      .def_readonly("cos_theta", &Pulse::cos_theta)
      .def_readonly("sin_theta", &Pulse::sin_theta)
      .def_readonly("phase_flag", &Pulse::phase_flag)
      .def_property_readonly(
          "kind", [](const Pulse& p) { return p.kind == Pulse::Kind::Pi ? "pi" : "rotation"; })
      .def_static("pi", &Pulse::pi, py::arg("lower"), py::arg("upper"),
                  py::arg("phase_flag") = false)
      .def_static("rotation", &Pulse::rotation, py::arg("lower"), py::arg("upper"),
                  py::arg("cos_theta"), py::arg("sin_theta"), py::arg("phase_flag") = false)
      .def("__repr__", [](const Pulse& p) {
        return std::string(p.kind == Pulse::Kind::Pi ? "pi(" : "rot(") +
               std::to_string(p.lower) + "," + std::to_string(p.upper) + ")";
      });

  py::class_<PulseSequence>(m, "PulseSequence")
      .def_readonly("dim", &PulseSequence::dim)
      .def_readonly("pulses", &PulseSequence::pulses)
      .def("__len__", [](const PulseSequence& s) { return s.pulses.size(); });

  m.def("pulse_unitary", &pulse_unitary, py::arg("pulse"), py::arg("dim"));
  m.def(
      "encoding_sequence",
      [](const std::string& alphabet) { return encoding_sequence(alphabet_from(alphabet)); },
      py::arg("alphabet") = "default");
  m.def(
      "decoding_sequence",
      [](const std::string& alphabet) { return decoding_sequence(alphabet_from(alphabet)); },
      py::arg("alphabet") = "default");
  m.def("sequence_unitary", &sequence_unitary, py::arg("sequence"));
  m.def(
      "run_sequence",
      [](const PulseSequence& seq, const Vec& input, bool record) {
        const RunResult r = run_sequence(seq, input, record);
        return py::make_tuple(r.final_state, r.trace);
      },
      py::arg("sequence"), py::arg("input"), py::arg("record") = false);
  m.def("initial_state", &initial_state, py::arg("alpha"), py::arg("beta_phase"));
  m.def("encoded_state", &encoded_state, py::arg("alpha"), py::arg("beta_phase"));
  m.def(
      "branch_input",
      [](const std::string& branch, Complex a, Complex b) {
        return branch_input(error_kind_from(branch), a, b);
      },
      py::arg("branch"), py::arg("alpha"), py::arg("beta_phase"));
  m.def(
      "branch_output",
      [](const std::string& branch, Complex a, Complex b) {
        return branch_output(error_kind_from(branch), a, b);
      },
      py::arg("branch"), py::arg("alpha"), py::arg("beta_phase"));

  // --------------------------------------------------------------------- noise
  py::class_<ErrorRates>(m, "ErrorRates")
      .def(py::init([](double x, double y, double z) {
             ErrorRates r{x, y, z};
             r.validate();
             return r;
           }),
           py::arg("eps_x") = 0.0, py::arg("eps_y") = 0.0, py::arg("eps_z") = 0.0)
      .def_static("isotropic", &ErrorRates::isotropic, py::arg("t_over_relax"))
      .def_readonly("eps_x", &ErrorRates::eps_x)
      .def_readonly("eps_y", &ErrorRates::eps_y)
      .def_readonly("eps_z", &ErrorRates::eps_z)
      .def_property_readonly("total", &ErrorRates::total);

  m.def(
      "error_operator",
      [](const std::string& axis, int k, double t, double spin) {
        return error_operator(axis_from(axis), k, t, spin);
      },
      py::arg("axis"), py::arg("k"), py::arg("t_over_relax"), py::arg("spin"));
  m.def("apply_first_order_channel", &apply_first_order_channel, py::arg("rho"),
        py::arg("rates"));
  m.def("relaxation_channel", &relaxation_channel, py::arg("rho"), py::arg("rates"),
        py::arg("max_order") = 2);
  m.def(
      "corrupt_state",
      [](const Vec& state, const std::string& which) {
        return corrupt_state(state, error_kind_from(which));
      },
      py::arg("state"), py::arg("which"));

  // ------------------------------------------------------------------ protocol
  py::class_<QecReport>(m, "QecReport")
      .def_property_readonly(
          "identified_error",
          [](const QecReport& r) { return std::string(identified_name(r.identified_error)); })
      .def_readonly("fidelity", &QecReport::fidelity)
      .def_readonly("pulse_count", &QecReport::pulse_count)
      .def_readonly("measurement_outcomes", &QecReport::measurement_outcomes)
      .def_property_readonly("recovered", [](const QecReport& r) { return r.recovered; })
      .def("__repr__", [](const QecReport& r) {
        return "QecReport(identified=" + std::string(identified_name(r.identified_error)) +
               ", fidelity=" + std::to_string(r.fidelity) + ")";
      });

  m.def(
      "qec_cycle",
      [](double alpha, double beta, double phi, const ErrorRates& rates,
         const std::string& model, double pulse_fidelity, const std::string& alphabet,
         const std::string& cascade, int channel_order, std::uint64_t seed) {
        RandomStream rng(seed);
        return qec_cycle(alpha, beta, phi, rates,
                         options_from(model, pulse_fidelity, alphabet, cascade, channel_order),
                         rng);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("phi"), py::arg("rates"),
      py::arg("model") = "ideal", py::arg("pulse_fidelity") = 1.0,
      py::arg("alphabet") = "default", py::arg("cascade") = "yxz",
      py::arg("channel_order") = 2, py::arg("seed") = 1);
  m.def(
      "corrected_fidelity_exact",
      [](double alpha, double beta, double phi, const ErrorRates& rates,
         const std::string& model, double pulse_fidelity, const std::string& alphabet,
         const std::string& cascade, int channel_order) {
        return corrected_fidelity_exact(
            alpha, beta, phi, rates,
            options_from(model, pulse_fidelity, alphabet, cascade, channel_order));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("phi"), py::arg("rates"),
      py::arg("model") = "ideal", py::arg("pulse_fidelity") = 1.0,
      py::arg("alphabet") = "default", py::arg("cascade") = "yxz",
      py::arg("channel_order") = 2);
  m.def("uncorrected_fidelity", &uncorrected_fidelity, py::arg("alpha"), py::arg("beta"),
        py::arg("phi"), py::arg("rates"), py::arg("channel_order") = 2);
  m.def(
      "fidelity_sweep",
      [](const std::vector<double>& ts, const std::vector<double>& fs, long trials,
         std::uint64_t seed, const std::string& mode, const std::string& model,
         const std::string& alphabet, const std::string& cascade, int channel_order) {
        SweepOptions o;
        o.qec = options_from(model, 0.999, alphabet, cascade, channel_order);
        o.trials = trials;
        o.mode = mode == "exact" ? SweepMode::Exact : SweepMode::MonteCarlo;
        RandomStream rng(seed);
        const auto rows = fidelity_sweep(ts, fs, o, rng);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["t_over_T"] = r.t_over_relax;
          d["pulse_fidelity"] = r.pulse_fidelity;
          d["model"] = r.model;
          d["f_corrected"] = r.f_corrected;
          d["f_corrected_stderr"] = r.f_corrected_stderr;
          d["f_uncorrected"] = r.f_uncorrected;
          d["gain"] = r.gain;
          d["trials"] = r.trials;
          d["seed"] = r.seed;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("t_over_relax"), py::arg("pulse_fidelities"), py::arg("trials") = 10000,
      py::arg("seed") = 12345, py::arg("mode") = "mc", py::arg("model") = "depolarizing",
      py::arg("alphabet") = "default", py::arg("cascade") = "yxz",
      py::arg("channel_order") = 2);
  m.def("infidelity_slope", &infidelity_slope, py::arg("t_over_relax"), py::arg("fidelities"));
  m.def("gain_threshold", &gain_threshold, py::arg("pulse_fidelities"), py::arg("gains"));

  // ----------------------------------------------------------------- resources
  m.def("hamming_min_qubits", &hamming_min_qubits, py::arg("logical"), py::arg("correctable"));
  m.def("gkp_dim", &gkp_dim, py::arg("order"));
  m.def(
      "qudit_dim",
      [](int order, const std::string& family) {
        return qudit_dim(order, family == "even" ? QuditFamily::Even : QuditFamily::Odd);
      },
      py::arg("order"), py::arg("family"));
  m.def(
      "comparison_table",
      [](int max_order) {
        py::list out;
        for (const auto& row : comparison_table(max_order)) {
          py::dict d;
          d["scheme"] = row.scheme;
          d["order"] = row.order;
          d["hilbert_dim"] = py::int_(py::str(row.hilbert_dim.str()));
          d["physical_units"] = row.physical_units;
          d["detail"] = row.detail;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("max_order"));
}
