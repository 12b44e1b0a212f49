// SPDX-License-Identifier: Apache-2.0
#include "spinqec/protocol.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace spinqec {

namespace {

constexpr double kProbFloor = 1e-14;
constexpr double kLeafFloor = 1e-15;

Vec ideal_encoded_state(double alpha, double beta, double phi) {
  const Complex beta_phase = beta * std::exp(Complex(0.0, phi));
  return encoded_state(Complex(alpha, 0.0), beta_phase);
}

}  // namespace

MeasurementCascade MeasurementCascade::default_order() {
  MeasurementCascade c;
  c.probes = {{decoded_pair(ErrorKind::Y), ErrorKind::Y, 1.0},
              {decoded_pair(ErrorKind::X), ErrorKind::X, 1.0},
              {decoded_pair(ErrorKind::Z), ErrorKind::Z, 1.0}};
  return c;
}

MeasurementCascade MeasurementCascade::from_string(const std::string& order) {
  MeasurementCascade c;
  for (char ch : order) {
    ErrorKind kind;
    switch (std::tolower(ch)) {
      case 'x': kind = ErrorKind::X; break;
      case 'y': kind = ErrorKind::Y; break;
      case 'z': kind = ErrorKind::Z; break;
      default:
        throw std::invalid_argument("MeasurementCascade: order must use only x, y, z");
    }
    for (const auto& p : c.probes)
      if (p.label == kind)
        throw std::invalid_argument("MeasurementCascade: duplicate probe in order");
    c.probes.push_back({decoded_pair(kind), kind, 1.0});
  }
  if (c.probes.empty()) throw std::invalid_argument("MeasurementCascade: empty order");
  return c;
}

MeasurementCascade MeasurementCascade::scheduled() const {
  MeasurementCascade c = *this;
  std::stable_sort(c.probes.begin(), c.probes.end(),
                   [](const Probe& a, const Probe& b) { return a.frequency > b.frequency; });
  return c;
}

std::string MeasurementCascade::to_string() const {
  std::string s;
  for (const auto& p : probes) {
    const char* name = error_kind_name(p.label);
    s += static_cast<char>(std::tolower(name[0]));
  }
  return s;
}

const char* identified_name(IdentifiedError e) {
  switch (e) {
    case IdentifiedError::None: return "none";
    case IdentifiedError::X: return "X";
    case IdentifiedError::Y: return "Y";
    case IdentifiedError::Z: return "Z";
    default: return "uncorrectable";
  }
}

namespace {

Mat pair_projector(Eigen::Index dim, std::pair<int, int> pair) {
  Mat p = Mat::Zero(dim, dim);
  p(pair.first, pair.first) = 1.0;
  p(pair.second, pair.second) = 1.0;
  return p;
}

struct Collapse {
  double p_in = 0.0;
  Mat in;
  double p_out = 0.0;
  Mat out;
};

Collapse project_pair(const Mat& rho, std::pair<int, int> pair) {
  const Eigen::Index dim = rho.rows();
  if (pair.first < 0 || pair.second < 0 || pair.first >= dim || pair.second >= dim ||
      pair.first == pair.second)
    throw std::invalid_argument("measure_subspace: invalid level pair");
  const Mat p = pair_projector(dim, pair);
  const Mat q = Mat::Identity(dim, dim) - p;
  Collapse c;
  c.in = p * rho * p;
  c.out = q * rho * q;
  c.p_in = std::max(0.0, c.in.trace().real());
  c.p_out = std::max(0.0, c.out.trace().real());
  if (c.p_in > kProbFloor) c.in /= c.p_in;
  if (c.p_out > kProbFloor) c.out /= c.p_out;
  return c;
}

}  // namespace

std::pair<int, Mat> measure_subspace(const Mat& rho, std::pair<int, int> pair,
                                     RandomStream& rng) {
  const Collapse c = project_pair(rho, pair);
  const int outcome = rng.uniform() < c.p_in ? 1 : 0;
  if (outcome == 1 && c.p_in < kProbFloor)
    throw DegenerateError("measure_subspace: outcome with vanishing probability");
  if (outcome == 0 && c.p_out < kProbFloor)
    throw DegenerateError("measure_subspace: outcome with vanishing probability");
  return {outcome, outcome == 1 ? c.in : c.out};
}

std::pair<double, Mat> measure_subspace_forced(const Mat& rho, std::pair<int, int> pair,
                                               int outcome) {
  const Collapse c = project_pair(rho, pair);
  const double p = outcome == 1 ? c.p_in : c.p_out;
  if (p < kProbFloor)
    throw DegenerateError("measure_subspace_forced: forced outcome has vanishing probability");
  return {p, outcome == 1 ? c.in : c.out};
}

std::pair<int, Mat> measure_subspace_with_ancilla(const Mat& rho, std::pair<int, int> pair,
                                                  RandomStream& rng) {
  const Eigen::Index dim = rho.rows();
  const Mat p = pair_projector(dim, pair);
  const Mat q = Mat::Identity(dim, dim) - p;
  // Conditional swap: flip the electron when the nucleus occupies the pair.
  Mat flip(2, 2);
  flip << 0, 1, 1, 0;
  const Mat u = kron(flip, p) + kron(Mat::Identity(2, 2), q);
  Mat joint = Mat::Zero(2 * dim, 2 * dim);
  joint.topLeftCorner(dim, dim) = rho;  // electron starts in |0>
  joint = conjugate_map(u, joint);

  const double p1 = joint.bottomRightCorner(dim, dim).trace().real();
  const int outcome = rng.uniform() < p1 ? 1 : 0;
  Mat block = outcome == 1 ? joint.bottomRightCorner(dim, dim)
                           : joint.topLeftCorner(dim, dim);
  const double norm = block.trace().real();
  if (norm < kProbFloor)
    throw DegenerateError("measure_subspace_with_ancilla: outcome with vanishing probability");
  return {outcome, Mat(block / norm)};
}

namespace {

// Correction pulses for an identified pair: ladder back onto (-7/2,+7/2),
// shuttle the upper amplitude down to the computational pair, re-encode.
std::vector<Pulse> correction_pulses(std::pair<int, int> pair, PulseAlphabet alphabet) {
  std::vector<Pulse> seq;
  if (pair != std::pair<int, int>{0, 7})
    seq = pair_transfer_sequence(pair, {0, 7}, alphabet);
  for (const Pulse& p : pair_transfer_sequence({0, 7}, {0, 1}, alphabet)) seq.push_back(p);
  for (const Pulse& p : encoding_sequence(alphabet).pulses) seq.push_back(p);
  return seq;
}

Mat apply_pulses(const std::vector<Pulse>& pulses, Mat rho, const PulseErrorModel& model,
                 RandomStream& rng) {
  for (const Pulse& p : pulses) rho = imperfect_pulse(p, rho, model, rng);
  return rho;
}

double overlap(const Vec& psi, const Mat& rho) {
  return std::max(0.0, (psi.adjoint() * rho * psi)(0, 0).real());
}

}  // namespace

QecReport identify_and_correct(const Mat& rho_decoded, const QecOptions& options,
                               RandomStream& rng, const Vec& ideal_encoded) {
  QecReport report;
  Mat rho = rho_decoded;
  std::pair<int, int> pair = decoded_pair(ErrorKind::None);
  bool identified = false;
  for (const auto& probe : options.cascade.probes) {
    auto [outcome, collapsed] = options.explicit_ancilla
                                    ? measure_subspace_with_ancilla(rho, probe.pair, rng)
                                    : measure_subspace(rho, probe.pair, rng);
    report.measurement_outcomes.push_back(outcome);
    rho = std::move(collapsed);
    if (outcome == 1) {
      report.identified_error = static_cast<IdentifiedError>(probe.label);
      pair = probe.pair;
      identified = true;
      break;
    }
  }
  if (!identified) {
    report.identified_error = IdentifiedError::None;
    const double in_clean = (rho(0, 0) + rho(7, 7)).real();
    if (1.0 - in_clean > 1e-9) report.identified_error = IdentifiedError::Uncorrectable;
  }

  const std::vector<Pulse> fix = correction_pulses(pair, options.alphabet);
  rho = apply_pulses(fix, std::move(rho), options.pulse_model, rng);
  report.pulse_count += static_cast<int>(fix.size());
  report.recovered = std::move(rho);
  report.fidelity = overlap(ideal_encoded, report.recovered);
  return report;
}

QecReport qec_cycle(double alpha, double beta, double phi, const ErrorRates& rates,
                    const QecOptions& options, RandomStream& rng) {
  if (std::abs(alpha * alpha + beta * beta - 1.0) > kDefaultTol)
    throw std::invalid_argument("qec_cycle: |alpha|^2 + |beta|^2 must be 1");
  rates.validate();

  const Complex beta_phase = beta * std::exp(Complex(0.0, phi));
  const Vec psi = initial_state(Complex(alpha, 0.0), beta_phase);
  Mat rho = psi * psi.adjoint();

  const PulseSequence enc = encoding_sequence(options.alphabet);
  rho = apply_pulses(enc.pulses, std::move(rho), options.pulse_model, rng);

  rho = relaxation_channel(rho, rates, options.channel_order);

  const PulseSequence dec = decoding_sequence(options.alphabet);
  rho = apply_pulses(dec.pulses, std::move(rho), options.pulse_model, rng);

  QecReport report = identify_and_correct(rho, options, rng,
                                          ideal_encoded_state(alpha, beta, phi));
  report.pulse_count += static_cast<int>(enc.pulses.size() + dec.pulses.size());
  return report;
}

double uncorrected_fidelity(double alpha, double beta, double phi, const ErrorRates& rates,
                            int channel_order) {
  const Complex beta_phase = beta * std::exp(Complex(0.0, phi));
  const Vec psi = initial_state(Complex(alpha, 0.0), beta_phase);
  const Mat rho = relaxation_channel(psi * psi.adjoint(), rates, channel_order);
  return overlap(psi, rho);
}

namespace {

double enumerate_outcomes(const Mat& rho, std::size_t probe_index, double weight,
                          const QecOptions& options, const Vec& ideal) {
  if (weight < kLeafFloor) return 0.0;

  auto leaf = [&](const Mat& state, std::pair<int, int> pair) {
    RandomStream unused(0);  // deterministic pulse models ignore the stream
    Mat fixed = apply_pulses(correction_pulses(pair, options.alphabet), state,
                             options.pulse_model, unused);
    return overlap(ideal, fixed);
  };

  if (probe_index == options.cascade.probes.size())
    return weight * leaf(rho, decoded_pair(ErrorKind::None));

  const auto& probe = options.cascade.probes[probe_index];
  const Collapse c = project_pair(rho, probe.pair);
  double acc = 0.0;
  if (c.p_in > kLeafFloor) acc += weight * c.p_in * leaf(c.in, probe.pair);
  if (c.p_out > kLeafFloor)
    acc += enumerate_outcomes(c.out, probe_index + 1, weight * c.p_out, options, ideal);
  return acc;
}

}  // namespace

double corrected_fidelity_exact(double alpha, double beta, double phi,
                                const ErrorRates& rates, const QecOptions& options) {
  if (!options.pulse_model.is_deterministic())
    throw std::invalid_argument(
        "corrected_fidelity_exact: over-rotation noise needs Monte-Carlo mode");
  rates.validate();

  RandomStream unused(0);
  const Complex beta_phase = beta * std::exp(Complex(0.0, phi));
  const Vec psi = initial_state(Complex(alpha, 0.0), beta_phase);
  Mat rho = psi * psi.adjoint();
  rho = apply_pulses(encoding_sequence(options.alphabet).pulses, std::move(rho),
                     options.pulse_model, unused);
  rho = relaxation_channel(rho, rates, options.channel_order);
  rho = apply_pulses(decoding_sequence(options.alphabet).pulses, std::move(rho),
                     options.pulse_model, unused);
  return enumerate_outcomes(rho, 0, 1.0, options, ideal_encoded_state(alpha, beta, phi));
}

namespace {

// Six cardinal qubit states (alpha, beta, phi).
const std::array<std::array<double, 3>, 6> kCardinal = {{
    {1.0, 0.0, 0.0},
    {0.0, 1.0, 0.0},
    {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0, 0.0},
    {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0, std::numbers::pi},
    {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0, std::numbers::pi / 2.0},
    {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0, 3.0 * std::numbers::pi / 2.0},
}};

}  // namespace

double average_corrected_fidelity_exact(const ErrorRates& rates, const QecOptions& options) {
  double acc = 0.0;
  for (const auto& s : kCardinal)
    acc += corrected_fidelity_exact(s[0], s[1], s[2], rates, options);
  return acc / kCardinal.size();
}

double average_uncorrected_fidelity(const ErrorRates& rates, int channel_order) {
  double acc = 0.0;
  for (const auto& s : kCardinal)
    acc += uncorrected_fidelity(s[0], s[1], s[2], rates, channel_order);
  return acc / kCardinal.size();
}

namespace {

const char* model_name(const PulseErrorModel& model) {
  switch (model.kind) {
    case PulseErrorModel::Kind::Ideal: return "ideal";
    case PulseErrorModel::Kind::DepolarizingPerPulse: return "depolarizing";
    default: return "over-rotation";
  }
}

PulseErrorModel with_fidelity(const PulseErrorModel& base, double f) {
  if (f >= 1.0) {
    PulseErrorModel m = base;
    m.fidelity = 1.0;
    m.over_rotation_sigma = 0.0;
    return m;
  }
  switch (base.kind) {
    case PulseErrorModel::Kind::Ideal: return PulseErrorModel::ideal();
    case PulseErrorModel::Kind::DepolarizingPerPulse:
      return PulseErrorModel::depolarizing(f);
    default: return PulseErrorModel::over_rotation(f);
  }
}

}  // namespace

std::vector<SweepRow> fidelity_sweep(const std::vector<double>& t_over_relax,
                                     const std::vector<double>& pulse_fidelities,
                                     const SweepOptions& options, RandomStream& rng) {
  if (t_over_relax.empty() || pulse_fidelities.empty())
    throw std::invalid_argument("fidelity_sweep: empty grid");
  if (options.mode == SweepMode::MonteCarlo && options.trials < 1)
    throw std::invalid_argument("fidelity_sweep: trials must be >= 1");

  std::vector<SweepRow> rows;
  std::uint64_t grid_index = 0;
  for (double t : t_over_relax) {
    for (double f : pulse_fidelities) {
      QecOptions qec = options.qec;
      qec.pulse_model = with_fidelity(options.qec.pulse_model, f);
      const ErrorRates rates = ErrorRates::isotropic(t);

      SweepRow row;
      row.t_over_relax = t;
      row.pulse_fidelity = f;
      row.model = model_name(qec.pulse_model);
      row.seed = rng.seed();

      if (options.mode == SweepMode::Exact) {
        row.model += "-exact";
        row.trials = 0;
        row.f_corrected = average_corrected_fidelity_exact(rates, qec);
        row.f_corrected_stderr = 0.0;
        row.f_uncorrected = average_uncorrected_fidelity(rates, qec.channel_order);
      } else {
        RandomStream stream = rng.split(grid_index);
        double mean = 0.0, m2 = 0.0, unc = 0.0;
        for (long i = 0; i < options.trials; ++i) {
          const double u = stream.uniform();
          const double alpha = std::sqrt(0.5 * (1.0 + (1.0 - 2.0 * u)));
          const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
          const double phi = 2.0 * std::numbers::pi * stream.uniform();
          const QecReport rep = qec_cycle(alpha, beta, phi, rates, qec, stream);
          const double delta = rep.fidelity - mean;
          mean += delta / static_cast<double>(i + 1);
          m2 += delta * (rep.fidelity - mean);
          unc += uncorrected_fidelity(alpha, beta, phi, rates, qec.channel_order);
        }
        row.trials = options.trials;
        row.f_corrected = mean;
        row.f_corrected_stderr =
            options.trials > 1
                ? std::sqrt(m2 / (static_cast<double>(options.trials) - 1.0) /
                            static_cast<double>(options.trials))
                : 0.0;
        row.f_uncorrected = unc / static_cast<double>(options.trials);
      }

      const double inf_c = 1.0 - row.f_corrected;
      const double inf_u = 1.0 - row.f_uncorrected;
      row.gain = inf_c > 0.0 ? inf_u / inf_c
                             : std::numeric_limits<double>::infinity();
      rows.push_back(std::move(row));
      ++grid_index;
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "t_over_T,pulse_fidelity,model,f_corrected,f_corrected_stderr,"
      "f_uncorrected,gain,trials,seed\n";
  char buf[320];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%ld,%llu\n",
                  r.t_over_relax, r.pulse_fidelity, r.model.c_str(), r.f_corrected,
                  r.f_corrected_stderr, r.f_uncorrected, r.gain, r.trials,
                  static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

double infidelity_slope(const std::vector<double>& t_over_relax,
                        const std::vector<double>& fidelities) {
  if (t_over_relax.size() != fidelities.size() || t_over_relax.size() < 2)
    throw std::invalid_argument("infidelity_slope: need matching lists of >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(t_over_relax.size());
  for (std::size_t i = 0; i < t_over_relax.size(); ++i) {
    const double x = std::log10(t_over_relax[i]);
    const double y = std::log10(std::max(1.0 - fidelities[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double gain_threshold(const std::vector<double>& pulse_fidelities,
                      const std::vector<double>& gains) {
  if (pulse_fidelities.size() != gains.size() || gains.empty())
    throw std::invalid_argument("gain_threshold: need matching non-empty lists");
  std::vector<std::size_t> order(gains.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pulse_fidelities[a] < pulse_fidelities[b];
  });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const double f0 = pulse_fidelities[order[i]], f1 = pulse_fidelities[order[i + 1]];
    const double g0 = gains[order[i]], g1 = gains[order[i + 1]];
    if ((g0 < 1.0 && g1 >= 1.0) || (g0 >= 1.0 && g1 < 1.0)) {
      if (g1 == g0) return f0;
      return f0 + (1.0 - g0) / (g1 - g0) * (f1 - f0);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace spinqec
