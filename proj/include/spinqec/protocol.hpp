// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinqec/codes.hpp"
#include "spinqec/noise.hpp"
#include "spinqec/pulses.hpp"
#include "spinqec/random.hpp"

namespace spinqec {

/// Ordered list of decoded subspace pairs to probe. Probing stops at the
/// first positive outcome; exhaustion falls through to the no-error pair.
struct MeasurementCascade {
  struct Probe {
    std::pair<int, int> pair;
    ErrorKind label;
    double frequency = 1.0;  // optional per-error probe weight
  };

  std::vector<Probe> probes;

  /// Default order Y, X, Z on the (+-1/2), (+-3/2), (+-5/2) pairs.
  static MeasurementCascade default_order();
  /// Order from a string over {x,y,z}, e.g. "zyx" probes Z first.
  static MeasurementCascade from_string(const std::string& order);
  /// Reorder probes by descending frequency (stable).
  MeasurementCascade scheduled() const;
  std::string to_string() const;
};

enum class IdentifiedError { None, X, Y, Z, Uncorrectable };

const char* identified_name(IdentifiedError e);

/// Outcome of one encode -> noise -> decode -> measure -> correct cycle.
struct QecReport {
  IdentifiedError identified_error = IdentifiedError::None;
  Mat recovered;  // density matrix in the encoded frame
  double fidelity = 0.0;
  int pulse_count = 0;
  std::vector<int> measurement_outcomes;
};

/// Projective measurement of a two-level nuclear subspace. Outcome 1 keeps
/// P rho P / Tr(P rho); outcome 0 keeps the complement. The electron ancilla
/// is implicit (conditional swap + electron readout has the same statistics).
std::pair<int, Mat> measure_subspace(const Mat& rho, std::pair<int, int> pair,
                                     RandomStream& rng);
/// Deterministic variant returning the asked-for branch and its probability.
/// Throws DegenerateError if the forced outcome has probability < 1e-14.
std::pair<double, Mat> measure_subspace_forced(const Mat& rho, std::pair<int, int> pair,
                                               int outcome);
/// Demonstration mode on the explicit electron (x) nucleus joint space:
/// conditional swap onto the ancilla, then projective electron readout.
std::pair<int, Mat> measure_subspace_with_ancilla(const Mat& rho,
                                                  std::pair<int, int> pair,
                                                  RandomStream& rng);

struct QecOptions {
  MeasurementCascade cascade = MeasurementCascade::default_order();
  PulseAlphabet alphabet = PulseAlphabet::Adjacent;
  PulseErrorModel pulse_model = PulseErrorModel::ideal();
  int channel_order = 2;  // relaxation expansion cutoff in the cycle
  // demonstration mode: probe through the explicit electron (x) nucleus
  // joint space instead of the statistically identical nuclear projection
  bool explicit_ancilla = false;
};

/// Probe the cascade on a decoded state, map the identified pair back onto
/// (-7/2,+7/2), and re-encode. Exhaustion with weight left outside every
/// known subspace is reported as uncorrectable (no correction applied).
/// `ideal_encoded` is the noise-free encoded state used for the fidelity.
QecReport identify_and_correct(const Mat& rho_decoded, const QecOptions& options,
                               RandomStream& rng, const Vec& ideal_encoded);

/// Full cycle for the qubit alpha|0> + beta e^{i phi}|1> stored on the
/// (-7/2,-5/2) pair: encode, relax, decode, identify, correct, re-encode.
QecReport qec_cycle(double alpha, double beta, double phi, const ErrorRates& rates,
                    const QecOptions& options, RandomStream& rng);

/// Same channel applied to the bare two-level qubit; no pulses involved.
double uncorrected_fidelity(double alpha, double beta, double phi,
                            const ErrorRates& rates, int channel_order);

/// Deterministic corrected fidelity: density-matrix evolution with every
/// measurement branch enumerated. Requires a deterministic pulse model.
double corrected_fidelity_exact(double alpha, double beta, double phi,
                                const ErrorRates& rates, const QecOptions& options);

/// Average of corrected_fidelity_exact / uncorrected_fidelity over the six
/// cardinal qubit states.
double average_corrected_fidelity_exact(const ErrorRates& rates, const QecOptions& options);
double average_uncorrected_fidelity(const ErrorRates& rates, int channel_order);

struct SweepRow {
  double t_over_relax = 0.0;
  double pulse_fidelity = 1.0;
  std::string model;
  double f_corrected = 0.0;
  double f_corrected_stderr = 0.0;
  double f_uncorrected = 0.0;
  double gain = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
};

enum class SweepMode { MonteCarlo, Exact };

struct SweepOptions {
  QecOptions qec;
  SweepMode mode = SweepMode::MonteCarlo;
  long trials = 10000;
};

/// Corrected and uncorrected fidelity over a (t/T, pulse fidelity) grid.
/// Monte-Carlo trials draw Haar-random stored qubits and measurement
/// outcomes from per-grid-point substreams of `rng`; the exact mode
/// enumerates outcomes and averages cardinal states.
std::vector<SweepRow> fidelity_sweep(const std::vector<double>& t_over_relax,
                                     const std::vector<double>& pulse_fidelities,
                                     const SweepOptions& options, RandomStream& rng);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Least-squares slope of log10(1-F) against log10(t/T).
double infidelity_slope(const std::vector<double>& t_over_relax,
                        const std::vector<double>& fidelities);

/// Linear interpolation of the gain = 1 crossing along pulse fidelity;
/// returns NaN when the gain never crosses 1 on the sampled grid.
double gain_threshold(const std::vector<double>& pulse_fidelities,
                      const std::vector<double>& gains);

}  // namespace spinqec
