// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinqec {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Default absolute comparison tolerance (max-norm). All reference amplitudes
// are square roots of small rationals, which double precision holds to ~1e-15.
inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kZeroBranchTol = 1e-14;

enum class Axis { X = 0, Y = 1, Z = 2 };

enum class ErrorKind { None = 0, X = 1, Y = 2, Z = 3 };

inline const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    default: return "Z";
  }
}

inline const char* error_kind_name(ErrorKind e) {
  switch (e) {
    case ErrorKind::None: return "none";
    case ErrorKind::X: return "X";
    case ErrorKind::Y: return "Y";
    default: return "Z";
  }
}

// Codeword construction could not be completed (singular linear system,
// negative squared amplitude, or a generated code failing re-verification).
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No pulse assignment reproduces a requested checkpoint.
struct SynthesisError : std::runtime_error {
  int checkpoint_index;
  SynthesisError(const std::string& what, int index)
      : std::runtime_error(what), checkpoint_index(index) {}
};

// A simulated state deviated from a sequence checkpoint beyond tolerance.
struct CheckpointViolation : std::runtime_error {
  int pulse_index;
  double deviation;
  CheckpointViolation(const std::string& what, int index, double dev)
      : std::runtime_error(what), pulse_index(index), deviation(dev) {}
};

// An error operator annihilated the state, or a forced measurement outcome
// has vanishing probability.
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spinqec
