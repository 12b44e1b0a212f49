// SPDX-License-Identifier: Apache-2.0
#include "spinqec/noise.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace spinqec {

ErrorRates ErrorRates::isotropic(double t_over_relax) {
  return {t_over_relax, t_over_relax, t_over_relax};
}

void ErrorRates::validate() const {
  for (double e : {eps_x, eps_y, eps_z})
    if (e < 0.0 || e > 1.0)
      throw std::invalid_argument("ErrorRates: each rate must lie in [0, 1]");
  if (total() > 1.0)
    throw std::invalid_argument("ErrorRates: eps_x + eps_y + eps_z must be <= 1");
}

PulseErrorModel PulseErrorModel::ideal() { return {}; }

PulseErrorModel PulseErrorModel::depolarizing(double fidelity) {
  if (fidelity <= 0.0 || fidelity > 1.0)
    throw std::invalid_argument("PulseErrorModel: fidelity must lie in (0, 1]");
  PulseErrorModel m;
  m.kind = Kind::DepolarizingPerPulse;
  m.fidelity = fidelity;
  return m;
}

PulseErrorModel PulseErrorModel::over_rotation(double fidelity) {
  if (fidelity <= 0.0 || fidelity > 1.0)
    throw std::invalid_argument("PulseErrorModel: fidelity must lie in (0, 1]");
  PulseErrorModel m;
  m.kind = Kind::OverRotation;
  m.fidelity = fidelity;
  m.over_rotation_sigma = 2.0 * std::sqrt(1.0 - fidelity);
  return m;
}

Mat error_operator(Axis axis, int k, double t_over_relax, double spin) {
  if (k < 0) throw std::invalid_argument("error_operator: order must be >= 0");
  if (t_over_relax < 0.0) throw std::invalid_argument("error_operator: t/T must be >= 0");
  const SpinOperators ops = spin_operators(spin);
  const Mat& base = (axis == Axis::X) ? ops.x : (axis == Axis::Y) ? ops.y : ops.z;
  Mat power = Mat::Identity(base.rows(), base.cols());
  double factorial = 1.0;
  for (int i = 1; i <= k; ++i) {
    power = base * power;
    factorial *= i;
  }
  return std::sqrt(std::pow(t_over_relax, k) / factorial) * power;
}

namespace {

double single_spin_of(const Mat& rho) {
  return 0.5 * static_cast<double>(rho.rows() - 1);
}

}  // namespace

Mat relaxation_channel(const Mat& rho, const ErrorRates& rates, int max_order) {
  if (max_order < 1) throw std::invalid_argument("relaxation_channel: order must be >= 1");
  rates.validate();
  if (rho.rows() != rho.cols()) throw std::invalid_argument("relaxation_channel: square matrix expected");
  if (!is_density_matrix(rho))
    throw std::invalid_argument("relaxation_channel: input is not a density matrix");

  const SpinOperators ops = spin_operators(single_spin_of(rho));
  const std::array<const Mat*, 3> axis_op = {&ops.x, &ops.y, &ops.z};
  const std::array<double, 3> eps = {rates.eps_x, rates.eps_y, rates.eps_z};

  double identity_weight = 1.0;
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (int a = 0; a < 3; ++a) {
    Mat power = Mat::Identity(rho.rows(), rho.cols());
    double factorial = 1.0;
    for (int k = 1; k <= max_order; ++k) {
      power = (*axis_op[a]) * power;
      factorial *= k;
      const double weight = std::pow(eps[a], k) / factorial;
      if (weight <= 0.0) continue;
      identity_weight -= weight;
      const Mat branch = conjugate_map(power, rho);
      const double trace = branch.trace().real();
      if (trace < kZeroBranchTol) {
        identity_weight += weight;  // vanishing branch folds back
        continue;
      }
      out += (weight / trace) * branch;
    }
  }
  if (identity_weight < 0.0)
    throw std::invalid_argument("relaxation_channel: branch weights exceed 1; reduce rates or order");
  out += identity_weight * rho;
  return out;
}

Mat apply_first_order_channel(const Mat& rho, const ErrorRates& rates) {
  return relaxation_channel(rho, rates, 1);
}

Vec corrupt_state(const Vec& state, ErrorKind which) {
  if (!is_normalized(state)) throw std::invalid_argument("corrupt_state: state must be normalized");
  if (which == ErrorKind::None) return state;
  const SpinOperators ops = spin_operators(0.5 * static_cast<double>(state.size() - 1));
  const Mat& op = (which == ErrorKind::X) ? ops.x : (which == ErrorKind::Y) ? ops.y : ops.z;
  const Vec image = op * state;
  if (image.norm() < kZeroBranchTol)
    throw DegenerateError("corrupt_state: error operator annihilates the state");
  return image / image.norm();
}

namespace {

// Haar twirl over the pulse's two-level block: the block of rho becomes
// maximally mixed with the block's weight, block<->rest coherences vanish,
// everything else is untouched.
Mat block_depolarized(const Pulse& pulse, const Mat& rho) {
  Mat out = rho;
  const Eigen::Index lo = pulse.lower, hi = pulse.upper;
  const Complex weight = 0.5 * (rho(lo, lo) + rho(hi, hi));
  out.row(lo).setZero();
  out.row(hi).setZero();
  out.col(lo).setZero();
  out.col(hi).setZero();
  out(lo, lo) = weight;
  out(hi, hi) = weight;
  return out;
}

}  // namespace

Mat imperfect_pulse(const Pulse& pulse, const Mat& rho, const PulseErrorModel& model,
                    RandomStream& rng) {
  switch (model.kind) {
    case PulseErrorModel::Kind::Ideal: {
      const Mat u = pulse_unitary(pulse, rho.rows());
      return conjugate_map(u, rho);
    }
    case PulseErrorModel::Kind::DepolarizingPerPulse: {
      const Mat u = pulse_unitary(pulse, rho.rows());
      return model.fidelity * conjugate_map(u, rho) +
             (1.0 - model.fidelity) * block_depolarized(pulse, rho);
    }
    default: {  // OverRotation
      const double theta = std::atan2(pulse.sin_theta, pulse.cos_theta);
      const double jitter = rng.gaussian(0.0, model.over_rotation_sigma);
      Pulse noisy = pulse;
      noisy.kind = Pulse::Kind::Rotation;
      noisy.cos_theta = std::cos(theta + jitter);
      noisy.sin_theta = std::sin(theta + jitter);
      const Mat u = pulse_unitary(noisy, rho.rows());
      return conjugate_map(u, rho);
    }
  }
}

}  // namespace spinqec
