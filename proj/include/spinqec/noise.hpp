// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spinqec/pulses.hpp"
#include "spinqec/random.hpp"
#include "spinqec/spin_system.hpp"

namespace spinqec {

/// Per-axis first-order error probabilities, each of order t/T_relax.
struct ErrorRates {
  double eps_x = 0.0;
  double eps_y = 0.0;
  double eps_z = 0.0;

  static ErrorRates isotropic(double t_over_relax);

  double total() const { return eps_x + eps_y + eps_z; }
  double axis(Axis a) const {
    return a == Axis::X ? eps_x : (a == Axis::Y ? eps_y : eps_z);
  }
  void validate() const;
};

/// Per-pulse imperfection model. The depolarizing model replaces the pulse's
/// two-level block by maximally mixed weight with probability 1-f; the
/// over-rotation model perturbs the rotation angle by a zero-mean Gaussian
/// with sigma = 2 sqrt(1-f), so the average pulse fidelity is about f.
struct PulseErrorModel {
  enum class Kind { Ideal, DepolarizingPerPulse, OverRotation };

  Kind kind = Kind::Ideal;
  double fidelity = 1.0;
  double over_rotation_sigma = 0.0;

  static PulseErrorModel ideal();
  static PulseErrorModel depolarizing(double fidelity);
  static PulseErrorModel over_rotation(double fidelity);

  bool is_deterministic() const { return kind != Kind::OverRotation; }
};

/// Unnormalized relaxation expansion term sqrt((t/T)^k / k!) S_i^k.
Mat error_operator(Axis axis, int k, double t_over_relax, double spin);

/// First-order relaxation channel
///   rho' = (1 - eps) rho + sum_i eps_i S_i rho S_i / Tr(S_i S_i rho),
/// with eps = eps_x + eps_y + eps_z. Branches are trace-normalized;
/// vanishing branches return their weight to the identity branch.
Mat apply_first_order_channel(const Mat& rho, const ErrorRates& rates);

/// Relaxation expansion truncated at S_i^k with k <= max_order, weights
/// (t/T_i)^k / k! and the remainder on the identity branch. max_order = 1
/// reduces to apply_first_order_channel; max_order >= 2 adds the branches a
/// single round of first-order correction cannot repair.
Mat relaxation_channel(const Mat& rho, const ErrorRates& rates, int max_order);

/// Normalized S_i image of a pure state (or the state itself for None).
/// Throws DegenerateError when the image vanishes.
Vec corrupt_state(const Vec& state, ErrorKind which);

/// Apply one pulse to a density matrix under the given imperfection model.
Mat imperfect_pulse(const Pulse& pulse, const Mat& rho, const PulseErrorModel& model,
                    RandomStream& rng);

}  // namespace spinqec
