// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "spinqec/common.hpp"

namespace spinqec {

/// One or more spins with a dense product Hilbert space.
///
/// Basis convention: each spin is ordered m = -S ... +S; composite bases are
/// row-major tensor products (first spin is the slowest index).
class SpinSystem {
 public:
  explicit SpinSystem(double spin);
  explicit SpinSystem(std::vector<double> spins);

  const std::vector<double>& spins() const { return spins_; }
  std::size_t num_spins() const { return spins_.size(); }
  Eigen::Index dim() const { return dim_; }

  /// Dimension 2S+1 of one factor.
  Eigen::Index local_dim(std::size_t q) const;

  /// Basis index of |m> for a single-spin system.
  Eigen::Index level_index(double m) const;
  /// m value of a basis index for a single-spin system.
  double level_m(Eigen::Index index) const;

  /// Flat index of the product state with every spin at its local level m.
  Eigen::Index uniform_level_index(double m) const;

  bool operator==(const SpinSystem& other) const { return spins_ == other.spins_; }

  static bool is_valid_spin(double s);

 private:
  std::vector<double> spins_;
  Eigen::Index dim_;
};

struct SpinOperators {
  Mat x, y, z;
};

/// Angular-momentum matrices for a single spin: z diagonal with entries
/// -S..+S, ladder elements sqrt(S(S+1) - m(m+-1)).
SpinOperators spin_operators(double spin);

/// Collective operators sum_q I (x) ... S_i^(q) ... (x) I, built densely.
SpinOperators collective_operators(const SpinSystem& sys);

/// Apply the collective operator for one axis without forming the dense
/// matrix; matches collective_operators(sys) applied to `v`.
Vec apply_collective(const SpinSystem& sys, Axis axis, const Vec& v);

Mat kron(const Mat& a, const Mat& b);
Complex inner(const Vec& a, const Vec& b);
Vec apply(const Mat& op, const Vec& v);
Complex expectation(const Mat& op, const Mat& rho);  // Tr(op rho)
Mat conjugate_map(const Mat& op, const Mat& rho);    // op rho op^dagger

bool is_hermitian(const Mat& a, double tol = kHermitianTol);
bool is_unitary(const Mat& a, double tol = kDefaultTol);
bool is_normalized(const Vec& v, double tol = kDefaultTol);
// trace 1, Hermitian, and smallest eigenvalue >= -1e-9
bool is_density_matrix(const Mat& a, double tol = kDefaultTol);

Vec normalized(const Vec& v);

/// Multiply by a global phase so the largest-magnitude amplitude is positive
/// real; canonical form for amplitude-wise comparisons.
Vec phase_fixed(const Vec& v);

double max_abs_diff(const Mat& a, const Mat& b);
double max_abs_diff(const Vec& a, const Vec& b);

/// Max-norm distance after aligning the global phase of `a` onto `b`.
double phase_aligned_distance(const Vec& a, const Vec& b);

}  // namespace spinqec
