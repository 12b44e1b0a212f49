// SPDX-License-Identifier: Apache-2.0
#include "spinqec/spin_system.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace spinqec {

namespace {

Eigen::Index local_dim_of(double s) {
  return static_cast<Eigen::Index>(std::lround(2.0 * s)) + 1;
}

}  // namespace

bool SpinSystem::is_valid_spin(double s) {
  if (s < 0.5) return false;
  const double twice = 2.0 * s;
  return std::abs(twice - std::round(twice)) < 1e-12;
}

SpinSystem::SpinSystem(double spin) : SpinSystem(std::vector<double>{spin}) {}

SpinSystem::SpinSystem(std::vector<double> spins) : spins_(std::move(spins)) {
  if (spins_.empty()) throw std::invalid_argument("SpinSystem: need at least one spin");
  dim_ = 1;
  for (double s : spins_) {
    if (!is_valid_spin(s)) {
      std::ostringstream msg;
      msg << "SpinSystem: spin " << s << " is not a positive half-integer";
      throw std::invalid_argument(msg.str());
    }
    dim_ *= local_dim_of(s);
  }
}

Eigen::Index SpinSystem::local_dim(std::size_t q) const {
  return local_dim_of(spins_.at(q));
}

Eigen::Index SpinSystem::level_index(double m) const {
  if (spins_.size() != 1)
    throw std::invalid_argument("level_index: single-spin systems only");
  const double s = spins_[0];
  const double idx = m + s;
  const auto i = static_cast<Eigen::Index>(std::lround(idx));
  if (std::abs(idx - std::round(idx)) > 1e-9 || i < 0 || i >= dim_)
    throw std::invalid_argument("level_index: m outside -S..+S ladder");
  return i;
}

double SpinSystem::level_m(Eigen::Index index) const {
  if (spins_.size() != 1)
    throw std::invalid_argument("level_m: single-spin systems only");
  if (index < 0 || index >= dim_) throw std::invalid_argument("level_m: index out of range");
  return -spins_[0] + static_cast<double>(index);
}

Eigen::Index SpinSystem::uniform_level_index(double m) const {
  Eigen::Index flat = 0;
  for (std::size_t q = 0; q < spins_.size(); ++q) {
    const double s = spins_[q];
    const double idx = m + s;
    const auto i = static_cast<Eigen::Index>(std::lround(idx));
    if (std::abs(idx - std::round(idx)) > 1e-9 || i < 0 || i >= local_dim_of(s))
      throw std::invalid_argument("uniform_level_index: m outside local ladder");
    flat = flat * local_dim_of(s) + i;
  }
  return flat;
}

SpinOperators spin_operators(double spin) {
  if (!SpinSystem::is_valid_spin(spin))
    throw std::invalid_argument("spin_operators: spin must be a positive half-integer");
  const Eigen::Index d = local_dim_of(spin);
  Mat sz = Mat::Zero(d, d);
  Mat sp = Mat::Zero(d, d);  // raising
  for (Eigen::Index i = 0; i < d; ++i) {
    const double m = -spin + static_cast<double>(i);
    sz(i, i) = m;
    if (i + 1 < d) sp(i + 1, i) = std::sqrt(spin * (spin + 1.0) - m * (m + 1.0));
  }
  const Mat sm = sp.adjoint();
  SpinOperators ops;
  ops.x = 0.5 * (sp + sm);
  ops.y = Complex(0.0, -0.5) * (sp - sm);
  ops.z = sz;
  return ops;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SpinOperators collective_operators(const SpinSystem& sys) {
  SpinOperators total;
  total.x = Mat::Zero(sys.dim(), sys.dim());
  total.y = total.x;
  total.z = total.x;
  for (std::size_t q = 0; q < sys.num_spins(); ++q) {
    const SpinOperators local = spin_operators(sys.spins()[q]);
    Mat left = Mat::Identity(1, 1);
    for (std::size_t p = 0; p < q; ++p)
      left = kron(left, Mat::Identity(sys.local_dim(p), sys.local_dim(p)));
    Mat right = Mat::Identity(1, 1);
    for (std::size_t p = q + 1; p < sys.num_spins(); ++p)
      right = kron(right, Mat::Identity(sys.local_dim(p), sys.local_dim(p)));
    total.x += kron(kron(left, local.x), right);
    total.y += kron(kron(left, local.y), right);
    total.z += kron(kron(left, local.z), right);
  }
  return total;
}

Vec apply_collective(const SpinSystem& sys, Axis axis, const Vec& v) {
  if (v.size() != sys.dim())
    throw std::invalid_argument("apply_collective: dimension mismatch");
  Vec out = Vec::Zero(v.size());
  Eigen::Index post = sys.dim();
  Eigen::Index pre = 1;
  for (std::size_t q = 0; q < sys.num_spins(); ++q) {
    const Eigen::Index d = sys.local_dim(q);
    post /= d;
    const SpinOperators local = spin_operators(sys.spins()[q]);
    const Mat& op = (axis == Axis::X) ? local.x : (axis == Axis::Y) ? local.y : local.z;
    for (Eigen::Index a = 0; a < pre; ++a) {
      for (Eigen::Index c = 0; c < post; ++c) {
        const Eigen::Index base = a * d * post + c;
        for (Eigen::Index i = 0; i < d; ++i) {
          Complex acc(0.0, 0.0);
          for (Eigen::Index j = 0; j < d; ++j) acc += op(i, j) * v(base + j * post);
          out(base + i * post) += acc;
        }
      }
    }
    pre *= d;
  }
  return out;
}

Complex inner(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
  return a.dot(b);  // conjugates the left argument
}

Vec apply(const Mat& op, const Vec& v) {
  if (op.cols() != v.size()) throw std::invalid_argument("apply: dimension mismatch");
  return op * v;
}

Complex expectation(const Mat& op, const Mat& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  return (op * rho).trace();
}

Mat conjugate_map(const Mat& op, const Mat& rho) {
  if (op.cols() != rho.rows()) throw std::invalid_argument("conjugate_map: dimension mismatch");
  return op * rho * op.adjoint();
}

bool is_hermitian(const Mat& a, double tol) {
  return max_abs_diff(a, Mat(a.adjoint())) <= tol;
}

bool is_unitary(const Mat& a, double tol) {
  const Mat id = Mat::Identity(a.rows(), a.cols());
  return max_abs_diff(Mat(a.adjoint() * a), id) <= tol;
}

bool is_normalized(const Vec& v, double tol) {
  return std::abs(v.squaredNorm() - 1.0) <= tol;
}

bool is_density_matrix(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (std::abs(a.trace().real() - 1.0) > tol || std::abs(a.trace().imag()) > tol) return false;
  if (!is_hermitian(a, 10 * kHermitianTol)) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + Mat(a.adjoint())));
  return es.eigenvalues().minCoeff() >= -1e-9;
}

Vec normalized(const Vec& v) {
  const double n = v.norm();
  if (n < kZeroBranchTol) throw DegenerateError("normalized: vector has vanishing norm");
  return v / n;
}

Vec phase_fixed(const Vec& v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best) {
      best = std::abs(v(i));
      imax = i;
    }
  }
  if (best < kZeroBranchTol) return v;
  const Complex phase = v(imax) / best;
  return v / phase;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Vec& a, const Vec& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double phase_aligned_distance(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("phase_aligned_distance: dimension mismatch");
  const Complex ov = inner(a, b);
  if (std::abs(ov) < kZeroBranchTol) return max_abs_diff(a, b);
  const Complex phase = ov / std::abs(ov);
  return (a * phase - b).cwiseAbs().maxCoeff();
}

}  // namespace spinqec
