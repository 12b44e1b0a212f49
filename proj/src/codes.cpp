// SPDX-License-Identifier: Apache-2.0
#include "spinqec/codes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace spinqec {

namespace {

struct LevelAmp {
  double m;    // z level (all qudits at m, for multi-qudit entries)
  double amp;  // real amplitude, sign included
};

Vec build_single(const SpinSystem& sys, const std::vector<LevelAmp>& terms) {
  Vec v = Vec::Zero(sys.dim());
  for (const auto& t : terms) v(sys.level_index(t.m)) = Complex(t.amp, 0.0);
  return v;
}

Vec build_uniform(const SpinSystem& sys, const std::vector<LevelAmp>& terms) {
  Vec v = Vec::Zero(sys.dim());
  for (const auto& t : terms) v(sys.uniform_level_index(t.m)) = Complex(t.amp, 0.0);
  return v;
}

double rsqrt_frac(double num, double den) { return std::sqrt(num / den); }

}  // namespace

CodePair::CodePair(SpinSystem sys, Vec zero, Vec one, int n, Construction c,
                   int a, int b, std::string id)
    : system(std::move(sys)),
      zero_logical(std::move(zero)),
      one_logical(std::move(one)),
      order(n),
      construction(c),
      stride_a(a),
      offset_b(b),
      name(std::move(id)) {
  if (zero_logical.size() != system.dim() || one_logical.size() != system.dim())
    throw std::invalid_argument("CodePair: codeword dimension mismatch");
  if (!is_normalized(zero_logical) || !is_normalized(one_logical))
    throw std::invalid_argument("CodePair: codewords must be normalized");
  if (std::abs(inner(zero_logical, one_logical)) > kDefaultTol)
    throw std::invalid_argument("CodePair: codewords must be orthogonal");
  if (order < 1) throw std::invalid_argument("CodePair: order must be >= 1");
}

CodePair spin72_code() {
  SpinSystem sys(3.5);
  const Vec zero = build_single(sys, {{-3.5, rsqrt_frac(3, 10)}, {1.5, rsqrt_frac(7, 10)}});
  const Vec one = build_single(sys, {{-1.5, -rsqrt_frac(7, 10)}, {3.5, rsqrt_frac(3, 10)}});
  return CodePair(sys, zero, one, 1, Construction::Catalog, 6, 1, "spin72-primary");
}

std::vector<std::string> catalog_names() {
  return {"spin72-primary", "spin72-alt", "spin92", "spin232",
          "spin252", "spin492", "spin472", "spin812"};
}

CodePair catalog_code(std::string_view name) {
  if (name == "spin72-primary") return spin72_code();

  if (name == "spin72-alt") {
    SpinSystem sys(3.5);
    const Vec zero = build_single(sys, {{-2.5, -rsqrt_frac(21, 64)},
                                        {-0.5, rsqrt_frac(21, 64)},
                                        {1.5, rsqrt_frac(7, 64)},
                                        {3.5, rsqrt_frac(15, 64)}});
    const Vec one = build_single(sys, {{-3.5, -rsqrt_frac(15, 64)},
                                       {-1.5, -rsqrt_frac(7, 64)},
                                       {0.5, -rsqrt_frac(21, 64)},
                                       {2.5, rsqrt_frac(21, 64)}});
    return CodePair(sys, zero, one, 1, Construction::Catalog, 0, 0, std::string(name));
  }
  if (name == "spin92") {
    SpinSystem sys(4.5);
    const Vec zero = build_single(sys, {{-4.5, -rsqrt_frac(1, 4)}, {1.5, rsqrt_frac(3, 4)}});
    const Vec one = build_single(sys, {{-1.5, rsqrt_frac(3, 4)}, {4.5, rsqrt_frac(1, 4)}});
    return CodePair(sys, zero, one, 1, Construction::Catalog, 6, 0, std::string(name));
  }
  if (name == "spin232") {
    SpinSystem sys(11.5);
    const Vec zero = build_single(sys, {{-11.5, rsqrt_frac(125, 1482)},
                                        {-2.5, rsqrt_frac(874, 1482)},
                                        {7.5, rsqrt_frac(483, 1482)}});
    const Vec one = build_single(sys, {{11.5, -rsqrt_frac(125, 1482)},
                                       {2.5, rsqrt_frac(874, 1482)},
                                       {-7.5, rsqrt_frac(483, 1482)}});
    return CodePair(sys, zero, one, 2, Construction::Catalog, 10, 1, std::string(name));
  }
  if (name == "spin252") {
    SpinSystem sys(12.5);
    const Vec zero = build_single(sys, {{-12.5, rsqrt_frac(1, 16)},
                                        {-2.5, rsqrt_frac(10, 16)},
                                        {7.5, rsqrt_frac(5, 16)}});
    const Vec one = build_single(sys, {{12.5, rsqrt_frac(1, 16)},
                                       {2.5, rsqrt_frac(10, 16)},
                                       {-7.5, rsqrt_frac(5, 16)}});
    return CodePair(sys, zero, one, 2, Construction::Catalog, 10, 0, std::string(name));
  }
  if (name == "spin492") {
    SpinSystem sys(24.5);
    const Vec zero = build_single(sys, {{-24.5, rsqrt_frac(1, 64)},
                                        {-10.5, rsqrt_frac(21, 64)},
                                        {3.5, rsqrt_frac(35, 64)},
                                        {17.5, rsqrt_frac(7, 64)}});
    const Vec one = build_single(sys, {{24.5, rsqrt_frac(1, 64)},
                                       {10.5, rsqrt_frac(21, 64)},
                                       {-3.5, rsqrt_frac(35, 64)},
                                       {-17.5, rsqrt_frac(7, 64)}});
    return CodePair(sys, zero, one, 3, Construction::Catalog, 14, 0, std::string(name));
  }
  if (name == "spin472") {
    SpinSystem sys(23.5);
    const Vec zero = build_single(sys, {{-23.5, rsqrt_frac(16807, 796302)},
                                        {-10.5, rsqrt_frac(260145, 796302)},
                                        {3.5, rsqrt_frac(425867, 796302)},
                                        {17.5, rsqrt_frac(93483, 796302)}});
    const Vec one = build_single(sys, {{23.5, -rsqrt_frac(16807, 796302)},
                                       {10.5, rsqrt_frac(260145, 796302)},
                                       {-3.5, rsqrt_frac(425867, 796302)},
                                       {-17.5, rsqrt_frac(93483, 796302)}});
    return CodePair(sys, zero, one, 3, Construction::Catalog, 14, 1, std::string(name));
  }
  if (name == "spin812") {
    SpinSystem sys(40.5);
    const Vec zero = build_single(sys, {{-40.5, rsqrt_frac(1, 256)},
                                        {-22.5, rsqrt_frac(36, 256)},
                                        {-4.5, rsqrt_frac(126, 256)},
                                        {13.5, rsqrt_frac(84, 256)},
                                        {31.5, rsqrt_frac(9, 256)}});
    const Vec one = build_single(sys, {{40.5, rsqrt_frac(1, 256)},
                                       {22.5, rsqrt_frac(36, 256)},
                                       {4.5, rsqrt_frac(126, 256)},
                                       {-13.5, rsqrt_frac(84, 256)},
                                       {-31.5, rsqrt_frac(9, 256)}});
    return CodePair(sys, zero, one, 4, Construction::Catalog, 18, 0, std::string(name));
  }

  std::ostringstream msg;
  msg << "catalog_code: unknown name '" << name << "'";
  throw std::out_of_range(msg.str());
}

CodePair multi_qudit_code(std::string_view name) {
  if (name == "three-spin-3/2") {
    SpinSystem sys(std::vector<double>{1.5, 1.5, 1.5});
    const Vec zero = build_uniform(sys, {{-1.5, rsqrt_frac(1, 4)}, {0.5, rsqrt_frac(3, 4)}});
    const Vec one = build_uniform(sys, {{1.5, rsqrt_frac(1, 4)}, {-0.5, rsqrt_frac(3, 4)}});
    return CodePair(sys, zero, one, 1, Construction::MultiQudit, 0, 0, std::string(name));
  }
  if (name == "four-spin-7/2") {
    SpinSystem sys(std::vector<double>{3.5, 3.5, 3.5, 3.5});
    const Vec zero = build_uniform(sys, {{-3.5, rsqrt_frac(2, 16)},
                                         {-1.5, rsqrt_frac(7, 16)},
                                         {2.5, rsqrt_frac(7, 16)}});
    const Vec one = build_uniform(sys, {{3.5, rsqrt_frac(2, 16)},
                                        {1.5, rsqrt_frac(7, 16)},
                                        {-2.5, -rsqrt_frac(7, 16)}});
    return CodePair(sys, zero, one, 2, Construction::MultiQudit, 0, 0, std::string(name));
  }
  std::ostringstream msg;
  msg << "multi_qudit_code: unknown name '" << name << "'";
  throw std::out_of_range(msg.str());
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Diagonal entries of S_X^j S_Z S_X^j in exact rational arithmetic. The
// symmetric tridiagonal S_X is similar, under a diagonal scaling, to the
// rational tridiagonal J with J(k,k+1) = b_k^2 and J(k+1,k) = 1, and the
// diagonal of S_X^j S_Z S_X^j is invariant under that scaling.
class RationalMomentTable {
 public:
  explicit RationalMomentTable(int dim) : dim_(dim), hop2_(dim - 1), z2_(dim) {
    // doubled quantum numbers keep everything integral
    const long twos = dim - 1;
    for (int k = 0; k + 1 < dim; ++k) {
      const long twom = -twos + 2 * k;
      // b_k^2 = [S(S+1) - m(m+1)] / 4 in doubled quantum numbers
      hop2_[k] = Rational(twos * (twos + 2) - twom * (twom + 2), 16);
    }
    for (int k = 0; k < dim; ++k) z2_[k] = Rational(-twos + 2 * k, 2);
  }

  // <m| S_X^j S_Z S_X^j |m>
  Rational diagonal(int j, int m) const {
    std::vector<Rational> up = power_apply(j, m, /*transposed=*/false);
    for (int k = 0; k < dim_; ++k) up[k] *= z2_[k];
    const std::vector<Rational> down = power_apply(j, m, /*transposed=*/true);
    Rational acc = 0;
    for (int k = 0; k < dim_; ++k) acc += down[k] * up[k];
    return acc;
  }

 private:
  std::vector<Rational> power_apply(int j, int m, bool transposed) const {
    std::vector<Rational> v(dim_, Rational(0));
    v[m] = 1;
    for (int rep = 0; rep < j; ++rep) {
      std::vector<Rational> next(dim_, Rational(0));
      for (int k = 0; k < dim_; ++k) {
        if (k + 1 < dim_) next[k] += (transposed ? Rational(1) : hop2_[k]) * v[k + 1];
        if (k > 0) next[k] += (transposed ? hop2_[k - 1] : Rational(1)) * v[k - 1];
      }
      v.swap(next);
    }
    return v;
  }

  int dim_;
  std::vector<Rational> hop2_;
  std::vector<Rational> z2_;
};

// Exact partial-pivot Gaussian elimination over the rationals.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> lhs,
                                     std::vector<Rational> rhs) {
  const std::size_t n = lhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(lhs[r][col]) > abs(lhs[pivot][col])) pivot = r;
    if (lhs[pivot][col] == 0)
      throw ConstructionError("generate_code: singular constraint system");
    std::swap(lhs[pivot], lhs[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Rational factor = lhs[r][col] / lhs[col][col];
      for (std::size_t c = col; c < n; ++c) lhs[r][c] -= factor * lhs[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t row = n; row-- > 0;) {
    Rational acc = rhs[row];
    for (std::size_t c = row + 1; c < n; ++c) acc -= lhs[row][c] * x[c];
    x[row] = acc / lhs[row][row];
  }
  return x;
}

}  // namespace

CodePair generate_code(int order, CodeFamily family) {
  if (order < 1) throw std::invalid_argument("generate_code: order must be >= 1");
  const int n = order;
  const int dim = (family == CodeFamily::Even) ? 4 * n * (n + 1) : 4 * n * (n + 1) + 2;
  const double spin = 0.5 * (dim - 1);
  const int stride = 4 * n + 2;
  const int offset = (family == CodeFamily::Even) ? 1 : 0;

  std::vector<int> support;
  support.push_back(0);
  for (int i = 1; i <= n; ++i) support.push_back(stride * i - offset);

  // Constraint rows: normalization, then <S_X^j S_Z S_X^j> = 0 for j < N.
  // Support levels are far enough apart that only diagonal entries of
  // S_X^j S_Z S_X^j contribute, so the system is linear in |a_i|^2. The
  // entries grow like S^(2j+1), which defeats double precision by N = 4,
  // so both the moments and the elimination are exact rationals.
  const RationalMomentTable moments(dim);
  std::vector<std::vector<Rational>> lhs(n + 1, std::vector<Rational>(n + 1, Rational(1)));
  std::vector<Rational> rhs(n + 1, Rational(0));
  rhs[0] = 1;
  for (int j = 0; j < n; ++j)
    for (int col = 0; col <= n; ++col)
      lhs[j + 1][col] = moments.diagonal(j, support[col]);

  const std::vector<Rational> weights = solve_rational(lhs, rhs);
  for (int i = 0; i <= n; ++i) {
    if (weights[i] < 0) {
      std::ostringstream msg;
      msg << "generate_code: negative squared amplitude at support slot " << i;
      throw ConstructionError(msg.str());
    }
  }

  SpinSystem sys(spin);
  Vec zero = Vec::Zero(dim);
  Vec one = Vec::Zero(dim);
  for (int i = 0; i <= n; ++i) {
    const double a = std::sqrt(static_cast<double>(weights[i]));
    zero(support[i]) = a;
    double b = a;
    if (i == 0 && family == CodeFamily::Even) b = -a;
    one(dim - 1 - support[i]) = b;
  }
  zero /= zero.norm();
  one /= one.norm();

  CodePair code(sys, zero, one, n, Construction::GeneralAB, stride, offset);

  // The construction is heuristic, so always re-verify at the target order.
  const KlReport report = verify_kl(code, n, OperatorSet::SingleSpin, kDefaultTol);
  if (!report.passed) {
    std::ostringstream msg;
    msg << "generate_code: constructed pair fails verification at order " << n
        << " (cross " << report.max_cross_violation << ", diag "
        << report.max_diag_violation << ")";
    throw ConstructionError(msg.str());
  }
  return code;
}

KlReport verify_kl(const CodePair& code, int order, OperatorSet ops, double tolerance) {
  if (order < 1) throw std::invalid_argument("verify_kl: order must be >= 1");
  if (ops == OperatorSet::SingleSpin && code.system.num_spins() != 1)
    throw std::invalid_argument("verify_kl: single-spin operators need a single-spin system");

  KlReport report;
  report.order = order;
  report.tolerance = tolerance;

  // Power stacks S_i^l |b_L> for l = 0..order; collective operators reduce to
  // the single-spin ones on one-spin systems.
  const std::array<Axis, 3> axes = {Axis::X, Axis::Y, Axis::Z};
  std::array<std::vector<Vec>, 3> zero_stack, one_stack;
  for (std::size_t ai = 0; ai < axes.size(); ++ai) {
    zero_stack[ai].push_back(code.zero_logical);
    one_stack[ai].push_back(code.one_logical);
    for (int l = 1; l <= order; ++l) {
      zero_stack[ai].push_back(apply_collective(code.system, axes[ai], zero_stack[ai][l - 1]));
      one_stack[ai].push_back(apply_collective(code.system, axes[ai], one_stack[ai][l - 1]));
    }
  }

  // Moments <b| S_i^l S_j^k |b'> = <S_i^l b | S_j^k b'> (the operators are
  // Hermitian). Zero powers are axis-independent; keep only the i=X entry.
  for (std::size_t ai = 0; ai < axes.size(); ++ai) {
    for (int l = 0; l <= order; ++l) {
      if (l == 0 && ai != 0) continue;
      for (std::size_t bj = 0; bj < axes.size(); ++bj) {
        for (int k = 0; k <= order; ++k) {
          if (k == 0 && bj != 0) continue;
          const Complex zz = inner(zero_stack[ai][l], zero_stack[bj][k]);
          const Complex oo = inner(one_stack[ai][l], one_stack[bj][k]);
          const Complex cross = inner(zero_stack[ai][l], one_stack[bj][k]);
          report.moment_table[{axes[ai], l, axes[bj], k}] = {zz, oo};
          // scale by the Cauchy-Schwarz bound of the moment: zero-valued
          // moments are cancellations of terms that large, so this is the
          // roundoff-meaningful normalization
          const double cross_scale =
              std::max(1.0, zero_stack[ai][l].norm() * one_stack[bj][k].norm());
          const double diag_scale =
              std::max({1.0, zero_stack[ai][l].norm() * zero_stack[bj][k].norm(),
                        one_stack[ai][l].norm() * one_stack[bj][k].norm()});
          report.max_cross_violation =
              std::max(report.max_cross_violation, std::abs(cross) / cross_scale);
          report.max_diag_violation =
              std::max(report.max_diag_violation, std::abs(zz - oo) / diag_scale);
        }
      }
    }
  }
  report.passed = report.max_cross_violation < tolerance &&
                  report.max_diag_violation < tolerance;

  // Gram matrix of the normalized error states: codewords plus S_i^l images
  // with l >= 1. Vanishing states are a reportable deviation on their own.
  std::vector<Vec> states;
  states.push_back(code.zero_logical);
  states.push_back(code.one_logical);
  bool degenerate = false;
  for (std::size_t ai = 0; ai < axes.size(); ++ai) {
    for (int l = 1; l <= order; ++l) {
      for (const auto* stack : {&zero_stack[ai], &one_stack[ai]}) {
        const Vec& raw = (*stack)[l];
        if (raw.norm() < kZeroBranchTol) {
          degenerate = true;
          continue;
        }
        states.push_back(raw / raw.norm());
      }
    }
  }
  const auto count = static_cast<Eigen::Index>(states.size());
  report.error_gram = Mat::Zero(count, count);
  for (Eigen::Index r = 0; r < count; ++r)
    for (Eigen::Index c = 0; c < count; ++c)
      report.error_gram(r, c) = inner(states[r], states[c]);
  report.max_gram_deviation =
      max_abs_diff(report.error_gram, Mat(Mat::Identity(count, count)));
  if (degenerate) report.max_gram_deviation = 1.0;
  report.gram_is_identity = report.max_gram_deviation < tolerance;
  return report;
}

std::vector<std::pair<std::string, Vec>> error_basis(const CodePair& code) {
  if (code.system.num_spins() != 1 || code.system.spins()[0] != 3.5 ||
      code.name != "spin72-primary")
    throw std::invalid_argument("error_basis: defined for the spin-7/2 primary code");
  const SpinOperators ops = spin_operators(3.5);
  const Complex im(0.0, 1.0);
  std::vector<std::pair<std::string, Vec>> basis;
  basis.emplace_back("0L", code.zero_logical);
  basis.emplace_back("1L", code.one_logical);
  basis.emplace_back("SX.0L", normalized(ops.x * code.zero_logical));
  basis.emplace_back("SX.1L", normalized(ops.x * code.one_logical));
  basis.emplace_back("iSY.0L", normalized(im * (ops.y * code.zero_logical)));
  basis.emplace_back("iSY.1L", normalized(im * (ops.y * code.one_logical)));
  basis.emplace_back("SZ.0L", normalized(ops.z * code.zero_logical));
  basis.emplace_back("SZ.1L", normalized(ops.z * code.one_logical));
  return basis;
}

namespace {

const char* construction_tag(Construction c) {
  switch (c) {
    case Construction::Catalog: return "catalog";
    case Construction::GeneralAB: return "general-A-B";
    case Construction::MultiQudit: return "multi-qudit";
    default: return "user-supplied";
  }
}

Construction construction_from_tag(const std::string& tag) {
  if (tag == "catalog") return Construction::Catalog;
  if (tag == "general-A-B") return Construction::GeneralAB;
  if (tag == "multi-qudit") return Construction::MultiQudit;
  if (tag == "user-supplied") return Construction::UserSupplied;
  throw ParseError("unknown construction tag '" + tag + "'");
}

nlohmann::json state_to_json(const SpinSystem& sys, const Vec& v) {
  nlohmann::json out;
  auto& levels = out["support_levels"] = nlohmann::json::array();
  auto& re = out["amplitudes_re"] = nlohmann::json::array();
  auto& imj = out["amplitudes_im"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) < kZeroBranchTol) continue;
    if (sys.num_spins() == 1)
      levels.push_back(sys.level_m(i));
    else
      levels.push_back(static_cast<double>(i));  // flat composite index
    re.push_back(v(i).real());
    imj.push_back(v(i).imag());
  }
  return out;
}

Vec state_from_json(const SpinSystem& sys, const nlohmann::json& doc) {
  Vec v = Vec::Zero(sys.dim());
  const auto& levels = doc.at("support_levels");
  const auto& re = doc.at("amplitudes_re");
  const auto& imj = doc.at("amplitudes_im");
  if (levels.size() != re.size() || levels.size() != imj.size())
    throw ParseError("codeword document: mismatched support/amplitude lengths");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double lvl = levels[i].get<double>();
    const Eigen::Index idx = (sys.num_spins() == 1)
                                 ? sys.level_index(lvl)
                                 : static_cast<Eigen::Index>(std::lround(lvl));
    if (idx < 0 || idx >= sys.dim()) throw ParseError("codeword document: level out of range");
    v(idx) = Complex(re[i].get<double>(), imj[i].get<double>());
  }
  return v;
}

}  // namespace

nlohmann::json code_to_json(const CodePair& code) {
  nlohmann::json doc;
  doc["spins"] = code.system.spins();
  doc["order"] = code.order;
  doc["construction"] = {{"tag", construction_tag(code.construction)},
                         {"A", code.stride_a},
                         {"B", code.offset_b},
                         {"name", code.name}};
  doc["zero_logical"] = state_to_json(code.system, code.zero_logical);
  doc["one_logical"] = state_to_json(code.system, code.one_logical);
  return doc;
}

CodePair code_from_json(const nlohmann::json& doc) {
  try {
    SpinSystem sys(doc.at("spins").get<std::vector<double>>());
    const int order = doc.at("order").get<int>();
    const auto& cons = doc.at("construction");
    return CodePair(sys, state_from_json(sys, doc.at("zero_logical")),
                    state_from_json(sys, doc.at("one_logical")), order,
                    construction_from_tag(cons.at("tag").get<std::string>()),
                    cons.value("A", 0), cons.value("B", 0), cons.value("name", ""));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("codeword document: ") + e.what());
  }
}

nlohmann::json kl_report_to_json(const KlReport& report) {
  nlohmann::json doc;
  doc["order"] = report.order;
  doc["tolerance"] = report.tolerance;
  doc["max_cross_violation"] = report.max_cross_violation;
  doc["max_diag_violation"] = report.max_diag_violation;
  doc["max_gram_deviation"] = report.max_gram_deviation;
  doc["gram_is_identity"] = report.gram_is_identity;
  doc["passed"] = report.passed;
  auto& moments = doc["moments"] = nlohmann::json::array();
  for (const auto& [key, value] : report.moment_table) {
    moments.push_back({{"i", axis_name(key.i)},
                       {"l", key.l},
                       {"j", axis_name(key.j)},
                       {"k", key.k},
                       {"zero_re", value.first.real()},
                       {"zero_im", value.first.imag()},
                       {"one_re", value.second.real()},
                       {"one_im", value.second.imag()}});
  }
  return doc;
}

}  // namespace spinqec
