// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spinqec/spin_system.hpp"

namespace spinqec {

enum class Construction { Catalog, GeneralAB, MultiQudit, UserSupplied };

// d = 4N(N+1) ("even") carries the level offset B = 1 and an antisymmetric
// edge amplitude; d = 4N(N+1)+2 ("odd") has B = 0 and a fully symmetric pair.
enum class CodeFamily { Even, Odd };

/// A logical codeword pair on a spin system, with construction metadata.
struct CodePair {
  SpinSystem system;
  Vec zero_logical;
  Vec one_logical;
  int order = 1;
  Construction construction = Construction::UserSupplied;
  int stride_a = 0;  // level stride A (general construction)
  int offset_b = 0;  // level offset B (general construction)
  std::string name;  // catalog / multi-qudit identifier

  CodePair(SpinSystem sys, Vec zero, Vec one, int n, Construction c,
           int a = 0, int b = 0, std::string id = {});
};

/// The primary spin-7/2 first-order code:
/// |0_L> = sqrt(3/10)|-7/2> + sqrt(7/10)|+3/2>,
/// |1_L> = -sqrt(7/10)|-3/2> + sqrt(3/10)|+7/2>.
CodePair spin72_code();

/// Catalogued codeword pairs, transcribed amplitude-exact. Names:
/// spin72-primary, spin72-alt, spin92, spin232, spin252, spin492,
/// spin472, spin812.
CodePair catalog_code(std::string_view name);
std::vector<std::string> catalog_names();

/// Solve the general single-qudit construction at the given order: support
/// {-S} u {-S + (A i - B)} with A = 4N+2, coefficients from the N+1 linear
/// constraints (normalization plus <S_X^j S_Z S_X^j> = 0 for j < N).
/// Throws ConstructionError on a singular system, a negative squared
/// amplitude, or failed re-verification.
CodePair generate_code(int order, CodeFamily family);

/// Composite-system codes: "three-spin-3/2" (order 1) and "four-spin-7/2"
/// (order 2); every qudit occupies the same local level on each branch.
CodePair multi_qudit_code(std::string_view name);

enum class OperatorSet { SingleSpin, Collective };

struct MomentKey {
  Axis i;
  int l;
  Axis j;
  int k;
  auto operator<=>(const MomentKey&) const = default;
};

/// Outcome of a Knill-Laflamme check at a given order.
///
/// Violations are scaled by max(1, moment magnitude): high-order moments on
/// large spins reach ~S^(2 order), so a raw absolute comparison would sit
/// below double-precision resolution. The moment_table keeps raw values.
struct KlReport {
  int order = 1;
  double tolerance = kDefaultTol;
  double max_cross_violation = 0.0;  // scaled |<0_L| S_i^l S_j^k |1_L>|
  double max_diag_violation = 0.0;   // scaled |<0_L|..|0_L> - <1_L|..|1_L>|
  std::map<MomentKey, std::pair<Complex, Complex>> moment_table;
  bool passed = false;
  // Gram matrix of the normalized error states {S_i^l |0_L>, S_i^l |1_L>},
  // reported alongside the criteria proper.
  Mat error_gram;
  double max_gram_deviation = 0.0;
  bool gram_is_identity = false;
};

/// Evaluate all cross terms and diagonal differences for i,j in {X,Y,Z} and
/// 0 <= l,k <= order. Failure is a report outcome, not an exception.
KlReport verify_kl(const CodePair& code, int order, OperatorSet ops,
                   double tolerance = kDefaultTol);

/// The eight mutually orthonormal spin-7/2 states: |0_L>, |1_L>, and the
/// normalized images under S_X, i S_Y, and S_Z.
std::vector<std::pair<std::string, Vec>> error_basis(const CodePair& code);

/// Codeword document round trip (amplitudes at >= 15 significant digits).
nlohmann::json code_to_json(const CodePair& code);
CodePair code_from_json(const nlohmann::json& doc);
nlohmann::json kl_report_to_json(const KlReport& report);

}  // namespace spinqec
