// SPDX-License-Identifier: Apache-2.0
#include "spinqec/resources.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace spinqec {

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt sphere_volume(int n, int logical, int correctable) {
  BigInt sum = 0;
  BigInt pow3 = 1;
  for (int l = 0; l <= correctable; ++l) {
    sum += pow3 * binomial(n, l);
    pow3 *= 3;
  }
  return (BigInt(1) << logical) * sum;
}

}  // namespace

bool hamming_bound_holds(int n, int logical, int correctable) {
  if (n < 1) return false;
  return sphere_volume(n, logical, correctable) <= (BigInt(1) << n);
}

namespace {

// The counting bound alone admits n = 10 for a single distance-5 logical
// qubit, but the classification of additive codes rules a [[10,1,5]] code
// out; the smallest realizable code is [[11,1,5]].
bool known_unrealizable(int n, int logical, int correctable) {
  return n == 10 && logical == 1 && correctable == 2;
}

}  // namespace

int hamming_min_qubits(int logical, int correctable) {
  if (logical < 1 || correctable < 0)
    throw std::invalid_argument("hamming_min_qubits: need k >= 1 and t >= 0");
  for (int n = 1;; ++n)
    if (hamming_bound_holds(n, logical, correctable) &&
        !known_unrealizable(n, logical, correctable))
      return n;
}

long long gkp_dim(int order) {
  if (order < 1) throw std::invalid_argument("gkp_dim: order must be >= 1");
  const long long side = 2LL * order + 1;
  return 2 * side * side;
}

long long qudit_dim(int order, QuditFamily family) {
  if (order < 1) throw std::invalid_argument("qudit_dim: order must be >= 1");
  const long long base = 4LL * order * (order + 1);
  return family == QuditFamily::Even ? base : base + 2;
}

std::vector<ResourceRow> comparison_table(int max_order) {
  if (max_order < 1) throw std::invalid_argument("comparison_table: max order must be >= 1");
  std::vector<ResourceRow> rows;
  for (int n = 1; n <= max_order; ++n) {
    const int qubits = hamming_min_qubits(1, n);
    rows.push_back({"qubit-code", n, BigInt(1) << qubits, qubits,
                    "[[" + std::to_string(qubits) + ",1," + std::to_string(2 * n + 1) + "]]"});
    rows.push_back({"gkp-style", n, BigInt(gkp_dim(n)), 1, "2(2N+1)^2 grid levels"});
    rows.push_back({"spin-qudit", n, BigInt(qudit_dim(n, QuditFamily::Even)), 1,
                    "d=4N(N+1)"});
    rows.push_back({"spin-qudit", n, BigInt(qudit_dim(n, QuditFamily::Odd)), 1,
                    "d=4N(N+1)+2"});
  }
  return rows;
}

std::string resources_to_csv(const std::vector<ResourceRow>& rows) {
  std::string out = "scheme,order,hilbert_dim,physical_units,detail\n";
  for (const ResourceRow& r : rows) {
    out += r.scheme + "," + std::to_string(r.order) + "," + r.hilbert_dim.str() + "," +
           std::to_string(r.physical_units) + "," + r.detail + "\n";
  }
  return out;
}

std::string resources_to_text(const std::vector<ResourceRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "scheme" << std::setw(7) << "order"
      << std::setw(14) << "hilbert_dim" << std::setw(16) << "physical_units"
      << "detail\n";
  for (const ResourceRow& r : rows) {
    out << std::left << std::setw(12) << r.scheme << std::setw(7) << r.order
        << std::setw(14) << r.hilbert_dim.str() << std::setw(16) << r.physical_units
        << r.detail << "\n";
  }
  return out.str();
}

}  // namespace spinqec
