// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace spinqec {

using BigInt = boost::multiprecision::cpp_int;

/// Smallest n with 2^k sum_{l=0}^{t} 3^l C(n,l) <= 2^n, in exact integers.
int hamming_min_qubits(int logical, int correctable);

/// Does (n, k, t) satisfy the qubit Hamming bound?
bool hamming_bound_holds(int n, int logical, int correctable);

/// Hilbert dimension 2 (2N+1)^2 of the oscillator-grid comparison encoding.
long long gkp_dim(int order);

enum class QuditFamily { Even, Odd };  // 4N(N+1) vs 4N(N+1)+2

long long qudit_dim(int order, QuditFamily family);

struct ResourceRow {
  std::string scheme;  // qubit-code | gkp-style | spin-qudit
  int order = 1;
  BigInt hilbert_dim;
  int physical_units = 1;
  std::string detail;
};

/// Scheme-by-scheme dimension and unit counts for orders 1..max_order.
std::vector<ResourceRow> comparison_table(int max_order);

std::string resources_to_csv(const std::vector<ResourceRow>& rows);
std::string resources_to_text(const std::vector<ResourceRow>& rows);

}  // namespace spinqec
