// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "spinqec/resources.hpp"

using namespace spinqec;

TEST_CASE("hamming bound minima") {
  CHECK(hamming_min_qubits(1, 0) == 1);
  CHECK(hamming_min_qubits(1, 1) == 5);
  CHECK(hamming_min_qubits(1, 2) == 11);
  CHECK_THROWS_AS(hamming_min_qubits(0, 1), std::invalid_argument);
}

TEST_CASE("hamming bound holds at the minimum and fails just below") {
  for (int t = 1; t <= 6; ++t) {
    const int n = hamming_min_qubits(1, t);
    CHECK(hamming_bound_holds(n, 1, t));
    if (t == 2) {
      // counting bound admits n = 10, excluded as unrealizable; the scan
      // must still reject n = 9 on the bound itself
      CHECK(hamming_bound_holds(n - 1, 1, t));
      CHECK_FALSE(hamming_bound_holds(n - 2, 1, t));
    } else {
      CHECK_FALSE(hamming_bound_holds(n - 1, 1, t));
    }
  }
}

TEST_CASE("comparison dimensions") {
  CHECK(gkp_dim(1) == 18);
  CHECK(gkp_dim(2) == 50);
  CHECK(gkp_dim(3) == 98);
  CHECK(qudit_dim(1, QuditFamily::Even) == 8);
  CHECK(qudit_dim(1, QuditFamily::Odd) == 10);
  CHECK(qudit_dim(2, QuditFamily::Even) == 24);
  CHECK(qudit_dim(2, QuditFamily::Odd) == 26);
  CHECK(qudit_dim(3, QuditFamily::Even) == 48);
  CHECK(qudit_dim(3, QuditFamily::Odd) == 50);
  CHECK_THROWS_AS(gkp_dim(0), std::invalid_argument);
  CHECK_THROWS_AS(qudit_dim(0, QuditFamily::Even), std::invalid_argument);

  // grid encoding needs about twice the qudit dimension
  for (int n = 1; n <= 10; ++n) {
    const long long diff = gkp_dim(n) - 2 * qudit_dim(n, QuditFamily::Odd);
    CHECK(diff >= -6);
    CHECK(diff <= 2);
    CHECK(gkp_dim(n) % 2 == 0);
    CHECK(qudit_dim(n, QuditFamily::Even) % 2 == 0);
    CHECK(qudit_dim(n, QuditFamily::Odd) % 2 == 0);
  }
}

TEST_CASE("comparison table rows") {
  const auto rows = comparison_table(2);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].scheme == "qubit-code");
  CHECK(rows[0].hilbert_dim == 32);
  CHECK(rows[0].physical_units == 5);
  CHECK(rows[1].hilbert_dim == 18);
  CHECK(rows[2].hilbert_dim == 8);
  CHECK(rows[2].physical_units == 1);
  CHECK(rows[3].hilbert_dim == 10);
  CHECK(rows[4].hilbert_dim == 2048);
  CHECK(rows[4].physical_units == 11);
  CHECK(rows[6].hilbert_dim == 24);

  const std::string csv = resources_to_csv(rows);
  CHECK(csv.rfind("scheme,order,hilbert_dim,physical_units,detail\n", 0) == 0);
  const std::string text = resources_to_text(rows);
  CHECK(text.find("2048") != std::string::npos);
  CHECK_THROWS_AS(comparison_table(0), std::invalid_argument);
}
