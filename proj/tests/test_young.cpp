// Copyright 2026 The superrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <map>

#include "superrep/young.hpp"

using namespace superrep;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Semistandard fillings with entries 0..d-1, counted cell by cell in row-major order.
long long count_ssyt(const std::vector<int>& rows, int d) {
  std::vector<std::vector<int>> t;
  for (int r : rows) t.emplace_back(static_cast<std::size_t>(r), -1);
  std::vector<std::pair<int, int>> cells;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j) cells.emplace_back(static_cast<int>(i), j);
  std::function<long long(std::size_t)> rec = [&](std::size_t k) -> long long {
    if (k == cells.size()) return 1;
    auto [i, j] = cells[k];
    long long total = 0;
    for (int v = 0; v < d; ++v) {
      if (j > 0 && t[i][j - 1] > v) continue;
      if (i > 0 && t[i - 1][j] >= v) continue;
      t[i][j] = v;
      total += rec(k + 1);
    }
    t[i][j] = -1;
    return total;
  };
  return rec(0);
}

// Standard tableaux via removal of corner boxes.
long long count_syt(std::vector<int> rows) {
  static std::map<std::vector<int>, long long> memo;
  while (!rows.empty() && rows.back() == 0) rows.pop_back();
  if (rows.empty()) return 1;
  if (auto it = memo.find(rows); it != memo.end()) return it->second;
  long long total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool corner = (i + 1 == rows.size()) || rows[i + 1] < rows[i];
    if (!corner) continue;
    auto next = rows;
    --next[i];
    total += count_syt(next);
  }
  memo[rows] = total;
  return total;
}

// Spin multiplicities by adding one spin-1/2 at a time; index is 2j.
std::vector<BigInt> spin_multiplicities(int K) {
  std::vector<BigInt> m(static_cast<std::size_t>(K) + 2, 0);
  m[1] = 1;
  for (int k = 1; k < K; ++k) {
    std::vector<BigInt> next(m.size(), 0);
    for (int tj = 0; tj <= k; ++tj) {
      if (m[tj] == 0) continue;
      next[tj + 1] += m[tj];
      if (tj > 0) next[tj - 1] += m[tj];
    }
    m = next;
  }
  return m;
}

}  // namespace

TEST_CASE("diagram enumeration order and contents") {
  auto k2 = enumerate_diagrams(2, 2);
  REQUIRE(k2.size() == 2);
  CHECK(k2[0].rows() == std::vector<int>{2, 0});
  CHECK(k2[1].rows() == std::vector<int>{1, 1});
  auto k3 = enumerate_diagrams(3, 3);
  REQUIRE(k3.size() == 3);
  CHECK(k3[0].rows() == std::vector<int>{3, 0, 0});
  CHECK(k3[1].rows() == std::vector<int>{2, 1, 0});
  CHECK(k3[2].rows() == std::vector<int>{1, 1, 1});
  CHECK_THROWS_AS(YoungDiagram({1, 2}), std::invalid_argument);
}

TEST_CASE("Weyl dimension matches brute-force semistandard count") {
  for (int d = 2; d <= 4; ++d)
    for (int K = 1; K <= 6; ++K)
      for (const auto& lam : enumerate_diagrams(K, d)) {
        INFO(lam.str() << " d=" << d);
        CHECK(dim_rep(lam) == count_ssyt(lam.rows(), d));
      }
  CHECK(dim_rep(YoungDiagram({2, 1, 0})) == 8);
  CHECK(dim_rep(YoungDiagram({1, 1, 1})) == 1);
  CHECK(dim_rep(YoungDiagram({7, 0})) == 8);
}

TEST_CASE("multiplicity agrees with corner recursion and Frobenius form") {
  for (int K = 1; K <= 12; ++K)
    for (const auto& lam : enumerate_diagrams(K, 4)) {
      INFO(lam.str());
      CHECK(multiplicity(lam) == count_syt(lam.rows()));
      CHECK(multiplicity_frobenius(lam) == multiplicity(lam));
    }
}

TEST_CASE("qubit multiplicities agree with spin coupling") {
  for (int K = 1; K <= 30; ++K) {
    auto m = spin_multiplicities(K);
    for (const auto& lam : enumerate_diagrams(K, 2)) {
      int tj = lam.twice_spin();
      CHECK(multiplicity(lam) == m[tj]);
      CHECK(multiplicity_qubit_closed_form(K, tj) == m[tj]);
    }
  }
  auto four = enumerate_diagrams(4, 2);  // (4,0),(3,1),(2,2)
  CHECK(multiplicity(four[2]) == 2);
  CHECK(multiplicity(four[1]) == 3);
  CHECK(multiplicity(four[0]) == 1);
}

TEST_CASE("Schur-Weyl measure is complete") {
  for (int d = 2; d <= 4; ++d)
    for (int K = 1; K <= 10; ++K) {
      BigInt total = 0;
      BigRational weight = 0;
      for (const auto& b : schur_weyl_measure(K, d)) {
        total += b.dim_rep * b.mult;
        weight += b.weight;
      }
      CHECK(total == boost::multiprecision::pow(BigInt(d), K));
      CHECK(weight == 1);
    }
}

TEST_CASE("Schur-Weyl measure small cases") {
  auto k4 = schur_weyl_measure(4, 2);
  REQUIRE(k4.size() == 3);
  CHECK(k4[0].weight == BigRational(5, 16));
  CHECK(k4[1].weight == BigRational(9, 16));
  CHECK(k4[2].weight == BigRational(2, 16));
  auto k2 = schur_weyl_measure(2, 2);
  CHECK(k2[0].weight == BigRational(3, 4));
  CHECK(k2[1].weight == BigRational(1, 4));
  for (int d = 2; d <= 4; ++d) {
    auto k1 = schur_weyl_measure(1, d);
    REQUIRE(k1.size() == 1);
    CHECK(k1[0].weight == 1);
  }
}

TEST_CASE("truncation membership uses the integer test") {
  // K=4, d=2: j <= J kept
  auto t = truncation_set(4, 2, 1);
  REQUIRE(t.members.size() == 2);
  CHECK(t.members[0].rows() == std::vector<int>{3, 1});
  CHECK(t.members[1].rows() == std::vector<int>{2, 2});
  // K=5, d=3, J=1: 3 * lambda_3 >= 2
  CHECK(in_truncation(YoungDiagram({3, 1, 1}), 1));
  CHECK_FALSE(in_truncation(YoungDiagram({3, 2, 0}), 1));
}

TEST_CASE("tail values") {
  CHECK(tail_rational(4, 2, 1) == BigRational(5, 16));
  CHECK(tail_rational(6, 3, 4) == 0);
  CHECK(tail_exact(10, 2, 5) == 0);
  CHECK(entanglement_fidelity_rational(4, 2, 1) == BigRational(121, 256));
  CHECK(entanglement_fidelity_exact(10, 2, 5) == 1);
  for (int K : {10, 40, 120})
    for (int J = 0; J <= K / 2; ++J) {
      long double exact = to_long_double(tail_rational(K, 2, J));
      long double logspace = tail_logspace(K, 2, J);
      if (exact > 0) CHECK_THAT(static_cast<double>(logspace / exact), WithinAbs(1.0, 1e-9));
      CHECK(exact <= tail_bound(K, 2, J) * (1 + 1e-12));
    }
  auto prof = tail_profile(20, 3);
  REQUIRE(prof.j_max() >= 7);
  CHECK(prof.exact.back() == 0);
  for (int J = 0; J <= prof.j_max(); ++J) CHECK(prof.exact[J] == tail_rational(20, 3, J));
}

TEST_CASE("fidelity at K=100 clears the lower bound") {
  long double fe = entanglement_fidelity_exact(100, 2, 30);
  double bound = fidelity_lower_bound(100, 2, 30);
  CHECK_THAT(bound, WithinRel(1 - 2 * 101 * std::exp(-18.0), 1e-12));
  CHECK(fe >= bound);
  CHECK(fe <= 1);
}

TEST_CASE("minimal ancilla dimension") {
  CHECK(min_ancilla_dim(2, 4, 1, 2) == 3);
  auto ratios = ancilla_ratios(2, 4, 1, 2);
  REQUIRE(ratios.size() == 2);
  for (int N = 1; N <= 6; ++N) CHECK(min_ancilla_dim(N, N, N / 2, 2) == 1);
  CHECK_THROWS_AS(min_ancilla_dim(2, 5, 1, 2), std::invalid_argument);
  for (int N = 1; N <= 10; ++N)
    for (int M = N; M <= 40; M += 2)
      for (int J = 0; 2 * J <= N; ++J) {
        if (truncation_set(N, 2, J).members.empty()) continue;
        INFO("N=" << N << " M=" << M << " J=" << J);
        CHECK(min_ancilla_dim(N, M, J, 2) == min_ancilla_dim_closed_form(N, M, J));
      }
}

TEST_CASE("compression dimensions") {
  auto n2 = compression_dims(2, 2);
  CHECK(n2.system_a_dim == 4);
  auto n4 = compression_dims(4, 2);
  CHECK(n4.system_a_dim == 9);
  CHECK(n4.qubit_count == 4);
  CHECK(n4.round_trip_qubits == 8);
  CHECK_THAT(n4.asymptotic_ratio, WithinRel(4 * std::log2(4.0) / 8, 1e-12));
  auto q3 = compression_dims(3, 3);
  CHECK(q3.system_a_dim == 19);
  CHECK(q3.upper_bound == 1024);
  auto n6 = compression_dims(6, 2, 1);
  CHECK(n6.system_a_dim == 4);
  CHECK(compression_dims(6, 2).system_a_dim == 16);
  for (int N = 2; N <= 12; N += 2) CHECK(compression_dims(N, 2).system_a_dim == (N / 2 + 1) * (N / 2 + 1));
}

TEST_CASE("generation bound and J scalings") {
  double b = generation_bound(30, 90, 3);
  double direct = 1 - 2 * std::pow(91.0, 3) * std::exp(-2.0 * 900 / (9.0 * 90));
  CHECK_THAT(b, WithinRel(direct, 1e-12));
  CHECK(j_sqrt_scaling(16, 0) == 4);
  CHECK(j_linear_scaling(16, 0) == 16);
  CHECK(j_compression(16, 0) == 4);
  CHECK(ceil_log2(BigInt(9)) == 4);
  CHECK(ceil_log2(BigInt(8)) == 3);
  CHECK(ceil_log2(BigInt(1)) == 0);
}
