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

#include "superrep/tensor.hpp"

using namespace superrep;
using Catch::Matchers::WithinAbs;

namespace {

CMatrix random_density(std::size_t dim, RngStream& rng) {
  CMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Reference partial trace over the middle factor of a three-factor space,
// written as an explicit index contraction.
CMatrix trace_middle(const CMatrix& rho, std::size_t a, std::size_t b, std::size_t c) {
  CMatrix out = CMatrix::Zero(a * c, a * c);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < c; ++k)
      for (std::size_t i2 = 0; i2 < a; ++i2)
        for (std::size_t k2 = 0; k2 < c; ++k2)
          for (std::size_t j = 0; j < b; ++j)
            out(i * c + k, i2 * c + k2) += rho((i * b + j) * c + k, (i2 * b + j) * c + k2);
  return out;
}

}  // namespace

TEST_CASE("checked_pow guards overflow") {
  CHECK(checked_pow(3, 4) == 81);
  CHECK(checked_pow(2, 0) == 1);
  CHECK_THROWS_AS(checked_pow(10, 40), ResourceError);
}

TEST_CASE("domain types validate their invariants") {
  CHECK_THROWS_AS(PureState(CVector::Ones(2)), std::invalid_argument);
  CHECK_NOTHROW(PureState::normalized(CVector::Ones(2)));
  CMatrix bad = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(bad), std::invalid_argument);
  CMatrix nonherm = CMatrix::Zero(2, 2);
  nonherm(0, 0) = 1.0;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix(nonherm), std::invalid_argument);
  CHECK(DensityMatrix::maximally_mixed(4).is_valid());
  CMatrix not_unitary = CMatrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(GateParams::from_matrix(not_unitary), std::invalid_argument);
  std::vector<CMatrix> ops = {CMatrix::Identity(2, 2) * 0.5};
  CHECK_THROWS_AS(KrausChannel(2, 2, ops), std::invalid_argument);
}

TEST_CASE("qubit rotation matches the exponential form") {
  double theta = 0.7;
  GateParams g = GateParams::qubit_rotation(theta, {0, 0, 1});
  CHECK_THAT(std::abs(g.matrix()(0, 0) - std::polar(1.0, -theta / 2)), WithinAbs(0, 1e-14));
  CHECK_THAT(std::abs(g.matrix()(1, 1) - std::polar(1.0, theta / 2)), WithinAbs(0, 1e-14));
  CHECK_THAT(std::abs(g.matrix().determinant() - 1.0), WithinAbs(0, 1e-14));
  REQUIRE(g.theta());
  CHECK(*g.theta() == theta);
}

TEST_CASE("partial trace agrees with explicit index contraction") {
  RngStream rng(11);
  CMatrix rho = random_density(2 * 3 * 2, rng);
  std::vector<std::size_t> dims = {2, 3, 2};
  std::vector<std::size_t> keep = {0, 2};
  CMatrix ours = partial_trace(rho, dims, keep);
  CHECK((ours - trace_middle(rho, 2, 3, 2)).norm() < 1e-14);
  std::vector<std::size_t> all = {0, 1, 2};
  CHECK((partial_trace(rho, dims, all) - rho).norm() < 1e-14);
}

TEST_CASE("tensor power application matches the explicit Kronecker power") {
  RngStream rng(2);
  CMatrix u = haar_unitary(3, rng);
  CMatrix x(27, 4);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = cplx(rng.normal(), rng.normal());
  CHECK((apply_tensor_power(u, 3, x) - kron(kron(u, u), u) * x).norm() < 1e-12);
  CHECK((kron_power(u, 2) - kron(u, u)).norm() < 1e-14);
}

TEST_CASE("Haar sampling reproduces low moments") {
  RngStream rng(5);
  const int n = 20000;
  const std::size_t dim = 4;
  double m2 = 0, m4 = 0, u2 = 0;
  for (int i = 0; i < n; ++i) {
    double p = std::norm(haar_state(dim, rng).amplitudes()(0));
    m2 += p;
    m4 += p * p;
    u2 += std::norm(haar_unitary(dim, rng)(1, 2));
  }
  m2 /= n;
  m4 /= n;
  u2 /= n;
  // E|psi_0|^2 = 1/D, E|psi_0|^4 = 2 / (D (D + 1))
  CHECK_THAT(m2, WithinAbs(1.0 / dim, 0.01));
  CHECK_THAT(m4, WithinAbs(2.0 / (dim * (dim + 1.0)), 0.01));
  CHECK_THAT(u2, WithinAbs(1.0 / dim, 0.01));
}

TEST_CASE("special unitaries have unit determinant") {
  RngStream rng(3);
  for (std::size_t d : {2u, 3u, 4u}) {
    CMatrix u = haar_special_unitary(d, rng);
    CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
    CHECK((u.adjoint() * u - CMatrix::Identity(d, d)).norm() < 1e-12);
  }
  GateParams g = random_su2(rng);
  CHECK(std::abs(g.matrix().determinant() - 1.0) < 1e-12);
}

TEST_CASE("Kraus, superoperator and Choi forms agree") {
  RngStream rng(8);
  // amplitude damping with gamma = 0.3
  double gamma = 0.3;
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(1 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  KrausChannel ad(2, 2, {k0, k1});
  Superoperator s = Superoperator::from_kraus(ad);
  CMatrix rho = random_density(2, rng);
  CHECK((s.apply(rho) - apply_kraus(ad, rho)).norm() < 1e-14);
  CHECK((s.choi() - choi_state(ad).matrix()).norm() < 1e-14);
  KrausChannel back = s.to_kraus();
  CHECK(choi_distance(back, ad) < 1e-12);
  // F_E = sum |Tr K|^2 / D^2
  double fe = (std::norm(k0.trace()) + std::norm(k1.trace())) / 4.0;
  CHECK_THAT(entanglement_fidelity(ad), WithinAbs(fe, 1e-14));
  CHECK_THAT(entanglement_fidelity(s), WithinAbs(fe, 1e-14));
  Superoperator twice = s.then(s);
  CHECK((twice.apply(rho) - apply_kraus(ad, apply_kraus(ad, rho))).norm() < 1e-14);
}

TEST_CASE("measure and prepare follows the trace convention") {
  RngStream rng(9);
  CMatrix e = random_density(3, rng);
  CMatrix sigma = random_density(2, rng);
  CMatrix rho = random_density(3, rng);
  Superoperator s = Superoperator::measure_and_prepare(e, sigma);
  CHECK((s.apply(rho) - (e * rho).trace() * sigma).norm() < 1e-14);
}

TEST_CASE("trace norm and fidelity") {
  CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  CHECK_THAT(trace_distance(a, b), WithinAbs(1.0, 1e-14));
  CHECK_THAT(trace_distance(a, a), WithinAbs(0.0, 1e-14));
  CVector psi = CVector::Zero(2);
  psi(0) = 1;
  CHECK_THAT(fidelity(psi, DensityMatrix::maximally_mixed(2).matrix()), WithinAbs(0.5, 1e-14));
  CVector phi = maximally_entangled(3);
  CHECK_THAT(phi.norm(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("orthogonal complement completes an isometry") {
  RngStream rng(4);
  CMatrix u = haar_unitary(5, rng);
  CMatrix v = u.leftCols(2);
  CMatrix c = orthogonal_complement(v);
  REQUIRE(c.cols() == 3);
  CMatrix full(5, 5);
  full << v, c;
  CHECK((full.adjoint() * full - CMatrix::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("random streams are reproducible and independent of order") {
  RngStream a = RngStream::derive(42, 7), b = RngStream::derive(42, 7), c = RngStream::derive(42, 8);
  double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  auto seq = parallel_map<double>(16, [](std::size_t i) { return RngStream::derive(1, i).normal(); }, 4);
  auto ser = parallel_map<double>(16, [](std::size_t i) { return RngStream::derive(1, i).normal(); }, 1);
  CHECK(seq == ser);
}
