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
#include <numbers>

#include "superrep/protocols.hpp"

using namespace superrep;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Outcome probabilities of a generalized Bell measurement on (input, b) when
// the Choi state (U (x) I)|Phi> sits on (a, b); brute force over all d^2 outcomes.
std::vector<double> bell_outcome_probabilities(const CMatrix& u, const CVector& psi) {
  auto d = u.rows();
  CVector choi = CVector::Zero(d * d);  // index a * d + b
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index a = 0; a < d; ++a) choi(a * d + i) += u(a, i) / std::sqrt(static_cast<double>(d));
  CVector full = kron(psi, choi);  // (in, a, b)
  const double w = 2 * std::numbers::pi / static_cast<double>(d);
  std::vector<double> probs;
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q) {
      CVector residual = CVector::Zero(d);
      for (Eigen::Index x = 0; x < d; ++x) {
        cplx bell = std::polar(1.0, w * static_cast<double>(q * x)) / std::sqrt(static_cast<double>(d));
        Eigen::Index y = (x + p) % d;
        for (Eigen::Index a = 0; a < d; ++a) residual(a) += std::conj(bell) * full((x * d + a) * d + y);
      }
      probs.push_back(residual.squaredNorm());
    }
  return probs;
}

}  // namespace

TEST_CASE("Bell measurement outcomes are uniform") {
  RngStream rng(1);
  for (int d : {2, 3}) {
    GateParams g = random_gate(static_cast<std::size_t>(d), rng);
    CVector psi = haar_state(static_cast<std::size_t>(d), rng).amplitudes();
    auto probs = bell_outcome_probabilities(g.matrix(), psi);
    double total = 0;
    for (double p : probs) {
      CHECK_THAT(p, WithinAbs(1.0 / (d * d), 1e-12));
      total += p;
    }
    CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    CHECK((teleport_success_operator(g) - g.matrix() / static_cast<double>(d)).norm() < 1e-12);
  }
}

TEST_CASE("teleportation retrieval succeeds with the right output") {
  RngStream rng(2);
  GateParams g = random_su2(rng);
  int successes = 0;
  for (int t = 0; t < 200; ++t) {
    PureState psi = haar_state(2, rng);
    TeleportResult r = teleport_retrieve(g, psi, rng);
    CHECK_THAT(r.success_probability, WithinAbs(0.25, 1e-12));
    if (!r.success) continue;
    ++successes;
    CHECK_THAT(std::norm((g.matrix() * psi.amplitudes()).dot(r.output)), WithinAbs(1.0, 1e-9));
  }
  CHECK(successes > 0);
  TeleportStats s = teleport_experiment(3, 4000, 5);
  CHECK(std::abs(s.rate - 1.0 / 9) < 3 * std::sqrt((1.0 / 9) * (8.0 / 9) / 4000));
  CHECK_THAT(s.min_success_fidelity, WithinAbs(1.0, 1e-9));
  TeleportStats again = teleport_experiment(3, 4000, 5, 1);
  CHECK(again.successes == s.successes);
}

TEST_CASE("entangled generation at N=2 M=4") {
  RngStream rng(3);
  double first = -1;
  for (int t = 0; t < 4; ++t) {
    GenerationReport r = generate_entangled(2, 4, 2, random_su2(rng));
    REQUIRE(r.fidelity_exact);
    CHECK_THAT(*r.fidelity_exact, WithinAbs(121.0 / 256.0, 1e-9));
    if (first < 0) first = *r.fidelity_exact;
    CHECK_THAT(*r.fidelity_exact, WithinAbs(first, 1e-10));
    if (r.fidelity_bound >= 0) CHECK(*r.fidelity_exact >= r.fidelity_bound);
  }
  GenerationReport same = generate_entangled(2, 2, 2, random_su2(rng));
  CHECK_THAT(*same.fidelity_exact, WithinAbs(1.0, 1e-9));
  CHECK_THROWS_AS(generate_entangled(2, 8, 2, random_su2(rng)), ResourceError);
}

TEST_CASE("entangled generation pads M when d does not divide M - N") {
  RngStream rng(4);
  GenerationReport r = generate_entangled(2, 3, 2, random_su2(rng));
  CHECK(r.M_simulated == 4);
  REQUIRE(r.fidelity_exact);
  CHECK(*r.fidelity_exact >= 0);
  CHECK(*r.fidelity_exact <= 1 + 1e-12);
}

TEST_CASE("phase generation") {
  double pi = std::numbers::pi;
  for (double theta : {pi / 2, 0.3, 2.0}) {
    GenerationReport r = generate_phase(2, 3, theta);
    REQUIRE(r.fidelity_exact);
    REQUIRE(r.entangled_fidelity);
    CHECK(*r.fidelity_exact >= *r.entangled_fidelity - 1e-9);
  }
  GenerationReport zero = generate_phase(2, 4, 0.0);
  GenerationReport half = generate_phase(2, 4, pi);
  CHECK_THAT(*zero.fidelity_exact, WithinAbs(*half.fidelity_exact, 1e-9));
  GenerationReport same = generate_phase(2, 2, 0.4);
  CHECK_THAT(*same.fidelity_exact, WithinAbs(1.0, 1e-9));
}

TEST_CASE("multiphase reduces to phase at d=2") {
  double th[1] = {0.9};
  GenerationReport m = generate_multiphase(2, 4, 2, th);
  GenerationReport p = generate_phase(2, 4, 0.9);
  CHECK_THAT(*m.fidelity_exact, WithinAbs(*p.fidelity_exact, 1e-10));
}

TEST_CASE("multiphase at d=3") {
  double zeros[2] = {0, 0};
  GenerationReport r = generate_multiphase(3, 3, 3, zeros);
  REQUIRE_FALSE(r.bound_only);
  CHECK_THAT(*r.fidelity_exact, WithinAbs(1.0, 1e-9));
  CHECK(*r.fidelity_exact >= *r.entangled_fidelity - 1e-9);
  GenerationReport big = generate_multiphase(30, 90, 3, zeros);
  CHECK(big.bound_only);
  CHECK_FALSE(big.fidelity_exact);
  using HP = boost::multiprecision::cpp_bin_float_50;
  HP ref = HP(1) - 2 * boost::multiprecision::pow(HP(91), 3) * boost::multiprecision::exp(HP(-1800) / HP(810));
  CHECK_THAT(big.fidelity_bound, WithinRel(static_cast<double>(ref), 1e-12));
}

TEST_CASE("controlled shift reduction on a product input") {
  // |Phi_g> for g = phase(theta) becomes |e_theta> after the reduction.
  double th[1] = {0.7};
  GateParams g = GateParams::phase(th);
  CVector phi = maximally_entangled(2);
  CVector state = kron(g.matrix(), CMatrix::Identity(2, 2)) * phi;
  CMatrix out = controlled_shift_inverse_and_discard(state * state.adjoint(), 1, 2);
  CVector e(2);
  e(0) = 1 / std::sqrt(2.0);
  e(1) = std::polar(1.0, -0.7) / std::sqrt(2.0);
  CHECK_THAT(fidelity(e, out), WithinAbs(1.0, 1e-12));
}

TEST_CASE("typicality experiment") {
  TypicalityReport full = typicality_experiment(4, 2, 2, 0.1, 50, 7);
  for (double f : full.fidelities) CHECK_THAT(f, WithinAbs(1.0, 1e-12));
  CHECK(full.empirical_prob_below == 0);

  TypicalityReport r = typicality_experiment(6, 2, 1, 0.2, 400, 8);
  CHECK(r.empirical_prob_below <= r.markov_bound + 3 * r.prob_stderr);
  CHECK(std::abs(r.mean_fidelity - r.predicted_mean) < 4 * r.fidelity_stderr);
  TypicalityReport again = typicality_experiment(6, 2, 1, 0.2, 400, 8, 1);
  CHECK(again.fidelities == r.fidelities);
}

TEST_CASE("probabilistic cloning composes retrieval with generation") {
  RngStream rng(9);
  auto rep = probabilistic_entangled_cloning(2, 4, 2, random_su2(rng), 4000, 10);
  CHECK_THAT(rep.analytic_rate, WithinAbs(1.0 / 16, 1e-15));
  CHECK(std::abs(rep.empirical_rate - rep.analytic_rate) < 4 * rep.stderr_rate);
  CHECK_THAT(*rep.generation.fidelity_exact, WithinAbs(121.0 / 256.0, 1e-9));
}
