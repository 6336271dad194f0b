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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superrep/repchan.hpp"
#include "superrep/rng.hpp"
#include "superrep/tensor.hpp"

namespace superrep {

/// Largest d^{2M} for which generation protocols simulate the full state.
inline constexpr std::size_t kMaxGenerationDim = 1024;

enum class GenerationProtocol { entangled, phase, multiphase };
std::string to_string(GenerationProtocol p);

struct GenerationReport {
  GenerationProtocol protocol = GenerationProtocol::entangled;
  int N = 0;
  int M = 0;            // requested number of output pairs
  int M_simulated = 0;  // smallest M' >= M with d | (M' - N); surplus pairs are discarded
  int d = 2;
  int J = 0;            // N / d, rounded down
  std::optional<double> fidelity_exact;  // unset in bound-only mode
  /// Phase protocols: fidelity of the intermediate entangled state.
  std::optional<double> entangled_fidelity;
  /// F_E of the truncated encoder at (M_simulated, J); equals the entangled
  /// fidelity when M_simulated == M.
  long double encoder_entanglement_fidelity = 0;
  /// 1 - 2 (M+1)^{d(d-1)/2} exp(-2 N^2 / (d^2 M)), may be negative.
  double fidelity_bound = 0;
  bool bound_only = false;
  std::optional<DensityMatrix> output;
};

/// Sends the first halves of M maximally entangled pairs through the
/// replication network built from N uses of the gate. The 2M systems are
/// ordered as (first halves, second halves).
GenerationReport generate_entangled(int N, int M, int d, const GateParams& gate,
                                    std::size_t max_dim = kMaxGenerationDim);

/// Entangled generation for diag(1, e^{-i theta}), then CNOT on every pair
/// and discard of the targets. Target state (|0> + e^{-i theta}|1>)/sqrt 2 per copy.
GenerationReport generate_phase(int N, int M, double theta, std::size_t max_dim = kMaxGenerationDim);

/// Qudit version with the inverse controlled shift |a>|b> -> |a>|b - a>.
/// Target state sum_n e^{-i theta_n} |n> / sqrt d with theta_0 = 0. Falls back
/// to a bound-only report when the state or the Schur basis is out of reach.
GenerationReport generate_multiphase(int N, int M, int d, std::span<const double> thetas,
                                     std::size_t max_dim = kMaxGenerationDim);

/// Applies |a>|b> -> |a>|b - a mod d> digitwise to a 2M-system state ordered
/// (controls, targets) and traces out the targets.
CMatrix controlled_shift_inverse_and_discard(const CMatrix& rho, int M, int d);

struct TeleportResult {
  bool success = false;
  int outcome_p = 0;  // Bell outcome (p, q); success is (0, 0)
  int outcome_q = 0;
  double success_probability = 0;  // computed from the state, 1/d^2
  CVector output;  // normalized state of system a
};

/// Consumes one copy of the Choi state (U (x) I)|Phi+> on systems (a, b) and
/// measures (input, b) in the generalized Bell basis
/// |Phi_{p,q}> = sum_n w^{q n} |n>|n + p> / sqrt d. On outcome (0, 0) system a
/// carries U|input>.
TeleportResult teleport_retrieve(const GateParams& gate, const PureState& input, RngStream& rng);

/// Kraus operator of the success branch, (<Phi_00|_{in,b} (x) I_a)(I_in (x) |Phi_g>_{ab}).
CMatrix teleport_success_operator(const GateParams& gate);

struct TeleportStats {
  int d = 2;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0;
  double stderr_rate = 0;
  double expected = 0;          // 1/d^2
  double min_success_fidelity = 1;
};
TeleportStats teleport_experiment(int d, std::size_t trials, std::uint64_t seed, unsigned threads = 0);

/// N retrievals from N Choi states, each succeeding with 1/d^2, followed by
/// entangled generation of M pairs when all succeed.
struct ProbabilisticCloningReport {
  int N = 0, M = 0, d = 2;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double empirical_rate = 0;
  double stderr_rate = 0;
  double analytic_rate = 0;  // (1/d^2)^N
  GenerationReport generation;
};
ProbabilisticCloningReport probabilistic_entangled_cloning(int N, int M, int d, const GateParams& gate,
                                                           std::size_t trials, std::uint64_t seed,
                                                           unsigned threads = 0);

struct TypicalityReport {
  int K = 0, d = 2, J = 0;
  double epsilon = 0;
  std::size_t sample_count = 0;
  double empirical_prob_below = 0;  // fraction of samples with F < 1 - epsilon
  double prob_stderr = 0;           // binomial standard error
  double markov_bound = 0;          // (1 - mean F) / epsilon
  double theorem_bound = 0;         // 2 (K+1)^{d(d-1)/2} exp(-2 J^2 / K) / epsilon, not clipped
  double mean_fidelity = 0;
  double fidelity_stderr = 0;
  long double entanglement_fidelity = 0;  // exact
  double predicted_mean = 0;              // (D F_E + 1) / (D + 1)
  std::vector<double> fidelities;
};

/// Haar-random inputs, exact F per sample. Sample i draws from the stream
/// derived from (seed, i), so results do not depend on the thread count.
TypicalityReport typicality_experiment(int K, int d, int J, double epsilon, std::size_t samples,
                                       std::uint64_t seed, unsigned threads = 0);

}  // namespace superrep
