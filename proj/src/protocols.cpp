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

#include "superrep/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace superrep {

std::string to_string(GenerationProtocol p) {
  switch (p) {
    case GenerationProtocol::entangled: return "entangled";
    case GenerationProtocol::phase: return "phase";
    case GenerationProtocol::multiphase: return "multiphase";
  }
  return "unknown";
}

namespace {

int padded_m(int N, int M, int d) {
  int m = M;
  while ((m - N) % d != 0) ++m;
  return m;
}

void validate_generation(int N, int M, int d) {
  if (d < 2) throw std::invalid_argument("generation: d must be at least 2");
  if (N < 1 || M < N) throw std::invalid_argument("generation: need 1 <= N <= M");
}

std::size_t dim_pow(int d, int k) {
  return checked_pow(static_cast<std::size_t>(d), static_cast<std::size_t>(k));
}

GenerationReport base_report(GenerationProtocol proto, int N, int M, int d) {
  GenerationReport r;
  r.protocol = proto;
  r.N = N;
  r.M = M;
  r.d = d;
  r.J = N / d;
  r.M_simulated = padded_m(N, M, d);
  r.fidelity_bound = generation_bound(N, M, d);
  r.encoder_entanglement_fidelity = entanglement_fidelity_exact(r.M_simulated, d, r.J);
  return r;
}

// Full simulation of the entangled protocol; returns the 2M-system state.
CMatrix simulate_entangled(const GenerationReport& r, const GateParams& gate) {
  ReplicationNetwork net(r.N, r.M_simulated, r.J, r.d);
  CMatrix rho = net.superoperator(gate).choi();
  if (r.M_simulated == r.M) return rho;
  std::vector<std::size_t> dims(static_cast<std::size_t>(2 * r.M_simulated), static_cast<std::size_t>(r.d));
  std::vector<std::size_t> keep;
  for (int i = 0; i < r.M; ++i) keep.push_back(static_cast<std::size_t>(i));
  for (int i = 0; i < r.M; ++i) keep.push_back(static_cast<std::size_t>(r.M_simulated + i));
  return partial_trace(rho, dims, keep);
}

CVector entangled_target(const GateParams& gate, int M) {
  std::size_t dm = dim_pow(static_cast<int>(gate.dim()), M);
  CMatrix phi = maximally_entangled(dm);
  // (U^{(x)M} (x) I)|Phi>: reshape |Phi> as a dm x dm matrix X(a, i), act on rows.
  CMatrix x = Eigen::Map<const CMatrix>(phi.data(), static_cast<Eigen::Index>(dm), static_cast<Eigen::Index>(dm))
                  .transpose();
  CMatrix ux = apply_tensor_power(gate.matrix(), static_cast<std::size_t>(M), x);
  CMatrix t = ux.transpose();
  return Eigen::Map<const CVector>(t.data(), t.size());
}

CVector phase_target(std::span<const double> thetas, int d, int M) {
  CVector one(d);
  one(0) = 1.0;
  for (int n = 1; n < d; ++n) one(n) = std::polar(1.0, -thetas[static_cast<std::size_t>(n - 1)]);
  one /= std::sqrt(static_cast<double>(d));
  CVector out = one;
  for (int k = 1; k < M; ++k) out = kron(out, one);
  return out;
}

GenerationReport run_phase_family(GenerationProtocol proto, int N, int M, int d, std::span<const double> thetas,
                                  std::size_t max_dim, bool allow_bound_only) {
  validate_generation(N, M, d);
  if (static_cast<int>(thetas.size()) != d - 1)
    throw std::invalid_argument("generation: expected d - 1 = " + std::to_string(d - 1) + " phases");
  GenerationReport r = base_report(proto, N, M, d);
  GateParams gate = GateParams::phase(thetas);
  bool fits = 2 * r.M_simulated <= 63 && dim_pow(d, 2 * r.M_simulated) <= max_dim;
  if (!fits) {
    if (!allow_bound_only)
      throw ResourceError("generation: state dimension d^(2M) = " + std::to_string(d) + "^" +
                          std::to_string(2 * r.M_simulated) + " exceeds the budget " + std::to_string(max_dim));
    r.bound_only = true;
    return r;
  }
  CMatrix ent;
  try {
    ent = simulate_entangled(r, gate);
  } catch (const ResourceError&) {
    if (!allow_bound_only) throw;
    r.bound_only = true;
    return r;
  }
  r.entangled_fidelity = fidelity(entangled_target(gate, M), ent);
  CMatrix out = controlled_shift_inverse_and_discard(ent, M, d);
  r.fidelity_exact = fidelity(phase_target(thetas, d, M), out);
  r.output = DensityMatrix::unchecked(out);
  return r;
}

}  // namespace

GenerationReport generate_entangled(int N, int M, int d, const GateParams& gate, std::size_t max_dim) {
  validate_generation(N, M, d);
  if (gate.dim() != static_cast<std::size_t>(d))
    throw std::invalid_argument("generate_entangled: gate dimension does not match d");
  GenerationReport r = base_report(GenerationProtocol::entangled, N, M, d);
  if (2 * r.M_simulated > 63 || dim_pow(d, 2 * r.M_simulated) > max_dim)
    throw ResourceError("generate_entangled: state dimension d^(2M) = " + std::to_string(d) + "^" +
                        std::to_string(2 * r.M_simulated) + " exceeds the budget " + std::to_string(max_dim));
  CMatrix rho = simulate_entangled(r, gate);
  r.fidelity_exact = fidelity(entangled_target(gate, M), rho);
  r.output = DensityMatrix::unchecked(rho);
  return r;
}

GenerationReport generate_phase(int N, int M, double theta, std::size_t max_dim) {
  double thetas[1] = {theta};
  return run_phase_family(GenerationProtocol::phase, N, M, 2, thetas, max_dim, false);
}

GenerationReport generate_multiphase(int N, int M, int d, std::span<const double> thetas, std::size_t max_dim) {
  return run_phase_family(GenerationProtocol::multiphase, N, M, d, thetas, max_dim, true);
}

CMatrix controlled_shift_inverse_and_discard(const CMatrix& rho, int M, int d) {
  std::size_t dm = dim_pow(d, M);
  if (static_cast<std::size_t>(rho.rows()) != dm * dm || rho.cols() != rho.rows())
    throw std::invalid_argument("controlled_shift_inverse_and_discard: state must live on 2M systems");
  // (b - a) digitwise, inverted: the source target index is b + a digitwise.
  std::vector<std::size_t> add(dm * dm);
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t b = 0; b < dm; ++b) {
      std::size_t out = 0, ra = a, rb = b, place = 1;
      for (int k = 0; k < M; ++k) {
        std::size_t digit = (ra % static_cast<std::size_t>(d) + rb % static_cast<std::size_t>(d)) % static_cast<std::size_t>(d);
        out += digit * place;
        place *= static_cast<std::size_t>(d);
        ra /= static_cast<std::size_t>(d);
        rb /= static_cast<std::size_t>(d);
      }
      add[a * dm + b] = out;
    }
  auto n = static_cast<Eigen::Index>(dm);
  CMatrix red = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t a2 = 0; a2 < dm; ++a2) {
      cplx s = 0;
      for (std::size_t b = 0; b < dm; ++b)
        s += rho(static_cast<Eigen::Index>(a * dm + add[a * dm + b]), static_cast<Eigen::Index>(a2 * dm + add[a2 * dm + b]));
      red(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a2)) = s;
    }
  return red;
}

// ---------------------------------------------------------------------------
// Teleportation

namespace {

// Unnormalized state of system a after outcome (p, q).
CVector teleport_branch(const CMatrix& u, const CVector& psi, int p, int q) {
  auto d = u.rows();
  const double w = 2.0 * std::numbers::pi / static_cast<double>(d);
  CVector out = CVector::Zero(d);
  for (Eigen::Index x = 0; x < d; ++x) {
    cplx phase = std::polar(1.0, -w * static_cast<double>(q * x % d));
    out += phase * psi(x) * u.col((x + p) % d);
  }
  return out / static_cast<double>(d);
}

}  // namespace

TeleportResult teleport_retrieve(const GateParams& gate, const PureState& input, RngStream& rng) {
  int d = static_cast<int>(gate.dim());
  if (input.dim() != gate.dim()) throw std::invalid_argument("teleport_retrieve: input dimension does not match the gate");
  const CMatrix& u = gate.matrix();
  double draw = rng.uniform();
  double acc = 0;
  TeleportResult r;
  r.success_probability = teleport_branch(u, input.amplitudes(), 0, 0).squaredNorm();
  CVector chosen;
  for (int p = 0; p < d && chosen.size() == 0; ++p)
    for (int q = 0; q < d; ++q) {
      CVector branch = teleport_branch(u, input.amplitudes(), p, q);
      acc += branch.squaredNorm();
      if (draw < acc || (p == d - 1 && q == d - 1)) {
        r.outcome_p = p;
        r.outcome_q = q;
        chosen = branch;
        break;
      }
    }
  r.success = r.outcome_p == 0 && r.outcome_q == 0;
  r.output = chosen / chosen.norm();
  return r;
}

CMatrix teleport_success_operator(const GateParams& gate) {
  auto d = static_cast<Eigen::Index>(gate.dim());
  CMatrix op(d, d);
  for (Eigen::Index x = 0; x < d; ++x) {
    CVector e = CVector::Zero(d);
    e(x) = 1.0;
    op.col(x) = teleport_branch(gate.matrix(), e, 0, 0);
  }
  return op;
}

TeleportStats teleport_experiment(int d, std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (d < 2) throw std::invalid_argument("teleport_experiment: d must be at least 2");
  struct Trial {
    bool success = false;
    double fid = 1;
  };
  auto results = parallel_map<Trial>(
      trials,
      [&](std::size_t i) {
        RngStream rng = RngStream::derive(seed, i);
        GateParams g = random_gate(static_cast<std::size_t>(d), rng);
        PureState psi = haar_state(static_cast<std::size_t>(d), rng);
        TeleportResult r = teleport_retrieve(g, psi, rng);
        Trial t;
        t.success = r.success;
        if (r.success) t.fid = std::norm((g.matrix() * psi.amplitudes()).dot(r.output));
        return t;
      },
      threads);
  TeleportStats s;
  s.d = d;
  s.trials = trials;
  for (const auto& t : results) {
    if (!t.success) continue;
    ++s.successes;
    s.min_success_fidelity = std::min(s.min_success_fidelity, t.fid);
  }
  s.expected = 1.0 / (static_cast<double>(d) * d);
  s.rate = trials ? static_cast<double>(s.successes) / static_cast<double>(trials) : 0.0;
  s.stderr_rate = trials ? std::sqrt(s.expected * (1 - s.expected) / static_cast<double>(trials)) : 0.0;
  return s;
}

ProbabilisticCloningReport probabilistic_entangled_cloning(int N, int M, int d, const GateParams& gate,
                                                           std::size_t trials, std::uint64_t seed, unsigned threads) {
  ProbabilisticCloningReport rep;
  rep.N = N;
  rep.M = M;
  rep.d = d;
  rep.trials = trials;
  rep.analytic_rate = std::pow(1.0 / (static_cast<double>(d) * d), N);
  auto ok = parallel_map<char>(
      trials,
      [&](std::size_t i) -> char {
        RngStream rng = RngStream::derive(seed, i);
        for (int k = 0; k < N; ++k) {
          PureState psi = haar_state(static_cast<std::size_t>(d), rng);
          if (!teleport_retrieve(gate, psi, rng).success) return 0;
        }
        return 1;
      },
      threads);
  for (char c : ok) rep.successes += static_cast<std::size_t>(c);
  rep.empirical_rate = trials ? static_cast<double>(rep.successes) / static_cast<double>(trials) : 0.0;
  rep.stderr_rate = trials ? std::sqrt(rep.analytic_rate * (1 - rep.analytic_rate) / static_cast<double>(trials)) : 0.0;
  rep.generation = generate_entangled(N, M, d, gate);
  return rep;
}

// ---------------------------------------------------------------------------
// Typicality

TypicalityReport typicality_experiment(int K, int d, int J, double epsilon, std::size_t samples, std::uint64_t seed,
                                       unsigned threads) {
  if (!(epsilon > 0)) throw std::invalid_argument("typicality_experiment: epsilon must be positive");
  if (samples < 2) throw std::invalid_argument("typicality_experiment: need at least two samples");
  TruncatedEncoder enc(K, d, J);
  std::size_t dim = enc.dim();
  TypicalityReport r;
  r.K = K;
  r.d = d;
  r.J = J;
  r.epsilon = epsilon;
  r.sample_count = samples;
  r.fidelities = parallel_map<double>(
      samples,
      [&](std::size_t i) {
        RngStream rng = RngStream::derive(seed, i);
        return enc.fidelity(haar_state(dim, rng).amplitudes());
      },
      threads);
  double sum = 0, below = 0;
  for (double f : r.fidelities) {
    sum += f;
    if (f < 1.0 - epsilon) below += 1;
  }
  auto n = static_cast<double>(samples);
  r.mean_fidelity = sum / n;
  double var = 0;
  for (double f : r.fidelities) var += (f - r.mean_fidelity) * (f - r.mean_fidelity);
  r.fidelity_stderr = std::sqrt(var / (n - 1) / n);
  r.empirical_prob_below = below / n;
  r.prob_stderr = std::sqrt(r.empirical_prob_below * (1 - r.empirical_prob_below) / n);
  r.markov_bound = (1.0 - r.mean_fidelity) / epsilon;
  r.theorem_bound = 2.0 * tail_bound(K, d, J) / epsilon;
  r.entanglement_fidelity = entanglement_fidelity_exact(K, d, J);
  double D = static_cast<double>(dim);
  r.predicted_mean = (D * static_cast<double>(r.entanglement_fidelity) + 1.0) / (D + 1.0);
  return r;
}

}  // namespace superrep
