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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "superrep/protocols.hpp"

using namespace superrep;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d  %-38s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt_num(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CMatrix pure(const CVector& v) { return v * v.adjoint(); }

CMatrix conj_power(const CMatrix& u, int k, const CMatrix& rho) {
  CMatrix x = apply_tensor_power(u, static_cast<std::size_t>(k), rho);
  return apply_tensor_power(u, static_cast<std::size_t>(k), CMatrix(x.adjoint())).adjoint();
}

Outcome completeness() {
  auto t0 = std::chrono::steady_clock::now();
  for (int d = 2; d <= 4; ++d)
    for (int K = 1; K <= 10; ++K) {
      BigInt total = 0;
      for (const auto& lam : enumerate_diagrams(K, d)) total += dim_rep(lam) * multiplicity(lam);
      if (total != boost::multiprecision::pow(BigInt(d), K))
        return {false, "mismatch at d=" + std::to_string(d) + " K=" + std::to_string(K)};
    }
  double t = elapsed_since(t0);
  return {t < 1.0, "d in {2,3,4}, K <= 10 exact; " + fmt_num(t) + "s (limit 1s)"};
}

Outcome qubit_closed_form() {
  for (int K = 1; K <= 30; ++K)
    for (const auto& lam : enumerate_diagrams(K, 2))
      if (multiplicity_qubit_closed_form(K, lam.twice_spin()) != multiplicity(lam))
        return {false, "mismatch at K=" + std::to_string(K) + " " + lam.str()};
  return {true, "K <= 30 exact"};
}

Outcome schur_validity() {
  auto t0 = std::chrono::steady_clock::now();
  RngStream rng = RngStream::derive(3, 0);
  double worst = 0;
  auto check = [&](int K, int d) {
    auto basis = schur_basis(K, d);
    for (int t = 0; t < 20; ++t) {
      CMatrix u = haar_unitary(static_cast<std::size_t>(d), rng);
      worst = std::max(worst, block_leakage(*basis, u).off_block);
    }
  };
  for (int K = 1; K <= 6; ++K) check(K, 2);
  for (int K = 1; K <= 4; ++K) check(K, 3);
  double t = elapsed_since(t0);
  return {worst < 1e-9 && t < 120, "max off-block " + fmt_num(worst) + " (< 1e-9); " + fmt_num(t) + "s"};
}

Outcome encoder_fidelity() {
  double worst = 0;
  std::vector<std::pair<int, int>> cases = {{4, 1}, {6, 1}, {6, 2}};
  for (auto [K, J] : cases) {
    TruncatedEncoder enc(K, 2, J);
    BigRational kept = 0;
    for (const auto& b : schur_weyl_measure(K, 2))
      if (in_truncation(b.diagram, J)) kept += b.weight;
    double want = static_cast<double>(to_long_double(kept * kept));
    worst = std::max(worst, std::abs(entanglement_fidelity(enc.kraus()) - want));
  }
  return {worst < 1e-9, "max |F_E - (sum p)^2| = " + fmt_num(worst)};
}

Outcome network_identity() {
  auto t0 = std::chrono::steady_clock::now();
  ReplicationNetwork net(2, 4, 1, 2);
  const TruncatedEncoder& enc = net.encoder();
  RngStream rng = RngStream::derive(5, 0);
  double worst_td = 0;
  for (int t = 0; t < 50; ++t) {
    GateParams g = random_su2(rng);
    CMatrix rho = pure(haar_state(16, rng).amplitudes());
    CMatrix target = conj_power(g.matrix(), 4, enc.apply(rho));
    worst_td = std::max(worst_td, trace_distance(net.apply(g, rho), target));
  }
  CVector psi = haar_state(16, rng).amplitudes();
  double lo = 2, hi = -1;
  for (int t = 0; t < 50; ++t) {
    GateParams g = random_su2(rng);
    double f = fidelity(apply_tensor_power(g.matrix(), 4, psi), net.apply(g, pure(psi)));
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  double worst_iid = 0;
  for (int t = 0; t < 20; ++t) {
    GateParams g = random_su2(rng);
    CVector phi = haar_state(2, rng).amplitudes();
    CVector iid = kron(kron(phi, phi), kron(phi, phi));
    worst_iid = std::max(worst_iid, fidelity(apply_tensor_power(g.matrix(), 4, iid), net.apply(g, pure(iid))));
  }
  double t = elapsed_since(t0);
  bool ok = worst_td < 1e-9 && hi - lo < 1e-9 && worst_iid <= 1e-12 && t < 60;
  return {ok, "trace dist " + fmt_num(worst_td) + ", spread " + fmt_num(hi - lo) + ", iid " + fmt_num(worst_iid) +
                  "; " + fmt_num(t) + "s"};
}

Outcome minimal_ancilla() {
  int checked = 0;
  for (int N = 1; N <= 10; ++N)
    for (int M = N; M <= 40; M += 2)
      for (int J = 0; 2 * J <= N; ++J) {
        if (truncation_set(N, 2, J).members.empty()) continue;
        if (min_ancilla_dim(N, M, J, 2) != min_ancilla_dim_closed_form(N, M, J))
          return {false, "mismatch at N=" + std::to_string(N) + " M=" + std::to_string(M) + " J=" + std::to_string(J)};
        ++checked;
      }
  BigInt v = min_ancilla_dim(2, 4, 1, 2);
  return {v == 3, std::to_string(checked) + " cases exact; (2,4,1) -> " + v.str()};
}

Outcome concentration() {
  auto t0 = std::chrono::steady_clock::now();
  double worst_rel = 0;
  std::string violation;
  auto scan = [&](int d, int kmax) {
    for (int K = 1; K <= kmax; ++K) {
      TailProfile prof = tail_profile(K, d, true, true);
      for (int J = 0; J <= prof.j_max(); ++J) {
        long double exact = to_long_double(prof.exact[static_cast<std::size_t>(J)]);
        if (exact > tail_bound(K, d, J) * (1 + 1e-12) && violation.empty())
          violation = "d=" + std::to_string(d) + " K=" + std::to_string(K) + " J=" + std::to_string(J);
        if (exact > 0)
          worst_rel = std::max(worst_rel, static_cast<double>(std::abs(prof.logspace[static_cast<std::size_t>(J)] / exact - 1)));
      }
    }
  };
  scan(2, 300);
  scan(3, 60);
  double t = elapsed_since(t0);
  bool ok = violation.empty() && worst_rel < 1e-9 && t < 120;
  return {ok, (violation.empty() ? std::string("no bound violation") : "violation at " + violation) +
                  ", log-space rel err " + fmt_num(worst_rel) + "; " + fmt_num(t) + "s"};
}

Outcome exact_compression() {
  auto t0 = std::chrono::steady_clock::now();
  RngStream rng = RngStream::derive(8, 0);
  double worst = 0;
  bool dims_ok = true;
  for (int N : {2, 4}) {
    CompressionProtocol c = compression_exact(N, 2);
    dims_ok = dims_ok && c.system_a_dim() == static_cast<std::size_t>((N / 2 + 1) * (N / 2 + 1));
    for (int t = 0; t < 20; ++t) {
      GateParams g = random_su2(rng);
      Superoperator target = Superoperator::conjugation(kron_power(g.matrix(), static_cast<std::size_t>(N)));
      worst = std::max(worst, choi_distance(c.superoperator(g), target));
    }
  }
  double t = elapsed_since(t0);
  return {worst < 1e-9 && dims_ok && t < 120,
          "max Choi dist " + fmt_num(worst) + ", A dims " + (dims_ok ? "4, 9" : "wrong") + "; " + fmt_num(t) + "s"};
}

Outcome approx_compression() {
  CompressionProtocol c = compression_approx(6, 2, 1);
  std::size_t exact_dim = compression_exact(6, 2).system_a_dim();
  TruncatedEncoder enc(6, 2, 1);
  RngStream rng = RngStream::derive(9, 0);
  double worst = 0;
  for (int t = 0; t < 10; ++t) {
    GateParams g = random_su2(rng);
    CMatrix rho = pure(haar_state(64, rng).amplitudes());
    worst = std::max(worst, trace_distance(c.apply(g, rho), conj_power(g.matrix(), 6, enc.apply(rho))));
  }
  bool ok = worst < 1e-9 && c.system_a_dim() == 4 && exact_dim == 16;
  return {ok, "max trace dist " + fmt_num(worst) + ", A dim " + std::to_string(c.system_a_dim()) + " vs " +
                  std::to_string(exact_dim)};
}

Outcome entangled_generation() {
  RngStream rng = RngStream::derive(10, 0);
  double worst = 0;
  bool bound_ok = true;
  for (int t = 0; t < 20; ++t) {
    GenerationReport r = generate_entangled(2, 4, 2, random_su2(rng));
    worst = std::max(worst, std::abs(*r.fidelity_exact - 121.0 / 256.0));
    if (r.fidelity_bound >= 0 && *r.fidelity_exact < r.fidelity_bound) bound_ok = false;
  }
  return {worst < 1e-9 && bound_ok, "max |F - 121/256| = " + fmt_num(worst) + " over 20 gates, bound " +
                                        fmt_num(generation_bound(2, 4, 2)) + (bound_ok ? " respected" : " violated")};
}

Outcome phase_chain() {
  double pi = std::numbers::pi;
  double worst_margin = 1;
  for (double theta : {0.0, pi / 2, 2.0}) {
    GenerationReport r = generate_phase(2, 3, theta);
    worst_margin = std::min(worst_margin, *r.fidelity_exact - *r.entangled_fidelity);
  }
  return {worst_margin >= -1e-9, "min F_phase - F_ent = " + fmt_num(worst_margin)};
}

Outcome teleportation() {
  TeleportStats q = teleport_experiment(2, 10000, 12);
  TeleportStats t = teleport_experiment(3, 10000, 13);
  auto within = [](const TeleportStats& s) {
    double se = std::sqrt(s.expected * (1 - s.expected) / static_cast<double>(s.trials));
    return std::abs(s.rate - s.expected) <= 3 * se;
  };
  double fid = std::min(q.min_success_fidelity, t.min_success_fidelity);
  bool ok = within(q) && within(t) && std::abs(1 - fid) < 1e-9;
  return {ok, "d=2 rate " + fmt_num(q.rate) + ", d=3 rate " + fmt_num(t.rate) + ", min success fidelity 1 - " +
                  fmt_num(1 - fid)};
}

Outcome average_fidelity() {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  for (int J = 1; J <= 3; ++J) {
    TypicalityReport r = typicality_experiment(8, 2, J, 0.1, 2000, 14 + static_cast<std::uint64_t>(J));
    double z = (r.mean_fidelity - r.predicted_mean) / r.fidelity_stderr;
    ok = ok && std::abs(z) <= 3;
    detail += "J=" + std::to_string(J) + " z=" + fmt_num(z) + " ";
  }
  double t = elapsed_since(t0);
  return {ok && t < 180, detail + "; " + fmt_num(t) + "s"};
}

Outcome reproducibility() {
#ifdef SUPERREP_CLI_PATH
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "superrep_acceptance";
  fs::create_directories(dir);
  std::string cli = SUPERREP_CLI_PATH;
  auto invoke = [&](const fs::path& out) {
    std::string cmd = "\"" + cli + "\" --seed 2024 --out \"" + out.string() +
                      "\" typicality --K 6 --d 2 --J 1 --samples 300 --epsilon 0.2";
    return std::system(cmd.c_str());
  };
  fs::path a = dir / "a.csv", b = dir / "b.csv";
  int ra = invoke(a), rb = invoke(b);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::string ca = slurp(a), cb = slurp(b);
  fs::remove_all(dir);
  bool ok = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
  return {ok, std::to_string(ca.size()) + " bytes, exit codes " + std::to_string(ra) + "/" + std::to_string(rb)};
#else
  return {false, "command-line tool not built"};
#endif
}

}  // namespace

int main() {
  run(1, "Schur-Weyl completeness", completeness);
  run(2, "qubit multiplicity closed form", qubit_closed_form);
  run(3, "Schur basis block structure", schur_validity);
  run(4, "encoder entanglement fidelity", encoder_fidelity);
  run(5, "replication network identity", network_identity);
  run(6, "minimal ancilla dimension", minimal_ancilla);
  run(7, "concentration bound", concentration);
  run(8, "exact compression", exact_compression);
  run(9, "approximate compression", approx_compression);
  run(10, "entangled-state generation", entangled_generation);
  run(11, "phase-state generation chain", phase_chain);
  run(12, "teleportation retrieval", teleportation);
  run(13, "average-fidelity oracle", average_fidelity);
  run(14, "CSV reproducibility", reproducibility);
  std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
