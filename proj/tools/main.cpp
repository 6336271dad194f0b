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

// superrep: seeded experiment runner. Every run prints one CSV (or JSON)
// document whose first line is a '#'-prefixed JSON header.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "superrep/protocols.hpp"
#include "superrep/repchan.hpp"
#include "superrep/young.hpp"

namespace superrep::cli {
namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct Options {
  std::string out;
  std::uint64_t seed = 0;
  std::string format = "csv";
  unsigned threads = 0;

  int N = 2, M = 4, K = 4, d = 2;
  std::optional<int> J;
  std::string j_rule = "explicit";
  std::optional<double> alpha, delta;
  int k_min = 1, k_max = 10, k_step = 1;
  double epsilon = 0.1;
  std::size_t samples = 20;
  bool exact = false;
  std::string protocol = "entangled";
  std::vector<double> theta;
  std::optional<double> tolerance;
  int clone_n = 0;
};

std::string kv(std::initializer_list<std::pair<const char*, std::string>> items) {
  std::string s;
  for (const auto& [k, v] : items) {
    if (!s.empty()) s += ';';
    s += k;
    s += '=';
    s += v;
  }
  return s;
}

std::string str(long long v) { return std::to_string(v); }

void require_positive(int v, const char* name) {
  if (v < 1) throw std::invalid_argument(std::string("--") + name + " must be positive");
}

int resolve_j(const Options& o, int n, int d) {
  if (o.alpha && !(*o.alpha > 0 && *o.alpha < 2)) throw std::invalid_argument("--alpha must lie in (0, 2)");
  if (o.delta && !(*o.delta > 0 && *o.delta < 1)) throw std::invalid_argument("--delta must lie in (0, 1)");
  if (o.j_rule == "explicit") {
    if (!o.J) throw std::invalid_argument("--J is required with --J-rule explicit");
    if (*o.J < 0) throw std::invalid_argument("--J must be non-negative");
    return *o.J;
  }
  if (o.j_rule == "sqrt-scaling") {
    if (!o.alpha) throw std::invalid_argument("--alpha is required with --J-rule sqrt-scaling");
    return j_sqrt_scaling(n, *o.alpha);
  }
  if (o.j_rule == "linear-scaling") {
    if (!o.alpha) throw std::invalid_argument("--alpha is required with --J-rule linear-scaling");
    return j_linear_scaling(n, *o.alpha);
  }
  if (o.j_rule == "compression") {
    if (!o.delta) throw std::invalid_argument("--delta is required with --J-rule compression");
    return j_compression(n, *o.delta);
  }
  if (o.j_rule == "max") return (n + d - 1) / d;
  throw std::invalid_argument("unknown --J-rule " + o.j_rule);
}

double tol_or(const Options& o, double fallback) { return o.tolerance.value_or(fallback); }

// ---------------------------------------------------------------------------

Table cmd_decompose(const Options& o, nlohmann::json& cfg) {
  require_positive(o.K, "K");
  require_positive(o.d, "d");
  cfg["K"] = o.K;
  cfg["d"] = o.d;
  Table t;
  t.columns = {"lambda", "twice_j", "dim_rep", "multiplicity", "weight", "weight_decimal"};
  BigInt total = boost::multiprecision::pow(BigInt(o.d), static_cast<unsigned>(o.K));
  BigInt sum = 0;
  for (const auto& lam : enumerate_diagrams(o.K, o.d)) {
    BigInt dr = dim_rep(lam), m = multiplicity(lam);
    BigInt w = dr * m;
    sum += w;
    std::string tj = o.d == 2 ? str(lam.twice_spin()) : "";
    t.add_raw({lam.str(), tj, dr.str(), m.str(), w.str() + "/" + total.str(),
               num(to_long_double(BigRational(w, total)))});
  }
  if (sum != total) throw std::logic_error("decompose: weights do not sum to one");
  return t;
}

Table cmd_bounds(const Options& o, nlohmann::json& cfg) {
  require_positive(o.d, "d");
  require_positive(o.k_min, "K-min");
  require_positive(o.k_step, "K-step");
  if (o.k_max < o.k_min) throw std::invalid_argument("--K-max must be at least --K-min");
  cfg["d"] = o.d;
  cfg["K_min"] = o.k_min;
  cfg["K_max"] = o.k_max;
  cfg["K_step"] = o.k_step;
  cfg["J_rule"] = o.j_rule;
  if (o.J) cfg["J"] = *o.J;
  if (o.alpha) cfg["alpha"] = *o.alpha;
  if (o.delta) cfg["delta"] = *o.delta;
  cfg["exact"] = o.exact;
  Table t;
  t.columns = {"K", "J", "exact_tail", "exact_tail_text", "logspace_tail", "hoeffding_bound", "exact_fe", "bound_fe",
               "pass"};
  for (int K = o.k_min; K <= o.k_max; K += o.k_step) {
    int J = resolve_j(o, K, o.d);
    long double tail = tail_exact(K, o.d, J);
    long double logt = tail_logspace(K, o.d, J);
    std::string text;
    if (o.exact && K <= kExactRegimeMaxK) text = to_string(tail_rational(K, o.d, J));
    double bound = tail_bound(K, o.d, J);
    long double fe = entanglement_fidelity_exact(K, o.d, J);
    bool pass = static_cast<double>(tail) <= bound * (1 + 1e-12);
    t.add_raw({str(K), str(J), num(tail), text, num(logt), num(bound), num(fe), num(fidelity_lower_bound(K, o.d, J)),
               pass ? "true" : "false"},
              pass);
  }
  return t;
}

Table cmd_replicate(const Options& o, nlohmann::json& cfg) {
  require_positive(o.N, "N");
  require_positive(o.M, "M");
  require_positive(o.d, "d");
  int J = resolve_j(o, o.N, o.d);
  cfg["N"] = o.N;
  cfg["M"] = o.M;
  cfg["d"] = o.d;
  cfg["J"] = J;
  cfg["J_rule"] = o.j_rule;
  cfg["samples"] = o.samples;
  double tol = tol_or(o, 1e-9);
  cfg["tolerance"] = tol;

  ReplicationNetwork net(o.N, o.M, J, o.d);
  const TruncatedEncoder& enc = net.encoder();
  RngStream psi_rng = RngStream::derive(o.seed, 0x5157);
  CVector psi = haar_state(enc.dim(), psi_rng).amplitudes();
  CMatrix rho = psi * psi.adjoint();
  double f_direct = enc.fidelity(psi);
  CMatrix encoded = enc.apply(rho);

  struct Sample {
    double fid, td, resid;
  };
  auto samples = parallel_map<Sample>(
      o.samples,
      [&](std::size_t i) {
        RngStream rng = RngStream::derive(o.seed, i);
        GateParams g = random_gate(static_cast<std::size_t>(o.d), rng);
        CMatrix out = net.apply(g, rho);
        CMatrix uk = apply_tensor_power(g.matrix(), static_cast<std::size_t>(o.M), CMatrix::Identity(rho.rows(), rho.cols()));
        CMatrix ref = uk * encoded * uk.adjoint();
        return Sample{fidelity(CVector(uk * psi), out), trace_distance(out, ref),
                      net.embedding().intertwining_residual(g.matrix(), enc.kept_columns())};
      },
      o.threads);

  Table t;
  t.columns = kReportColumns;
  std::string base = kv({{"N", str(o.N)}, {"M", str(o.M)}, {"J", str(J)}, {"d", str(o.d)},
                         {"ancilla_dim", str(static_cast<long long>(net.embedding().ancilla_dim()))}});
  double lo = 1, hi = 0, max_resid = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    std::string p = base + ";sample=" + std::to_string(i);
    t.add({"replicate", p, "fidelity", f_direct, "", {}, s.fid, {}, tol, std::abs(s.fid - f_direct) <= tol});
    t.add({"replicate", p, "trace_distance", 0.0, "", {}, s.td, {}, tol, s.td <= tol});
    lo = std::min(lo, s.fid);
    hi = std::max(hi, s.fid);
    max_resid = std::max(max_resid, s.resid);
  }
  if (!samples.empty())
    t.add({"replicate", base, "fidelity_spread", 0.0, "", {}, hi - lo, {}, tol, hi - lo <= tol});
  t.add({"replicate", base, "intertwining_residual", 0.0, "", {}, max_resid, {}, tol, max_resid <= tol});
  return t;
}

Table cmd_compress(const Options& o, nlohmann::json& cfg) {
  require_positive(o.N, "N");
  require_positive(o.d, "d");
  std::optional<int> J;
  if (!o.exact) J = resolve_j(o, o.N, o.d);
  cfg["N"] = o.N;
  cfg["d"] = o.d;
  cfg["exact"] = o.exact;
  if (J) {
    cfg["J"] = *J;
    cfg["J_rule"] = o.j_rule;
  }
  cfg["samples"] = o.samples;
  double tol = tol_or(o, 1e-9);
  cfg["tolerance"] = tol;

  CompressionProtocol proto = J ? compression_approx(o.N, o.d, *J) : compression_exact(o.N, o.d);
  CompressionDims dims = compression_dims(o.N, o.d, J);
  Table t;
  t.columns = kReportColumns;
  std::string base = kv({{"N", str(o.N)}, {"d", str(o.d)}, {"J", J ? str(*J) : "none"}});
  auto a_dim = static_cast<double>(proto.system_a_dim());
  double a_expected = static_cast<double>(dims.system_a_dim.convert_to<long double>());
  t.add({"compress", base, "system_a_dim", a_expected, dims.system_a_dim.str(), {}, a_dim, {}, 0.0, a_dim == a_expected});
  auto b_dim = static_cast<double>(proto.system_b_dim());
  double b_expected = static_cast<double>(dims.system_b_dim.convert_to<long double>());
  t.add({"compress", base, "system_b_dim", b_expected, dims.system_b_dim.str(), {}, b_dim, {}, 0.0, b_dim == b_expected});
  double sys_dim = std::pow(static_cast<double>(o.d), o.N);
  t.add({"compress", base, "system_dim", sys_dim, std::to_string(o.d) + "^" + std::to_string(o.N), {}, {}, {}, {}, {}});
  t.add({"compress", base, "round_trip_qubits", static_cast<double>(dims.round_trip_qubits), "", dims.naive_qubits, {},
         {}, {}, {}});
  t.add({"compress", base, "asymptotic_ratio", dims.asymptotic_ratio, "", {}, {}, {}, {}, {}});

  bool channel_level = std::pow(std::max(sys_dim, static_cast<double>(proto.bob_isometry().rows())), 2) <=
                       static_cast<double>(kMaxSuperoperatorDim);
  const TruncatedEncoder* enc = proto.encoder();
  auto rows = parallel_map<std::vector<ReportRow>>(
      o.samples,
      [&](std::size_t i) {
        RngStream rng = RngStream::derive(o.seed, i);
        GateParams g = random_gate(static_cast<std::size_t>(o.d), rng);
        std::string p = base + ";sample=" + std::to_string(i);
        std::vector<ReportRow> out;
        CMatrix un = kron_power(g.matrix(), static_cast<std::size_t>(o.N));
        if (channel_level) {
          Superoperator target = Superoperator::conjugation(un);
          if (enc) target = enc->superoperator().then(target);
          double dist = choi_distance(proto.superoperator(g), target);
          out.push_back({"compress", p, "choi_distance", 0.0, "", {}, dist, {}, tol, dist <= tol});
        }
        CVector psi = haar_state(static_cast<std::size_t>(sys_dim), rng).amplitudes();
        CMatrix rho = psi * psi.adjoint();
        CMatrix ref = un * (enc ? enc->apply(rho) : rho) * un.adjoint();
        CMatrix got = proto.apply(g, rho);
        double td = trace_distance(got, ref);
        out.push_back({"compress", p, "trace_distance", 0.0, "", {}, td, {}, tol, td <= tol});
        double f_exp = enc ? enc->fidelity(psi) : 1.0;
        double f = fidelity(CVector(un * psi), got);
        out.push_back({"compress", p, "fidelity", f_exp, "", {}, f, {}, tol, std::abs(f - f_exp) <= tol});
        return out;
      },
      o.threads);
  for (const auto& group : rows)
    for (const auto& r : group) t.add(r);
  return t;
}

std::vector<double> parse_thetas(const Options& o, int d) {
  std::vector<double> th = o.theta;
  if (th.empty()) th.assign(static_cast<std::size_t>(d - 1), 0.0);
  if (static_cast<int>(th.size()) != d - 1)
    throw std::invalid_argument("--theta needs d - 1 = " + std::to_string(d - 1) + " values");
  return th;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + num(x);
  return s;
}

void add_bound_row(Table& t, const std::string& exp, const std::string& p, const GenerationReport& r) {
  std::optional<bool> pass;
  if (r.fidelity_exact && r.fidelity_bound >= 0) pass = *r.fidelity_exact >= r.fidelity_bound - 1e-12;
  t.add({exp, p, "fidelity_vs_bound", {}, "", r.fidelity_bound, r.fidelity_exact, {}, {}, pass});
}

Table cmd_generate(const Options& o, nlohmann::json& cfg) {
  require_positive(o.N, "N");
  require_positive(o.M, "M");
  require_positive(o.d, "d");
  double tol = tol_or(o, 1e-9);
  cfg["protocol"] = o.protocol;
  cfg["N"] = o.N;
  cfg["M"] = o.M;
  cfg["d"] = o.d;
  cfg["tolerance"] = tol;
  Table t;
  t.columns = kReportColumns;
  std::string exp = "generate_" + o.protocol;

  if (o.protocol == "entangled") {
    cfg["samples"] = o.samples;
    auto reports = parallel_map<GenerationReport>(
        o.samples,
        [&](std::size_t i) {
          RngStream rng = RngStream::derive(o.seed, i);
          return generate_entangled(o.N, o.M, o.d, random_gate(static_cast<std::size_t>(o.d), rng));
        },
        o.threads);
    double lo = 1, hi = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      std::string p = kv({{"N", str(o.N)}, {"M", str(o.M)}, {"M_simulated", str(r.M_simulated)}, {"d", str(o.d)},
                          {"J", str(r.J)}, {"sample", std::to_string(i)}});
      double f = *r.fidelity_exact;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      if (r.M_simulated == r.M) {
        double fe = static_cast<double>(r.encoder_entanglement_fidelity);
        std::string text = to_string(entanglement_fidelity_rational(r.M, r.d, r.J));
        t.add({exp, p, "fidelity", fe, text, {}, f, {}, tol, std::abs(f - fe) <= tol});
      } else {
        double fe = static_cast<double>(r.encoder_entanglement_fidelity);
        t.add({exp, p, "fidelity_vs_padded_fe", {}, "", fe, f, {}, tol, f >= fe - tol});
      }
      add_bound_row(t, exp, p, r);
    }
    if (!reports.empty()) {
      std::string p = kv({{"N", str(o.N)}, {"M", str(o.M)}, {"d", str(o.d)}});
      t.add({exp, p, "fidelity_spread", 0.0, "", {}, hi - lo, {}, tol, hi - lo <= tol});
    }
    return t;
  }

  if (o.protocol != "phase" && o.protocol != "multiphase")
    throw std::invalid_argument("unknown --protocol " + o.protocol);
  std::vector<double> th = parse_thetas(o, o.d);
  cfg["theta"] = th;
  if (o.protocol == "phase" && o.d != 2) throw std::invalid_argument("--protocol phase requires --d 2");
  GenerationReport r = o.protocol == "phase" ? generate_phase(o.N, o.M, th[0]) : generate_multiphase(o.N, o.M, o.d, th);
  std::string p = kv({{"N", str(o.N)}, {"M", str(o.M)}, {"M_simulated", str(r.M_simulated)}, {"d", str(o.d)},
                      {"J", str(r.J)}, {"theta", join(th)}});
  if (r.bound_only) {
    t.add({exp, p + ";mode=bound-only", "fidelity_bound", {}, "", r.fidelity_bound, {}, {}, {}, {}});
    return t;
  }
  double f = *r.fidelity_exact, fe = *r.entangled_fidelity;
  t.add({exp, p, "fidelity", {}, "", {}, f, {}, {}, {}});
  t.add({exp, p, "chain_margin", 0.0, "", {}, f - fe, {}, tol, f - fe >= -tol});
  add_bound_row(t, exp, p, r);
  return t;
}

Table cmd_typicality(const Options& o, nlohmann::json& cfg) {
  require_positive(o.K, "K");
  require_positive(o.d, "d");
  if (!(o.epsilon > 0)) throw std::invalid_argument("--epsilon must be positive");
  int J = resolve_j(o, o.K, o.d);
  cfg["K"] = o.K;
  cfg["d"] = o.d;
  cfg["J"] = J;
  cfg["J_rule"] = o.j_rule;
  cfg["epsilon"] = o.epsilon;
  cfg["samples"] = o.samples;
  TypicalityReport r = typicality_experiment(o.K, o.d, J, o.epsilon, o.samples, o.seed, o.threads);
  Table t;
  t.columns = kReportColumns;
  std::string p = kv({{"K", str(o.K)}, {"d", str(o.d)}, {"J", str(J)}, {"epsilon", num(o.epsilon)},
                      {"samples", std::to_string(o.samples)}});
  double tol_mean = 3 * r.fidelity_stderr + 1e-12;
  t.add({"typicality", p, "mean_fidelity", r.predicted_mean, "", {}, r.mean_fidelity, r.fidelity_stderr, tol_mean,
         std::abs(r.mean_fidelity - r.predicted_mean) <= tol_mean});
  t.add({"typicality", p, "entanglement_fidelity", static_cast<double>(r.entanglement_fidelity), "", {}, {}, {}, {}, {}});
  double slack = 3 * r.prob_stderr;
  t.add({"typicality", p, "prob_below_vs_markov", {}, "", r.markov_bound, r.empirical_prob_below, r.prob_stderr, slack,
         r.empirical_prob_below <= r.markov_bound + slack});
  std::optional<bool> informative;
  if (r.theorem_bound < 1) informative = r.empirical_prob_below <= r.theorem_bound + slack;
  t.add({"typicality", p, "prob_below_vs_theorem", {}, "", r.theorem_bound, r.empirical_prob_below, r.prob_stderr, slack,
         informative});
  return t;
}

Table cmd_teleport(const Options& o, nlohmann::json& cfg) {
  require_positive(o.d, "d");
  cfg["d"] = o.d;
  cfg["samples"] = o.samples;
  double tol = tol_or(o, 1e-9);
  cfg["tolerance"] = tol;
  Table t;
  t.columns = kReportColumns;
  std::string p = kv({{"d", str(o.d)}, {"trials", std::to_string(o.samples)}});
  TeleportStats s = teleport_experiment(o.d, o.samples, o.seed, o.threads);
  double slack = 3 * s.stderr_rate;
  t.add({"teleport", p, "success_rate", s.expected, "1/" + std::to_string(o.d * o.d), {}, s.rate, s.stderr_rate, slack,
         std::abs(s.rate - s.expected) <= slack});
  t.add({"teleport", p, "success_fidelity_min", 1.0, "", {}, s.min_success_fidelity, {}, tol,
         1.0 - s.min_success_fidelity <= tol});
  RngStream rng = RngStream::derive(o.seed, 0xc401);
  GateParams g = random_gate(static_cast<std::size_t>(o.d), rng);
  CMatrix branch = teleport_success_operator(g) * static_cast<double>(o.d);
  double dist = choi_distance(KrausChannel(g.dim(), g.dim(), {branch}), KrausChannel::unitary(g.matrix()));
  t.add({"teleport", kv({{"d", str(o.d)}}), "success_branch_choi_distance", 0.0, "", {}, dist, {}, tol, dist <= tol});
  if (o.clone_n > 0) {
    cfg["clone_N"] = o.clone_n;
    cfg["M"] = o.M;
    ProbabilisticCloningReport c = probabilistic_entangled_cloning(o.clone_n, o.M, o.d, g, o.samples, o.seed, o.threads);
    std::string cp = kv({{"N", str(o.clone_n)}, {"M", str(o.M)}, {"d", str(o.d)}, {"trials", std::to_string(o.samples)}});
    double cs = 3 * c.stderr_rate;
    t.add({"probabilistic_cloning", cp, "success_rate", c.analytic_rate, "", {}, c.empirical_rate, c.stderr_rate, cs,
           std::abs(c.empirical_rate - c.analytic_rate) <= cs});
    t.add({"probabilistic_cloning", cp, "fidelity_on_success", {}, "", c.generation.fidelity_bound,
           c.generation.fidelity_exact, {}, {}, {}});
  }
  return t;
}

Table cmd_ancilla(const Options& o, nlohmann::json& cfg) {
  require_positive(o.N, "N");
  require_positive(o.M, "M");
  require_positive(o.d, "d");
  int J = resolve_j(o, o.N, o.d);
  cfg["N"] = o.N;
  cfg["M"] = o.M;
  cfg["d"] = o.d;
  cfg["J"] = J;
  cfg["J_rule"] = o.j_rule;
  Table t;
  t.columns = kReportColumns;
  std::string p = kv({{"N", str(o.N)}, {"M", str(o.M)}, {"J", str(J)}, {"d", str(o.d)}});
  for (const auto& r : ancilla_ratios(o.N, o.M, J, o.d)) {
    std::string rp = p + ";source=" + r.source.str() + ";target=" + r.target.str();
    BigRational q(r.target_mult, r.source_mult);
    t.add({"ancilla", rp, "multiplicity_ratio", static_cast<double>(to_long_double(q)),
           r.target_mult.str() + "/" + r.source_mult.str(), {}, {}, {}, {}, {}});
  }
  BigInt dmin = min_ancilla_dim(o.N, o.M, J, o.d);
  auto dv = static_cast<double>(dmin.convert_to<long double>());
  if (o.d == 2) {
    BigInt closed = min_ancilla_dim_closed_form(o.N, o.M, J);
    auto cv = static_cast<double>(closed.convert_to<long double>());
    t.add({"ancilla", p, "min_ancilla_dim", dv, dmin.str(), {}, cv, {}, 0.0, dmin == closed});
  } else {
    t.add({"ancilla", p, "min_ancilla_dim", dv, dmin.str(), {}, {}, {}, {}, {}});
  }
  return t;
}

constexpr const char* kFooter = R"(Output: CSV (default) or JSON. The first CSV line is '# ' followed by a JSON
header with tool version, schema_version, command, seed, config and config_hash
(FNV-1a 64 of the canonical config JSON). With --out, a <out>.summary.json is
written alongside.

Experiment columns (replicate, compress, generate, typicality, teleport, ancilla):
  experiment  protocol or experiment id
  params      ';'-separated key=value parameters of the row
  metric      quantity measured in this row
  exact       exact or predicted value (empty when none)
  exact_text  exact value as a rational or symbolic string, when available
  bound       analytic bound compared against (may be vacuous: >1 or <0)
  empirical   simulated or sampled value
  stderr      standard error of the empirical value
  tolerance   declared tolerance for the pass decision
  pass        true/false; empty when the row carries no check

decompose columns: lambda, twice_j (d = 2 only), dim_rep, multiplicity,
  weight (d_lambda m_lambda / d^K, unreduced), weight_decimal
bounds columns: K, J, exact_tail, exact_tail_text (with --exact), logspace_tail,
  hoeffding_bound ((K+1)^{d(d-1)/2} exp(-2J^2/K)), exact_fe, bound_fe, pass

Numbers use '.' as decimal separator, no grouping, shortest round-trip form.
Environment: SUPERREP_SCHUR_CACHE=<dir> caches qudit Schur bases on disk.
Exit codes: 0 pass, 1 tolerance failure, 2 invalid config, 3 resource guard.)";

int run(int argc, char** argv) {
  CLI::App app{"Desk-scale experiments on gate super-replication, compression and state generation"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "Output path (default stdout)");
  app.add_option("--seed", o.seed, "Master seed (u64)");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", o.threads, "Worker cap; 0 uses all cores");
  app.add_option("--tolerance", o.tolerance, "Override the declared tolerance of exact checks");

  auto j_opts = [&](CLI::App* s) {
    s->add_option("--J", o.J, "Truncation parameter");
    s->add_option("--J-rule", o.j_rule, "explicit | sqrt-scaling | linear-scaling | compression | max")
        ->check(CLI::IsMember({"explicit", "sqrt-scaling", "linear-scaling", "compression", "max"}));
    s->add_option("--alpha", o.alpha, "Exponent for the scaling rules, in (0, 2)");
    s->add_option("--delta", o.delta, "Exponent for the compression rule, in (0, 1)");
  };

  auto* dec = app.add_subcommand("decompose", "Schur-Weyl decomposition table");
  dec->add_option("--K", o.K, "Number of systems")->required();
  dec->add_option("--d", o.d, "Local dimension")->required();

  auto* bnd = app.add_subcommand("bounds", "Exact tails against the concentration bound");
  bnd->add_option("--d", o.d, "Local dimension");
  bnd->add_option("--K-min", o.k_min, "First K");
  bnd->add_option("--K-max", o.k_max, "Last K");
  bnd->add_option("--K-step", o.k_step, "K increment");
  bnd->add_flag("--exact", o.exact, "Also print the exact tail as a rational");
  j_opts(bnd);

  auto* rep = app.add_subcommand("replicate", "N -> M replication network on a fixed random input");
  rep->add_option("--N", o.N)->required();
  rep->add_option("--M", o.M)->required();
  rep->add_option("--d", o.d);
  rep->add_option("--samples", o.samples, "Number of random gates");
  j_opts(rep);

  auto* cmp = app.add_subcommand("compress", "Gate compression, exact or truncated");
  cmp->add_option("--N", o.N)->required();
  cmp->add_option("--d", o.d);
  cmp->add_flag("--exact", o.exact, "Zero-error protocol (no truncation)");
  cmp->add_option("--samples", o.samples, "Number of random gates");
  j_opts(cmp);

  auto* gen = app.add_subcommand("generate", "Entangled, phase or multiphase state generation");
  gen->add_option("--protocol", o.protocol)->check(CLI::IsMember({"entangled", "phase", "multiphase"}));
  gen->add_option("--N", o.N)->required();
  gen->add_option("--M", o.M)->required();
  gen->add_option("--d", o.d);
  gen->add_option("--theta", o.theta, "d - 1 phases (phase protocols)");
  gen->add_option("--samples", o.samples, "Number of random gates (entangled)");

  auto* typ = app.add_subcommand("typicality", "Monte Carlo fidelity of the truncated encoder");
  typ->add_option("--K", o.K)->required();
  typ->add_option("--d", o.d);
  typ->add_option("--epsilon", o.epsilon);
  typ->add_option("--samples", o.samples);
  j_opts(typ);

  auto* tel = app.add_subcommand("teleport", "Probabilistic retrieval of a gate from its Choi state");
  tel->add_option("--d", o.d);
  tel->add_option("--samples", o.samples, "Number of trials");
  tel->add_option("--clone-N", o.clone_n, "Also run probabilistic cloning from this many Choi states");
  tel->add_option("--M", o.M, "Output pairs for --clone-N");

  auto* anc = app.add_subcommand("ancilla", "Minimal ancilla dimension for the embedding isometry");
  anc->add_option("--N", o.N)->required();
  anc->add_option("--M", o.M)->required();
  anc->add_option("--d", o.d);
  j_opts(anc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  set_default_threads(o.threads);
  RunHeader header;
  header.seed = o.seed;
  nlohmann::json cfg = nlohmann::json::object();
  Table table;
  try {
    CLI::App* sub = app.get_subcommands().front();
    header.command = sub->get_name();
    if (sub == dec) table = cmd_decompose(o, cfg);
    else if (sub == bnd) table = cmd_bounds(o, cfg);
    else if (sub == rep) table = cmd_replicate(o, cfg);
    else if (sub == cmp) table = cmd_compress(o, cfg);
    else if (sub == gen) table = cmd_generate(o, cfg);
    else if (sub == typ) table = cmd_typicality(o, cfg);
    else if (sub == tel) table = cmd_teleport(o, cfg);
    else table = cmd_ancilla(o, cfg);
  } catch (const ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitConfig;
  }
  cfg["command"] = header.command;
  cfg["seed"] = o.seed;
  cfg["format"] = o.format;
  header.config = cfg;

  std::ostringstream buf;
  if (o.format == "json") write_json(buf, header, table);
  else write_csv(buf, header, table);
  if (o.out.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return kExitConfig;
    }
    f << buf.str();
    std::ofstream s(o.out + ".summary.json", std::ios::binary);
    s << summary_json(header, table).dump(2) << "\n";
  }
  return table.failures ? kExitTolerance : 0;
}

}  // namespace
}  // namespace superrep::cli

int main(int argc, char** argv) { return superrep::cli::run(argc, argv); }
