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

#include "superrep/young.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace superrep {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// YoungDiagram

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("YoungDiagram: needs at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 0) throw std::invalid_argument("YoungDiagram: negative row length");
    if (i > 0 && rows_[i] > rows_[i - 1])
      throw std::invalid_argument("YoungDiagram: rows must be non-increasing");
    boxes_ += rows_[i];
  }
}

int YoungDiagram::length() const {
  return static_cast<int>(std::count_if(rows_.begin(), rows_.end(), [](int r) { return r > 0; }));
}

int YoungDiagram::twice_spin() const {
  if (rows_.size() != 2) throw std::logic_error("YoungDiagram::twice_spin: diagram does not have two rows");
  return rows_[0] - rows_[1];
}

YoungDiagram YoungDiagram::shifted(int shift) const {
  std::vector<int> r = rows_;
  for (int& x : r) x += shift;
  return YoungDiagram(std::move(r));
}

std::string YoungDiagram::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? "," : "") << rows_[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void enumerate_rec(int remaining, int max_row, int rows_left, std::vector<int>& cur,
                   std::vector<YoungDiagram>& out) {
  if (rows_left == 0) {
    if (remaining == 0) out.emplace_back(cur);
    return;
  }
  int hi = std::min(remaining, max_row);
  int lo = (remaining + rows_left - 1) / rows_left;
  for (int r = hi; r >= lo; --r) {
    cur.push_back(r);
    enumerate_rec(remaining - r, r, rows_left - 1, cur, out);
    cur.pop_back();
  }
}

class FactorialTable {
 public:
  BigInt get(int n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(table_.size()) <= n) table_.push_back(table_.back() * table_.size());
    return table_[static_cast<std::size_t>(n)];
  }

 private:
  std::mutex mu_;
  std::vector<BigInt> table_{BigInt(1)};
};

FactorialTable& factorials() {
  static FactorialTable t;
  return t;
}

void check_kd(int K, int d) {
  if (K < 0) throw std::invalid_argument("number of systems K must be non-negative");
  if (d < 1) throw std::invalid_argument("local dimension d must be at least 1");
}

}  // namespace

std::vector<YoungDiagram> enumerate_diagrams(int K, int d) {
  check_kd(K, d);
  std::vector<YoungDiagram> out;
  std::vector<int> cur;
  cur.reserve(static_cast<std::size_t>(d));
  enumerate_rec(K, K, d, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// Dimensions

BigInt factorial(int n) { return factorials().get(n); }

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

BigInt multinomial(const YoungDiagram& lambda) {
  BigInt den = 1;
  for (int r : lambda.rows()) den *= factorial(r);
  return factorial(lambda.boxes()) / den;
}

BigInt dim_rep(const YoungDiagram& lambda) {
  const auto& l = lambda.rows();
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) {
      num *= l[i] - l[j] + static_cast<int>(j - i);
      den *= static_cast<int>(j - i);
    }
  return num / den;
}

BigInt multiplicity(const YoungDiagram& lambda) {
  const auto& l = lambda.rows();
  int cols = l.empty() ? 0 : l[0];
  std::vector<int> conj(static_cast<std::size_t>(cols), 0);
  for (int r : l)
    for (int c = 0; c < r; ++c) ++conj[static_cast<std::size_t>(c)];
  BigInt hooks = 1;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (int c = 0; c < l[i]; ++c) hooks *= (l[i] - c - 1) + (conj[static_cast<std::size_t>(c)] - static_cast<int>(i) - 1) + 1;
  return factorial(lambda.boxes()) / hooks;
}

BigInt multiplicity_frobenius(const YoungDiagram& lambda) {
  const auto& l = lambda.rows();
  int d = lambda.depth();
  std::vector<int> shifted(l.size());
  for (int i = 0; i < d; ++i) shifted[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)] + d - 1 - i;
  BigInt num = factorial(lambda.boxes());
  BigInt den = 1;
  for (int i = 0; i < d; ++i) {
    den *= factorial(shifted[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < d; ++j) num *= shifted[static_cast<std::size_t>(i)] - shifted[static_cast<std::size_t>(j)];
  }
  return num / den;
}

BigInt multiplicity_qubit_closed_form(int K, int twice_j) {
  if (twice_j < 0 || twice_j > K || (K - twice_j) % 2 != 0)
    throw std::invalid_argument("multiplicity_qubit_closed_form: spin incompatible with K");
  int top = (K + twice_j) / 2;  // K/2 + j
  return (twice_j + 1) * binomial(K, top) / (top + 1);
}

std::vector<IrrepBlock> schur_weyl_measure(int K, int d) {
  check_kd(K, d);
  BigInt total = mp::pow(BigInt(d), static_cast<unsigned>(K));
  std::vector<IrrepBlock> out;
  for (auto& lam : enumerate_diagrams(K, d)) {
    BigInt dr = dim_rep(lam);
    BigInt m = multiplicity(lam);
    BigRational w(dr * m, total);
    out.push_back(IrrepBlock{std::move(lam), std::move(dr), std::move(m), std::move(w)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncation and concentration

bool in_truncation(const YoungDiagram& lambda, int J) {
  long long d = lambda.depth();
  return d * lambda.last_row() >= static_cast<long long>(lambda.boxes()) - d * J;
}

TruncationSet truncation_set(int K, int d, int J) {
  if (J < 0) throw std::invalid_argument("truncation parameter J must be non-negative");
  TruncationSet t{K, d, J, {}};
  for (auto& lam : enumerate_diagrams(K, d))
    if (in_truncation(lam, J)) t.members.push_back(std::move(lam));
  return t;
}

long double log_weight(const YoungDiagram& lambda) {
  const auto& l = lambda.rows();
  int d = lambda.depth();
  int K = lambda.boxes();
  long double s = std::lgamma(static_cast<long double>(K) + 1.0L) - K * std::log(static_cast<long double>(d));
  for (int i = 0; i < d; ++i) {
    long double li = l[static_cast<std::size_t>(i)] + d - 1 - i;
    s -= std::lgamma(li + 1.0L);
    for (int j = i + 1; j < d; ++j) {
      long double lj = l[static_cast<std::size_t>(j)] + d - 1 - j;
      // (li - lj) appears once in d_lambda and once in m_lambda
      s += 2.0L * std::log(li - lj) - std::log(static_cast<long double>(j - i));
    }
  }
  return s;
}

namespace {

// Neumaier-compensated sum of exp(x_i) for x_i given in log-space.
long double logsumexp_compensated(const std::vector<long double>& logs) {
  if (logs.empty()) return 0.0L;
  long double mx = *std::max_element(logs.begin(), logs.end());
  long double sum = 0.0L, comp = 0.0L;
  for (long double x : logs) {
    long double t = std::exp(x - mx);
    long double s = sum + t;
    if (std::fabs(sum) >= std::fabs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return std::exp(mx) * (sum + comp);
}

void check_tail_args(int K, int d, int J) {
  check_kd(K, d);
  if (K < 1) throw std::invalid_argument("tail: K must be at least 1");
  if (J < 0) throw std::invalid_argument("tail: J must be non-negative");
}

}  // namespace

BigRational tail_rational(int K, int d, int J) {
  check_tail_args(K, d, J);
  BigInt num = 0;
  for (const auto& lam : enumerate_diagrams(K, d))
    if (!in_truncation(lam, J)) num += dim_rep(lam) * multiplicity_frobenius(lam);
  return BigRational(num, mp::pow(BigInt(d), static_cast<unsigned>(K)));
}

long double tail_logspace(int K, int d, int J) {
  check_tail_args(K, d, J);
  std::vector<long double> logs;
  for (const auto& lam : enumerate_diagrams(K, d))
    if (!in_truncation(lam, J)) logs.push_back(log_weight(lam));
  return logsumexp_compensated(logs);
}

long double tail_exact(int K, int d, int J) {
  if (K <= kExactRegimeMaxK) return to_long_double(tail_rational(K, d, J));
  return tail_logspace(K, d, J);
}

double tail_bound(int K, int d, int J) {
  check_tail_args(K, d, J);
  double e = 0.5 * d * (d - 1) * std::log(K + 1.0) - 2.0 * J * static_cast<double>(J) / K;
  return std::exp(e);
}

int TailProfile::j_max() const { return (K + d - 1) / d; }

TailProfile tail_profile(int K, int d, bool exact, bool logspace) {
  check_tail_args(K, d, 0);
  TailProfile p;
  p.K = K;
  p.d = d;
  int jmax = p.j_max();
  auto diagrams = enumerate_diagrams(K, d);
  // A diagram is excluded at J iff J < (K - d*lambda_d)/d, i.e. J < ceil(...).
  auto first_kept_j = [&](const YoungDiagram& lam) {
    int gap = K - d * lam.last_row();
    return gap <= 0 ? 0 : (gap + d - 1) / d;
  };
  if (exact) {
    std::vector<BigInt> num(static_cast<std::size_t>(jmax) + 1, 0);
    for (const auto& lam : diagrams) {
      BigInt w = dim_rep(lam) * multiplicity_frobenius(lam);
      int jk = std::min(first_kept_j(lam), jmax + 1);
      for (int J = 0; J < jk; ++J) num[static_cast<std::size_t>(J)] += w;
    }
    BigInt den = mp::pow(BigInt(d), static_cast<unsigned>(K));
    for (auto& n : num) p.exact.emplace_back(n, den);
  }
  if (logspace) {
    std::vector<std::vector<long double>> logs(static_cast<std::size_t>(jmax) + 1);
    for (const auto& lam : diagrams) {
      long double lw = log_weight(lam);
      int jk = std::min(first_kept_j(lam), jmax + 1);
      for (int J = 0; J < jk; ++J) logs[static_cast<std::size_t>(J)].push_back(lw);
    }
    for (const auto& l : logs) p.logspace.push_back(logsumexp_compensated(l));
  }
  return p;
}

BigRational entanglement_fidelity_rational(int K, int d, int J) {
  BigRational kept = BigRational(1) - tail_rational(K, d, J);
  return kept * kept;
}

long double entanglement_fidelity_exact(int K, int d, int J) {
  long double kept = 1.0L - tail_exact(K, d, J);
  return kept * kept;
}

double fidelity_lower_bound(int K, int d, int J) { return 1.0 - 2.0 * tail_bound(K, d, J); }

// ---------------------------------------------------------------------------
// Ancilla dimension

namespace {

void check_replication_args(int N, int M, int J, int d) {
  if (d < 2) throw std::invalid_argument("local dimension d must be at least 2");
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  if (M < N) throw std::invalid_argument("M must be at least N");
  if ((M - N) % d != 0)
    throw std::invalid_argument("M - N = " + std::to_string(M - N) + " is not a multiple of d = " +
                                std::to_string(d) + "; adjust M to N + k*d");
  if (J < 0) throw std::invalid_argument("J must be non-negative");
  if (static_cast<long long>(d) * J > N)
    throw std::invalid_argument("J = " + std::to_string(J) + " exceeds N/d; the shifted diagrams would not exist");
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

}  // namespace

std::vector<AncillaRatio> ancilla_ratios(int N, int M, int J, int d) {
  check_replication_args(N, M, J, d);
  int shift = (M - N) / d;
  std::vector<AncillaRatio> out;
  for (const auto& src : truncation_set(N, d, J).members) {
    YoungDiagram tgt = src.shifted(shift);
    BigInt mt = multiplicity(tgt);
    BigInt ms = multiplicity(src);
    BigInt r = ceil_div(mt, ms);
    out.push_back(AncillaRatio{src, std::move(tgt), std::move(mt), std::move(ms), std::move(r)});
  }
  return out;
}

BigInt min_ancilla_dim(int N, int M, int J, int d) {
  BigInt best = 1;
  for (const auto& r : ancilla_ratios(N, M, J, d)) best = std::max(best, r.ceil_ratio);
  return best;
}

BigInt min_ancilla_dim_closed_form(int N, int M, int J) {
  check_replication_args(N, M, J, 2);
  int tj = std::min(2 * J, N);
  if ((N - tj) % 2 != 0) --tj;
  if (tj < 0) return 1;
  BigInt num = BigInt((N + tj) / 2 + 1) * binomial(M, (M + tj) / 2);
  BigInt den = BigInt((M + tj) / 2 + 1) * binomial(N, (N + tj) / 2);
  return ceil_div(num, den);
}

// ---------------------------------------------------------------------------
// Compression

int ceil_log2(const BigInt& x) {
  if (x <= 1) return 0;
  BigInt y = x - 1;
  return static_cast<int>(mp::msb(y)) + 1;
}

CompressionDims compression_dims(int N, int d, std::optional<int> J) {
  if (N < 1) throw std::invalid_argument("compression_dims: N must be at least 1");
  check_kd(N, d);
  CompressionDims c;
  c.N = N;
  c.d = d;
  c.J = J;
  std::vector<YoungDiagram> kept = J ? truncation_set(N, d, *J).members : enumerate_diagrams(N, d);
  c.system_a_dim = 0;
  c.system_b_dim = 0;
  for (const auto& lam : kept) {
    c.system_a_dim += dim_rep(lam);
    c.system_b_dim = std::max(c.system_b_dim, multiplicity(lam));
  }
  c.qubit_count = ceil_log2(c.system_a_dim);
  c.round_trip_qubits = 2 * c.qubit_count;
  c.naive_qubits = 2.0 * N * std::log2(static_cast<double>(d));
  double expo = (d - 1) * (d / 2.0 + 1.0);
  c.upper_bound = std::pow(N + 1.0, expo);
  c.asymptotic_ratio = N > 1 ? 2.0 * expo * std::log2(static_cast<double>(N)) / c.naive_qubits : 0.0;
  return c;
}

namespace {
int round_if_close(double x, bool up) {
  double r = std::round(x);
  if (std::abs(x - r) < 1e-12) return static_cast<int>(r);
  return static_cast<int>(up ? std::ceil(x) : std::floor(x));
}
}  // namespace

int j_sqrt_scaling(int N, double alpha) {
  return round_if_close(std::sqrt(std::pow(static_cast<double>(N), 1.0 - alpha / 4.0)), true);
}

int j_linear_scaling(int N, double alpha) {
  return round_if_close(std::pow(static_cast<double>(N), 1.0 - alpha / 4.0), true);
}

int j_compression(int N, double delta) {
  return round_if_close(std::sqrt(std::pow(static_cast<double>(N), 1.0 + delta)), false);
}

double generation_bound(int N, int M, int d) {
  double e = std::log(2.0) + 0.5 * d * (d - 1) * std::log(M + 1.0) -
             2.0 * static_cast<double>(N) * N / (static_cast<double>(d) * d * M);
  return 1.0 - std::exp(e);
}

// ---------------------------------------------------------------------------

long double to_long_double(const BigRational& r) {
  HighPrecision num(mp::numerator(r));
  HighPrecision den(mp::denominator(r));
  return static_cast<long double>(num / den);
}

std::string to_string(const BigRational& r) {
  std::ostringstream os;
  os << mp::numerator(r);
  if (mp::denominator(r) != 1) os << '/' << mp::denominator(r);
  return os.str();
}

}  // namespace superrep
