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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace superrep {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// Partition of K boxes into d non-increasing, non-negative rows.
class YoungDiagram {
 public:
  explicit YoungDiagram(std::vector<int> rows);

  const std::vector<int>& rows() const { return rows_; }
  int depth() const { return static_cast<int>(rows_.size()); }
  int boxes() const { return boxes_; }
  int operator[](std::size_t i) const { return rows_[i]; }
  int last_row() const { return rows_.back(); }
  /// Number of non-zero rows.
  int length() const;
  /// 2j for two-row diagrams: lambda_1 - lambda_2.
  int twice_spin() const;

  /// lambda + shift * (1, ..., 1); throws if a row would turn negative.
  YoungDiagram shifted(int shift) const;

  std::string str() const;

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
  friend auto operator<=>(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ <=> b.rows_; }

 private:
  std::vector<int> rows_;
  int boxes_ = 0;
};

struct IrrepBlock {
  YoungDiagram diagram;
  BigInt dim_rep;
  BigInt mult;
  BigRational weight;
};

struct TruncationSet {
  int K = 0;
  int d = 0;
  int J = 0;
  std::vector<YoungDiagram> members;
};

/// All partitions of K into at most d parts, padded to d rows, in descending
/// lexicographic order. Every basis index map in the library uses this order.
std::vector<YoungDiagram> enumerate_diagrams(int K, int d);

/// Weyl dimension of the SU(d) irrep labelled by lambda (d = lambda.depth()).
BigInt dim_rep(const YoungDiagram& lambda);

/// Number of standard tableaux of shape lambda (hook-length formula); this is
/// the multiplicity of the irrep in the K-fold tensor power.
BigInt multiplicity(const YoungDiagram& lambda);

/// Same quantity via the Frobenius determinant form K! prod(l_i - l_j) / prod l_i!.
BigInt multiplicity_frobenius(const YoungDiagram& lambda);

/// Closed qubit form (2j+1)/(K/2+j+1) * C(K, K/2+j), with twice_j = 2j.
BigInt multiplicity_qubit_closed_form(int K, int twice_j);

BigInt factorial(int n);
BigInt binomial(int n, int k);
BigInt multinomial(const YoungDiagram& lambda);

std::vector<IrrepBlock> schur_weyl_measure(int K, int d);

/// lambda_d >= K/d - J, evaluated exactly as d*lambda_d >= K - d*J.
bool in_truncation(const YoungDiagram& lambda, int J);
TruncationSet truncation_set(int K, int d, int J);

/// Schur-Weyl weight of the diagrams outside the truncation set.
BigRational tail_rational(int K, int d, int J);
long double tail_logspace(int K, int d, int J);
/// Exact rational arithmetic up to kExactRegimeMaxK, log-space beyond.
long double tail_exact(int K, int d, int J);
/// (K+1)^{d(d-1)/2} exp(-2 J^2 / K).
double tail_bound(int K, int d, int J);

inline constexpr int kExactRegimeMaxK = 500;

/// Tail for every J in [0, j_max] from one pass over the diagrams.
struct TailProfile {
  int K = 0;
  int d = 0;
  std::vector<BigRational> exact;           // empty when not requested
  std::vector<long double> logspace;        // empty when not requested
  int j_max() const;
};
TailProfile tail_profile(int K, int d, bool exact = true, bool logspace = true);

/// log p_lambda = log(d_lambda m_lambda / d^K), long double precision.
long double log_weight(const YoungDiagram& lambda);

BigRational entanglement_fidelity_rational(int K, int d, int J);
/// (1 - tail_exact)^2.
long double entanglement_fidelity_exact(int K, int d, int J);
/// 1 - 2 (K+1)^{d(d-1)/2} exp(-2 J^2 / K); may be negative.
double fidelity_lower_bound(int K, int d, int J);

struct AncillaRatio {
  YoungDiagram source;  // lambda' in the N-system truncation set
  YoungDiagram target;  // lambda = lambda' + (M-N)/d * 1
  BigInt target_mult;
  BigInt source_mult;
  BigInt ceil_ratio;
};

/// Per-diagram ratios m_{lambda,M} / m_{lambda',N} over the N truncation set.
std::vector<AncillaRatio> ancilla_ratios(int N, int M, int J, int d);
/// max over the ratios, rounded up; 1 when the truncation set is empty.
BigInt min_ancilla_dim(int N, int M, int J, int d);
/// Qubit closed form evaluated at the largest admissible spin j <= J:
/// ceil[(N/2+j+1) C(M, M/2+j) / ((M/2+j+1) C(N, N/2+j))].
BigInt min_ancilla_dim_closed_form(int N, int M, int J);

struct CompressionDims {
  int N = 0;
  int d = 0;
  std::optional<int> J;          // nullopt for the zero-error protocol
  BigInt system_a_dim;           // sum of d_lambda over the kept diagrams
  BigInt system_b_dim;           // largest kept multiplicity
  int qubit_count = 0;           // ceil(log2 system_a_dim)
  int round_trip_qubits = 0;     // 2 * qubit_count
  double naive_qubits = 0;       // 2 N log2 d
  double upper_bound = 0;        // (N+1)^{(d-1)(d/2+1)}
  double asymptotic_ratio = 0;   // 2 (d-1)(d/2+1) log2 N / (2 N log2 d)
};
CompressionDims compression_dims(int N, int d, std::optional<int> J = std::nullopt);

// Truncation-size conventions used by the replication and compression
// protocols; both appear in the literature and neither is privileged here.
int j_sqrt_scaling(int N, double alpha);     // ceil(sqrt(N^{1 - alpha/4}))
int j_linear_scaling(int N, double alpha);   // ceil(N^{1 - alpha/4})
int j_compression(int N, double delta);      // floor(sqrt(N^{1 + delta}))

/// 1 - 2 (M+1)^{d(d-1)/2} exp(-2 N^2 / (d^2 M)), evaluated in log-space.
double generation_bound(int N, int M, int d);

int ceil_log2(const BigInt& x);
long double to_long_double(const BigRational& r);
std::string to_string(const BigRational& r);

}  // namespace superrep
