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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "superrep/rng.hpp"

namespace superrep {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Raised when a requested construction would exceed a configured resource
/// budget (matrix dimension, permutation-sum size, Kraus count).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical acceptance thresholds for the domain-type invariants.
struct Tolerances {
  double norm = 1e-12;
  double hermitian = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-10;
  double trace_preservation = 1e-10;
  double isometry = 1e-10;
  double unitary = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

std::size_t checked_pow(std::size_t base, std::size_t exp);

// ---------------------------------------------------------------------------
// Domain types

class DensityMatrix;

class PureState {
 public:
  explicit PureState(CVector amplitudes, const Tolerances& tol = kDefaultTolerances);
  static PureState normalized(CVector amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  DensityMatrix projector() const;

 private:
  CVector amps_;
};

class DensityMatrix {
 public:
  /// Checks Hermiticity and unit trace; the eigenvalue condition is
  /// checked by is_valid() since it needs a full decomposition.
  explicit DensityMatrix(CMatrix m, const Tolerances& tol = kDefaultTolerances);

  /// Wraps a numerically computed state, symmetrizing away round-off.
  static DensityMatrix unchecked(CMatrix m);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }
  double min_eigenvalue() const;
  double purity() const;
  bool is_valid(double trace_tol = 1e-10, double eig_tol = -1e-10) const;

 private:
  struct Unchecked {};
  DensityMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

/// A point of U(d) with unit-modulus determinant. For d = 2 it can also be
/// given as a rotation exp(-i theta n.sigma/2).
class GateParams {
 public:
  static GateParams from_matrix(CMatrix u, const Tolerances& tol = kDefaultTolerances);
  static GateParams qubit_rotation(double theta, const std::array<double, 3>& axis,
                                   const Tolerances& tol = kDefaultTolerances);
  /// diag(1, e^{-i t_1}, ..., e^{-i t_{d-1}}).
  static GateParams phase(std::span<const double> thetas);
  static GateParams identity(std::size_t d);

  std::size_t dim() const { return static_cast<std::size_t>(u_.rows()); }
  const CMatrix& matrix() const { return u_; }
  std::optional<double> theta() const { return theta_; }
  std::optional<std::array<double, 3>> axis() const { return axis_; }

 private:
  explicit GateParams(CMatrix u) : u_(std::move(u)) {}
  CMatrix u_;
  std::optional<double> theta_;
  std::optional<std::array<double, 3>> axis_;
};

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
 public:
  KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<CMatrix> ops,
               double tp_tol = kDefaultTolerances.trace_preservation);

  static KrausChannel identity(std::size_t dim);
  static KrausChannel unitary(const CMatrix& u);
  static KrausChannel isometry(const CMatrix& v);

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  const std::vector<CMatrix>& ops() const { return ops_; }

  /// max-abs deviation of sum K^dag K from the identity.
  double trace_preservation_error() const;

 private:
  std::size_t in_, out_;
  std::vector<CMatrix> ops_;
};

class Isometry {
 public:
  explicit Isometry(CMatrix v, double tol = kDefaultTolerances.isometry);
  std::size_t in_dim() const { return static_cast<std::size_t>(v_.cols()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(v_.rows()); }
  const CMatrix& matrix() const { return v_; }

 private:
  CMatrix v_;
};

/// Liouville representation: vec(E(rho)) = S vec(rho), column-major vec.
/// Composition is a matrix product, which keeps multi-stage networks cheap.
class Superoperator {
 public:
  Superoperator(std::size_t in_dim, std::size_t out_dim, CMatrix s);

  static Superoperator from_kraus(const KrausChannel& c);
  static Superoperator conjugation(const CMatrix& k);  // rho -> K rho K^dag
  /// rho -> Tr[E rho] * sigma, with E an in_dim x in_dim effect.
  static Superoperator measure_and_prepare(const CMatrix& effect, const CMatrix& sigma);

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  const CMatrix& matrix() const { return s_; }

  CMatrix apply(const CMatrix& rho) const;
  Superoperator then(const Superoperator& next) const;  // next o this
  Superoperator operator+(const Superoperator& other) const;

  /// Choi state (E (x) id)(|Phi><Phi|), normalized to unit trace.
  CMatrix choi() const;
  /// Canonical (minimal) Kraus form from the Choi eigen-decomposition.
  KrausChannel to_kraus(double cutoff = 1e-13) const;

 private:
  std::size_t in_, out_;
  CMatrix s_;
};

// ---------------------------------------------------------------------------
// Operations

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);
CMatrix kron_power(const CMatrix& u, std::size_t k);

/// Applies u to every one of the k tensor factors of each column of x,
/// without forming the d^k x d^k matrix.
CMatrix apply_tensor_power(const CMatrix& u, std::size_t k, const CMatrix& x);

DensityMatrix apply_channel(const KrausChannel& c, const DensityMatrix& rho);
CMatrix apply_kraus(const KrausChannel& c, const CMatrix& rho);

/// Reduced state on the factors listed in keep (kept factors stay in their
/// original relative order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

PureState haar_state(std::size_t dim, RngStream& rng);
CMatrix haar_unitary(std::size_t dim, RngStream& rng);
CMatrix haar_special_unitary(std::size_t dim, RngStream& rng);
GateParams random_su2(RngStream& rng);
/// Haar SU(d) gate; for d = 2 it carries its (theta, axis) form.
GateParams random_gate(std::size_t d, RngStream& rng);

double fidelity(const PureState& psi, const DensityMatrix& rho);
double fidelity(const CVector& psi, const CMatrix& rho);

CVector maximally_entangled(std::size_t dim);
DensityMatrix choi_state(const KrausChannel& c);
double choi_distance(const KrausChannel& c1, const KrausChannel& c2);
double choi_distance(const Superoperator& s1, const Superoperator& s2);

double trace_norm(const CMatrix& hermitian);
double trace_distance(const CMatrix& rho, const CMatrix& sigma);

/// <Phi| (E (x) id)(|Phi><Phi|) |Phi> = sum_k |Tr K_k|^2 / D^2.
double entanglement_fidelity(const KrausChannel& c);
double entanglement_fidelity(const Superoperator& s);

/// Orthonormal basis of the orthogonal complement of the column span of an
/// isometry v (columns of the result).
CMatrix orthogonal_complement(const CMatrix& v);

double max_abs(const CMatrix& m);

}  // namespace superrep
