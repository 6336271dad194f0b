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

#include "superrep/repchan.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace superrep {

namespace {

// Columns sqrt(mu_k) f_k with rho = sum mu_k |f_k><f_k|, mu_k above cutoff.
CMatrix sqrt_factors(const CMatrix& rho, double cutoff = 1e-14) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > cutoff) keep.push_back(i);
  CMatrix out(rho.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = std::sqrt(es.eigenvalues()(keep[k])) * es.eigenvectors().col(keep[k]);
  return out;
}

// Orthonormal basis of the kernel of a projector.
CMatrix projector_complement(const CMatrix& proj) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (proj + proj.adjoint()));
  Eigen::Index n = 0;
  while (n < es.eigenvalues().size() && es.eigenvalues()(n) < 0.5) ++n;
  return es.eigenvectors().leftCols(n);
}

void check_kraus_budget(std::size_t count, std::size_t rows, std::size_t cols) {
  if (count * rows * cols > kMaxKrausEntries)
    throw ResourceError("Kraus form with " + std::to_string(count) + " operators of size " + std::to_string(rows) +
                        "x" + std::to_string(cols) + " exceeds the entry budget " +
                        std::to_string(kMaxKrausEntries) + "; use the apply() route");
}

void check_superop_budget(std::size_t dim) {
  if (dim * dim > kMaxSuperoperatorDim)
    throw ResourceError("superoperator side " + std::to_string(dim * dim) + " exceeds the budget " +
                        std::to_string(kMaxSuperoperatorDim) + "; use the apply() route");
}

// (U^{(x)n} (x) I_a) X for X with rows indexed x * a_dim + a.
CMatrix apply_with_ancilla(const CMatrix& u, int n, std::size_t a_dim, const CMatrix& x) {
  auto sys = x.rows() / static_cast<Eigen::Index>(a_dim);
  auto ad = static_cast<Eigen::Index>(a_dim);
  CMatrix z(sys, ad * x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index s = 0; s < sys; ++s)
      for (Eigen::Index a = 0; a < ad; ++a) z(s, c * ad + a) = x(s * ad + a, c);
  z = apply_tensor_power(u, static_cast<std::size_t>(n), z);
  CMatrix out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index s = 0; s < sys; ++s)
      for (Eigen::Index a = 0; a < ad; ++a) out(s * ad + a, c) = z(s, c * ad + a);
  return out;
}

// G rho G^dag for G = U^{(x)n} (x) I_a.
CMatrix conjugate_with_ancilla(const CMatrix& u, int n, std::size_t a_dim, const CMatrix& rho) {
  CMatrix left = apply_with_ancilla(u, n, a_dim, rho);
  CMatrix both = apply_with_ancilla(u, n, a_dim, left.adjoint());
  return both.adjoint();
}

// Liouville matrix of a linear map given by its action on matrix units.
template <class Fn>
Superoperator assemble_superoperator(std::size_t in, std::size_t out, Fn apply) {
  check_superop_budget(std::max(in, out));
  auto din = static_cast<Eigen::Index>(in);
  CMatrix s(static_cast<Eigen::Index>(out * out), din * din);
  CMatrix unit = CMatrix::Zero(din, din);
  for (Eigen::Index b = 0; b < din; ++b)
    for (Eigen::Index a = 0; a < din; ++a) {
      unit(a, b) = 1.0;
      CMatrix y = apply(unit);
      unit(a, b) = 0.0;
      s.col(a + b * din) = Eigen::Map<const CVector>(y.data(), y.size());
    }
  return Superoperator(in, out, std::move(s));
}

void validate_gate(const GateParams& gate, int d) {
  if (gate.dim() != static_cast<std::size_t>(d))
    throw std::invalid_argument("gate dimension " + std::to_string(gate.dim()) + " does not match d = " +
                                std::to_string(d));
}

}  // namespace

// ---------------------------------------------------------------------------
// ReverseIsometry

ReverseIsometry::ReverseIsometry(CMatrix w, CMatrix rho0) : w_(std::move(w)), rho0_(std::move(rho0)) {
  if (rho0_.rows() != w_.cols() || rho0_.cols() != w_.cols())
    throw std::invalid_argument("ReverseIsometry: reset state must live on the isometry's input space");
}

CMatrix ReverseIsometry::apply(const CMatrix& sigma) const {
  CMatrix back = w_.adjoint() * sigma * w_;
  double fail = sigma.trace().real() - back.trace().real();
  return back + fail * rho0_;
}

Superoperator ReverseIsometry::superoperator() const {
  check_superop_budget(std::max(in_dim(), out_dim()));
  CMatrix rest = CMatrix::Identity(w_.rows(), w_.rows()) - w_ * w_.adjoint();
  return Superoperator::conjugation(w_.adjoint()) + Superoperator::measure_and_prepare(rest, rho0_);
}

KrausChannel ReverseIsometry::kraus() const {
  CMatrix comp = projector_complement(w_ * w_.adjoint());
  CMatrix f = sqrt_factors(rho0_);
  std::size_t count = 1 + static_cast<std::size_t>(comp.cols() * f.cols());
  check_kraus_budget(count, out_dim(), in_dim());
  std::vector<CMatrix> ops;
  ops.reserve(count);
  ops.push_back(w_.adjoint());
  for (Eigen::Index k = 0; k < f.cols(); ++k)
    for (Eigen::Index i = 0; i < comp.cols(); ++i) ops.push_back(f.col(k) * comp.col(i).adjoint());
  return KrausChannel(in_dim(), out_dim(), std::move(ops));
}

// ---------------------------------------------------------------------------
// TruncatedEncoder

TruncatedEncoder::TruncatedEncoder(int K, int d, int J, std::optional<CMatrix> rho0)
    : K_(K), d_(d), J_(J) {
  if (K < 1 || d < 2) throw std::invalid_argument("TruncatedEncoder: need K >= 1 and d >= 2");
  if (J < 0) throw std::invalid_argument("TruncatedEncoder: J must be non-negative");
  basis_ = schur_basis(K, d);
  for (std::size_t b = 0; b < basis_->blocks().size(); ++b) {
    const auto& blk = basis_->blocks()[b];
    if (!in_truncation(blk.diagram, J)) continue;
    for (std::size_t c = 0; c < blk.size(); ++c) kept_idx_.push_back(blk.offset + c);
  }
  if (kept_idx_.empty())
    throw std::invalid_argument("TruncatedEncoder: the truncation set for K = " + std::to_string(K) +
                                ", J = " + std::to_string(J) + " is empty; increase J");
  auto dim = static_cast<Eigen::Index>(basis_->dim());
  kept_.resize(dim, static_cast<Eigen::Index>(kept_idx_.size()));
  for (std::size_t i = 0; i < kept_idx_.size(); ++i)
    kept_.col(static_cast<Eigen::Index>(i)) = basis_->matrix().col(static_cast<Eigen::Index>(kept_idx_[i]));
  proj_ = kept_ * kept_.adjoint();
  if (rho0) {
    if (rho0->rows() != dim || rho0->cols() != dim)
      throw std::invalid_argument("TruncatedEncoder: reset state has the wrong dimension");
    DensityMatrix check(*rho0);
    if (max_abs(*rho0 - proj_ * *rho0 * proj_) > 1e-10)
      throw std::invalid_argument("TruncatedEncoder: reset state must be supported in the truncated subspace");
    rho0_ = check.matrix();
  } else {
    rho0_ = proj_ / static_cast<double>(kept_.cols());
  }
}

CMatrix TruncatedEncoder::apply(const CMatrix& rho) const {
  CMatrix inner = kept_.adjoint() * rho * kept_;
  double fail = rho.trace().real() - inner.trace().real();
  return kept_ * inner * kept_.adjoint() + fail * rho0_;
}

double TruncatedEncoder::fidelity(const CVector& psi) const {
  double p = (kept_.adjoint() * psi).squaredNorm();
  double r = psi.dot(rho0_ * psi).real();
  return p * p + (1.0 - p) * r;
}

double TruncatedEncoder::entanglement_fidelity() const {
  double dim = static_cast<double>(this->dim());
  double tr_p = proj_.trace().real();
  double leak = (rho0_.trace() - (proj_ * rho0_).trace()).real();
  return (tr_p * tr_p + leak) / (dim * dim);
}

KrausChannel TruncatedEncoder::kraus() const {
  std::size_t dim = this->dim();
  std::vector<std::size_t> rejected;
  {
    std::vector<bool> kept(dim, false);
    for (auto i : kept_idx_) kept[i] = true;
    for (std::size_t i = 0; i < dim; ++i)
      if (!kept[i]) rejected.push_back(i);
  }
  CMatrix f = sqrt_factors(rho0_);
  std::size_t count = 1 + rejected.size() * static_cast<std::size_t>(f.cols());
  check_kraus_budget(count, dim, dim);
  std::vector<CMatrix> ops;
  ops.reserve(count);
  ops.push_back(proj_);
  for (Eigen::Index k = 0; k < f.cols(); ++k)
    for (auto i : rejected) ops.push_back(f.col(k) * basis_->matrix().col(static_cast<Eigen::Index>(i)).adjoint());
  return KrausChannel(dim, dim, std::move(ops));
}

Superoperator TruncatedEncoder::superoperator() const {
  check_superop_budget(dim());
  CMatrix rest = CMatrix::Identity(proj_.rows(), proj_.cols()) - proj_;
  return Superoperator::conjugation(proj_) + Superoperator::measure_and_prepare(rest, rho0_);
}

// ---------------------------------------------------------------------------
// EmbeddingIsometry

CMatrix EmbeddingIsometry::full_matrix(const CMatrix& kept_columns) const {
  if (kept_columns.cols() != v_.cols())
    throw std::invalid_argument("EmbeddingIsometry::full_matrix: kept columns do not match the domain");
  return v_ * kept_columns.adjoint();
}

double EmbeddingIsometry::intertwining_residual(const CMatrix& u, const CMatrix& kept_columns) const {
  CMatrix um = kept_columns.adjoint() * apply_tensor_power(u, static_cast<std::size_t>(M_), kept_columns);
  CMatrix lhs = v_ * um;
  CMatrix rhs = apply_with_ancilla(u, N_, dA_, v_);
  return (lhs - rhs).norm();
}

EmbeddingIsometry build_embedding(int N, int M, int J, int d, std::optional<std::size_t> ancilla_dim) {
  if (d < 2 || N < 1 || M < N) throw std::invalid_argument("build_embedding: need d >= 2 and 1 <= N <= M");
  if ((M - N) % d != 0)
    throw std::invalid_argument("build_embedding: M - N = " + std::to_string(M - N) + " is not a multiple of d = " +
                                std::to_string(d) + "; choose M = N + k d");
  if (J < 0 || d * J > N)
    throw std::invalid_argument("build_embedding: J must satisfy 0 <= d J <= N");
  BigInt min_da = min_ancilla_dim(N, M, J, d);
  std::size_t da = min_da.convert_to<std::size_t>();
  if (ancilla_dim) {
    if (*ancilla_dim < da)
      throw std::invalid_argument("build_embedding: ancilla dimension " + std::to_string(*ancilla_dim) +
                                  " is below the minimum " + std::to_string(da));
    da = *ancilla_dim;
  }
  int shift = (M - N) / d;
  auto bm = schur_basis(M, d);
  auto bn = schur_basis(N, d);

  std::size_t rank = 0;
  for (const auto& blk : bm->blocks())
    if (in_truncation(blk.diagram, J)) rank += blk.size();

  EmbeddingIsometry e;
  e.N_ = N;
  e.M_ = M;
  e.J_ = J;
  e.d_ = d;
  e.dA_ = da;
  auto dn = static_cast<Eigen::Index>(bn->dim());
  e.v_ = CMatrix::Zero(dn * static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(rank));
  Eigen::Index col = 0;
  for (const auto& blk : bm->blocks()) {
    if (!in_truncation(blk.diagram, J)) continue;
    YoungDiagram source = blk.diagram.shifted(-shift);
    auto nb = bn->find_block(source);
    if (!nb) throw std::logic_error("build_embedding: shifted diagram " + source.str() + " missing at N");
    std::size_t src_mult = bn->blocks()[*nb].mult;
    for (std::size_t r = 0; r < blk.dim_rep; ++r)
      for (std::size_t m = 0; m < blk.mult; ++m, ++col) {
        std::size_t a = m / src_mult;
        if (a >= da) throw std::logic_error("build_embedding: ancilla index out of range");
        auto target = static_cast<Eigen::Index>(bn->column(*nb, r, m % src_mult));
        for (Eigen::Index x = 0; x < dn; ++x)
          e.v_(x * static_cast<Eigen::Index>(da) + static_cast<Eigen::Index>(a), col) = bn->matrix()(x, target);
      }
  }
  return e;
}

// ---------------------------------------------------------------------------
// ReplicationNetwork

ReplicationNetwork::ReplicationNetwork(int N, int M, int J, int d, std::optional<std::size_t> ancilla_dim)
    : N_(N), M_(M), J_(J), d_(d), encoder_(M, d, J), embedding_(build_embedding(N, M, J, d, ancilla_dim)) {
  v_full_ = embedding_.full_matrix(encoder_.kept_columns());
}

CMatrix ReplicationNetwork::apply(const GateParams& gate, const CMatrix& rho) const {
  validate_gate(gate, d_);
  if (static_cast<std::size_t>(rho.rows()) != dim() || rho.cols() != rho.rows())
    throw std::invalid_argument("ReplicationNetwork::apply: input has the wrong dimension");
  CMatrix sigma = encoder_.apply(rho);
  CMatrix tau = v_full_ * sigma * v_full_.adjoint();
  tau = conjugate_with_ancilla(gate.matrix(), N_, embedding_.ancilla_dim(), tau);
  CMatrix back = v_full_.adjoint() * tau * v_full_;
  double fail = tau.trace().real() - back.trace().real();
  return back + fail * encoder_.reset_state();
}

Superoperator ReplicationNetwork::superoperator(const GateParams& gate) const {
  return assemble_superoperator(dim(), dim(), [&](const CMatrix& x) { return apply(gate, x); });
}

KrausChannel ReplicationNetwork::channel(const GateParams& gate) const { return superoperator(gate).to_kraus(); }

KrausChannel replication_network(int N, int M, int J, int d, const GateParams& gate) {
  return ReplicationNetwork(N, M, J, d).channel(gate);
}

// ---------------------------------------------------------------------------
// Compression

void CompressionProtocol::assemble(const SchurBasis& basis) {
  std::size_t dim_a = 0;
  for (const auto& blk : basis.blocks()) {
    if (J_ && !in_truncation(blk.diagram, *J_)) continue;
    dim_a += blk.dim_rep;
    dB_ = std::max(dB_, blk.mult);
  }
  auto dn = static_cast<Eigen::Index>(basis.dim());
  auto db = static_cast<Eigen::Index>(dB_);
  auto da = static_cast<Eigen::Index>(dim_a);
  v_ = CMatrix::Zero(dn, da);
  w_ = CMatrix::Zero(da * db, dn);
  Eigen::Index a = 0;
  for (std::size_t b = 0; b < basis.blocks().size(); ++b) {
    const auto& blk = basis.blocks()[b];
    if (J_ && !in_truncation(blk.diagram, *J_)) continue;
    for (std::size_t r = 0; r < blk.dim_rep; ++r, ++a) {
      v_.col(a) = basis.matrix().col(static_cast<Eigen::Index>(basis.column(b, r, 0)));
      for (std::size_t m = 0; m < blk.mult; ++m)
        w_.row(a * db + static_cast<Eigen::Index>(m)) =
            basis.matrix().col(static_cast<Eigen::Index>(basis.column(b, r, m))).adjoint();
    }
  }
  alpha0_ = CMatrix::Zero(da, da);
  alpha0_(0, 0) = 1.0;
  beta0_ = CMatrix::Zero(dn, dn);
  beta0_(0, 0) = 1.0;
}

CMatrix CompressionProtocol::compressed_gate(const GateParams& gate) const {
  validate_gate(gate, d_);
  return v_.adjoint() * apply_tensor_power(gate.matrix(), static_cast<std::size_t>(N_), v_);
}

KrausChannel CompressionProtocol::alice_a1() const { return KrausChannel::isometry(v_); }

KrausChannel CompressionProtocol::alice_a2() const { return ReverseIsometry(v_, alpha0_).kraus(); }

KrausChannel CompressionProtocol::bob_b1() const {
  if (!encoder_) return KrausChannel::isometry(w_);
  KrausChannel enc = encoder_->kraus();
  std::vector<CMatrix> ops;
  ops.reserve(enc.ops().size());
  for (const auto& k : enc.ops()) ops.push_back(w_ * k);
  return KrausChannel(enc.in_dim(), static_cast<std::size_t>(w_.rows()), std::move(ops));
}

KrausChannel CompressionProtocol::bob_b2() const { return ReverseIsometry(w_, beta0_).kraus(); }

CMatrix CompressionProtocol::apply(const GateParams& gate, const CMatrix& rho) const {
  CMatrix sigma = encoder_ ? encoder_->apply(rho) : rho;
  CMatrix tau = w_ * sigma * w_.adjoint();
  auto db = static_cast<Eigen::Index>(dB_);
  CMatrix g = kron(compressed_gate(gate), CMatrix::Identity(db, db));
  return ReverseIsometry(w_, beta0_).apply(g * tau * g.adjoint());
}

Superoperator CompressionProtocol::superoperator(const GateParams& gate) const {
  check_superop_budget(static_cast<std::size_t>(std::max(w_.rows(), w_.cols())));
  auto db = static_cast<Eigen::Index>(dB_);
  CMatrix g = kron(compressed_gate(gate), CMatrix::Identity(db, db));
  Superoperator b1 = encoder_ ? encoder_->superoperator().then(Superoperator::conjugation(w_))
                              : Superoperator::from_kraus(bob_b1());
  return b1.then(Superoperator::conjugation(g)).then(Superoperator::from_kraus(bob_b2()));
}

CompressionProtocol compression_exact(int N, int d) {
  if (N < 1 || d < 2) throw std::invalid_argument("compression_exact: need N >= 1 and d >= 2");
  CompressionProtocol p;
  p.N_ = N;
  p.d_ = d;
  p.assemble(*schur_basis(N, d));
  return p;
}

CompressionProtocol compression_approx(int N, int d, int J) {
  if (N < 1 || d < 2) throw std::invalid_argument("compression_approx: need N >= 1 and d >= 2");
  CompressionProtocol p;
  p.N_ = N;
  p.d_ = d;
  p.J_ = J;
  p.encoder_ = std::make_shared<TruncatedEncoder>(N, d, J);
  p.assemble(p.encoder_->basis());
  return p;
}

}  // namespace superrep
