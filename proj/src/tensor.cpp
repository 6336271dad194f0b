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

#include "superrep/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace superrep {

namespace {

double hermitian_error(const CMatrix& m) { return max_abs(m - m.adjoint()); }

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

}  // namespace

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base)
      throw ResourceError("dimension overflow computing " + std::to_string(base) + "^" +
                          std::to_string(exp));
    r *= base;
  }
  return r;
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// PureState / DensityMatrix

PureState::PureState(CVector amplitudes, const Tolerances& tol) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > tol.norm)
    throw std::invalid_argument("PureState: squared norm " + std::to_string(n2) + " is not 1");
}

PureState PureState::normalized(CVector amplitudes) {
  double n = amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("PureState: zero vector cannot be normalized");
  amplitudes /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix PureState::projector() const {
  return DensityMatrix::unchecked(amps_ * amps_.adjoint());
}

DensityMatrix::DensityMatrix(CMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  if (m_.rows() == 0) throw std::invalid_argument("DensityMatrix: empty matrix");
  if (hermitian_error(m_) > tol.hermitian)
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(m_.trace() - cplx(1.0)) > tol.trace)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
}

DensityMatrix DensityMatrix::unchecked(CMatrix m) {
  require_square(m, "DensityMatrix");
  CMatrix h = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(h), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("DensityMatrix: zero dimension");
  auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(dim), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

bool DensityMatrix::is_valid(double trace_tol, double eig_tol) const {
  return hermitian_error(m_) <= 1e-10 && std::abs(trace() - 1.0) <= trace_tol &&
         min_eigenvalue() >= eig_tol;
}

// ---------------------------------------------------------------------------
// GateParams

GateParams GateParams::from_matrix(CMatrix u, const Tolerances& tol) {
  require_square(u, "GateParams");
  auto n = u.rows();
  if (n == 0) throw std::invalid_argument("GateParams: empty matrix");
  if (max_abs(u.adjoint() * u - CMatrix::Identity(n, n)) > tol.unitary)
    throw std::invalid_argument("GateParams: matrix is not unitary");
  if (std::abs(std::abs(u.determinant()) - 1.0) > tol.unitary)
    throw std::invalid_argument("GateParams: determinant does not have unit modulus");
  return GateParams(std::move(u));
}

GateParams GateParams::qubit_rotation(double theta, const std::array<double, 3>& axis,
                                      const Tolerances& tol) {
  double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > tol.norm) throw std::invalid_argument("GateParams: axis is not a unit vector");
  const cplx i(0.0, 1.0);
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CMatrix u(2, 2);
  u(0, 0) = c - i * s * axis[2];
  u(0, 1) = -i * s * axis[0] - s * axis[1];
  u(1, 0) = -i * s * axis[0] + s * axis[1];
  u(1, 1) = c + i * s * axis[2];
  GateParams g(std::move(u));
  g.theta_ = theta;
  g.axis_ = axis;
  return g;
}

GateParams GateParams::phase(std::span<const double> thetas) {
  auto d = static_cast<Eigen::Index>(thetas.size() + 1);
  CMatrix u = CMatrix::Zero(d, d);
  u(0, 0) = 1.0;
  for (Eigen::Index k = 1; k < d; ++k) u(k, k) = std::exp(cplx(0.0, -thetas[k - 1]));
  return GateParams(std::move(u));
}

GateParams GateParams::identity(std::size_t d) {
  auto n = static_cast<Eigen::Index>(d);
  return GateParams(CMatrix::Identity(n, n));
}

// ---------------------------------------------------------------------------
// KrausChannel / Isometry

KrausChannel::KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<CMatrix> ops,
                           double tp_tol)
    : in_(in_dim), out_(out_dim), ops_(std::move(ops)) {
  if (in_ == 0 || out_ == 0) throw std::invalid_argument("KrausChannel: zero dimension");
  if (ops_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  for (const auto& k : ops_) {
    if (static_cast<std::size_t>(k.rows()) != out_ || static_cast<std::size_t>(k.cols()) != in_)
      throw std::invalid_argument("KrausChannel: Kraus operator has wrong shape");
  }
  if (trace_preservation_error() > tp_tol)
    throw std::invalid_argument("KrausChannel: operators are not trace preserving");
}

double KrausChannel::trace_preservation_error() const {
  auto n = static_cast<Eigen::Index>(in_);
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& k : ops_) sum.noalias() += k.adjoint() * k;
  return max_abs(sum - CMatrix::Identity(n, n));
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  auto n = static_cast<Eigen::Index>(dim);
  return KrausChannel(dim, dim, {CMatrix::Identity(n, n)});
}

KrausChannel KrausChannel::unitary(const CMatrix& u) {
  require_square(u, "KrausChannel::unitary");
  return KrausChannel(u.cols(), u.rows(), {u});
}

KrausChannel KrausChannel::isometry(const CMatrix& v) { return KrausChannel(v.cols(), v.rows(), {v}); }

Isometry::Isometry(CMatrix v, double tol) : v_(std::move(v)) {
  if (v_.cols() > v_.rows()) throw std::invalid_argument("Isometry: in_dim exceeds out_dim");
  auto n = v_.cols();
  if (max_abs(v_.adjoint() * v_ - CMatrix::Identity(n, n)) > tol)
    throw std::invalid_argument("Isometry: V^dag V is not the identity");
}

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(std::size_t in_dim, std::size_t out_dim, CMatrix s)
    : in_(in_dim), out_(out_dim), s_(std::move(s)) {
  if (static_cast<std::size_t>(s_.rows()) != out_ * out_ ||
      static_cast<std::size_t>(s_.cols()) != in_ * in_)
    throw std::invalid_argument("Superoperator: matrix shape does not match dimensions");
}

Superoperator Superoperator::conjugation(const CMatrix& k) {
  return Superoperator(k.cols(), k.rows(), kron(CMatrix(k.conjugate()), k));
}

Superoperator Superoperator::from_kraus(const KrausChannel& c) {
  auto in2 = static_cast<Eigen::Index>(c.in_dim() * c.in_dim());
  auto out2 = static_cast<Eigen::Index>(c.out_dim() * c.out_dim());
  CMatrix s = CMatrix::Zero(out2, in2);
  for (const auto& k : c.ops()) s.noalias() += kron(CMatrix(k.conjugate()), k);
  return Superoperator(c.in_dim(), c.out_dim(), std::move(s));
}

Superoperator Superoperator::measure_and_prepare(const CMatrix& effect, const CMatrix& sigma) {
  require_square(effect, "measure_and_prepare");
  require_square(sigma, "measure_and_prepare");
  CMatrix et = effect.transpose();
  Eigen::Map<const CVector> ve(et.data(), et.size());
  Eigen::Map<const CVector> vs(sigma.data(), sigma.size());
  return Superoperator(effect.rows(), sigma.rows(), vs * ve.transpose());
}

CMatrix Superoperator::apply(const CMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != in_ || static_cast<std::size_t>(rho.cols()) != in_)
    throw std::invalid_argument("Superoperator::apply: dimension mismatch");
  Eigen::Map<const CVector> v(rho.data(), rho.size());
  CVector out = s_ * v;
  return Eigen::Map<CMatrix>(out.data(), static_cast<Eigen::Index>(out_),
                             static_cast<Eigen::Index>(out_));
}

Superoperator Superoperator::then(const Superoperator& next) const {
  if (next.in_ != out_) throw std::invalid_argument("Superoperator::then: dimension mismatch");
  return Superoperator(in_, next.out_, next.s_ * s_);
}

Superoperator Superoperator::operator+(const Superoperator& other) const {
  if (other.in_ != in_ || other.out_ != out_)
    throw std::invalid_argument("Superoperator::operator+: dimension mismatch");
  return Superoperator(in_, out_, s_ + other.s_);
}

CMatrix Superoperator::choi() const {
  auto din = static_cast<Eigen::Index>(in_);
  auto dout = static_cast<Eigen::Index>(out_);
  CMatrix c(dout * din, dout * din);
  for (Eigen::Index j = 0; j < din; ++j)
    for (Eigen::Index i = 0; i < din; ++i) {
      Eigen::Index col = i + j * din;
      for (Eigen::Index b = 0; b < dout; ++b)
        for (Eigen::Index a = 0; a < dout; ++a) c(a * din + i, b * din + j) = s_(a + b * dout, col);
    }
  return c / static_cast<double>(in_);
}

KrausChannel Superoperator::to_kraus(double cutoff) const {
  CMatrix j = choi() * static_cast<double>(in_);
  j = 0.5 * (j + j.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(j);
  auto din = static_cast<Eigen::Index>(in_);
  auto dout = static_cast<Eigen::Index>(out_);
  std::vector<CMatrix> ops;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    double mu = es.eigenvalues()(k);
    if (mu <= cutoff) break;
    CMatrix op(dout, din);
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index i = 0; i < din; ++i) op(a, i) = std::sqrt(mu) * es.eigenvectors()(a * din + i, k);
    ops.push_back(std::move(op));
  }
  return KrausChannel(in_, out_, std::move(ops));
}

// ---------------------------------------------------------------------------
// Linear algebra helpers

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix kron_power(const CMatrix& u, std::size_t k) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (std::size_t i = 0; i < k; ++i) out = kron(out, u);
  return out;
}

CMatrix apply_tensor_power(const CMatrix& u, std::size_t k, const CMatrix& x) {
  require_square(u, "apply_tensor_power");
  auto d = u.rows();
  auto total = static_cast<Eigen::Index>(checked_pow(static_cast<std::size_t>(d), k));
  if (x.rows() != total) throw std::invalid_argument("apply_tensor_power: dimension mismatch");
  CMatrix cur = x;
  CMatrix next(cur.rows(), cur.cols());
  Eigen::Index right = total;
  for (std::size_t f = 0; f < k; ++f) {
    right /= d;
    Eigen::Index left = total / (right * d);
    next.setZero();
    for (Eigen::Index l = 0; l < left; ++l)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
          cplx coeff = u(a, b);
          if (coeff == cplx(0.0)) continue;
          next.middleRows((l * d + a) * right, right) += coeff * cur.middleRows((l * d + b) * right, right);
        }
    std::swap(cur, next);
  }
  return cur;
}

CMatrix apply_kraus(const KrausChannel& c, const CMatrix& rho) {
  if (static_cast<std::size_t>(rho.rows()) != c.in_dim() || rho.rows() != rho.cols())
    throw std::invalid_argument("apply_channel: dimension mismatch");
  auto n = static_cast<Eigen::Index>(c.out_dim());
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& k : c.ops()) out.noalias() += k * rho * k.adjoint();
  return out;
}

DensityMatrix apply_channel(const KrausChannel& c, const DensityMatrix& rho) {
  return DensityMatrix::unchecked(apply_kraus(c, rho.matrix()));
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0) throw std::invalid_argument("partial_trace: zero factor dimension");
    total *= d;
  }
  if (total != static_cast<std::size_t>(rho.rows()) || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: factor dimensions do not match the state");
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size() || kept[k]) throw std::invalid_argument("partial_trace: invalid keep index");
    kept[k] = true;
  }
  std::size_t dk = 1, dt = 1;
  for (std::size_t f = 0; f < dims.size(); ++f) (kept[f] ? dk : dt) *= dims[f];

  // full index = combination of (kept index, traced index) in mixed radix
  std::vector<std::size_t> full(dk * dt);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, ki = 0, ti = 0, kmul = 1, tmul = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
      std::size_t digit = rem % dims[f];
      rem /= dims[f];
      if (kept[f]) {
        ki += digit * kmul;
        kmul *= dims[f];
      } else {
        ti += digit * tmul;
        tmul *= dims[f];
      }
    }
    full[ki * dt + ti] = idx;
  }
  auto n = static_cast<Eigen::Index>(dk);
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t b = 0; b < dk; ++b)
    for (std::size_t a = 0; a < dk; ++a) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        s += rho(static_cast<Eigen::Index>(full[a * dt + t]), static_cast<Eigen::Index>(full[b * dt + t]));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  return DensityMatrix::unchecked(partial_trace(rho.matrix(), dims, keep));
}

// ---------------------------------------------------------------------------
// Haar sampling

PureState haar_state(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw std::invalid_argument("haar_state: zero dimension");
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double re = rng.normal();
    double im = rng.normal();
    v(i) = cplx(re, im);
  }
  return PureState::normalized(std::move(v));
}

CMatrix haar_unitary(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw std::invalid_argument("haar_unitary: zero dimension");
  auto n = static_cast<Eigen::Index>(dim);
  CMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      double re = rng.normal();
      double im = rng.normal();
      z(i, j) = cplx(re, im) / std::numbers::sqrt2;
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    cplx rjj = r(j, j);
    double a = std::abs(rjj);
    q.col(j) *= (a > 0 ? rjj / a : cplx(1.0));
  }
  return q;
}

CMatrix haar_special_unitary(std::size_t dim, RngStream& rng) {
  CMatrix u = haar_unitary(dim, rng);
  cplx det = u.determinant();
  return u * std::exp(cplx(0.0, -std::arg(det) / static_cast<double>(dim)));
}

GateParams random_su2(RngStream& rng) {
  double q[4];
  double n2 = 0;
  do {
    n2 = 0;
    for (double& x : q) {
      x = rng.normal();
      n2 += x * x;
    }
  } while (n2 == 0.0);
  double n = std::sqrt(n2);
  for (double& x : q) x /= n;
  double vnorm = std::sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  double theta = 2.0 * std::atan2(vnorm, q[0]);
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  if (vnorm > 0) axis = {q[1] / vnorm, q[2] / vnorm, q[3] / vnorm};
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return GateParams::qubit_rotation(theta, axis);
}

GateParams random_gate(std::size_t d, RngStream& rng) {
  if (d == 2) return random_su2(rng);
  return GateParams::from_matrix(haar_special_unitary(d, rng), Tolerances{.unitary = 1e-10});
}

// ---------------------------------------------------------------------------
// Figures of merit

double fidelity(const CVector& psi, const CMatrix& rho) {
  if (psi.size() != rho.rows()) throw std::invalid_argument("fidelity: dimension mismatch");
  double f = psi.dot(rho * psi).real();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const PureState& psi, const DensityMatrix& rho) {
  return fidelity(psi.amplitudes(), rho.matrix());
}

CVector maximally_entangled(std::size_t dim) {
  auto n = static_cast<Eigen::Index>(dim);
  CVector v = CVector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(static_cast<double>(dim));
  return v;
}

DensityMatrix choi_state(const KrausChannel& c) {
  auto din = static_cast<Eigen::Index>(c.in_dim());
  auto dout = static_cast<Eigen::Index>(c.out_dim());
  CMatrix j = CMatrix::Zero(dout * din, dout * din);
  for (const auto& k : c.ops()) {
    // (K (x) I)|Phi>: entry (a, i) = K(a, i) / sqrt(din)
    CVector v(dout * din);
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index i = 0; i < din; ++i) v(a * din + i) = k(a, i);
    j.noalias() += v * v.adjoint();
  }
  return DensityMatrix::unchecked(j / static_cast<double>(c.in_dim()));
}

double trace_norm(const CMatrix& hermitian) {
  CMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(rho - sigma);
}

double choi_distance(const KrausChannel& c1, const KrausChannel& c2) {
  if (c1.in_dim() != c2.in_dim() || c1.out_dim() != c2.out_dim())
    throw std::invalid_argument("choi_distance: channel dimensions differ");
  return trace_distance(choi_state(c1).matrix(), choi_state(c2).matrix());
}

double choi_distance(const Superoperator& s1, const Superoperator& s2) {
  if (s1.in_dim() != s2.in_dim() || s1.out_dim() != s2.out_dim())
    throw std::invalid_argument("choi_distance: channel dimensions differ");
  return trace_distance(s1.choi(), s2.choi());
}

double entanglement_fidelity(const KrausChannel& c) {
  if (c.in_dim() != c.out_dim()) throw std::invalid_argument("entanglement_fidelity: channel is not square");
  double s = 0;
  for (const auto& k : c.ops()) s += std::norm(k.trace());
  double d = static_cast<double>(c.in_dim());
  return s / (d * d);
}

double entanglement_fidelity(const Superoperator& s) {
  if (s.in_dim() != s.out_dim()) throw std::invalid_argument("entanglement_fidelity: channel is not square");
  double d = static_cast<double>(s.in_dim());
  return s.matrix().trace().real() / (d * d);
}

CMatrix orthogonal_complement(const CMatrix& v) {
  auto out = v.rows(), in = v.cols();
  if (in >= out) return CMatrix(out, 0);
  if (in == 0) return CMatrix::Identity(out, out);
  Eigen::HouseholderQR<CMatrix> qr(v);
  CMatrix q = qr.householderQ();
  return q.rightCols(out - in);
}

}  // namespace superrep
