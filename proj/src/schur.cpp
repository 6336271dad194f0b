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

#include "superrep/schur.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace superrep {

// ---------------------------------------------------------------------------
// SchurBasis

SchurBasis::SchurBasis(int K, int d, CMatrix basis, std::vector<SchurBlock> blocks)
    : K_(K), d_(d), basis_(std::move(basis)), blocks_(std::move(blocks)) {
  std::size_t total = 0;
  for (const auto& b : blocks_) {
    if (b.offset != total) throw std::invalid_argument("SchurBasis: blocks are not contiguous");
    total += b.size();
  }
  if (basis_.rows() != basis_.cols() || static_cast<std::size_t>(basis_.rows()) != total)
    throw std::invalid_argument("SchurBasis: block sizes do not cover the space");
}

std::size_t SchurBasis::column(std::size_t block, std::size_t r, std::size_t m) const {
  const auto& b = blocks_.at(block);
  if (r >= b.dim_rep || m >= b.mult) throw std::out_of_range("SchurBasis::column: index out of range");
  return b.offset + r * b.mult + m;
}

std::optional<std::size_t> SchurBasis::find_block(const YoungDiagram& lambda) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].diagram == lambda) return i;
  return std::nullopt;
}

CMatrix SchurBasis::block_columns(std::size_t block) const {
  const auto& b = blocks_.at(block);
  return basis_.middleCols(static_cast<Eigen::Index>(b.offset), static_cast<Eigen::Index>(b.size()));
}

CMatrix SchurBasis::copy_columns(std::size_t block, std::size_t m) const {
  const auto& b = blocks_.at(block);
  CMatrix out(basis_.rows(), static_cast<Eigen::Index>(b.dim_rep));
  for (std::size_t r = 0; r < b.dim_rep; ++r)
    out.col(static_cast<Eigen::Index>(r)) = basis_.col(static_cast<Eigen::Index>(column(block, r, m)));
  return out;
}

CMatrix SchurBasis::irrep_matrix(std::size_t block, const CMatrix& u) const {
  CMatrix s = copy_columns(block, 0);
  return s.adjoint() * apply_tensor_power(u, static_cast<std::size_t>(K_), s);
}

BlockLeakage block_leakage(const SchurBasis& basis, const CMatrix& u) {
  const CMatrix& b = basis.matrix();
  CMatrix c = b.adjoint() * apply_tensor_power(u, static_cast<std::size_t>(basis.K()), b);
  auto n = static_cast<std::size_t>(c.rows());
  // sector label of each column: (block, m)
  std::vector<std::size_t> sector(n);
  std::size_t sid = 0;
  for (const auto& blk : basis.blocks()) {
    for (std::size_t r = 0; r < blk.dim_rep; ++r)
      for (std::size_t m = 0; m < blk.mult; ++m) sector[blk.offset + r * blk.mult + m] = sid + m;
    sid += blk.mult;
  }
  BlockLeakage out;
  double off = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sector[i] != sector[j]) off += std::norm(c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  out.off_block = std::sqrt(off);
  for (std::size_t k = 0; k < basis.blocks().size(); ++k) {
    const auto& blk = basis.blocks()[k];
    auto sub = [&](std::size_t m) {
      CMatrix s(static_cast<Eigen::Index>(blk.dim_rep), static_cast<Eigen::Index>(blk.dim_rep));
      for (std::size_t r = 0; r < blk.dim_rep; ++r)
        for (std::size_t q = 0; q < blk.dim_rep; ++q)
          s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) =
              c(static_cast<Eigen::Index>(basis.column(k, r, m)), static_cast<Eigen::Index>(basis.column(k, q, m)));
      return s;
    };
    CMatrix first = sub(0);
    for (std::size_t m = 1; m < blk.mult; ++m) out.copy_mismatch = std::max(out.copy_mismatch, (sub(m) - first).norm());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Qubit Schur basis by Clebsch-Gordan coupling

namespace {

struct CoupledState {
  std::vector<int> path;  // 2j after each added qubit
  int twice_j;
  std::vector<RVector> by_m;  // index r: m_z = j - r
};

RVector append_qubit(const RVector& v, int bit) {
  RVector out = RVector::Zero(v.size() * 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) out(2 * i + bit) = v(i);
  return out;
}

}  // namespace

SchurBasis qubit_schur_basis(int K) {
  if (K < 1 || K > 12) throw std::invalid_argument("qubit_schur_basis: K must be in [1, 12]");
  std::vector<CoupledState> states;
  {
    RVector up = RVector::Zero(2), down = RVector::Zero(2);
    up(0) = 1.0;
    down(1) = 1.0;
    states.push_back(CoupledState{{1}, 1, {up, down}});
  }
  for (int k = 2; k <= K; ++k) {
    std::vector<CoupledState> next;
    for (const auto& s : states) {
      int j2 = s.twice_j;
      auto vec_at = [&](int m2) -> const RVector* {
        if (m2 > j2 || m2 < -j2) return nullptr;
        return &s.by_m[static_cast<std::size_t>((j2 - m2) / 2)];
      };
      for (int nj2 : {j2 + 1, j2 - 1}) {
        if (nj2 < 0) continue;
        CoupledState ns{s.path, nj2, {}};
        ns.path.push_back(nj2);
        for (int m2 = nj2; m2 >= -nj2; m2 -= 2) {
          double a = std::sqrt((j2 + m2 + 1) / (2.0 * (j2 + 1)));
          double b = std::sqrt((j2 - m2 + 1) / (2.0 * (j2 + 1)));
          double c_up = nj2 > j2 ? a : -b;
          double c_down = nj2 > j2 ? b : a;
          RVector v = RVector::Zero(s.by_m[0].size() * 2);
          if (const RVector* p = vec_at(m2 - 1)) v += c_up * append_qubit(*p, 0);
          if (const RVector* p = vec_at(m2 + 1)) v += c_down * append_qubit(*p, 1);
          ns.by_m.push_back(std::move(v));
        }
        next.push_back(std::move(ns));
      }
    }
    states = std::move(next);
  }
  std::sort(states.begin(), states.end(),
            [](const CoupledState& a, const CoupledState& b) { return a.path < b.path; });

  auto diagrams = enumerate_diagrams(K, 2);
  std::vector<SchurBlock> blocks;
  std::size_t offset = 0;
  for (const auto& lam : diagrams) {
    SchurBlock b{lam, static_cast<std::size_t>(lam.twice_spin() + 1), 0, offset};
    for (const auto& s : states)
      if (s.twice_j == lam.twice_spin()) ++b.mult;
    offset += b.size();
    blocks.push_back(std::move(b));
  }
  auto dim = static_cast<Eigen::Index>(offset);
  CMatrix basis = CMatrix::Zero(dim, dim);
  for (const auto& b : blocks) {
    std::size_t m = 0;
    for (const auto& s : states) {
      if (s.twice_j != b.diagram.twice_spin()) continue;
      for (std::size_t r = 0; r < b.dim_rep; ++r)
        basis.col(static_cast<Eigen::Index>(b.offset + r * b.mult + m)) = s.by_m[r].cast<cplx>();
      ++m;
    }
  }
  return SchurBasis(K, 2, std::move(basis), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Symmetric group characters

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  for (const auto& y : enumerate_diagrams(n, std::max(n, 1))) {
    std::vector<int> p;
    for (int r : y.rows())
      if (r > 0) p.push_back(r);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<int> cycle_type(std::span<const int> perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<int> out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

namespace {

// Murnaghan-Nakayama on beta-sets: removing a rim hook of length r moves a
// bead from position b to b - r; the sign counts beads jumped over.
long long mn_beta(std::vector<int>& beta, std::span<const int> cycles, std::size_t idx) {
  if (idx == cycles.size()) return 1;
  int r = cycles[idx];
  long long total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    int b = beta[i];
    int target = b - r;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int x : beta)
      if (x > target && x < b) ++between;
    beta[i] = target;
    long long sub = mn_beta(beta, cycles, idx + 1);
    beta[i] = b;
    total += (between % 2 ? -sub : sub);
  }
  return total;
}

}  // namespace

long long mn_character(std::vector<int> shape, std::span<const int> cycles) {
  int n = static_cast<int>(shape.size());
  std::vector<int> beta(shape.size());
  for (int i = 0; i < n; ++i) beta[static_cast<std::size_t>(i)] = shape[static_cast<std::size_t>(i)] + (n - 1 - i);
  return mn_beta(beta, cycles, 0);
}

long long CharacterTable::character(std::span<const int> irrep, std::span<const int> cls) const {
  auto eq = [](const std::vector<int>& a, std::span<const int> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  };
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    if (!eq(irreps[i], irrep)) continue;
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (eq(classes[c], cls)) return chi[i][c];
  }
  throw std::invalid_argument("CharacterTable::character: unknown irrep or class");
}

CharacterTable sn_character_table(int K) {
  if (K < 1) throw std::invalid_argument("sn_character_table: K must be at least 1");
  CharacterTable t;
  t.K = K;
  t.irreps = partitions(K);
  t.classes = partitions(K);
  for (const auto& cls : t.classes) {
    BigInt denom = 1;
    std::map<int, int> counts;
    for (int c : cls) ++counts[c];
    for (auto [len, cnt] : counts) denom *= boost::multiprecision::pow(BigInt(len), static_cast<unsigned>(cnt)) * factorial(cnt);
    t.class_sizes.push_back(factorial(K) / denom);
  }
  for (const auto& irr : t.irreps) {
    std::vector<long long> row;
    for (const auto& cls : t.classes) row.push_back(mn_character(irr, cls));
    t.chi.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Permutation operators and isotypic projectors

std::vector<std::size_t> permutation_action(std::span<const int> perm, int d) {
  std::size_t K = perm.size();
  std::size_t dim = checked_pow(static_cast<std::size_t>(d), K);
  std::vector<std::size_t> out(dim);
  std::vector<int> digits(K), moved(K);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t rem = x;
    for (std::size_t p = K; p-- > 0;) {
      digits[p] = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
    for (std::size_t p = 0; p < K; ++p) moved[static_cast<std::size_t>(perm[p])] = digits[p];
    std::size_t y = 0;
    for (std::size_t p = 0; p < K; ++p) y = y * static_cast<std::size_t>(d) + static_cast<std::size_t>(moved[p]);
    out[x] = y;
  }
  return out;
}

CMatrix permutation_operator(std::span<const int> perm, int d) {
  auto act = permutation_action(perm, d);
  auto n = static_cast<Eigen::Index>(act.size());
  CMatrix p = CMatrix::Zero(n, n);
  for (std::size_t x = 0; x < act.size(); ++x) p(static_cast<Eigen::Index>(act[x]), static_cast<Eigen::Index>(x)) = 1.0;
  return p;
}

namespace {

void check_budget(int d, int K, double budget) {
  double cost = std::pow(static_cast<double>(d), K) * std::tgamma(K + 1.0);
  if (cost > budget)
    throw ResourceError("permutation sum of size d^K * K! = " + std::to_string(cost) +
                        " exceeds the budget " + std::to_string(budget));
}

std::vector<std::vector<int>> all_permutations(int K) {
  std::vector<int> p(static_cast<std::size_t>(K));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> strip_zeros(std::span<const int> lambda) {
  std::vector<int> out;
  for (int r : lambda) {
    if (r < 0) throw std::invalid_argument("partition with a negative part");
    if (r > 0) out.push_back(r);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] > out[i - 1]) throw std::invalid_argument("partition parts must be non-increasing");
  return out;
}

}  // namespace

IsotypicProjector isotypic_projector(std::span<const int> lambda, int d, int K, double budget) {
  if (d < 1 || K < 1) throw std::invalid_argument("isotypic_projector: need d >= 1 and K >= 1");
  std::vector<int> shape = strip_zeros(lambda);
  if (std::accumulate(shape.begin(), shape.end(), 0) != K)
    throw std::invalid_argument("isotypic_projector: diagram does not have K boxes");
  check_budget(d, K, budget);
  auto dim = static_cast<Eigen::Index>(checked_pow(static_cast<std::size_t>(d), static_cast<std::size_t>(K)));
  IsotypicProjector out{shape, CMatrix::Zero(dim, dim)};
  if (static_cast<int>(shape.size()) > d) return out;

  std::vector<int> identity_class(static_cast<std::size_t>(K), 1);
  double f = static_cast<double>(mn_character(shape, identity_class));
  double kfact = std::tgamma(K + 1.0);
  std::map<std::vector<int>, long long> chi_cache;
  for (const auto& perm : all_permutations(K)) {
    auto ct = cycle_type(perm);
    auto it = chi_cache.find(ct);
    if (it == chi_cache.end()) it = chi_cache.emplace(ct, mn_character(shape, ct)).first;
    if (it->second == 0) continue;
    double coeff = f * static_cast<double>(it->second) / kfact;
    auto act = permutation_action(perm, d);
    for (std::size_t x = 0; x < act.size(); ++x)
      out.matrix(static_cast<Eigen::Index>(act[x]), static_cast<Eigen::Index>(x)) += coeff;
  }
  return out;
}

std::vector<IsotypicProjector> isotypic_projectors(int K, int d, double budget) {
  std::vector<IsotypicProjector> out;
  for (const auto& lam : enumerate_diagrams(K, d)) out.push_back(isotypic_projector(lam.rows(), d, K, budget));
  return out;
}

// ---------------------------------------------------------------------------
// Double-commutant factorization

namespace {

struct UnitaryAlgebra {
  std::vector<CMatrix> unitaries;
  std::vector<cplx> herm_coeffs;
  std::vector<cplx> phase_coeffs;
};

UnitaryAlgebra sample_unitary_algebra(int d, RngStream rng, int samples) {
  UnitaryAlgebra a;
  for (int t = 0; t < samples; ++t) a.unitaries.push_back(haar_special_unitary(static_cast<std::size_t>(d), rng));
  // Complex weights: with real ones, half-integer qubit irreps would be
  // Kramers-degenerate.
  for (int t = 0; t < samples; ++t) {
    double re = rng.normal();
    double im = rng.normal();
    a.herm_coeffs.emplace_back(re, im);
  }
  for (int t = 0; t < samples; ++t) {
    double re = rng.normal();
    double im = rng.normal();
    a.phase_coeffs.emplace_back(re, im);
  }
  return a;
}

// G x with G = sum_t (a_t U_t^{(x)K} + h.c.)
CMatrix apply_hermitian_element(const UnitaryAlgebra& a, int K, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  auto k = static_cast<std::size_t>(K);
  for (std::size_t t = 0; t < a.unitaries.size(); ++t) {
    out += a.herm_coeffs[t] * apply_tensor_power(a.unitaries[t], k, x);
    out += std::conj(a.herm_coeffs[t]) * apply_tensor_power(a.unitaries[t].adjoint(), k, x);
  }
  return out;
}

CMatrix apply_phase_element(const UnitaryAlgebra& a, int K, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (std::size_t t = 0; t < a.unitaries.size(); ++t)
    out += a.phase_coeffs[t] * apply_tensor_power(a.unitaries[t], static_cast<std::size_t>(K), x);
  return out;
}

// Groups ascending eigenvalues into runs of equal size; returns false when the
// runs are not separated by gap_tol or not internally degenerate.
bool check_clusters(const RVector& evals, std::size_t run, double gap_tol) {
  double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  auto n = static_cast<std::size_t>(evals.size());
  for (std::size_t g = 0; g * run < n; ++g) {
    double lo = evals(static_cast<Eigen::Index>(g * run));
    double hi = evals(static_cast<Eigen::Index>(g * run + run - 1));
    if (hi - lo > 1e-6 * scale) return false;
    if (g > 0 && lo - evals(static_cast<Eigen::Index>(g * run - 1)) < gap_tol * scale) return false;
  }
  return true;
}

}  // namespace

SchurBasis factor_isotypic(const std::vector<IsotypicProjector>& projectors, int d, int K, RngStream rng,
                           const FactorOptions& opts) {
  if (d < 2 || K < 1) throw std::invalid_argument("factor_isotypic: need d >= 2 and K >= 1");
  check_budget(d, K, opts.budget);
  auto dim = static_cast<Eigen::Index>(checked_pow(static_cast<std::size_t>(d), static_cast<std::size_t>(K)));
  auto perms = all_permutations(K);
  std::vector<std::vector<std::size_t>> actions;
  actions.reserve(perms.size());
  for (const auto& p : perms) actions.push_back(permutation_action(p, d));

  UnitaryAlgebra ualg = sample_unitary_algebra(d, rng.child(0x11), opts.unitary_samples);

  std::vector<SchurBlock> blocks;
  CMatrix basis = CMatrix::Zero(dim, dim);
  std::size_t offset = 0;
  for (const auto& lam : enumerate_diagrams(K, d)) {
    const IsotypicProjector* proj = nullptr;
    for (const auto& p : projectors) {
      std::vector<int> padded = p.diagram;
      padded.resize(static_cast<std::size_t>(d), 0);
      if (static_cast<int>(p.diagram.size()) <= d && padded == lam.rows()) proj = &p;
    }
    if (!proj) throw std::invalid_argument("factor_isotypic: missing projector for " + lam.str());
    if (proj->matrix.rows() != dim) throw std::invalid_argument("factor_isotypic: projector has wrong dimension");

    auto dr = static_cast<std::size_t>(dim_rep(lam));
    auto mu = static_cast<std::size_t>(multiplicity(lam));
    auto n = static_cast<Eigen::Index>(dr * mu);

    Eigen::SelfAdjointEigenSolver<CMatrix> pes(0.5 * (proj->matrix + proj->matrix.adjoint()));
    CMatrix q = pes.eigenvectors().rightCols(n);
    if (std::abs(pes.eigenvalues()(dim - n) - 1.0) > 1e-8 || (dim > n && std::abs(pes.eigenvalues()(dim - n - 1)) > 1e-8))
      throw std::runtime_error("factor_isotypic: projector rank does not match d_lambda * m_lambda for " + lam.str());

    // multiplicity splitting
    std::vector<CMatrix> copies;
    bool ok = false;
    for (int attempt = 0; attempt < opts.max_retries && !ok; ++attempt) {
      RngStream crng = rng.child(0x22 + static_cast<std::uint64_t>(attempt) * 0x100 + offset);
      CMatrix hq = CMatrix::Zero(dim, n);
      for (std::size_t s = 0; s < actions.size(); ++s) {
        double c = crng.normal();
        const auto& act = actions[s];
        for (std::size_t x = 0; x < act.size(); ++x) {
          hq.row(static_cast<Eigen::Index>(act[x])) += c * q.row(static_cast<Eigen::Index>(x));
          hq.row(static_cast<Eigen::Index>(x)) += c * q.row(static_cast<Eigen::Index>(act[x]));
        }
      }
      CMatrix bmat = q.adjoint() * hq;
      Eigen::SelfAdjointEigenSolver<CMatrix> bes(0.5 * (bmat + bmat.adjoint()));
      if (mu > 1 && !check_clusters(bes.eigenvalues(), dr, opts.gap_tolerance)) continue;
      copies.clear();
      for (std::size_t k = 0; k < mu; ++k)
        copies.push_back(q * bes.eigenvectors().middleCols(static_cast<Eigen::Index>(k * dr), static_cast<Eigen::Index>(dr)));
      ok = true;
    }
    if (!ok) throw DegenerateSpectrumError("factor_isotypic: permutation-algebra spectrum degenerate for " + lam.str());

    // align R_lambda inside every copy
    std::vector<CMatrix> aligned;
    for (const auto& s : copies) {
      CMatrix a = s.adjoint() * apply_hermitian_element(ualg, K, s);
      Eigen::SelfAdjointEigenSolver<CMatrix> aes(0.5 * (a + a.adjoint()));
      if (dr > 1 && !check_clusters(aes.eigenvalues(), 1, opts.gap_tolerance))
        throw DegenerateSpectrumError("factor_isotypic: unitary-algebra spectrum degenerate for " + lam.str());
      CMatrix v = s * aes.eigenvectors();
      CMatrix g2v = apply_phase_element(ualg, K, v);
      for (Eigen::Index r = 1; r < v.cols(); ++r) {
        // <v_0|G2|v_r> after rephasing v_r by conj(z)/|z| becomes |z|
        cplx z = v.col(0).dot(g2v.col(r));
        if (std::abs(z) < 1e-9) throw DegenerateSpectrumError("factor_isotypic: phase reference vanishes for " + lam.str());
        v.col(r) *= std::conj(z) / std::abs(z);
      }
      aligned.push_back(std::move(v));
    }

    SchurBlock blk{lam, dr, mu, offset};
    for (std::size_t k = 0; k < mu; ++k)
      for (std::size_t r = 0; r < dr; ++r)
        basis.col(static_cast<Eigen::Index>(offset + r * mu + k)) = aligned[k].col(static_cast<Eigen::Index>(r));
    offset += blk.size();
    blocks.push_back(std::move(blk));
  }
  if (static_cast<Eigen::Index>(offset) != dim) throw std::runtime_error("factor_isotypic: blocks do not cover the space");
  return SchurBasis(K, d, std::move(basis), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Memoized dispatch

std::shared_ptr<const SchurBasis> schur_basis(int K, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const SchurBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(K, d);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::optional<std::filesystem::path> file;
  if (const char* dir = std::getenv("SUPERREP_SCHUR_CACHE"); dir && *dir) {
    file = schur_cache_file(dir, K, d);
    if (std::filesystem::exists(*file)) {
      auto b = std::make_shared<const SchurBasis>(load_schur_basis(*file));
      cache.emplace(key, b);
      return b;
    }
  }
  std::shared_ptr<const SchurBasis> b;
  if (d == 2)
    b = std::make_shared<const SchurBasis>(qubit_schur_basis(K));
  else
    b = std::make_shared<const SchurBasis>(factor_isotypic(isotypic_projectors(K, d), d, K, RngStream(kSchurSeed)));
  if (file) {
    std::filesystem::create_directories(file->parent_path());
    save_schur_basis(*b, *file);
  }
  cache.emplace(key, b);
  return b;
}

}  // namespace superrep
