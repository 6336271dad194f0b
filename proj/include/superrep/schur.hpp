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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "superrep/rng.hpp"
#include "superrep/tensor.hpp"
#include "superrep/young.hpp"

namespace superrep {

/// One lambda block of a Schur basis. Columns offset + r * mult + m hold the
/// basis vectors of R_lambda (x) M_lambda.
struct SchurBlock {
  YoungDiagram diagram;
  std::size_t dim_rep = 0;
  std::size_t mult = 0;
  std::size_t offset = 0;
  std::size_t size() const { return dim_rep * mult; }
};

/// Unitary change of basis realizing the Schur-Weyl decomposition of the
/// K-fold tensor power of C^d. Blocks follow enumerate_diagrams order.
class SchurBasis {
 public:
  SchurBasis(int K, int d, CMatrix basis, std::vector<SchurBlock> blocks);

  int K() const { return K_; }
  int d() const { return d_; }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }
  const CMatrix& matrix() const { return basis_; }
  const std::vector<SchurBlock>& blocks() const { return blocks_; }

  std::size_t column(std::size_t block, std::size_t r, std::size_t m) const;
  std::optional<std::size_t> find_block(const YoungDiagram& lambda) const;
  /// Columns of one block (d^K x d_lambda m_lambda).
  CMatrix block_columns(std::size_t block) const;
  /// The copy of R_lambda at multiplicity index m (d^K x d_lambda).
  CMatrix copy_columns(std::size_t block, std::size_t m) const;

  /// U^{(lambda)}: the representation matrix read off multiplicity copy 0.
  CMatrix irrep_matrix(std::size_t block, const CMatrix& u) const;

 private:
  int K_, d_;
  CMatrix basis_;
  std::vector<SchurBlock> blocks_;
};

/// How far B^dag U^{(x)K} B is from the ideal form (+)_lambda U^(lambda) (x) I.
struct BlockLeakage {
  double off_block = 0;      // Frobenius norm outside the (lambda, m) diagonal blocks
  double copy_mismatch = 0;  // max Frobenius distance between copies m and 0
};
BlockLeakage block_leakage(const SchurBasis& basis, const CMatrix& u);

/// Iterated Clebsch-Gordan coupling of K spin-1/2 systems (Condon-Shortley
/// phases). Multiplicity index m enumerates coupling paths (2j_1, ..., 2j_K)
/// in ascending lexicographic order; r runs over m_z = j, j-1, ..., -j.
SchurBasis qubit_schur_basis(int K);

// ---------------------------------------------------------------------------
// Symmetric group

/// Integer partitions of n (any number of parts), descending lexicographic.
std::vector<std::vector<int>> partitions(int n);

/// Cycle type of a permutation, sorted descending.
std::vector<int> cycle_type(std::span<const int> perm);

struct CharacterTable {
  int K = 0;
  std::vector<std::vector<int>> irreps;   // partitions labelling irreps
  std::vector<std::vector<int>> classes;  // cycle types
  std::vector<std::vector<long long>> chi;  // chi[irrep][class]
  std::vector<BigInt> class_sizes;

  long long character(std::span<const int> irrep, std::span<const int> cls) const;
};

/// Murnaghan-Nakayama rule.
long long mn_character(std::vector<int> shape, std::span<const int> cycles);
CharacterTable sn_character_table(int K);

/// Budget for permutation sums d^K * K! used by isotypic_projector and
/// factor_isotypic.
inline constexpr double kDefaultPermutationBudget = 5e8;

struct IsotypicProjector {
  std::vector<int> diagram;  // partition of K
  CMatrix matrix;
};

/// P_lambda = (f_lambda / K!) sum_sigma chi_lambda(sigma) P(sigma). Zero when
/// lambda has more than d non-zero rows.
IsotypicProjector isotypic_projector(std::span<const int> lambda, int d, int K,
                                     double budget = kDefaultPermutationBudget);
std::vector<IsotypicProjector> isotypic_projectors(int K, int d,
                                                   double budget = kDefaultPermutationBudget);

/// Permutation of tensor factors: P(sigma)|i_1 ... i_K> = |i_{sigma^-1(1)} ... i_{sigma^-1(K)}>.
/// Returns the image index of every computational basis index.
std::vector<std::size_t> permutation_action(std::span<const int> perm, int d);
CMatrix permutation_operator(std::span<const int> perm, int d);

class DegenerateSpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FactorOptions {
  double gap_tolerance = 1e-8;
  int max_retries = 8;
  int unitary_samples = 3;
  double budget = kDefaultPermutationBudget;
};

/// Double-commutant factorization of each isotypic block into R (x) M.
/// Multiplicity copies are the eigenspaces (ascending) of a random Hermitian
/// element of the permutation algebra; inside each copy, vectors are the
/// eigenvectors (ascending) of a Hermitian element built from sampled SU(d)
/// tensor powers, phased so that a second such element has real positive
/// entries <e_0|G|e_r>. The unitary samples depend only on rng, so bases
/// built from the same stream for different K carry identical irrep matrices
/// for equivalent diagrams.
SchurBasis factor_isotypic(const std::vector<IsotypicProjector>& projectors, int d, int K,
                           RngStream rng, const FactorOptions& opts = {});

/// Canonical seed used by schur_basis() for the d >= 3 construction.
inline constexpr std::uint64_t kSchurSeed = 0x5c4u;
inline constexpr std::uint32_t kSchurConventionVersion = 2;

/// Memoized dispatch: Clebsch-Gordan for d = 2, factor_isotypic otherwise.
/// Honors the on-disk cache directory from SUPERREP_SCHUR_CACHE when set.
std::shared_ptr<const SchurBasis> schur_basis(int K, int d);

// On-disk cache: little-endian layout
//   magic "SRSB", u32 version, u32 d, u32 K, u32 block count,
//   per block: u32 rows[d], u64 dim_rep, u64 mult, u64 offset,
//   u64 dim, then dim*dim (re, im) f64 pairs in column-major order.
void save_schur_basis(const SchurBasis& basis, const std::filesystem::path& path);
SchurBasis load_schur_basis(const std::filesystem::path& path);
std::filesystem::path schur_cache_file(const std::filesystem::path& dir, int K, int d);

}  // namespace superrep
