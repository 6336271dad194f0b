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
#include <memory>
#include <optional>

#include "superrep/schur.hpp"
#include "superrep/tensor.hpp"
#include "superrep/young.hpp"

namespace superrep {

/// Kraus sets are only materialized below this many matrix entries in total.
inline constexpr std::size_t kMaxKrausEntries = std::size_t{1} << 24;
/// Liouville matrices (side D^2) are only materialized up to this side length.
inline constexpr std::size_t kMaxSuperoperatorDim = 1024;

/// sigma -> W^dag sigma W + Tr[(I - W W^dag) sigma] rho0, for a partial
/// isometry W : C^in -> C^out (W^dag W a projector, W W^dag a projector).
/// The channel maps C^out back to C^in.
class ReverseIsometry {
 public:
  ReverseIsometry(CMatrix w, CMatrix rho0);

  std::size_t in_dim() const { return static_cast<std::size_t>(w_.rows()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(w_.cols()); }
  const CMatrix& isometry() const { return w_; }

  CMatrix apply(const CMatrix& sigma) const;
  Superoperator superoperator() const;
  KrausChannel kraus() const;

 private:
  CMatrix w_;
  CMatrix rho0_;
};

/// rho -> P rho P + Tr[(I - P) rho] rho0 with P the projector on the
/// truncated subspace H_J^(K).
class TruncatedEncoder {
 public:
  /// rho0 defaults to the maximally mixed state on H_J^(K).
  TruncatedEncoder(int K, int d, int J, std::optional<CMatrix> rho0 = std::nullopt);

  int K() const { return K_; }
  int d() const { return d_; }
  int J() const { return J_; }
  std::size_t dim() const { return static_cast<std::size_t>(proj_.rows()); }
  std::size_t rank() const { return static_cast<std::size_t>(kept_.cols()); }

  const SchurBasis& basis() const { return *basis_; }
  /// Orthonormal columns spanning H_J^(K), in Schur-basis column order.
  const CMatrix& kept_columns() const { return kept_; }
  /// Schur-basis column index of every kept column.
  const std::vector<std::size_t>& kept_indices() const { return kept_idx_; }
  const CMatrix& projector() const { return proj_; }
  const CMatrix& reset_state() const { return rho0_; }

  CMatrix apply(const CMatrix& rho) const;
  /// <psi| E(|psi><psi|) |psi> = <psi|P|psi>^2 + (1 - <psi|P|psi>) <psi|rho0|psi>.
  double fidelity(const CVector& psi) const;
  /// (Tr P)^2 / D^2 + Tr[(I - P) rho0] / D^2, read off the constructed operators.
  double entanglement_fidelity() const;

  /// {P} together with sqrt(mu_k) |f_k><e_i| over the rejected basis {e_i}
  /// and the eigen-decomposition rho0 = sum mu_k |f_k><f_k|.
  KrausChannel kraus() const;
  Superoperator superoperator() const;

 private:
  int K_, d_, J_;
  std::shared_ptr<const SchurBasis> basis_;
  CMatrix kept_;
  std::vector<std::size_t> kept_idx_;
  CMatrix proj_;
  CMatrix rho0_;
};

/// V_J : H_J^(M) -> H^{(x)N} (x) H_A, block diagonal in Schur bases. Target
/// index layout is x * ancilla_dim + a with x a computational index on the N
/// systems. The domain is parameterized by the encoder's kept columns.
class EmbeddingIsometry {
 public:
  int N() const { return N_; }
  int M() const { return M_; }
  int J() const { return J_; }
  int d() const { return d_; }
  std::size_t ancilla_dim() const { return dA_; }

  /// (d^N d_A) x dim H_J^(M), columns in the encoder's kept-column order.
  const CMatrix& matrix() const { return v_; }
  /// Same map as a partial isometry on the full d^M space: matrix() * B_J^dag.
  CMatrix full_matrix(const CMatrix& kept_columns) const;

  /// max over samples of || V U_M|_J - (U^{(x)N} (x) I_A) V ||_F where U_M is
  /// U^{(x)M} restricted to H_J^(M).
  double intertwining_residual(const CMatrix& u, const CMatrix& kept_columns) const;

 private:
  friend EmbeddingIsometry build_embedding(int, int, int, int, std::optional<std::size_t>);
  int N_ = 0, M_ = 0, J_ = 0, d_ = 0;
  std::size_t dA_ = 1;
  CMatrix v_;
};

/// Throws std::invalid_argument when (M - N) is not a multiple of d, when
/// d J > N, or when ancilla_dim is below the minimum.
EmbeddingIsometry build_embedding(int N, int M, int J, int d,
                                  std::optional<std::size_t> ancilla_dim = std::nullopt);

/// C_2 (U_g^{(x)N} (x) I_A) C_1 with C_1 = V_J E_J^(M) and C_2 the reverse of V_J.
class ReplicationNetwork {
 public:
  ReplicationNetwork(int N, int M, int J, int d, std::optional<std::size_t> ancilla_dim = std::nullopt);

  int N() const { return N_; }
  int M() const { return M_; }
  int J() const { return J_; }
  int d() const { return d_; }
  std::size_t dim() const { return encoder_.dim(); }
  const TruncatedEncoder& encoder() const { return encoder_; }
  const EmbeddingIsometry& embedding() const { return embedding_; }

  CMatrix apply(const GateParams& gate, const CMatrix& rho) const;
  /// Liouville matrix assembled column by column from apply().
  Superoperator superoperator(const GateParams& gate) const;
  KrausChannel channel(const GateParams& gate) const;

 private:
  int N_, M_, J_, d_;
  TruncatedEncoder encoder_;
  EmbeddingIsometry embedding_;
  CMatrix v_full_;  // embedding as a d^M -> d^N d_A partial isometry
};

KrausChannel replication_network(int N, int M, int J, int d, const GateParams& gate);

/// Gate compression: Alice holds H_A, Bob holds H^{(x)N}, the reference
/// register H_B is Bob's. With J unset all diagrams are kept (zero error).
class CompressionProtocol {
 public:
  int N() const { return N_; }
  int d() const { return d_; }
  std::optional<int> J() const { return J_; }
  std::size_t system_a_dim() const { return static_cast<std::size_t>(v_.cols()); }
  std::size_t system_b_dim() const { return dB_; }

  /// V : H_A -> H^{(x)N}, |lambda, r> -> first multiplicity copy.
  const CMatrix& alice_isometry() const { return v_; }
  /// W : H^{(x)N} -> H_A (x) H_B (partial isometry when J truncates).
  const CMatrix& bob_isometry() const { return w_; }

  /// U' = V^dag U^{(x)N} V on H_A.
  CMatrix compressed_gate(const GateParams& gate) const;

  KrausChannel alice_a1() const;  // rho_A -> V rho_A V^dag
  KrausChannel alice_a2() const;  // reverse of V with reset alpha0
  /// W rho W^dag, preceded by E_J^(N) in the truncated protocol.
  KrausChannel bob_b1() const;
  KrausChannel bob_b2() const;    // reverse of W with reset beta0

  /// B2 (U' (x) I_B) B1 applied to rho without forming any superoperator.
  CMatrix apply(const GateParams& gate, const CMatrix& rho) const;
  Superoperator superoperator(const GateParams& gate) const;

  const TruncatedEncoder* encoder() const { return encoder_.get(); }

 private:
  friend CompressionProtocol compression_exact(int, int);
  friend CompressionProtocol compression_approx(int, int, int);
  void assemble(const SchurBasis& basis);
  int N_ = 0, d_ = 0;
  std::optional<int> J_;
  std::size_t dB_ = 1;
  CMatrix v_, w_;
  CMatrix alpha0_, beta0_;
  std::shared_ptr<TruncatedEncoder> encoder_;
};

CompressionProtocol compression_exact(int N, int d);
CompressionProtocol compression_approx(int N, int d, int J);

}  // namespace superrep
