#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trc/exterior.hpp"
#include "trc/rank_engine.hpp"
#include "trc/tensor.hpp"

namespace trc {

/// Matrix of the Koszul flattening Lambda^p A' (x) B^* -> Lambda^{p+1} A' (x) C.
///
/// Row ordinal(J) * c + gamma is the basis vector a_J (x) c_gamma, column
/// ordinal(I) * b + beta is a_I (x) beta_beta. The entry is
/// sum over i with a_i ^ a_I = s a_J of s * X_i[beta, gamma], so each block is the
/// transpose of the slice X_i as stored in the tensor (the matrix of beta -> beta(X_i)).
struct FlatteningMatrix {
  SparseMatrix matrix;
  OrderedBasis row_basis;  // (p+1)-subsets
  OrderedBasis col_basis;  // p-subsets
  std::size_t p;
  std::size_t b;
  std::size_t c;
  BasisOrder order;
  std::optional<Subspace> subspace;
  std::string descriptor;
};

FlatteningMatrix build_koszul(const Tensor3& restricted, std::size_t p, BasisOrder order = BasisOrder::Lex);

/// Reduced matrix multiplication flattening: build_koszul of the tensor whose i-th
/// A-slice is row i of W.basis reshaped row-major into an n x n matrix.
FlatteningMatrix build_reduced_matmul(std::size_t n, const Subspace& w, std::size_t p,
                                      BasisOrder order = BasisOrder::Lex);
Tensor3 reduced_matmul_tensor(std::size_t n, const Subspace& w);

/// Subspace of the A-factor of matmul_tensor({n, n, m}) whose restriction is the
/// reduced tensor for `w` tensored with the identity on C^m.
Subspace transport_to_matmul(std::size_t n, const Subspace& w);

struct BlockDecomposition {
  SparseMatrix q;        // rows: 0-free (p+1)-subsets, cols: 0-free p-subsets K
  SparseMatrix q_tilde;  // rows: 0K, cols: 0J
  SparseMatrix r;        // rows: 0K, cols: K
  SparseMatrix top_left; // rows: 0-free (p+1)-subsets, cols: 0J
  OrderedBasis row_basis;
  OrderedBasis col_basis;
  std::size_t split_rows;  // C(2p, p+1) * c
  std::size_t split_cols;  // C(2p, p-1) * b
};

/// Throws OrderMismatch unless `f` was built with SplitZero.
BlockDecomposition block_decompose(const FlatteningMatrix& f);

/// One block of the commutator matrix: sign * [X_first, X_second], or zero.
struct CommutatorEntry {
  int sign = 0;  // 0 for a zero block
  std::size_t first = 0;
  std::size_t second = 0;
};

struct CommutatorBlock {
  /// -Q Q~, the Schur complement of R = I, with row blocks permuted so that row block t
  /// is the (p+1)-subset complementary (inside {1..2p}) to column block t's 0J.
  DenseMatrix matrix;
  std::vector<SubsetIndex> row_subsets;
  std::vector<SubsetIndex> col_subsets;
  std::vector<std::vector<CommutatorEntry>> pattern;
};

/// X_1..X_{2p} are the block matrices (operators beta -> beta(X_i)), X_0 = I.
CommutatorBlock commutator_block(const std::vector<DenseMatrix>& xs, std::size_t p);

/// Expected block pattern for commutator_block derived from wedge signs alone.
std::vector<std::vector<CommutatorEntry>> commutator_pattern(std::size_t p);

struct Exact {};
struct ModQ {
  std::uint64_t q;
};
using DetMode = std::variant<Exact, ModQ>;

/// Throws NotSquare.
Rational det_flattening(const FlatteningMatrix& f, DetMode mode);

}  // namespace trc
