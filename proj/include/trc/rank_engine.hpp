#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trc/dense_matrix.hpp"
#include "trc/field.hpp"

namespace trc {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Rational value;
};

/// Sparse matrix in sorted (row, col) triplet form: no duplicates, no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols, Domain domain = Domain::rational())
      : rows_(rows), cols_(cols), domain_(domain) {}
  /// Duplicate positions are summed; entries are normalized into `domain`.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets,
               Domain domain = Domain::rational());

  static SparseMatrix from_dense(const DenseMatrix& m, Domain domain = Domain::rational());

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Domain& domain() const noexcept { return domain_; }
  std::size_t nonzeros() const noexcept { return triplets_.size(); }
  const std::vector<Triplet>& triplets() const noexcept { return triplets_; }

  Rational at(std::size_t r, std::size_t c) const;
  DenseMatrix to_dense() const;

  /// Rows/cols of the result are old rows row_order[0], row_order[1], ...
  SparseMatrix permuted(std::span<const std::size_t> row_order, std::span<const std::size_t> col_order) const;
  SparseMatrix block(std::size_t row0, std::size_t nrows, std::size_t col0, std::size_t ncols) const;

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  Domain domain_;
  std::vector<Triplet> triplets_;
};

/// Rank over GF(q) by sparse elimination with Markowitz pivot selection.
std::size_t rank_mod_q(const SparseMatrix& m, std::uint64_t q);
std::uint64_t det_mod_q(const SparseMatrix& m, std::uint64_t q);

/// Rank over the matrix's own domain: fraction-free (Bareiss) elimination over Q,
/// or elimination mod q for GF(q) matrices.
std::size_t rank_exact(const SparseMatrix& m);
/// Throws NotSquare.
Rational det_exact(const SparseMatrix& m);

struct MultiPrimeRank {
  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> ranks;  // aligned with primes
  std::size_t rank = 0;            // max over primes; never exceeds the rank over Q
};

MultiPrimeRank rank_multi_prime(const SparseMatrix& m, std::span<const std::uint64_t> primes);

}  // namespace trc
