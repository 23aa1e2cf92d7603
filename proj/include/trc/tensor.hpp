#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "trc/dense_matrix.hpp"
#include "trc/field.hpp"
#include "trc/rank_engine.hpp"

namespace trc {

struct Dims {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;

  friend bool operator==(const Dims&, const Dims&) = default;
};

using Index3 = std::array<std::size_t, 3>;

/// Order-3 tensor in A (x) B (x) C stored as sorted nonzero triplets.
class Tensor3 {
 public:
  struct Entry {
    Index3 index;
    Rational value;
  };

  explicit Tensor3(Dims dims, Domain domain = Domain::rational());
  /// Entries at the same index are summed; zeros are dropped.
  Tensor3(Dims dims, const std::vector<Entry>& entries, Domain domain = Domain::rational());

  const Dims& dims() const noexcept { return dims_; }
  const Domain& domain() const noexcept { return domain_; }
  const std::map<Index3, Rational>& entries() const noexcept { return entries_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  Rational at(std::size_t i, std::size_t j, std::size_t k) const;

  /// Integer multiple of this tensor with no denominators; ranks are unchanged.
  Tensor3 integerized() const;

  friend Tensor3 operator+(const Tensor3& x, const Tensor3& y);
  friend bool operator==(const Tensor3& x, const Tensor3& y) {
    return x.dims_ == y.dims_ && x.domain_ == y.domain_ && x.entries_ == y.entries_;
  }

 private:
  Dims dims_;
  Domain domain_;
  std::map<Index3, Rational> entries_;
};

/// Dimensions (m, n, l) of the product of an m x n and an n x l matrix.
struct MatMulDescriptor {
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t l = 1;
};

/// k x a basis of a k-dimensional subspace of the first tensor factor.
class Subspace {
 public:
  /// Throws InvalidArguments unless the rows are linearly independent.
  explicit Subspace(DenseMatrix basis);

  std::size_t ambient() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const DenseMatrix& basis() const noexcept { return basis_; }

  static Subspace coordinate(std::size_t ambient, std::size_t k);
  /// Uniform entries in [0, q); redraws until the rows are independent mod q.
  static Subspace random(std::size_t ambient, std::size_t k, std::uint64_t q, SeededRng& rng);

 private:
  DenseMatrix basis_;
};

struct RankOneTerm {
  std::vector<Rational> u;
  std::vector<Rational> v;
  std::vector<Rational> w;
};

struct Decomposition {
  std::vector<RankOneTerm> terms;
};

/// T[(i,j), (j',k), (k',i')] = 1 iff i = i', j = j', k = k' (the trilinear form trace(XYZ)).
/// Pairs flatten row-major: (i,j) -> i*n + j, (j,k) -> j*l + k, (k,i) -> k*m + i.
Tensor3 matmul_tensor(const MatMulDescriptor& desc);

/// X_i[j,k] = T[i,j,k].
std::vector<DenseMatrix> slices_A(const Tensor3& t);
/// sum_i e_i (x) X_i; all slices must share one shape.
Tensor3 from_slices(const std::vector<DenseMatrix>& slices, Domain domain = Domain::rational());

/// Tensor with dims (k, b, c) whose i-th slice is sum_alpha W[i,alpha] X_alpha.
Tensor3 restrict_A(const Tensor3& t, const Subspace& w);

struct RandomRankR {
  Tensor3 tensor;
  Decomposition decomposition;
};

/// Sum of r rank-one terms with factor entries drawn uniformly from [0, q) for the
/// domain's modulus (the default prime for the rationals).
RandomRankR random_rank_r(Dims dims, std::size_t r, Domain domain, std::uint64_t seed);

Tensor3 evaluate_decomposition(Dims dims, const Decomposition& d, Domain domain = Domain::rational());
bool verify_decomposition(const Tensor3& t, const Decomposition& d);

/// a x (b*c) unfolding, row i is slice X_i read row-major.
SparseMatrix unfold_A(const Tensor3& t);

}  // namespace trc
