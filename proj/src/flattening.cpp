#include "trc/flattening.hpp"

#include <stdexcept>
#include <string>

#include "trc/error.hpp"

namespace trc {

FlatteningMatrix build_koszul(const Tensor3& restricted, std::size_t p, BasisOrder order) {
  if (p < 1) throw Error(ErrorCode::InvalidArguments, "Koszul flattening needs p >= 1");
  const std::size_t k = 2 * p + 1;
  const Dims& d = restricted.dims();
  if (d.a != k) {
    throw Error(ErrorCode::DimensionMismatch,
                "restricted tensor has a = " + std::to_string(d.a) + ", expected 2p+1 = " + std::to_string(k));
  }
  OrderedBasis rows(k, p + 1, order);
  OrderedBasis cols(k, p, order);
  std::vector<Triplet> trip;
  trip.reserve(restricted.nonzeros() * binomial(2 * p, p));
  for (const auto& [idx, v] : restricted.entries()) {
    const auto [i, beta, gamma] = idx;
    for (std::size_t col = 0; col < cols.size(); ++col) {
      auto wedge = wedge_insert(i, cols[col]);
      if (!wedge) continue;
      const std::size_t row = rows.ordinal(wedge->subset);
      trip.push_back({row * d.c + gamma, col * d.b + beta, wedge->sign > 0 ? v : Rational(-v)});
    }
  }
  SparseMatrix m(rows.size() * d.c, cols.size() * d.b, std::move(trip), restricted.domain());
  return FlatteningMatrix{std::move(m), std::move(rows), std::move(cols), p, d.b, d.c, order, std::nullopt,
                          "koszul"};
}

Tensor3 reduced_matmul_tensor(std::size_t n, const Subspace& w) {
  if (w.ambient() != n * n) {
    throw Error(ErrorCode::DimensionMismatch,
                "subspace ambient " + std::to_string(w.ambient()) + " != n^2 = " + std::to_string(n * n));
  }
  std::vector<Tensor3::Entry> e;
  for (std::size_t t = 0; t < w.dim(); ++t)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (w.basis()(t, x * n + y) != 0) e.push_back({{t, x, y}, w.basis()(t, x * n + y)});
  return Tensor3({w.dim(), n, n}, e);
}

FlatteningMatrix build_reduced_matmul(std::size_t n, const Subspace& w, std::size_t p, BasisOrder order) {
  if (p < 1) throw Error(ErrorCode::InvalidArguments, "reduced flattening needs p >= 1");
  if (w.dim() != 2 * p + 1) {
    throw Error(ErrorCode::DimensionMismatch, "subspace dimension " + std::to_string(w.dim()) + " != 2p+1");
  }
  FlatteningMatrix f = build_koszul(reduced_matmul_tensor(n, w), p, order);
  f.subspace = w;
  f.descriptor = "reduced_matmul n=" + std::to_string(n);
  return f;
}

Subspace transport_to_matmul(std::size_t n, const Subspace& w) {
  if (w.ambient() != n * n) throw Error(ErrorCode::DimensionMismatch, "subspace ambient != n^2");
  DenseMatrix b(w.dim(), n * n);
  for (std::size_t t = 0; t < w.dim(); ++t)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(t, i * n + j) = w.basis()(t, j * n + i);
  return Subspace(std::move(b));
}

BlockDecomposition block_decompose(const FlatteningMatrix& f) {
  if (f.order != BasisOrder::SplitZero) {
    throw Error(ErrorCode::OrderMismatch, "block decomposition needs a SplitZero flattening");
  }
  if (f.b != f.c) throw Error(ErrorCode::DimensionMismatch, "block decomposition needs b = c");
  const std::size_t p = f.p;
  const std::size_t split_rows = binomial(2 * p, p + 1) * f.c;
  const std::size_t split_cols = binomial(2 * p, p - 1) * f.b;
  const std::size_t rest_rows = f.matrix.rows() - split_rows;
  const std::size_t rest_cols = f.matrix.cols() - split_cols;
  const auto& m = f.matrix;
  return BlockDecomposition{m.block(0, split_rows, split_cols, rest_cols),
                            m.block(split_rows, rest_rows, 0, split_cols),
                            m.block(split_rows, rest_rows, split_cols, rest_cols),
                            m.block(0, split_rows, 0, split_cols),
                            f.row_basis,
                            f.col_basis,
                            split_rows,
                            split_cols};
}

namespace {

std::uint64_t low_mask(std::size_t count) { return count >= 64 ? ~0ULL : ((std::uint64_t{1} << count) - 1); }

/// Column blocks 0J and the matching complementary row blocks, in commutator_block order.
struct CommutatorLabels {
  std::vector<SubsetIndex> cols;  // 0J
  std::vector<SubsetIndex> rows;  // {1..2p} \ J
};

CommutatorLabels commutator_labels(std::size_t p) {
  OrderedBasis cols(2 * p + 1, p, BasisOrder::SplitZero);
  const std::size_t nblocks = binomial(2 * p, p - 1);
  const std::uint64_t ones = low_mask(2 * p + 1) & ~std::uint64_t{1};
  CommutatorLabels out;
  for (std::size_t t = 0; t < nblocks; ++t) {
    out.cols.push_back(cols[t]);
    out.rows.push_back(SubsetIndex(ones & ~cols[t].mask()));
  }
  return out;
}

}  // namespace

std::vector<std::vector<CommutatorEntry>> commutator_pattern(std::size_t p) {
  if (p < 1) throw Error(ErrorCode::InvalidArguments, "commutator pattern needs p >= 1");
  auto labels = commutator_labels(p);
  const std::size_t nb = labels.cols.size();
  std::vector<std::vector<CommutatorEntry>> pattern(nb, std::vector<CommutatorEntry>(nb));
  for (std::size_t r = 0; r < nb; ++r) {
    for (std::size_t c = 0; c < nb; ++c) {
      const SubsetIndex& big = labels.rows[r];
      const SubsetIndex j(labels.cols[c].mask() & ~std::uint64_t{1});
      if ((j.mask() & ~big.mask()) != 0 || big.size() != j.size() + 2) continue;
      auto diff = SubsetIndex(big.mask() & ~j.mask()).elements();
      const std::size_t a = diff[0], b = diff[1];
      // Block (R, 0J) of -Q Q~ is -sum s_Q(i') s_Q~(i) X_{i'} X_i over R = J + {i, i'}.
      auto coefficient = [&](std::size_t outer, std::size_t inner) {
        auto s_inner = wedge_insert(inner, labels.cols[c]);
        auto s_outer = wedge_insert(outer, SubsetIndex(j.mask() | (std::uint64_t{1} << inner)));
        return -s_inner->sign * s_outer->sign;
      };
      const int ab = coefficient(a, b);
      if (coefficient(b, a) != -ab) throw std::logic_error("commutator pattern is not antisymmetric");
      pattern[r][c] = CommutatorEntry{ab, a, b};
    }
  }
  return pattern;
}

CommutatorBlock commutator_block(const std::vector<DenseMatrix>& xs, std::size_t p) {
  if (p < 1 || xs.size() != 2 * p) {
    throw Error(ErrorCode::InvalidArguments, "commutator_block needs 2p matrices X_1..X_2p");
  }
  const std::size_t b = xs[0].rows();
  std::vector<DenseMatrix> slices{DenseMatrix::identity(b)};
  for (const auto& x : xs) {
    if (x.rows() != b || x.cols() != b) throw Error(ErrorCode::DimensionMismatch, "commutator inputs must be b x b");
    slices.push_back(x.transpose());
  }
  auto f = build_koszul(from_slices(slices), p, BasisOrder::SplitZero);
  auto blocks = block_decompose(f);
  DenseMatrix product = -(blocks.q.to_dense() * blocks.q_tilde.to_dense());

  auto labels = commutator_labels(p);
  const std::size_t nb = labels.cols.size();
  DenseMatrix reordered(nb * b, nb * b);
  for (std::size_t t = 0; t < nb; ++t) {
    const std::size_t src = f.row_basis.ordinal(labels.rows[t]);
    for (std::size_t x = 0; x < b; ++x)
      for (std::size_t y = 0; y < nb * b; ++y) reordered(t * b + x, y) = product(src * b + x, y);
  }
  return CommutatorBlock{std::move(reordered), labels.rows, labels.cols, commutator_pattern(p)};
}

Rational det_flattening(const FlatteningMatrix& f, DetMode mode) {
  if (f.matrix.rows() != f.matrix.cols()) throw Error(ErrorCode::NotSquare, "flattening is not square");
  if (std::holds_alternative<Exact>(mode)) return det_exact(f.matrix);
  const auto q = std::get<ModQ>(mode).q;
  return Rational(BigInt(static_cast<unsigned long>(det_mod_q(f.matrix, q))));
}

}  // namespace trc
