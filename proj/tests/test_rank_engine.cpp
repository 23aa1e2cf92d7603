#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "trc/error.hpp"
#include "trc/rank_engine.hpp"

using namespace trc;

namespace {

DenseMatrix dense(std::initializer_list<std::initializer_list<long>> rows) {
  DenseMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("small examples") {
  auto a = SparseMatrix::from_dense(dense({{1, 2}, {2, 4}}));
  CHECK(rank_mod_q(a, 7) == 1);
  CHECK(rank_exact(a) == 1);
  CHECK(det_exact(a) == 0);

  auto b = SparseMatrix::from_dense(dense({{2, 1}, {1, 3}}));
  CHECK(det_exact(b) == 5);
  CHECK(det_mod_q(b, 7) == 5);
  CHECK(det_mod_q(b, 5) == 0);

  auto z = SparseMatrix(3, 4);
  CHECK(rank_exact(z) == 0);
  CHECK(rank_mod_q(z, 5) == 0);

  CHECK_THROWS_AS(det_exact(SparseMatrix(2, 3)), Error);
}

TEST_CASE("sparse storage drops zeros and sums duplicates") {
  SparseMatrix m(2, 2, {{0, 0, 1}, {0, 0, -1}, {1, 1, 3}, {1, 0, 0}});
  CHECK(m.nonzeros() == 1);
  CHECK(m.at(1, 1) == 3);
  SparseMatrix g(2, 2, {{0, 1, 8}}, Domain::gfp(5));
  CHECK(g.at(0, 1) == 3);
  CHECK(SparseMatrix::from_dense(m.to_dense()) == m);
}

TEST_CASE("multi-prime rank on diag(q, 1)") {
  const std::uint64_t q = 101;
  DenseMatrix d(2, 2);
  d(0, 0) = static_cast<long>(q);
  d(1, 1) = 1;
  auto m = SparseMatrix::from_dense(d);
  CHECK(rank_mod_q(m, q) == 1);
  std::vector<std::uint64_t> primes{q, 103};
  auto mp = rank_multi_prime(m, primes);
  CHECK(mp.ranks == std::vector<std::size_t>{1, 2});
  CHECK(mp.rank == 2);
  CHECK(rank_exact(m) == 2);
}

TEST_CASE("rank and det agree with naive elimination") {
  SeededRng rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng.below(8), c = 1 + rng.below(8);
    DenseMatrix x = oracle::random_matrix(r, c, rng, -3, 3);
    // force some rank deficiency
    if (trial % 3 == 0 && r > 2) {
      for (std::size_t j = 0; j < c; ++j) x(r - 1, j) = x(0, j) * 2 - x(1, j);
    }
    // rational entries
    if (trial % 4 == 1) x(0, 0) = make_rational(1, 3);
    auto s = SparseMatrix::from_dense(x);
    const std::size_t expected = oracle::rank(x);
    CHECK(rank_exact(s) == expected);
    if (trial % 4 != 1) {
      for (std::uint64_t q : std::vector<std::uint64_t>{2, 3, 7, kMersenne31}) {
        const auto rq = rank_mod_q(s, q);
        CHECK(rq == oracle::rank_mod(x, q));
        CHECK(rq <= expected);
      }
    }
    if (r == c) {
      const Rational d = oracle::det(x);
      CHECK(det_exact(s) == d);
      if (trial % 4 != 1) CHECK(det_mod_q(s, 13) == PrimeField(13).reduce(d));
    }
  }
}

TEST_CASE("determinant under row and column permutations") {
  SeededRng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    auto s = SparseMatrix::from_dense(oracle::random_matrix(n, n, rng));
    std::vector<std::size_t> rp(n), cp(n);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(rp[i - 1], rp[rng.below(i)]);
      std::swap(cp[i - 1], cp[rng.below(i)]);
    }
    const Rational d = det_exact(s);
    const Rational dp = det_exact(s.permuted(rp, cp));
    CHECK(abs(d) == abs(dp));
    CHECK(rank_exact(s) == rank_exact(s.permuted(rp, cp)));
  }
}

TEST_CASE("det of [[0, Y], [Z, I]] is det(-YZ)") {
  SeededRng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(4), k = 1 + rng.below(4);
    DenseMatrix y = oracle::random_matrix(n, k, rng), z = oracle::random_matrix(k, n, rng);
    DenseMatrix full(n + k, n + k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) full(i, n + j) = y(i, j);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < n; ++j) full(n + i, j) = z(i, j);
      full(n + i, n + i) = 1;
    }
    CHECK(det_exact(SparseMatrix::from_dense(full)) == oracle::det(-(y * z)));
  }
}

TEST_CASE("mod-q rank never exceeds the rational rank, including entries divisible by q") {
  SeededRng rng(31);
  const std::uint64_t q = 5;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    DenseMatrix x = oracle::random_matrix(r, c, rng, -2, 2);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng.below(3) == 0) x(i, j) *= static_cast<long>(q);
    auto s = SparseMatrix::from_dense(x);
    CHECK(rank_mod_q(s, q) <= rank_exact(s));
  }
}

TEST_CASE("GF(q) matrices rank in their own field") {
  DenseMatrix d = dense({{1, 2}, {3, 1}});
  auto m = SparseMatrix::from_dense(d, Domain::gfp(5));
  CHECK(rank_exact(m) == 1);
  CHECK(rank_exact(SparseMatrix::from_dense(d)) == 2);
}
