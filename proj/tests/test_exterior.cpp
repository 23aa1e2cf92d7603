#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "trc/error.hpp"
#include "trc/exterior.hpp"

using namespace trc;

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK_THROWS_AS(binomial(200, 100), Error);
}

TEST_CASE("lex enumeration") {
  auto b = enumerate_subsets(5, 2, BasisOrder::Lex);
  REQUIRE(b.size() == 10);
  CHECK(b[0].elements() == std::vector<std::size_t>{0, 1});
  CHECK(b[9].elements() == std::vector<std::size_t>{3, 4});
  CHECK(enumerate_subsets(3, 0, BasisOrder::Lex).size() == 1);
}

TEST_CASE("subset counts and ordinals for k <= 10") {
  for (std::size_t k = 1; k <= 10; ++k) {
    for (std::size_t p = 0; p <= k; ++p) {
      for (auto order : {BasisOrder::Lex, BasisOrder::SplitZero}) {
        auto b = enumerate_subsets(k, p, order);
        REQUIRE(b.size() == binomial(k, p));
        std::set<std::uint64_t> seen;
        for (std::size_t i = 0; i < b.size(); ++i) {
          CHECK(b[i].size() == p);
          CHECK(b.ordinal(b[i]) == i);
          seen.insert(b[i].mask());
        }
        CHECK(seen.size() == b.size());
      }
      auto lex = enumerate_subsets(k, p, BasisOrder::Lex);
      auto ref = oracle::lex_subsets(k, p);
      REQUIRE(lex.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(lex[i].elements() == ref[i]);
    }
  }
}

TEST_CASE("wedge_insert examples") {
  auto s = wedge_insert(0, SubsetIndex::of({1}));
  REQUIRE(s);
  CHECK(s->sign == 1);
  CHECK(s->subset.elements() == std::vector<std::size_t>{0, 1});

  s = wedge_insert(2, SubsetIndex::of({0, 1}));
  REQUIRE(s);
  CHECK(s->sign == 1);

  s = wedge_insert(1, SubsetIndex::of({0, 2}));
  REQUIRE(s);
  CHECK(s->sign == -1);
  CHECK(s->subset.elements() == std::vector<std::size_t>{0, 1, 2});

  CHECK_FALSE(wedge_insert(1, SubsetIndex::of({1, 3})));
}

TEST_CASE("wedge signs agree with permutation parity and are antisymmetric") {
  for (std::size_t k = 2; k <= 7; ++k) {
    for (std::size_t p = 0; p + 2 <= k; ++p) {
      for (const auto& sub : oracle::lex_subsets(k, p)) {
        SubsetIndex I = SubsetIndex::of(sub);
        for (std::size_t i = 0; i < k; ++i) {
          auto si = wedge_insert(i, I);
          if (I.contains(i)) {
            CHECK_FALSE(si);
            continue;
          }
          std::vector<std::size_t> seq{i};
          seq.insert(seq.end(), sub.begin(), sub.end());
          CHECK(si->sign == oracle::sort_sign(seq));
          for (std::size_t j = 0; j < k; ++j) {
            if (j == i || I.contains(j)) continue;
            // a_i ^ a_j ^ a_I = - a_j ^ a_i ^ a_I
            auto sj = wedge_insert(j, I);
            auto ij = wedge_insert(i, sj->subset);
            auto ji = wedge_insert(j, si->subset);
            CHECK(ij->subset == ji->subset);
            CHECK(si->sign * ji->sign == -(sj->sign * ij->sign));
          }
        }
      }
    }
  }
}

TEST_CASE("split-zero order") {
  for (std::size_t p = 1; p <= 4; ++p) {
    const std::size_t k = 2 * p + 1;
    auto cols = enumerate_subsets(k, p, BasisOrder::SplitZero);
    auto rows = enumerate_subsets(k, p + 1, BasisOrder::SplitZero);
    const std::size_t zero_cols = binomial(2 * p, p - 1);
    const std::size_t free_rows = binomial(2 * p, p + 1);
    for (std::size_t i = 0; i < cols.size(); ++i) CHECK(cols[i].contains(0) == (i < zero_cols));
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].contains(0) == (i >= free_rows));
    // the 0-containing rows follow the order of the 0-free columns they extend
    for (std::size_t i = 0; i + zero_cols < cols.size(); ++i) {
      auto zk = wedge_insert(0, cols[zero_cols + i]);
      REQUIRE(zk);
      CHECK(zk->sign == 1);
      CHECK(rows[free_rows + i] == zk->subset);
    }
  }
}
