#include "trc/bounds.hpp"

#include <string>

#include "trc/error.hpp"

namespace trc {

namespace {

BigInt big_binomial(std::size_t n, std::size_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt ceil(const Rational& x) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

BigInt big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

void check_p(std::size_t n, std::size_t p) {
  if (p < 1 || p + 1 > n) {
    throw Error(ErrorCode::InvalidArguments,
                "p = " + std::to_string(p) + " is outside 1 <= p <= n-1 for n = " + std::to_string(n));
  }
}

}  // namespace

Rational border_bound_value(std::size_t n, std::size_t m, std::size_t p) {
  Rational r(big(2 * p + 1) * big(n) * big(m), big(p + 1));
  r.canonicalize();
  return r;
}

Rational theorem_rank_value(std::size_t n, std::size_t m, std::size_t p) {
  check_p(n, p);
  const BigInt error = 1 + big(2 * p) * big_binomial(2 * p, p - 1);
  return border_bound_value(n, m, p) + Rational(big(n) * big(n)) - Rational(error * big(n));
}

BigInt theorem_rank_lb(std::size_t n, std::size_t m, std::size_t p) { return ceil(theorem_rank_value(n, m, p)); }

BigInt simple_rank_lb(std::size_t n, std::size_t m, std::size_t p) {
  check_p(n, p);
  const BigInt error = big(2 * p + 1) * big_binomial(2 * p + 1, p);
  return ceil(border_bound_value(n, m, p) + Rational(big(n) * big(n)) - Rational(error * big(n)));
}

ReferenceBounds reference_bounds(std::size_t n, std::size_t m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArguments, "reference bounds need n, m >= 1");
  const BigInt nm = big(n) * big(m);
  return {2 * nm - big(m) + 2 * big(n) - 2, 2 * nm - big(m)};
}

BestP best_p(std::size_t n, std::size_t m) {
  if (n < 2) throw Error(ErrorCode::InvalidArguments, "best_p needs n >= 2");
  BestP best{1, theorem_rank_lb(n, m, 1)};
  for (std::size_t p = 2; p + 1 <= n; ++p) {
    BigInt v = theorem_rank_lb(n, m, p);
    if (v > best.bound) best = {p, std::move(v)};
  }
  return best;
}

const char* to_string(Winner w) {
  switch (w) {
    case Winner::P1: return "p1";
    case Winner::P2: return "p2";
    case Winner::Tie: return "tie";
  }
  return "?";
}

std::vector<CrossoverRow> crossover_table(std::size_t n_max) {
  if (n_max < 3) throw Error(ErrorCode::InvalidArguments, "crossover table needs n_max >= 3");
  std::vector<CrossoverRow> rows;
  for (std::size_t n = 3; n <= n_max; ++n) {
    BigInt b1 = theorem_rank_lb(n, n, 1);
    BigInt b2 = theorem_rank_lb(n, n, 2);
    Winner w = b1 > b2 ? Winner::P1 : (b2 > b1 ? Winner::P2 : Winner::Tie);
    rows.push_back({n, std::move(b1), std::move(b2), w});
  }
  return rows;
}

std::vector<BoundTableRow> bound_table(std::size_t n_min, std::size_t n_max, std::optional<std::size_t> m,
                                       std::size_t p_max) {
  if (n_min < 1 || n_min > n_max || p_max < 1 || (m && *m < 1)) {
    throw Error(ErrorCode::InvalidArguments, "bad bound table range");
  }
  std::vector<BoundTableRow> rows;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    BoundTableRow row{n, m.value_or(n), {}, {}, reference_bounds(n, m.value_or(n)), std::nullopt};
    for (std::size_t p = 1; p <= p_max && p + 1 <= n; ++p) {
      row.theorem.push_back(theorem_rank_lb(n, row.m, p));
      row.simple.push_back(simple_rank_lb(n, row.m, p));
      if (!row.winner_p || row.theorem.back() > row.theorem[*row.winner_p - 1]) row.winner_p = p;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace trc
