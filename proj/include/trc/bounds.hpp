#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trc/field.hpp"

namespace trc {

/// (2p+1)/(p+1) * n * m: the border rank bound certified by a full-rank reduced flattening.
Rational border_bound_value(std::size_t n, std::size_t m, std::size_t p);

/// Exact value of (2p+1)/(p+1) n m + n^2 - (1 + 2p C(2p, p-1)) n.
Rational theorem_rank_value(std::size_t n, std::size_t m, std::size_t p);
/// Ceiling of theorem_rank_value. Throws InvalidArguments unless 1 <= p <= n-1.
BigInt theorem_rank_lb(std::size_t n, std::size_t m, std::size_t p);

/// Ceiling of (2p+1)/(p+1) n m + n^2 - (2p+1) C(2p+1, p) n.
BigInt simple_rank_lb(std::size_t n, std::size_t m, std::size_t p);

struct ReferenceBounds {
  BigInt blaser;         // 2nm - m + 2n - 2 (rank)
  BigInt lo_borderrank;  // 2nm - m (border rank)
};

ReferenceBounds reference_bounds(std::size_t n, std::size_t m);

struct BestP {
  std::size_t p;
  BigInt bound;
};

/// Maximizes theorem_rank_lb over 1 <= p <= n-1, ties toward the smaller p.
BestP best_p(std::size_t n, std::size_t m);

enum class Winner { P1, P2, Tie };
const char* to_string(Winner w);

struct CrossoverRow {
  std::size_t n;
  BigInt bound_p1;
  BigInt bound_p2;
  Winner winner;
};

/// Square case, n = 3..n_max.
std::vector<CrossoverRow> crossover_table(std::size_t n_max);

struct BoundTableRow {
  std::size_t n;
  std::size_t m;
  std::vector<BigInt> theorem;  // index p-1, for p <= min(n-1, p_max)
  std::vector<BigInt> simple;
  ReferenceBounds reference;
  std::optional<std::size_t> winner_p;  // best displayed p, none when n = 1
};

/// Rows n = n_min..n_max; `m` of nullopt means m = n.
std::vector<BoundTableRow> bound_table(std::size_t n_min, std::size_t n_max, std::optional<std::size_t> m,
                                       std::size_t p_max);

}  // namespace trc
