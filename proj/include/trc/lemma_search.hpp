#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "trc/field.hpp"

namespace trc {

/// Black-box polynomial over GF(q) evaluated at a coordinate vector.
using PointEvaluator = std::function<std::uint64_t(std::span<const std::uint64_t>)>;
/// Black-box polynomial in k vector arguments (one row per argument).
using TupleEvaluator = std::function<std::uint64_t(const std::vector<std::vector<std::uint64_t>>&)>;

struct ProbeOptions {
  std::uint64_t q = kMersenne31;
  std::size_t initial_probes = 16;
  std::size_t probes_per_step = 8;
};

struct SupportResult {
  std::vector<std::size_t> support;        // sorted coordinate indices
  std::vector<std::uint64_t> witness;      // nonzero point supported on `support`
  std::uint64_t witness_value = 0;
  std::size_t evaluations = 0;
  /// Upper bound on the probability that some coordinate was kept although the
  /// restriction without it is nonzero: (#kept) * (deg/q)^probes_per_step.
  double failure_bound = 0.0;
};

/// Finds at most `degree_bound` coordinates whose span the polynomial does not vanish on.
/// Throws IdenticallyZeroWitness if no nonzero value shows up in the initial probes.
SupportResult greedy_support(const PointEvaluator& poly, std::size_t dim, std::size_t degree_bound,
                             std::uint64_t seed, const ProbeOptions& opts = {});

struct TupleSupportResult {
  std::vector<std::vector<std::size_t>> per_copy;  // support chosen for each argument
  std::vector<std::size_t> support;                // union, sorted
  std::vector<std::vector<std::uint64_t>> witness;
  std::uint64_t witness_value = 0;
  std::size_t evaluations = 0;
  double failure_bound = 0.0;
};

/// Runs the coordinate search once per argument of a polynomial of degree at most
/// `degree_bound` in each of its k vector arguments; the union has at most d*k indices.
TupleSupportResult grassmann_support(const TupleEvaluator& poly, std::size_t dim, std::size_t k,
                                     std::size_t degree_bound, std::uint64_t seed, const ProbeOptions& opts = {});

}  // namespace trc
