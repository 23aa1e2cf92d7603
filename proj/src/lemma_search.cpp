#include "trc/lemma_search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trc/error.hpp"

namespace trc {

namespace {

/// Greedy coordinate removal for argument `copy` of a tuple polynomial. The other
/// arguments are redrawn on every probe: earlier ones on their chosen supports,
/// later ones on all coordinates.
struct CopySearch {
  const TupleEvaluator& poly;
  std::size_t dim;
  const ProbeOptions& opts;
  SeededRng& rng;
  std::vector<std::vector<std::size_t>> supports;  // one per argument, full for unvisited copies
  std::size_t evaluations = 0;

  std::vector<std::vector<std::uint64_t>> draw(std::size_t copy, const std::vector<std::size_t>& copy_support) {
    std::vector<std::vector<std::uint64_t>> point(supports.size(), std::vector<std::uint64_t>(dim, 0));
    for (std::size_t a = 0; a < supports.size(); ++a) {
      const auto& s = a == copy ? copy_support : supports[a];
      for (auto idx : s) point[a][idx] = rng.below(opts.q);
    }
    return point;
  }

  /// First nonzero value among `probes` random points, if any.
  bool probe(std::size_t copy, const std::vector<std::size_t>& copy_support, std::size_t probes,
             std::vector<std::vector<std::uint64_t>>& witness, std::uint64_t& value) {
    for (std::size_t t = 0; t < probes; ++t) {
      auto point = draw(copy, copy_support);
      ++evaluations;
      std::uint64_t v = poly(point) % opts.q;
      if (v != 0) {
        witness = std::move(point);
        value = v;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

TupleSupportResult grassmann_support(const TupleEvaluator& poly, std::size_t dim, std::size_t k,
                                     std::size_t degree_bound, std::uint64_t seed, const ProbeOptions& opts) {
  if (k == 0 || dim == 0) throw Error(ErrorCode::InvalidArguments, "support search needs k >= 1 and dim >= 1");
  PrimeField check(opts.q);
  SeededRng rng(seed);
  std::vector<std::size_t> all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  CopySearch search{poly, dim, opts, rng, std::vector<std::vector<std::size_t>>(k, all)};

  TupleSupportResult out;
  std::size_t kept_on_zero = 0;
  for (std::size_t copy = 0; copy < k; ++copy) {
    std::vector<std::size_t> current = all;
    if (!search.probe(copy, current, opts.initial_probes, out.witness, out.witness_value)) {
      throw Error(ErrorCode::IdenticallyZeroWitness,
                  "no nonzero value in " + std::to_string(opts.initial_probes) + " probes (argument " +
                      std::to_string(copy) + ")");
    }
    for (std::size_t coord = 0; coord < dim; ++coord) {
      std::vector<std::size_t> trial;
      std::copy_if(current.begin(), current.end(), std::back_inserter(trial),
                   [coord](std::size_t i) { return i != coord; });
      if (search.probe(copy, trial, opts.probes_per_step, out.witness, out.witness_value)) {
        current = std::move(trial);
      } else {
        ++kept_on_zero;
      }
    }
    search.supports[copy] = current;
  }
  out.evaluations = search.evaluations;
  out.per_copy = search.supports;
  for (const auto& s : out.per_copy) out.support.insert(out.support.end(), s.begin(), s.end());
  std::sort(out.support.begin(), out.support.end());
  out.support.erase(std::unique(out.support.begin(), out.support.end()), out.support.end());
  // Schwartz-Zippel with the total degree d*k of the probed polynomial.
  const double per_step = std::pow(static_cast<double>(degree_bound * k) / static_cast<double>(opts.q),
                                   static_cast<double>(opts.probes_per_step));
  out.failure_bound = std::min(1.0, static_cast<double>(kept_on_zero) * per_step);
  return out;
}

SupportResult greedy_support(const PointEvaluator& poly, std::size_t dim, std::size_t degree_bound,
                             std::uint64_t seed, const ProbeOptions& opts) {
  auto tuple = grassmann_support(
      [&poly](const std::vector<std::vector<std::uint64_t>>& args) { return poly(args[0]); }, dim, 1, degree_bound,
      seed, opts);
  SupportResult out;
  out.support = std::move(tuple.per_copy[0]);
  out.witness = std::move(tuple.witness[0]);
  out.witness_value = tuple.witness_value;
  out.evaluations = tuple.evaluations;
  out.failure_bound = tuple.failure_bound;
  return out;
}

}  // namespace trc
