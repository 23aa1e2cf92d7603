#include "trc/oracle.hpp"

#include <algorithm>
#include <string>

#include "trc/certify.hpp"
#include "trc/error.hpp"
#include "trc/flattening.hpp"
#include "trc/parallel.hpp"

namespace trc {

namespace {

/// Rank-one term u(X) v(Y) w(Z) built from coefficient lists on matrix entries.
/// X is m x n, Y is n x l; w holds the coefficients of the product entries C[i][k].
struct BilinearTerm {
  std::vector<std::pair<std::size_t, int>> x;  // (i*n + j, coeff)
  std::vector<std::pair<std::size_t, int>> y;  // (j*l + k, coeff)
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, int>> c;  // ((i, k), coeff)
};

RankOneTerm to_rank_one(const MatMulDescriptor& d, const BilinearTerm& t) {
  RankOneTerm term{std::vector<Rational>(d.m * d.n), std::vector<Rational>(d.n * d.l),
                   std::vector<Rational>(d.l * d.m)};
  for (auto [idx, v] : t.x) term.u[idx] = v;
  for (auto [idx, v] : t.y) term.v[idx] = v;
  // trace(XYZ) pairs C[i][k] with Z[k][i], which sits at index k*m + i.
  for (auto [ik, v] : t.c) term.w[ik.second * d.m + ik.first] = v;
  return term;
}

}  // namespace

KnownDecomposition strassen_7() {
  const MatMulDescriptor d{2, 2, 2};
  // Entry indices: A11=0 A12=1 A21=2 A22=3, same for B; C entries as (i, k).
  const std::vector<BilinearTerm> terms = {
      {{{0, 1}, {3, 1}}, {{0, 1}, {3, 1}}, {{{0, 0}, 1}, {{1, 1}, 1}}},              // M1
      {{{2, 1}, {3, 1}}, {{0, 1}}, {{{1, 0}, 1}, {{1, 1}, -1}}},                     // M2
      {{{0, 1}}, {{1, 1}, {3, -1}}, {{{0, 1}, 1}, {{1, 1}, 1}}},                     // M3
      {{{3, 1}}, {{2, 1}, {0, -1}}, {{{0, 0}, 1}, {{1, 0}, 1}}},                     // M4
      {{{0, 1}, {1, 1}}, {{3, 1}}, {{{0, 0}, -1}, {{0, 1}, 1}}},                     // M5
      {{{2, 1}, {0, -1}}, {{0, 1}, {1, 1}}, {{{1, 1}, 1}}},                          // M6
      {{{1, 1}, {3, -1}}, {{2, 1}, {3, 1}}, {{{0, 0}, 1}}},                          // M7
  };
  KnownDecomposition k{"strassen7", d, {}, 7};
  for (const auto& t : terms) k.decomposition.terms.push_back(to_rank_one(d, t));
  return k;
}

KnownDecomposition schoolbook(const MatMulDescriptor& d) {
  KnownDecomposition k{"schoolbook" + std::to_string(d.m) + std::to_string(d.n) + std::to_string(d.l), d, {},
                       d.m * d.n * d.l};
  for (std::size_t i = 0; i < d.m; ++i)
    for (std::size_t j = 0; j < d.n; ++j)
      for (std::size_t l = 0; l < d.l; ++l)
        k.decomposition.terms.push_back(to_rank_one(d, {{{i * d.n + j, 1}}, {{j * d.l + l, 1}}, {{{i, l}, 1}}}));
  return k;
}

const std::vector<KnownDecomposition>& known_decompositions() {
  static const std::vector<KnownDecomposition> registry = [] {
    std::vector<KnownDecomposition> r{strassen_7(), schoolbook({2, 2, 2}), schoolbook({2, 2, 1}),
                                      schoolbook({2, 3, 2}), schoolbook({3, 3, 3})};
    for (const auto& k : r) {
      if (!verify_decomposition(matmul_tensor(k.desc), k.decomposition)) {
        throw std::logic_error("registered decomposition " + k.name + " does not verify");
      }
    }
    return r;
  }();
  return registry;
}

std::size_t rank_one_flattening_rank(std::size_t p, std::size_t b, std::uint64_t seed) {
  if (p < 1 || b < 1) throw Error(ErrorCode::InvalidArguments, "rank-one flattening needs p, b >= 1");
  auto sample = random_rank_r({2 * p + 1, b, b}, 1, Domain::rational(), seed);
  return rank_exact(build_koszul(sample.tensor, p).matrix);
}

TrialSeeds sweep_trial_seeds(std::uint64_t seed, std::size_t r, std::size_t trial, std::size_t trials) {
  const std::uint64_t index = static_cast<std::uint64_t>(r) * trials + trial;
  SeededRng rng = SeededRng::derive(seed, index);
  const std::uint64_t tensor = rng.next();
  return {tensor, rng.next()};
}

SweepReport soundness_sweep(Dims dims, std::size_t p, std::size_t r_max, std::size_t trials, std::uint64_t seed) {
  if (dims.a < 2 * p + 1) throw Error(ErrorCode::InvalidArguments, "sweep dims need a >= 2p+1");
  SweepReport report{"trc.sweep/1", dims, p, r_max, trials, seed, {}, 0};
  const std::size_t total = (r_max + 1) * trials;
  std::vector<std::uint64_t> lbs(total);
  parallel_for(total, [&](std::size_t job) {
    const std::size_t r = job / trials, trial = job % trials;
    const auto seeds = sweep_trial_seeds(seed, r, trial, trials);
    auto sample = random_rank_r(dims, r, Domain::rational(), seeds.tensor);
    CertifyOptions opts;
    opts.seed = seeds.subspace;
    lbs[job] = certify_tensor(sample.tensor, p, opts).border_rank_lb;
  });
  for (std::size_t r = 0; r <= r_max; ++r) {
    SweepRow row{r, trials, 0, 0, 0};
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t lb = lbs[r * trials + trial];
      if (trial == 0 || lb < row.min_lb) row.min_lb = lb;
      row.max_lb = std::max(row.max_lb, lb);
      if (lb == r) ++row.tight;
      if (lb > r) {
        const auto seeds = sweep_trial_seeds(seed, r, trial, trials);
        throw Error(ErrorCode::SweepViolation,
                    "border_rank_lb " + std::to_string(lb) + " > r = " + std::to_string(r) + " (trial " +
                        std::to_string(trial) + ", tensor seed " + std::to_string(seeds.tensor) +
                        ", subspace seed " + std::to_string(seeds.subspace) + ", p = " + std::to_string(p) + ")");
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace trc
