#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trc/tensor.hpp"

namespace trc {

struct KnownDecomposition {
  std::string name;
  MatMulDescriptor desc;
  Decomposition decomposition;
  std::size_t claimed_rank;
};

/// Strassen's 7-multiplication algorithm for 2x2 matrices as rank-one terms of
/// matmul_tensor({2,2,2}).
KnownDecomposition strassen_7();
/// The m*n*l-term schoolbook algorithm.
KnownDecomposition schoolbook(const MatMulDescriptor& desc);

/// Every registered decomposition, each checked with verify_decomposition on load.
const std::vector<KnownDecomposition>& known_decompositions();

/// Rank over Q of the Koszul flattening of a random rank-one tensor in
/// C^{2p+1} (x) C^b (x) C^b; generically C(2p, p).
std::size_t rank_one_flattening_rank(std::size_t p, std::size_t b, std::uint64_t seed);

struct SweepRow {
  std::size_t r = 0;
  std::size_t trials = 0;
  std::uint64_t min_lb = 0;
  std::uint64_t max_lb = 0;
  std::size_t tight = 0;  // trials with border_rank_lb == r
};

struct SweepReport {
  std::string format = "trc.sweep/1";
  Dims dims;
  std::size_t p = 0;
  std::size_t r_max = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;
  std::size_t violations = 0;
};

/// For r = 0..r_max and each trial, certifies a random tensor of rank <= r and checks
/// border_rank_lb <= r. Throws SweepViolation (with r, trial and seeds) on any excess.
SweepReport soundness_sweep(Dims dims, std::size_t p, std::size_t r_max, std::size_t trials, std::uint64_t seed);

/// Seeds used by trial `trial` at rank r of a sweep.
struct TrialSeeds {
  std::uint64_t tensor;
  std::uint64_t subspace;
};
TrialSeeds sweep_trial_seeds(std::uint64_t seed, std::size_t r, std::size_t trial, std::size_t trials);

}  // namespace trc
