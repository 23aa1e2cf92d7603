#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trc/dense_matrix.hpp"
#include "trc/tensor.hpp"

namespace trc {

enum class BoundFormula { Theorem11, Simple, None };
const char* to_string(BoundFormula f);
BoundFormula parse_bound_formula(const std::string& s);

struct CertifyOptions {
  std::uint64_t seed = 0;
  std::size_t retries = 3;
  /// Empty: the default prime followed by the next two primes below it. The first
  /// prime is also the sampling field for the subspace.
  std::vector<std::uint64_t> primes;
  /// Rank over Q (fraction-free elimination) instead of the multi-prime rank.
  bool exact = false;
  BoundFormula formula = BoundFormula::Theorem11;
};

struct Certificate {
  std::string format = "trc.certificate/1";
  std::string tool_version;

  std::string target;  // "matmul" or "tensor"
  std::size_t n = 0;   // matmul target M<n,n,m>
  std::size_t m = 0;
  Dims tensor_dims;    // tensor target
  std::string tensor_hash;
  std::string domain = "rational";

  std::size_t p = 0;
  DenseMatrix subspace;  // (2p+1) x a basis of A'

  std::vector<std::uint64_t> primes;
  std::vector<std::size_t> prime_ranks;
  bool exact = false;
  std::optional<std::size_t> exact_rank;

  std::size_t flattening_rows = 0;
  std::size_t flattening_cols = 0;
  std::size_t flattening_rank = 0;
  std::size_t full_rank_target = 0;
  bool full_rank = false;

  std::size_t m_factor = 1;
  std::uint64_t border_rank_lb = 0;
  std::optional<std::int64_t> rank_lb;
  std::optional<std::int64_t> rank_lb_formula_raw;
  BoundFormula bound_formula = BoundFormula::None;

  std::uint64_t seed = 0;
  std::size_t retries = 0;
  std::size_t attempts_used = 0;
  /// False when the flattening never reached full rank (matmul) within the retries.
  bool complete = true;
  std::string notes;
};

/// Certifies border rank (and, at full rank, rank) lower bounds for M<n,n,m> from a
/// random (2p+1)-dimensional subspace of the n^2-dimensional factor. Throws
/// InvalidArguments unless 1 <= p <= n-1 and m >= 1. A certificate is returned even
/// when the retries are exhausted; it then has complete = false.
Certificate certify_matmul(std::size_t n, std::size_t m, std::size_t p, const CertifyOptions& opts);

/// General-tensor certificate: ceil(rank / C(2p,p)) from the best of the attempts.
Certificate certify_tensor(const Tensor3& t, std::size_t p, const CertifyOptions& opts);

struct ReplayReport {
  bool ranks_match = false;
  bool bounds_match = false;
  Certificate recomputed;
};

/// Rebuilds the flattening from the recorded subspace and primes and recomputes every
/// rank and bound. Tensor targets need the tensor; its hash must match.
ReplayReport replay_certificate(const Certificate& cert, const Tensor3* tensor = nullptr);

std::string tensor_hash(const Tensor3& t);

}  // namespace trc
