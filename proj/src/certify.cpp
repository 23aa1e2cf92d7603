#include "trc/certify.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "trc/bounds.hpp"
#include "trc/error.hpp"
#include "trc/exterior.hpp"
#include "trc/flattening.hpp"
#include "trc/version.hpp"

namespace trc {

const char* to_string(BoundFormula f) {
  switch (f) {
    case BoundFormula::Theorem11: return "theorem11";
    case BoundFormula::Simple: return "simple";
    case BoundFormula::None: return "none";
  }
  return "none";
}

BoundFormula parse_bound_formula(const std::string& s) {
  if (s == "theorem11" || s == "theorem") return BoundFormula::Theorem11;
  if (s == "simple") return BoundFormula::Simple;
  if (s == "none") return BoundFormula::None;
  throw Error(ErrorCode::InvalidArguments, "unknown bound formula '" + s + "'");
}

std::string tensor_hash(const Tensor3& t) {
  std::string canon = std::to_string(t.dims().a) + "," + std::to_string(t.dims().b) + "," +
                      std::to_string(t.dims().c) + ";" + std::to_string(t.domain().modulus());
  for (const auto& [idx, v] : t.entries()) {
    canon += ";" + std::to_string(idx[0]) + "," + std::to_string(idx[1]) + "," + std::to_string(idx[2]) + "," +
             to_string(v);
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::vector<std::uint64_t> resolve_primes(const std::vector<std::uint64_t>& requested) {
  if (requested.empty()) return descending_primes(default_prime(), 3);
  for (auto q : requested) PrimeField check(q);
  return requested;
}

/// Fills the rank fields of `cert` from the flattening.
void rank_flattening(const FlatteningMatrix& f, Certificate& cert) {
  cert.flattening_rows = f.matrix.rows();
  cert.flattening_cols = f.matrix.cols();
  auto multi = rank_multi_prime(f.matrix, cert.primes);
  cert.prime_ranks = multi.ranks;
  cert.flattening_rank = multi.rank;
  cert.exact_rank.reset();
  if (cert.exact) {
    cert.exact_rank = rank_exact(f.matrix);
    cert.flattening_rank = *cert.exact_rank;
  }
}

std::uint64_t ceil_div(std::uint64_t x, std::uint64_t y) { return (x + y - 1) / y; }

void assemble_matmul_bounds(Certificate& cert, BoundFormula formula) {
  const std::uint64_t rank_one = binomial(2 * cert.p, cert.p);
  cert.full_rank_target = binomial(2 * cert.p + 1, cert.p) * cert.n;
  cert.full_rank = cert.flattening_rank == cert.full_rank_target;
  cert.border_rank_lb = ceil_div(cert.m_factor * cert.flattening_rank, rank_one);
  const auto trivial = static_cast<std::int64_t>(cert.n * cert.m);
  cert.complete = cert.full_rank;
  if (cert.full_rank && formula != BoundFormula::None) {
    BigInt raw = formula == BoundFormula::Theorem11 ? theorem_rank_lb(cert.n, cert.m, cert.p)
                                                    : simple_rank_lb(cert.n, cert.m, cert.p);
    cert.rank_lb_formula_raw = raw.get_si();
    cert.rank_lb = std::max(*cert.rank_lb_formula_raw, trivial);
    cert.bound_formula = formula;
  } else {
    cert.rank_lb_formula_raw.reset();
    cert.rank_lb = trivial;
    cert.bound_formula = BoundFormula::None;
  }
}

void assemble_tensor_bounds(Certificate& cert) {
  const std::uint64_t rank_one = binomial(2 * cert.p, cert.p);
  cert.full_rank_target = std::min(cert.flattening_rows, cert.flattening_cols);
  cert.full_rank = cert.flattening_rank == cert.full_rank_target;
  cert.border_rank_lb = ceil_div(cert.flattening_rank, rank_one);
  cert.complete = true;
  cert.bound_formula = BoundFormula::None;
}

Certificate base_certificate(std::size_t p, const CertifyOptions& opts) {
  Certificate cert;
  cert.tool_version = kVersion;
  cert.p = p;
  cert.primes = resolve_primes(opts.primes);
  cert.exact = opts.exact;
  cert.seed = opts.seed;
  cert.retries = opts.retries;
  return cert;
}

/// Restricts after clearing denominators so the flattening reduces modulo every prime.
FlatteningMatrix tensor_flattening(const Tensor3& t, const Subspace& w, std::size_t p) {
  const Tensor3 base = t.domain().is_rational() ? t.integerized() : t;
  auto f = build_koszul(restrict_A(base, w), p);
  f.subspace = w;
  f.descriptor = "tensor";
  return f;
}

}  // namespace

Certificate certify_matmul(std::size_t n, std::size_t m, std::size_t p, const CertifyOptions& opts) {
  if (p < 1 || p + 1 > n) {
    throw Error(ErrorCode::InvalidArguments,
                "p = " + std::to_string(p) + " must satisfy 1 <= p <= n-1 (n = " + std::to_string(n) + ")");
  }
  if (m < 1) throw Error(ErrorCode::InvalidArguments, "m must be >= 1");
  Certificate cert = base_certificate(p, opts);
  cert.target = "matmul";
  cert.n = n;
  cert.m = m;
  cert.m_factor = m;
  const std::size_t full = binomial(2 * p + 1, p) * n;

  SeededRng rng(opts.seed);
  Certificate best = cert;
  bool have_best = false;
  for (std::size_t attempt = 0; attempt <= opts.retries; ++attempt) {
    Subspace w = Subspace::random(n * n, 2 * p + 1, cert.primes.front(), rng);
    Certificate trial = cert;
    trial.subspace = w.basis();
    trial.attempts_used = attempt + 1;
    rank_flattening(build_reduced_matmul(n, w, p), trial);
    if (!have_best || trial.flattening_rank > best.flattening_rank) {
      best = std::move(trial);
      have_best = true;
    }
    best.attempts_used = attempt + 1;
    if (best.flattening_rank == full) break;
  }
  assemble_matmul_bounds(best, opts.formula);
  if (!best.complete) {
    best.notes = "reduced flattening not of full rank after " + std::to_string(best.attempts_used) +
                 " attempts; border bound is the achieved ceil(m * rank / C(2p,p))";
  } else if (best.rank_lb_formula_raw && *best.rank_lb_formula_raw < *best.rank_lb) {
    best.notes = "rank formula below the trivial bound n*m; clamped";
  }
  return best;
}

Certificate certify_tensor(const Tensor3& t, std::size_t p, const CertifyOptions& opts) {
  if (p < 1) throw Error(ErrorCode::InvalidArguments, "p must be >= 1");
  const Dims& d = t.dims();
  if (d.a < 2 * p + 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "tensor has a = " + std::to_string(d.a) + " < 2p+1 = " + std::to_string(2 * p + 1));
  }
  CertifyOptions effective = opts;
  if (!t.domain().is_rational()) effective.primes = {t.domain().modulus()};
  Certificate cert = base_certificate(p, effective);
  cert.target = "tensor";
  cert.tensor_dims = d;
  cert.tensor_hash = tensor_hash(t);
  cert.domain = t.domain().is_rational() ? "rational" : "gfp:" + std::to_string(t.domain().modulus());
  cert.m_factor = 1;

  SeededRng rng(effective.seed);
  Certificate best = cert;
  bool have_best = false;
  for (std::size_t attempt = 0; attempt <= effective.retries; ++attempt) {
    Subspace w = Subspace::random(d.a, 2 * p + 1, cert.primes.front(), rng);
    Certificate trial = cert;
    trial.subspace = w.basis();
    rank_flattening(tensor_flattening(t, w, p), trial);
    if (!have_best || trial.flattening_rank > best.flattening_rank) {
      best = std::move(trial);
      have_best = true;
    }
    best.attempts_used = attempt + 1;
    if (best.flattening_rank == std::min(best.flattening_rows, best.flattening_cols)) break;
  }
  assemble_tensor_bounds(best);
  if (d.b != d.c) best.notes = "rectangular b != c: ratio bound only, no square determinant";
  return best;
}

ReplayReport replay_certificate(const Certificate& cert, const Tensor3* tensor) {
  ReplayReport report;
  Certificate re = cert;
  Subspace w(cert.subspace);
  if (cert.target == "matmul") {
    rank_flattening(build_reduced_matmul(cert.n, w, cert.p), re);
    assemble_matmul_bounds(re, cert.full_rank ? cert.bound_formula : BoundFormula::Theorem11);
  } else if (cert.target == "tensor") {
    if (tensor == nullptr) throw Error(ErrorCode::InvalidArguments, "tensor certificate replay needs the tensor");
    if (tensor_hash(*tensor) != cert.tensor_hash) {
      throw Error(ErrorCode::InvalidArguments, "tensor does not match the certificate hash");
    }
    rank_flattening(tensor_flattening(*tensor, w, cert.p), re);
    assemble_tensor_bounds(re);
  } else {
    throw Error(ErrorCode::InvalidArguments, "unknown certificate target '" + cert.target + "'");
  }
  report.ranks_match = re.prime_ranks == cert.prime_ranks && re.flattening_rank == cert.flattening_rank &&
                       re.exact_rank == cert.exact_rank && re.flattening_rows == cert.flattening_rows &&
                       re.flattening_cols == cert.flattening_cols;
  report.bounds_match = re.border_rank_lb == cert.border_rank_lb && re.rank_lb == cert.rank_lb &&
                        re.rank_lb_formula_raw == cert.rank_lb_formula_raw && re.full_rank == cert.full_rank;
  report.recomputed = std::move(re);
  return report;
}

}  // namespace trc
