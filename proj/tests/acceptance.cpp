// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "trc/bounds.hpp"
#include "trc/certify.hpp"
#include "trc/error.hpp"
#include "trc/exterior.hpp"
#include "trc/flattening.hpp"
#include "trc/lemma_search.hpp"
#include "trc/oracle.hpp"

using namespace trc;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool run(int id, const char* title, double budget, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << "exception: " << e.what();
  }
  const double took = seconds_since(t0);
  out.expect(took < budget, "over time budget");
  std::printf("%s [%d] %s (%.2fs / %.0fs)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, took, budget,
              out.ok ? "" : ": ", out.ok ? "" : out.detail.str().c_str());
  std::fflush(stdout);
  return out.ok;
}

Tensor3 tensor_with_blocks(const std::vector<DenseMatrix>& blocks) {
  std::vector<DenseMatrix> slices;
  for (const auto& x : blocks) slices.push_back(x.transpose());
  return from_slices(slices);
}

std::vector<DenseMatrix> identity_first_blocks(std::size_t count, std::size_t b, SeededRng& rng) {
  std::vector<DenseMatrix> xs{DenseMatrix::identity(b)};
  for (std::size_t i = 1; i < count; ++i) xs.push_back(oracle::random_matrix(b, b, rng, -4, 4));
  return xs;
}

CertifyOptions seeded(std::uint64_t seed) {
  CertifyOptions o;
  o.seed = seed;
  return o;
}

void formulas(Outcome& o) {
  for (long n = 2; n <= 500; ++n) {
    // ceil((5n^2 - 6n) / 2); the numerator is never negative here
    const long expected = (5 * n * n - 6 * n + 1) / 2;
    o.expect(theorem_rank_lb(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 1) == expected,
             "p=1 formula mismatch at n=" + std::to_string(n));
  }
  for (const auto& row : crossover_table(500)) {
    const bool p2_wins = row.bound_p2 > row.bound_p1;
    o.expect(p2_wins == (row.n > 84), "crossover wrong at n=" + std::to_string(row.n));
    if (row.n == 84) o.expect(row.bound_p1 == row.bound_p2 && row.winner == Winner::Tie, "no tie at n=84");
  }
  o.expect(theorem_rank_lb(84, 84, 1) == 17388, "n=84 value");
}

void references(Outcome& o) {
  for (long n = 1; n <= 60; ++n)
    for (long m = 1; m <= 60; ++m) {
      auto r = reference_bounds(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
      o.expect(r.blaser == 2 * n * m - m + 2 * n - 2, "rank reference bound");
      o.expect(r.lo_borderrank == 2 * n * m - m, "border reference bound");
    }
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t m = 1; m <= 30; ++m) {
      o.expect(border_bound_value(n, m, n - 1) == Rational(reference_bounds(n, m).lo_borderrank),
               "p=n-1 border term at n=" + std::to_string(n));
    }
}

void small_certificates(Outcome& o) {
  struct Case {
    std::size_t n, m, p;
    std::uint64_t lb;
  };
  for (const auto& c : std::vector<Case>{{2, 2, 1, 6}, {3, 3, 1, 14}, {3, 3, 2, 15}, {4, 4, 2, 27}, {4, 4, 3, 28}}) {
    const auto t0 = Clock::now();
    auto cert = certify_matmul(c.n, c.m, c.p, seeded(20240101));
    const std::string tag = "(" + std::to_string(c.n) + "," + std::to_string(c.m) + "," + std::to_string(c.p) + ")";
    o.expect(cert.primes.front() == default_prime(), tag + " not sampled at the default prime");
    o.expect(cert.full_rank, tag + " not full rank");
    o.expect(cert.attempts_used <= 1 + 3, tag + " needed more than 3 retries");
    o.expect(cert.border_rank_lb == c.lb, tag + " bound " + std::to_string(cert.border_rank_lb));
    o.expect(seconds_since(t0) < 1.0, tag + " over 1 s");
  }
}

void coordinate_form(Outcome& o) {
  SeededRng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t b = 2 + trial % 2;
    auto x = identity_first_blocks(3, b, rng);
    const Rational full = det_exact(build_koszul(tensor_with_blocks(x), 1).matrix);
    const Rational comm = oracle::det(commutator(x[1], x[2]));
    o.expect(abs(full) == abs(comm), "p=1 |det| mismatch in trial " + std::to_string(trial));
    o.expect(commutator_block({x[1], x[2]}, 1).matrix == commutator(x[1], x[2]), "p=1 block is not [X1,X2]");
  }
  const std::size_t p = 2;
  const std::size_t nb = binomial(2 * p, p - 1);
  auto expected = commutator_pattern(p);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t b = 2 + trial % 2;
    auto x = identity_first_blocks(2 * p + 1, b, rng);
    auto cb = commutator_block(std::vector<DenseMatrix>(x.begin() + 1, x.end()), p);
    std::map<std::pair<std::size_t, std::size_t>, int> uses;
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        const auto& e = cb.pattern[i][j];
        o.expect(e.sign == expected[i][j].sign && e.first == expected[i][j].first &&
                     e.second == expected[i][j].second,
                 "recorded pattern differs");
        o.expect((i == j) == (e.sign == 0), "diagonal blocks must be exactly the zero blocks");
        DenseMatrix want(b, b);
        if (e.sign != 0) {
          want = commutator(x[e.first], x[e.second]) * Rational(e.sign);
          ++uses[{e.first, e.second}];
        }
        DenseMatrix got(b, b);
        for (std::size_t r = 0; r < b; ++r)
          for (std::size_t c = 0; c < b; ++c) got(r, c) = cb.matrix(i * b + r, j * b + c);
        o.expect(got == want, "block (" + std::to_string(i) + "," + std::to_string(j) + ") is not its commutator");
      }
    o.expect(uses.size() == binomial(2 * p, 2), "not every commutator pair appears");
    for (const auto& [pair, n] : uses) o.expect(n == 2, "commutator pair not used by one symmetric block pair");
    const Rational full = det_exact(build_koszul(tensor_with_blocks(x), p).matrix);
    o.expect(abs(full) == abs(oracle::det(cb.matrix)), "p=2 |det| mismatch");
  }
}

void rank_one_and_subadditivity(Outcome& o) {
  const std::size_t want[] = {2, 6, 20};
  for (std::size_t p = 1; p <= 3; ++p) {
    o.expect(rank_one_flattening_rank(p, 3, 100 + p) == want[p - 1], "rank-one rank at p=" + std::to_string(p));
  }
  SeededRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 1 + trial % 2;
    Dims d{2 * p + 1, 2 + rng.below(2), 2 + rng.below(2)};
    auto t1 = oracle::random_tensor(d, rng), t2 = oracle::random_tensor(d, rng);
    auto f1 = build_koszul(t1, p), f2 = build_koszul(t2, p), f12 = build_koszul(t1 + t2, p);
    o.expect(f12.matrix == f1.matrix + f2.matrix, "flattening not linear");
    o.expect(rank_exact(f12.matrix) <= rank_exact(f1.matrix) + rank_exact(f2.matrix), "rank not subadditive");
  }
  auto rep = soundness_sweep({5, 4, 4}, 1, 5, 100, 777);
  o.expect(rep.violations == 0, "sweep violations");
}

void reduction_identity(Outcome& o) {
  SeededRng rng(6);
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {3, 3}}) {
    for (std::size_t p = 1; p + 1 <= n && p <= 2; ++p) {
      Subspace w = Subspace::random(n * n, 2 * p + 1, kMersenne31, rng);
      const auto reduced = rank_exact(build_reduced_matmul(n, w, p).matrix);
      const auto full =
          rank_exact(build_koszul(restrict_A(matmul_tensor({n, n, m}), transport_to_matmul(n, w)), p).matrix);
      o.expect(full == m * reduced, "reduction identity fails at (n,m,p)=(" + std::to_string(n) + "," +
                                        std::to_string(m) + "," + std::to_string(p) + ")");
    }
  }
}

void lemma_searches(Outcome& o) {
  const PrimeField f(kMersenne31);
  PointEvaluator cubic = [&](std::span<const std::uint64_t> x) { return f.mul(f.mul(x[0], x[1]), x[2]); };
  auto a = greedy_support(cubic, 5, 3, 11), a2 = greedy_support(cubic, 5, 3, 11);
  o.expect(a.support == std::vector<std::size_t>{0, 1, 2}, "x1x2x3 support");
  o.expect(a.support == a2.support && a.witness == a2.witness, "greedy search not deterministic");

  auto minor = [&](std::uint64_t p, std::uint64_t q, std::uint64_t r, std::uint64_t s) {
    return f.sub(f.mul(p, s), f.mul(q, r));
  };
  TupleEvaluator sharp = [&](const std::vector<std::vector<std::uint64_t>>& x) {
    return f.mul(minor(x[0][0], x[0][1], x[1][0], x[1][1]), minor(x[0][2], x[0][3], x[1][2], x[1][3]));
  };
  auto g = grassmann_support(sharp, 4, 2, 2, 12), g2 = grassmann_support(sharp, 4, 2, 2, 12);
  o.expect(g.support.size() == 4, "sharpness example support has " + std::to_string(g.support.size()) + " coordinates");
  o.expect(g.support == g2.support && g.witness == g2.witness, "grassmann search not deterministic");
  o.expect(sharp(g.witness) != 0, "witness does not certify nonvanishing");
}

void replay(Outcome& o) {
  std::vector<Certificate> certs;
  for (auto [n, m, p] : std::vector<std::array<std::size_t, 3>>{{2, 2, 1}, {3, 3, 1}, {3, 3, 2}, {4, 4, 2}, {4, 4, 3}}) {
    certs.push_back(certify_matmul(n, m, p, seeded(n * 100 + m * 10 + p)));
  }
  for (const auto& c : certs) {
    auto r = replay_certificate(c);
    o.expect(r.ranks_match && r.bounds_match, "matmul replay mismatch");
  }
  auto rr = random_rank_r({5, 3, 3}, 3, Domain::rational(), 9);
  auto tc = certify_tensor(rr.tensor, 2, seeded(9));
  auto tr = replay_certificate(tc, &rr.tensor);
  o.expect(tr.ranks_match && tr.bounds_match, "tensor replay mismatch");

  // audit: modular ranks against the exact rank, default and tiny primes
  for (int i = 0; i < 20; ++i) {
    CertifyOptions opts = seeded(5000 + i);
    opts.exact = true;
    if (i % 2 == 1) opts.primes = {5, 3, 2};
    auto t = random_rank_r({3, 3, 3}, static_cast<std::size_t>(i % 5), Domain::rational(), 6000 + i);
    const Certificate c = i < 10 ? certify_matmul(2 + i % 2, 2, 1, opts) : certify_tensor(t.tensor, 1, opts);
    for (auto r : c.prime_ranks) o.expect(r <= *c.exact_rank, "modular rank exceeds exact rank");
    o.expect(replay_certificate(c, &t.tensor).ranks_match, "exact replay mismatch");
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "formula reproduction and p=1/p=2 crossover at n=84", 1, formulas);
  ok &= run(2, "reference bounds and the p=n-1 border term", 1, references);
  ok &= run(3, "small-instance matmul certificates", 5, small_certificates);
  ok &= run(4, "coordinate form: commutator determinants and p=2 pattern", 30, coordinate_form);
  ok &= run(5, "rank-one ranks, linearity, subadditivity, soundness sweep", 60, rank_one_and_subadditivity);
  ok &= run(6, "reduction identity full = m * reduced", 30, reduction_identity);
  ok &= run(7, "support searches", 5, lemma_searches);
  ok &= run(8, "certificate replay and modular/exact audit", 60, replay);
  return ok ? 0 : 1;
}
