// Command-line front end: certify, table, crossover, flatten, sweep, verify, replay, matmul.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trc/bounds.hpp"
#include "trc/certify.hpp"
#include "trc/error.hpp"
#include "trc/flattening.hpp"
#include "trc/io.hpp"
#include "trc/oracle.hpp"
#include "trc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitIo = 3;

struct CommandConfig {
  std::size_t n = 0, m = 0, l = 0, p = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> primes;
  std::size_t retries = 3;
  bool exact = false;
  std::string formula = "theorem11";
  std::string in, out, tensor_path, decomp_path, cert_path;
  std::string order = "lex";
  std::string format = "csv";
  std::size_t n_min = 2, n_max = 0, p_max = 3;
  std::optional<std::size_t> table_m;
  std::size_t r_max = 5, trials = 100;
  std::vector<std::size_t> dims{5, 4, 4};
};

std::uint64_t resolve_seed(const CommandConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << s << '\n';
  return s;
}

void emit(const CommandConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    trc::write_text_file(cfg.out, text);
  }
}

trc::CertifyOptions certify_options(const CommandConfig& cfg) {
  trc::CertifyOptions opts;
  opts.seed = resolve_seed(cfg);
  opts.retries = cfg.retries;
  opts.primes = cfg.primes;
  opts.exact = cfg.exact;
  opts.formula = trc::parse_bound_formula(cfg.formula);
  return opts;
}

trc::BasisOrder parse_order(const std::string& s) {
  if (s == "lex") return trc::BasisOrder::Lex;
  if (s == "split" || s == "split_zero") return trc::BasisOrder::SplitZero;
  throw trc::Error(trc::ErrorCode::InvalidArguments, "order must be lex or split");
}

int cmd_certify_matmul(const CommandConfig& cfg) {
  // reject bad parameters before a seed is drawn and printed
  (void)trc::theorem_rank_lb(cfg.n, cfg.m == 0 ? 1 : cfg.m, cfg.p);
  auto cert = trc::certify_matmul(cfg.n, cfg.m, cfg.p, certify_options(cfg));
  emit(cfg, trc::to_json(cert).dump(2) + "\n");
  if (!cert.complete) {
    std::cerr << "certification incomplete: " << cert.notes << '\n';
    return kExitIncomplete;
  }
  return kExitOk;
}

int cmd_certify_tensor(const CommandConfig& cfg) {
  auto tensor = trc::tensor_from_json(trc::read_json_file(cfg.in));
  auto cert = trc::certify_tensor(tensor, cfg.p, certify_options(cfg));
  emit(cfg, trc::to_json(cert).dump(2) + "\n");
  return cert.complete ? kExitOk : kExitIncomplete;
}

int cmd_table(const CommandConfig& cfg) {
  auto rows = trc::bound_table(cfg.n_min, cfg.n_max, cfg.table_m, cfg.p_max);
  if (cfg.format == "csv") {
    emit(cfg, trc::bound_table_csv(rows, cfg.p_max));
  } else if (cfg.format == "text") {
    emit(cfg, trc::bound_table_text(rows, cfg.p_max));
  } else {
    throw trc::Error(trc::ErrorCode::InvalidArguments, "format must be csv or text");
  }
  return kExitOk;
}

int cmd_crossover(const CommandConfig& cfg) {
  std::string csv = "n,bound_p1,bound_p2,winner\n";
  for (const auto& row : trc::crossover_table(cfg.n_max)) {
    csv += std::to_string(row.n) + "," + row.bound_p1.get_str() + "," + row.bound_p2.get_str() + "," +
           trc::to_string(row.winner) + "\n";
  }
  emit(cfg, csv);
  return kExitOk;
}

int cmd_flatten_matmul(const CommandConfig& cfg) {
  trc::SeededRng rng(resolve_seed(cfg));
  const std::uint64_t q = cfg.primes.empty() ? trc::default_prime() : cfg.primes.front();
  if (cfg.p < 1 || 2 * cfg.p + 1 > cfg.n * cfg.n) {
    throw trc::Error(trc::ErrorCode::InvalidArguments, "need 1 <= p and 2p+1 <= n^2");
  }
  auto w = trc::Subspace::random(cfg.n * cfg.n, 2 * cfg.p + 1, q, rng);
  auto f = trc::build_reduced_matmul(cfg.n, w, cfg.p, parse_order(cfg.order));
  emit(cfg, trc::to_json(f).dump(2) + "\n");
  return kExitOk;
}

int cmd_flatten_tensor(const CommandConfig& cfg) {
  auto tensor = trc::tensor_from_json(trc::read_json_file(cfg.in));
  const std::size_t k = 2 * cfg.p + 1;
  if (cfg.p < 1 || tensor.dims().a < k) throw trc::Error(trc::ErrorCode::InvalidArguments, "need 1 <= p, 2p+1 <= a");
  std::optional<trc::Subspace> w;
  if (tensor.dims().a == k) {
    w = trc::Subspace::coordinate(k, k);
  } else {
    trc::SeededRng rng(resolve_seed(cfg));
    const std::uint64_t q = cfg.primes.empty() ? trc::default_prime() : cfg.primes.front();
    w = trc::Subspace::random(tensor.dims().a, k, q, rng);
  }
  auto f = trc::build_koszul(trc::restrict_A(tensor, *w), cfg.p, parse_order(cfg.order));
  f.subspace = *w;
  f.descriptor = "tensor";
  emit(cfg, trc::to_json(f).dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const CommandConfig& cfg) {
  if (cfg.dims.size() != 3) throw trc::Error(trc::ErrorCode::InvalidArguments, "--dims needs a,b,c");
  const trc::Dims dims{cfg.dims[0], cfg.dims[1], cfg.dims[2]};
  try {
    auto report = trc::soundness_sweep(dims, cfg.p, cfg.r_max, cfg.trials, resolve_seed(cfg));
    emit(cfg, trc::to_json(report).dump(2) + "\n");
  } catch (const trc::Error& e) {
    if (e.code() != trc::ErrorCode::SweepViolation) throw;
    std::cerr << e.what() << '\n';
    return kExitIncomplete;
  }
  return kExitOk;
}

int cmd_verify(const CommandConfig& cfg) {
  auto tensor = trc::tensor_from_json(trc::read_json_file(cfg.tensor_path));
  auto decomp = trc::decomposition_from_json(trc::read_json_file(cfg.decomp_path));
  const bool ok = trc::verify_decomposition(tensor, decomp);
  std::cout << (ok ? "VALID" : "INVALID") << " (" << decomp.terms.size() << " terms)\n";
  return ok ? kExitOk : kExitIncomplete;
}

int cmd_replay(const CommandConfig& cfg) {
  auto cert = trc::certificate_from_json(trc::read_json_file(cfg.cert_path));
  std::optional<trc::Tensor3> tensor;
  if (!cfg.tensor_path.empty()) tensor = trc::tensor_from_json(trc::read_json_file(cfg.tensor_path));
  auto report = trc::replay_certificate(cert, tensor ? &*tensor : nullptr);
  const bool ok = report.ranks_match && report.bounds_match;
  std::cout << (ok ? "REPLAY OK" : "REPLAY MISMATCH") << " (rank " << report.recomputed.flattening_rank
            << ", border_rank_lb " << report.recomputed.border_rank_lb << ")\n";
  return ok ? kExitOk : kExitIncomplete;
}

int cmd_matmul(const CommandConfig& cfg) {
  emit(cfg, trc::to_json(trc::matmul_tensor({cfg.m, cfg.n, cfg.l})).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszul flattening lower-bound certificates for tensor border rank and rank"};
  app.set_version_flag("--version", trc::kVersion);
  app.require_subcommand(1);
  CommandConfig cfg;
  std::function<int()> action;

  auto add_seeded = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for all randomness (drawn and printed when omitted)");
    sub->add_option("--primes", cfg.primes, "Primes for the rank computation; the first is the sampling field")
        ->delimiter(',');
    sub->add_option("--out", cfg.out, "Write output here instead of stdout");
  };
  auto add_certify_flags = [&](CLI::App* sub) {
    add_seeded(sub);
    sub->add_option("--p", cfg.p, "Exterior power p (A' has dimension 2p+1)")->required();
    sub->add_option("--retries", cfg.retries, "Fresh subspaces to try after the first")->capture_default_str();
    sub->add_flag("--exact", cfg.exact, "Rank over Q instead of the multi-prime rank");
  };

  auto* certify = app.add_subcommand("certify", "Emit a lower-bound certificate");
  certify->require_subcommand(1);
  auto* cm = certify->add_subcommand("matmul", "Certify M<n,n,m>");
  cm->add_option("--n", cfg.n)->required();
  cm->add_option("--m", cfg.m)->required();
  cm->add_option("--formula", cfg.formula, "theorem11 | simple | none")->capture_default_str();
  add_certify_flags(cm);
  cm->callback([&] { action = [&] { return cmd_certify_matmul(cfg); }; });
  auto* ct = certify->add_subcommand("tensor", "Certify a tensor read from JSON");
  ct->add_option("--in", cfg.in)->required();
  add_certify_flags(ct);
  ct->callback([&] { action = [&] { return cmd_certify_tensor(cfg); }; });

  auto* table = app.add_subcommand("table", "Rank bound formulas per n");
  table->add_option("--n-max", cfg.n_max)->required();
  table->add_option("--n-min", cfg.n_min)->capture_default_str();
  table->add_option("--m", cfg.table_m, "Fixed m (default m = n)");
  table->add_option("--p-max", cfg.p_max)->capture_default_str();
  table->add_option("--format", cfg.format, "csv | text")->capture_default_str();
  table->add_option("--out", cfg.out);
  table->callback([&] { action = [&] { return cmd_table(cfg); }; });

  auto* crossover = app.add_subcommand("crossover", "p=1 versus p=2 square bounds");
  crossover->add_option("--n-max", cfg.n_max)->required();
  crossover->add_option("--out", cfg.out);
  crossover->callback([&] { action = [&] { return cmd_crossover(cfg); }; });

  auto* flatten = app.add_subcommand("flatten", "Dump a flattening matrix with index books");
  flatten->require_subcommand(1);
  auto* fm = flatten->add_subcommand("matmul", "Reduced matmul flattening for a random subspace");
  fm->add_option("--n", cfg.n)->required();
  fm->add_option("--p", cfg.p)->required();
  fm->add_option("--order", cfg.order, "lex | split")->capture_default_str();
  add_seeded(fm);
  fm->callback([&] { action = [&] { return cmd_flatten_matmul(cfg); }; });
  auto* ft = flatten->add_subcommand("tensor", "Koszul flattening of a tensor read from JSON");
  ft->add_option("--in", cfg.in)->required();
  ft->add_option("--p", cfg.p)->required();
  ft->add_option("--order", cfg.order, "lex | split")->capture_default_str();
  add_seeded(ft);
  ft->callback([&] { action = [&] { return cmd_flatten_tensor(cfg); }; });

  auto* sweep = app.add_subcommand("sweep", "Soundness sweep over random tensors of known rank");
  sweep->add_option("--p", cfg.p)->required();
  sweep->add_option("--rmax", cfg.r_max)->capture_default_str();
  sweep->add_option("--trials", cfg.trials)->capture_default_str();
  sweep->add_option("--dims", cfg.dims, "a,b,c")->delimiter(',')->capture_default_str();
  sweep->add_option("--seed", cfg.seed);
  sweep->add_option("--out", cfg.out);
  sweep->callback([&] { action = [&] { return cmd_sweep(cfg); }; });

  auto* verify = app.add_subcommand("verify", "Check a decomposition against a tensor");
  verify->add_option("--tensor", cfg.tensor_path)->required();
  verify->add_option("--decomp", cfg.decomp_path)->required();
  verify->callback([&] { action = [&] { return cmd_verify(cfg); }; });

  auto* replay = app.add_subcommand("replay", "Recompute a certificate from its recorded data");
  replay->add_option("--cert", cfg.cert_path)->required();
  replay->add_option("--tensor", cfg.tensor_path, "Tensor JSON for tensor certificates");
  replay->callback([&] { action = [&] { return cmd_replay(cfg); }; });

  auto* matmul = app.add_subcommand("matmul", "Emit matmul_tensor(m, n, l) as tensor JSON");
  matmul->add_option("--m", cfg.m)->required();
  matmul->add_option("--n", cfg.n)->required();
  matmul->add_option("--l", cfg.l)->required();
  matmul->add_option("--out", cfg.out);
  matmul->callback([&] { action = [&] { return cmd_matmul(cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const trc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case trc::ErrorCode::Io:
      case trc::ErrorCode::ParseError:
        return kExitIo;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
