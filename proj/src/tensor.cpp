#include "trc/tensor.hpp"

#include <string>

#include "trc/error.hpp"

namespace trc {

namespace {

void check_index(const Dims& d, const Index3& idx) {
  if (idx[0] >= d.a || idx[1] >= d.b || idx[2] >= d.c) {
    throw Error(ErrorCode::DimensionMismatch, "tensor index (" + std::to_string(idx[0]) + "," +
                                                  std::to_string(idx[1]) + "," + std::to_string(idx[2]) +
                                                  ") out of range");
  }
}

}  // namespace

Tensor3::Tensor3(Dims dims, Domain domain) : dims_(dims), domain_(domain) {
  if (dims.a == 0 || dims.b == 0 || dims.c == 0) {
    throw Error(ErrorCode::InvalidArguments, "tensor dimensions must be positive");
  }
}

Tensor3::Tensor3(Dims dims, const std::vector<Entry>& entries, Domain domain) : Tensor3(dims, domain) {
  for (const auto& e : entries) {
    check_index(dims_, e.index);
    entries_[e.index] += e.value;
  }
  for (auto it = entries_.begin(); it != entries_.end();) {
    it->second = domain_.normalize(it->second);
    it = it->second == 0 ? entries_.erase(it) : std::next(it);
  }
}

Rational Tensor3::at(std::size_t i, std::size_t j, std::size_t k) const {
  check_index(dims_, {i, j, k});
  auto it = entries_.find({i, j, k});
  return it == entries_.end() ? Rational(0) : it->second;
}

Tensor3 Tensor3::integerized() const {
  BigInt lcm = 1;
  for (const auto& [idx, v] : entries_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  Tensor3 out(dims_, domain_);
  for (const auto& [idx, v] : entries_) out.entries_[idx] = v * lcm;
  return out;
}

Tensor3 operator+(const Tensor3& x, const Tensor3& y) {
  if (!(x.dims_ == y.dims_) || !(x.domain_ == y.domain_)) {
    throw Error(ErrorCode::DimensionMismatch, "tensor sum operands differ in dims or domain");
  }
  std::vector<Tensor3::Entry> all;
  for (const auto& [idx, v] : x.entries_) all.push_back({idx, v});
  for (const auto& [idx, v] : y.entries_) all.push_back({idx, v});
  return Tensor3(x.dims_, all, x.domain_);
}

Subspace::Subspace(DenseMatrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0 || basis_.rows() > basis_.cols()) {
    throw Error(ErrorCode::InvalidArguments, "subspace of dimension " + std::to_string(basis_.rows()) +
                                                 " in ambient dimension " + std::to_string(basis_.cols()));
  }
  SparseMatrix m = SparseMatrix::from_dense(basis_);
  // Full rank mod a prime implies full rank over Q; only fall back to exact elimination otherwise.
  bool independent = false;
  try {
    independent = rank_mod_q(m, kMersenne31) == basis_.rows();
  } catch (const Error&) {
  }
  if (!independent) independent = rank_exact(m) == basis_.rows();
  if (!independent) throw Error(ErrorCode::InvalidArguments, "subspace basis rows are linearly dependent");
}

Subspace Subspace::coordinate(std::size_t ambient, std::size_t k) {
  DenseMatrix b(k, ambient);
  for (std::size_t i = 0; i < k && i < ambient; ++i) b(i, i) = 1;
  return Subspace(std::move(b));
}

Subspace Subspace::random(std::size_t ambient, std::size_t k, std::uint64_t q, SeededRng& rng) {
  if (k == 0 || k > ambient) {
    throw Error(ErrorCode::InvalidArguments, "cannot draw a " + std::to_string(k) + "-dimensional subspace of " +
                                                 std::to_string(ambient) + "-space");
  }
  for (;;) {
    DenseMatrix b(k, ambient);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < ambient; ++j) b(i, j) = Rational(BigInt(static_cast<unsigned long>(rng.below(q))));
    if (rank_mod_q(SparseMatrix::from_dense(b), q) == k) return Subspace(std::move(b));
  }
}

Tensor3 matmul_tensor(const MatMulDescriptor& d) {
  if (d.m == 0 || d.n == 0 || d.l == 0) throw Error(ErrorCode::InvalidArguments, "matmul dimensions must be >= 1");
  std::vector<Tensor3::Entry> e;
  e.reserve(d.m * d.n * d.l);
  for (std::size_t i = 0; i < d.m; ++i)
    for (std::size_t j = 0; j < d.n; ++j)
      for (std::size_t k = 0; k < d.l; ++k) e.push_back({{i * d.n + j, j * d.l + k, k * d.m + i}, 1});
  return Tensor3({d.m * d.n, d.n * d.l, d.l * d.m}, e);
}

std::vector<DenseMatrix> slices_A(const Tensor3& t) {
  std::vector<DenseMatrix> out(t.dims().a, DenseMatrix(t.dims().b, t.dims().c));
  for (const auto& [idx, v] : t.entries()) out[idx[0]](idx[1], idx[2]) = v;
  return out;
}

Tensor3 from_slices(const std::vector<DenseMatrix>& slices, Domain domain) {
  if (slices.empty()) throw Error(ErrorCode::InvalidArguments, "no slices");
  const std::size_t b = slices[0].rows(), c = slices[0].cols();
  std::vector<Tensor3::Entry> e;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (slices[i].rows() != b || slices[i].cols() != c) throw Error(ErrorCode::DimensionMismatch, "slice shapes differ");
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < c; ++k)
        if (slices[i](j, k) != 0) e.push_back({{i, j, k}, slices[i](j, k)});
  }
  return Tensor3({slices.size(), b, c}, e, domain);
}

Tensor3 restrict_A(const Tensor3& t, const Subspace& w) {
  if (w.ambient() != t.dims().a) {
    throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension " + std::to_string(w.ambient()) +
                                                  " vs tensor a = " + std::to_string(t.dims().a));
  }
  std::vector<Tensor3::Entry> e;
  for (const auto& [idx, v] : t.entries()) {
    for (std::size_t i = 0; i < w.dim(); ++i) {
      const Rational& coeff = w.basis()(i, idx[0]);
      if (coeff != 0) e.push_back({{i, idx[1], idx[2]}, coeff * v});
    }
  }
  return Tensor3({w.dim(), t.dims().b, t.dims().c}, e, t.domain());
}

RandomRankR random_rank_r(Dims dims, std::size_t r, Domain domain, std::uint64_t seed) {
  const std::uint64_t q = domain.is_rational() ? default_prime() : domain.modulus();
  SeededRng rng(seed);
  auto draw = [&](std::size_t len) {
    std::vector<Rational> v(len);
    for (auto& x : v) x = Rational(BigInt(static_cast<unsigned long>(sample_uniform(q, rng).value())));
    return v;
  };
  Decomposition d;
  for (std::size_t s = 0; s < r; ++s) {
    RankOneTerm term;
    term.u = draw(dims.a);
    term.v = draw(dims.b);
    term.w = draw(dims.c);
    d.terms.push_back(std::move(term));
  }
  Tensor3 t = evaluate_decomposition(dims, d, domain);
  return {std::move(t), std::move(d)};
}

Tensor3 evaluate_decomposition(Dims dims, const Decomposition& d, Domain domain) {
  std::vector<Tensor3::Entry> e;
  for (const auto& term : d.terms) {
    if (term.u.size() != dims.a || term.v.size() != dims.b || term.w.size() != dims.c) {
      throw Error(ErrorCode::DimensionMismatch, "rank-one term has wrong factor lengths");
    }
    for (std::size_t i = 0; i < dims.a; ++i) {
      if (term.u[i] == 0) continue;
      for (std::size_t j = 0; j < dims.b; ++j) {
        if (term.v[j] == 0) continue;
        Rational uv = term.u[i] * term.v[j];
        for (std::size_t k = 0; k < dims.c; ++k)
          if (term.w[k] != 0) e.push_back({{i, j, k}, uv * term.w[k]});
      }
    }
  }
  return Tensor3(dims, e, domain);
}

bool verify_decomposition(const Tensor3& t, const Decomposition& d) {
  return evaluate_decomposition(t.dims(), d, t.domain()) == t;
}

SparseMatrix unfold_A(const Tensor3& t) {
  std::vector<Triplet> trip;
  for (const auto& [idx, v] : t.entries()) trip.push_back({idx[0], idx[1] * t.dims().c + idx[2], v});
  return SparseMatrix(t.dims().a, t.dims().b * t.dims().c, std::move(trip), t.domain());
}

}  // namespace trc
