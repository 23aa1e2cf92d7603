#include "trc/rank_engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <utility>

#include "trc/error.hpp"

namespace trc {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets, Domain domain)
    : rows_(rows), cols_(cols), domain_(domain) {
  std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
  for (auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw Error(ErrorCode::DimensionMismatch, "triplet (" + std::to_string(t.row) + "," +
                                                    std::to_string(t.col) + ") outside " +
                                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
    acc[{t.row, t.col}] += t.value;
  }
  triplets_.reserve(acc.size());
  for (auto& [pos, v] : acc) {
    Rational x = domain_.normalize(v);
    if (x != 0) triplets_.push_back({pos.first, pos.second, std::move(x)});
  }
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& m, Domain domain) {
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) t.push_back({r, c, m(r, c)});
  return SparseMatrix(m.rows(), m.cols(), std::move(t), domain);
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = std::lower_bound(triplets_.begin(), triplets_.end(), std::pair{r, c},
                             [](const Triplet& t, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair{t.row, t.col} < key;
                             });
  if (it != triplets_.end() && it->row == r && it->col == c) return it->value;
  return 0;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (const auto& t : triplets_) d(t.row, t.col) = t.value;
  return d;
}

SparseMatrix SparseMatrix::permuted(std::span<const std::size_t> row_order,
                                    std::span<const std::size_t> col_order) const {
  if (row_order.size() != rows_ || col_order.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "permutation length");
  }
  std::vector<std::size_t> new_row(rows_, rows_), new_col(cols_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) new_row.at(row_order[i]) = i;
  for (std::size_t j = 0; j < cols_; ++j) new_col.at(col_order[j]) = j;
  std::vector<Triplet> t;
  t.reserve(triplets_.size());
  for (const auto& e : triplets_) t.push_back({new_row[e.row], new_col[e.col], e.value});
  return SparseMatrix(rows_, cols_, std::move(t), domain_);
}

SparseMatrix SparseMatrix::block(std::size_t row0, std::size_t nrows, std::size_t col0, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
  std::vector<Triplet> t;
  for (const auto& e : triplets_) {
    if (e.row >= row0 && e.row < row0 + nrows && e.col >= col0 && e.col < col0 + ncols) {
      t.push_back({e.row - row0, e.col - col0, e.value});
    }
  }
  return SparseMatrix(nrows, ncols, std::move(t), domain_);
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.domain_ == b.domain_)) {
    throw Error(ErrorCode::DimensionMismatch, "sparse sum operands differ in shape or domain");
  }
  std::vector<Triplet> t = a.triplets_;
  t.insert(t.end(), b.triplets_.begin(), b.triplets_.end());
  return SparseMatrix(a.rows_, a.cols_, std::move(t), a.domain_);
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.triplets_.size() != b.triplets_.size()) return false;
  for (std::size_t i = 0; i < a.triplets_.size(); ++i) {
    const auto& x = a.triplets_[i];
    const auto& y = b.triplets_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

namespace {

using SparseRow = std::vector<std::pair<std::size_t, std::uint64_t>>;

struct ModElimination {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  std::uint64_t pivot_product = 1;
};

ModElimination eliminate_mod_q(const SparseMatrix& m, const PrimeField& f) {
  std::vector<SparseRow> rows(m.rows());
  std::vector<std::size_t> col_count(m.cols(), 0);
  for (const auto& t : m.triplets()) {
    std::uint64_t v = f.reduce(t.value);
    if (v != 0) {
      rows[t.row].emplace_back(t.col, v);
      ++col_count[t.col];
    }
  }
  std::vector<bool> active(m.rows(), true);
  ModElimination out;
  SparseRow merged;

  for (;;) {
    // Markowitz: minimize (row nnz - 1) * (col nnz - 1); first hit wins ties.
    std::size_t best_row = m.rows(), best_col = 0;
    std::uint64_t best_val = 0;
    std::size_t best_cost = static_cast<std::size_t>(-1);
    for (std::size_t r = 0; r < rows.size() && best_cost != 0; ++r) {
      if (!active[r] || rows[r].empty()) continue;
      const std::size_t len = rows[r].size() - 1;
      for (const auto& [c, v] : rows[r]) {
        std::size_t cost = len * (col_count[c] - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_row = r;
          best_col = c;
          best_val = v;
          if (cost == 0) break;
        }
      }
    }
    if (best_row == m.rows()) break;

    active[best_row] = false;
    const SparseRow& pivot = rows[best_row];
    for (const auto& [c, v] : pivot) --col_count[c];
    out.pivot_rows.push_back(best_row);
    out.pivot_cols.push_back(best_col);
    out.pivot_product = f.mul(out.pivot_product, best_val);
    ++out.rank;
    const std::uint64_t inv = f.inv(best_val);

    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r] || rows[r].empty()) continue;
      SparseRow& row = rows[r];
      auto hit = std::lower_bound(row.begin(), row.end(), best_col,
                                  [](const auto& e, std::size_t c) { return e.first < c; });
      if (hit == row.end() || hit->first != best_col) continue;
      const std::uint64_t factor = f.mul(hit->second, inv);
      merged.clear();
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].first < row[i].first) {
          merged.emplace_back(pivot[j].first, f.neg(f.mul(factor, pivot[j].second)));
          ++col_count[pivot[j].first];
          ++j;
        } else {
          std::uint64_t v = f.sub(row[i].second, f.mul(factor, pivot[j].second));
          if (v != 0) {
            merged.emplace_back(row[i].first, v);
          } else {
            --col_count[row[i].first];
          }
          ++i;
          ++j;
        }
      }
      row.swap(merged);
    }
  }
  return out;
}

int permutation_sign(std::vector<std::size_t> perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  }
  return sign;
}

/// Integer matrix with each row scaled by the lcm of its denominators.
struct IntegerRows {
  std::vector<std::vector<BigInt>> rows;
  Rational scale = 1;  // product of the row multipliers
};

IntegerRows integerize(const SparseMatrix& m) {
  IntegerRows out;
  out.rows.assign(m.rows(), std::vector<BigInt>(m.cols(), 0));
  std::vector<BigInt> lcm(m.rows(), 1);
  for (const auto& t : m.triplets()) mpz_lcm(lcm[t.row].get_mpz_t(), lcm[t.row].get_mpz_t(), t.value.get_den_mpz_t());
  for (const auto& t : m.triplets()) out.rows[t.row][t.col] = t.value.get_num() * (lcm[t.row] / t.value.get_den());
  for (const auto& l : lcm) out.scale *= l;
  return out;
}

struct BareissResult {
  std::size_t rank = 0;
  int sign = 1;
  BigInt last_pivot = 1;
};

BareissResult bareiss(std::vector<std::vector<BigInt>>& a, std::size_t ncols) {
  BareissResult res;
  const std::size_t nrows = a.size();
  BigInt prev = 1;
  std::size_t r = 0;
  BigInt tmp;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    // Smallest nonzero magnitude keeps intermediate growth down.
    std::size_t piv = nrows;
    for (std::size_t i = r; i < nrows; ++i) {
      if (a[i][c] == 0) continue;
      if (piv == nrows || mpz_cmpabs(a[i][c].get_mpz_t(), a[piv][c].get_mpz_t()) < 0) piv = i;
    }
    if (piv == nrows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      res.sign = -res.sign;
    }
    const BigInt& p = a[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        tmp = p * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = p;
    res.last_pivot = p;
    ++r;
  }
  res.rank = r;
  return res;
}

}  // namespace

std::size_t rank_mod_q(const SparseMatrix& m, std::uint64_t q) {
  return eliminate_mod_q(m, PrimeField(q)).rank;
}

std::uint64_t det_mod_q(const SparseMatrix& m, std::uint64_t q) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "determinant of non-square matrix");
  PrimeField f(q);
  auto e = eliminate_mod_q(m, f);
  if (e.rank < m.rows()) return 0;
  std::vector<std::size_t> perm(m.rows());
  for (std::size_t k = 0; k < e.rank; ++k) perm[e.pivot_rows[k]] = e.pivot_cols[k];
  return permutation_sign(std::move(perm)) > 0 ? e.pivot_product : f.neg(e.pivot_product);
}

std::size_t rank_exact(const SparseMatrix& m) {
  if (!m.domain().is_rational()) return rank_mod_q(m, m.domain().modulus());
  auto ints = integerize(m);
  return bareiss(ints.rows, m.cols()).rank;
}

Rational det_exact(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "determinant of non-square matrix");
  if (!m.domain().is_rational()) {
    return Rational(BigInt(static_cast<unsigned long>(det_mod_q(m, m.domain().modulus()))));
  }
  if (m.rows() == 0) return 1;
  auto ints = integerize(m);
  auto res = bareiss(ints.rows, m.cols());
  if (res.rank < m.rows()) return 0;
  Rational det(res.last_pivot * res.sign);
  det /= ints.scale;
  return det;
}

MultiPrimeRank rank_multi_prime(const SparseMatrix& m, std::span<const std::uint64_t> primes) {
  if (primes.empty()) throw Error(ErrorCode::InvalidArguments, "empty prime list");
  MultiPrimeRank out;
  out.primes.assign(primes.begin(), primes.end());
  std::vector<std::future<std::size_t>> jobs;
  jobs.reserve(primes.size());
  for (auto q : primes) {
    jobs.push_back(std::async(std::launch::async, [&m, q] { return rank_mod_q(m, q); }));
  }
  for (auto& j : jobs) out.ranks.push_back(j.get());
  out.rank = *std::max_element(out.ranks.begin(), out.ranks.end());
  return out;
}

}  // namespace trc
