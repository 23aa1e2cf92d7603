#include "trc/exterior.hpp"

#include <algorithm>
#include <string>

#include "trc/error.hpp"

namespace trc {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step.
    unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i) / i;
    if (t > UINT64_MAX) throw Error(ErrorCode::InvalidArguments, "binomial overflow");
    r = static_cast<std::uint64_t>(t);
  }
  return r;
}

SubsetIndex SubsetIndex::of(const std::vector<std::size_t>& elements) {
  std::uint64_t mask = 0;
  for (auto e : elements) {
    if (e >= 64) throw Error(ErrorCode::InvalidArguments, "subset element beyond 63");
    if ((mask >> e) & 1U) throw Error(ErrorCode::InvalidArguments, "repeated subset element");
    mask |= std::uint64_t{1} << e;
  }
  return SubsetIndex(mask);
}

std::vector<std::size_t> SubsetIndex::elements() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(static_cast<std::size_t>(__builtin_ctzll(m)));
  return out;
}

namespace {

/// Lex order on sorted element lists.
std::vector<SubsetIndex> lex_subsets(std::size_t k, std::size_t p) {
  std::vector<SubsetIndex> out;
  std::vector<std::size_t> idx(p);
  for (std::size_t i = 0; i < p; ++i) idx[i] = i;
  for (;;) {
    out.push_back(SubsetIndex::of(idx));
    std::size_t pos = p;
    while (pos > 0 && idx[pos - 1] == k - p + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

OrderedBasis::OrderedBasis(std::size_t k, std::size_t p, BasisOrder order) : k_(k), p_(p), order_(order) {
  if (p > k || k > 64) {
    throw Error(ErrorCode::InvalidArguments, "Lambda^" + std::to_string(p) + " of a " + std::to_string(k) + "-space");
  }
  auto lex = lex_subsets(k, p);
  if (order == BasisOrder::Lex) {
    subsets_ = std::move(lex);
  } else {
    const bool zero_first = 2 * p <= k;
    std::vector<SubsetIndex> with_zero, without_zero;
    for (const auto& s : lex) (s.contains(0) ? with_zero : without_zero).push_back(s);
    // Lex order on the 0-containing subsets coincides with lex order on their 0-free parts.
    subsets_ = zero_first ? with_zero : without_zero;
    const auto& tail = zero_first ? without_zero : with_zero;
    subsets_.insert(subsets_.end(), tail.begin(), tail.end());
  }
  for (std::size_t i = 0; i < subsets_.size(); ++i) position_.emplace(subsets_[i].mask(), i);
}

OrderedBasis enumerate_subsets(std::size_t k, std::size_t p, BasisOrder order) { return OrderedBasis(k, p, order); }

std::optional<SignedSubset> wedge_insert(std::size_t i, const SubsetIndex& subset) {
  if (i >= 64) throw Error(ErrorCode::InvalidArguments, "wedge index beyond 63");
  if (subset.contains(i)) return std::nullopt;
  const std::uint64_t below = subset.mask() & ((std::uint64_t{1} << i) - 1);
  const int sign = (__builtin_popcountll(below) & 1) ? -1 : 1;
  return SignedSubset{sign, SubsetIndex(subset.mask() | (std::uint64_t{1} << i))};
}

}  // namespace trc
