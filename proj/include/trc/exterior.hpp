#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace trc {

std::uint64_t binomial(std::size_t n, std::size_t k);

/// A p-subset {i_1 < ... < i_p} of [0, k), standing for a_{i_1} ^ ... ^ a_{i_p}.
class SubsetIndex {
 public:
  SubsetIndex() = default;
  explicit SubsetIndex(std::uint64_t mask) : mask_(mask), size_(static_cast<std::size_t>(__builtin_popcountll(mask))) {}
  static SubsetIndex of(const std::vector<std::size_t>& elements);

  std::uint64_t mask() const noexcept { return mask_; }
  std::size_t size() const noexcept { return size_; }
  bool contains(std::size_t i) const noexcept { return (mask_ >> i) & 1U; }
  std::vector<std::size_t> elements() const;

  friend bool operator==(const SubsetIndex& x, const SubsetIndex& y) noexcept { return x.mask_ == y.mask_; }

 private:
  std::uint64_t mask_ = 0;
  std::size_t size_ = 0;
};

enum class BasisOrder {
  Lex,
  /// Block order used for the [[0, Q], [Q~, R]] form: for p-subsets with 2p <= k the
  /// 0-containing subsets come first; for larger subsets the 0-free ones come first and
  /// the 0-containing ones follow in the order of their 0-free parts. Lex inside blocks.
  SplitZero,
};

/// Ordered basis of Lambda^p of a k-dimensional space.
class OrderedBasis {
 public:
  OrderedBasis(std::size_t k, std::size_t p, BasisOrder order);

  std::size_t k() const noexcept { return k_; }
  std::size_t p() const noexcept { return p_; }
  BasisOrder order() const noexcept { return order_; }
  std::size_t size() const noexcept { return subsets_.size(); }
  const std::vector<SubsetIndex>& subsets() const noexcept { return subsets_; }
  const SubsetIndex& operator[](std::size_t ordinal) const { return subsets_[ordinal]; }
  /// Ordinal of a subset in this basis; the subset must have size p.
  std::size_t ordinal(const SubsetIndex& s) const { return position_.at(s.mask()); }

 private:
  std::size_t k_;
  std::size_t p_;
  BasisOrder order_;
  std::vector<SubsetIndex> subsets_;
  std::unordered_map<std::uint64_t, std::size_t> position_;
};

OrderedBasis enumerate_subsets(std::size_t k, std::size_t p, BasisOrder order);

struct SignedSubset {
  int sign;
  SubsetIndex subset;
};

/// a_i ^ a_I = sign * a_J with J = I + {i} sorted; empty when i is already in I.
/// sign = (-1)^{#{j in I : j < i}}.
std::optional<SignedSubset> wedge_insert(std::size_t i, const SubsetIndex& subset);

}  // namespace trc
