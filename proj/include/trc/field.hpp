#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace trc {

/// Exact rational number, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den = 1);

/// "num/den", with "/den" omitted when the denominator is 1.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

constexpr std::uint64_t kMersenne31 = 2147483647ULL;

/// The default certification prime: $TRC_DEFAULT_PRIME if set and prime, else 2^31 - 1.
std::uint64_t default_prime();

/// `count` primes starting at `first` and descending.
std::vector<std::uint64_t> descending_primes(std::uint64_t first, std::size_t count);

/// Arithmetic in GF(q) on raw residues. Construction rejects composite moduli.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return q_; }

  std::uint64_t add(std::uint64_t x, std::uint64_t y) const noexcept {
    std::uint64_t s = x + y;
    return (s >= q_ || s < x) ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const noexcept {
    return x >= y ? x - y : x + (q_ - y);
  }
  std::uint64_t neg(std::uint64_t x) const noexcept { return x == 0 ? 0 : q_ - x; }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % q_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept;
  /// Requires x != 0.
  std::uint64_t inv(std::uint64_t x) const;

  std::uint64_t reduce(const BigInt& x) const;
  /// Throws DenominatorVanishes if q divides the denominator.
  std::uint64_t reduce(const Rational& x) const;

 private:
  std::uint64_t q_;
};

/// An element of GF(q) that carries its modulus.
class PrimeFieldElement {
 public:
  PrimeFieldElement(std::uint64_t value, std::uint64_t modulus);

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  PrimeFieldElement operator+(const PrimeFieldElement& o) const;
  PrimeFieldElement operator-(const PrimeFieldElement& o) const;
  PrimeFieldElement operator*(const PrimeFieldElement& o) const;
  PrimeFieldElement operator-() const;
  PrimeFieldElement inverse() const;

  friend bool operator==(const PrimeFieldElement&, const PrimeFieldElement&) = default;

 private:
  PrimeFieldElement(std::uint64_t value, std::uint64_t modulus, bool) noexcept
      : value_(value), modulus_(modulus) {}
  void check_same(const PrimeFieldElement& o) const;

  std::uint64_t value_;
  std::uint64_t modulus_;
};

PrimeFieldElement project_mod_q(const Rational& x, std::uint64_t q);

/// xoshiro256** seeded through splitmix64. The algorithm is part of the certificate
/// format: changing it invalidates recorded seeds.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next() noexcept;
  /// Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Independent stream for sub-task `index`, derived from the parent seed.
  static SeededRng derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

PrimeFieldElement sample_uniform(std::uint64_t q, SeededRng& rng);

}  // namespace trc

namespace trc {

/// Coefficient domain of a tensor or matrix: the rationals, or GF(q) with entries
/// stored as canonical integers in [0, q).
class Domain {
 public:
  static Domain rational() { return Domain(0); }
  static Domain gfp(std::uint64_t q) { return Domain(PrimeField(q).modulus()); }

  bool is_rational() const noexcept { return modulus_ == 0; }
  /// 0 for the rationals.
  std::uint64_t modulus() const noexcept { return modulus_; }

  /// Canonical representative of x in this domain.
  Rational normalize(const Rational& x) const {
    if (is_rational()) return x;
    return Rational(BigInt(static_cast<unsigned long>(PrimeField(modulus_).reduce(x))));
  }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  explicit Domain(std::uint64_t q) : modulus_(q) {}
  std::uint64_t modulus_;
};

}  // namespace trc
