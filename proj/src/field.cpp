#include "trc/field.hpp"

#include <cstdlib>
#include <limits>

#include "trc/error.hpp"

namespace trc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArguments: return "InvalidArguments";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::IdenticallyZeroWitness: return "IdenticallyZeroWitness";
    case ErrorCode::SweepViolation: return "SweepViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArguments, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  BigInt num, den = 1;
  try {
    if (slash == std::string::npos) {
      num = BigInt(s);
    } else {
      num = BigInt(s.substr(0, slash));
      den = BigInt(s.substr(slash + 1));
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + s + "'");
  }
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t default_prime() {
  if (const char* env = std::getenv("TRC_DEFAULT_PRIME"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long q = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || !is_prime(q)) {
      throw Error(ErrorCode::InvalidArguments,
                  std::string("TRC_DEFAULT_PRIME is not a prime: ") + env);
    }
    return q;
  }
  return kMersenne31;
}

std::vector<std::uint64_t> descending_primes(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = first; out.size() < count && c >= 2; --c) {
    if (is_prime(c)) out.push_back(c);
  }
  return out;
}

PrimeField::PrimeField(std::uint64_t modulus) : q_(modulus) {
  if (modulus > (std::numeric_limits<std::uint64_t>::max() >> 1) || !is_prime(modulus)) {
    throw Error(ErrorCode::InvalidArguments, "modulus " + std::to_string(modulus) + " is not a word-sized prime");
  }
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exp) const noexcept {
  return powmod(base, exp, q_);
}

std::uint64_t PrimeField::inv(std::uint64_t x) const {
  if (x % q_ == 0) throw Error(ErrorCode::InvalidArguments, "inverse of zero");
  return powmod(x, q_ - 2, q_);
}

std::uint64_t PrimeField::reduce(const BigInt& x) const {
  // mpz_fdiv_ui gives the non-negative residue.
  return static_cast<std::uint64_t>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(q_)));
}

std::uint64_t PrimeField::reduce(const Rational& x) const {
  std::uint64_t den = reduce(x.get_den());
  if (den == 0) {
    throw Error(ErrorCode::DenominatorVanishes,
                to_string(x) + " has a denominator divisible by " + std::to_string(q_));
  }
  return mul(reduce(x.get_num()), inv(den));
}

PrimeFieldElement::PrimeFieldElement(std::uint64_t value, std::uint64_t modulus)
    : value_(value % modulus), modulus_(PrimeField(modulus).modulus()) {}

void PrimeFieldElement::check_same(const PrimeFieldElement& o) const {
  if (o.modulus_ != modulus_) throw Error(ErrorCode::InvalidArguments, "mixed moduli");
}

PrimeFieldElement PrimeFieldElement::operator+(const PrimeFieldElement& o) const {
  check_same(o);
  std::uint64_t s = value_ + o.value_;
  return {s >= modulus_ ? s - modulus_ : s, modulus_, true};
}

PrimeFieldElement PrimeFieldElement::operator-(const PrimeFieldElement& o) const {
  check_same(o);
  return {value_ >= o.value_ ? value_ - o.value_ : value_ + (modulus_ - o.value_), modulus_, true};
}

PrimeFieldElement PrimeFieldElement::operator*(const PrimeFieldElement& o) const {
  check_same(o);
  return {mulmod(value_, o.value_, modulus_), modulus_, true};
}

PrimeFieldElement PrimeFieldElement::operator-() const {
  return {value_ == 0 ? 0 : modulus_ - value_, modulus_, true};
}

PrimeFieldElement PrimeFieldElement::inverse() const {
  if (value_ == 0) throw Error(ErrorCode::InvalidArguments, "inverse of zero");
  return {powmod(value_, modulus_ - 2, modulus_), modulus_, true};
}

PrimeFieldElement project_mod_q(const Rational& x, std::uint64_t q) {
  PrimeField f(q);
  return PrimeFieldElement(f.reduce(x), q);
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SeededRng::SeededRng(std::uint64_t seed) {
  std::uint64_t st = seed;
  for (auto& w : s_) w = splitmix64(st);
}

SeededRng SeededRng::derive(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t st = seed ^ (0xd1b54a32d192ed03ULL * (index + 1));
  return SeededRng(splitmix64(st));
}

std::uint64_t SeededRng::next() noexcept {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t SeededRng::below(std::uint64_t bound) noexcept {
  // Reject the top partial copy of [0, bound) so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

PrimeFieldElement sample_uniform(std::uint64_t q, SeededRng& rng) {
  return PrimeFieldElement(rng.below(q), q);
}

}  // namespace trc
