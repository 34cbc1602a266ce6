#pragma once

// Exact arithmetic over Q-linear combinations of square roots of squarefree
// positive integers, i.e. elements of a multiquadratic field Q(sqrt p1, ..., sqrt pk).

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homothety {

using Integer = mpz_class;
using Rational = mpq_class;

/// Maximum number of distinct primes dividing the radicands of one value.
/// Inversion multiplies by one conjugate per prime, so cost is 2^primes.
inline constexpr std::size_t kMaxRadicalPrimes = 4;

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;
};

class Scalar {
 public:
  struct Term {
    std::uint64_t radicand;  // squarefree, 1 denotes the rational part
    Rational coef;           // nonzero, canonical
    bool operator==(const Term& o) const { return radicand == o.radicand && coef == o.coef; }
  };

  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& value);  // NOLINT(google-explicit-constructor)
  Scalar(const Integer& value);   // NOLINT(google-explicit-constructor)

  /// coef * sqrt(m) for any positive integer m; square factors of m are pulled out.
  static Scalar radical(const Rational& coef, std::uint64_t m);
  static Scalar sqrt(std::uint64_t m) { return radical(Rational(1), m); }

  /// Builds from arbitrary terms (radicands may repeat or be non-squarefree).
  static Scalar from_terms(const std::vector<std::pair<Rational, std::uint64_t>>& terms);

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_rational() const;
  [[nodiscard]] std::optional<Rational> as_rational() const;
  /// Rational coefficient of sqrt(radicand); zero when absent.
  [[nodiscard]] Rational coefficient(std::uint64_t radicand) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }

  /// Exact multiplicative inverse by successive conjugate products.
  /// Throws std::domain_error on zero or when more than kMaxRadicalPrimes
  /// primes are involved.
  [[nodiscard]] Scalar inverse() const;

  /// Image under the field automorphism sqrt(p) -> -sqrt(p).
  [[nodiscard]] Scalar conjugate(std::uint64_t prime) const;

  /// Distinct primes dividing some radicand, ascending.
  [[nodiscard]] std::vector<std::uint64_t> radical_primes() const;

  /// Certified sign in {-1, 0, 1}.
  [[nodiscard]] int sign() const;

  /// Rational enclosure with every radical bracketed to 2^-bits.
  [[nodiscard]] Interval enclose(unsigned bits) const;

  /// Nearest-double approximation with relative error below 2^(1-bits);
  /// bits is clamped to [1, 53].
  [[nodiscard]] double approx(int bits = 53) const;

  /// Rational approximation with relative error below 2^-bits.
  [[nodiscard]] Rational approx_rational(unsigned bits) const;

  [[nodiscard]] std::size_t hash() const;
  [[nodiscard]] std::string to_string() const;

 private:
  void normalize_sorted();
  std::vector<Term> terms_;  // sorted by radicand
};

Scalar operator*(const Scalar& a, const Scalar& b);

inline bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
inline bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
inline bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
inline bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

Scalar abs(const Scalar& x);

/// x^n for any integer n (n < 0 requires x != 0).
Scalar pow(const Scalar& x, long n);

/// Largest integer k with k <= x.
Integer floor(const Scalar& x);

/// Squarefree part and square root of the square part: m = s^2 * r.
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t m);

/// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t m);

/// Exact conversion of a finite double.
Rational exact_rational(double v);

/// Nearest double to a rational.
double nearest_double(const Rational& q);

struct ScalarHash {
  std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

}  // namespace homothety
