#pragma once

// Random generators and independent reference implementations used by the
// unit, property and acceptance tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "homothety/closure.hpp"
#include "homothety/oracle.hpp"

namespace testing_support {

using namespace homothety;

inline constexpr std::uint64_t kSeed = 20260117;

inline Rational rat(long n, long d = 1) {
  Rational r{Integer(n), Integer(d)};
  r.canonicalize();
  return r;
}

inline Rational random_rational(std::mt19937_64& rng, long num_bound = 9, long den_bound = 5) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  return rat(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, long num_bound = 9, long den_bound = 5) {
  for (;;) {
    Rational r = random_rational(rng, num_bound, den_bound);
    if (sgn(r) != 0) return r;
  }
}

/// Random element with radicands drawn from the squarefree divisors of 30
/// (primes 2, 3, 5), at most `terms` terms.
inline Scalar random_scalar(std::mt19937_64& rng, int terms = 3) {
  static const std::uint64_t radicands[] = {1, 2, 3, 5, 6, 10, 15, 30};
  std::uniform_int_distribution<int> count(0, terms);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<std::pair<Rational, std::uint64_t>> t;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) t.emplace_back(random_rational(rng), radicands[pick(rng)]);
  return Scalar::from_terms(t);
}

inline Scalar random_nonzero_scalar(std::mt19937_64& rng, int terms = 3) {
  for (;;) {
    Scalar s = random_scalar(rng, terms);
    if (!s.is_zero()) return s;
  }
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t dim, int terms = 2) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = random_scalar(rng, terms);
  return v;
}

inline Vector rational_vector(std::mt19937_64& rng, std::size_t dim) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = Scalar(random_rational(rng));
  return v;
}

inline AffineMap random_map(std::mt19937_64& rng, std::size_t dim) {
  return {random_nonzero_scalar(rng, 2), random_vector(rng, dim)};
}

inline Word random_word(std::mt19937_64& rng, std::size_t gens, std::size_t length, long max_exp = 3) {
  std::uniform_int_distribution<std::size_t> g(0, gens - 1);
  std::uniform_int_distribution<long> e(1, max_exp);
  std::bernoulli_distribution neg(0.5);
  Word w;
  for (std::size_t i = 0; i < length; ++i) w.push_back({g(rng), neg(rng) ? -e(rng) : e(rng)});
  return w;
}

/// Sign by recursive splitting x = a + b sqrt(p) over the largest prime p:
/// if a and b disagree in sign, compare a^2 with p b^2.
inline int oracle_sign(const Scalar& x) {
  if (x.is_zero()) return 0;
  const auto primes = x.radical_primes();
  if (primes.empty()) return sgn(*x.as_rational());
  const std::uint64_t p = primes.back();
  std::vector<std::pair<Rational, std::uint64_t>> a;
  std::vector<std::pair<Rational, std::uint64_t>> b;
  for (const auto& t : x.terms()) {
    if (t.radicand % p == 0) {
      b.emplace_back(t.coef, t.radicand / p);
    } else {
      a.emplace_back(t.coef, t.radicand);
    }
  }
  const Scalar sa = Scalar::from_terms(a);
  const Scalar sb = Scalar::from_terms(b);
  const int ga = oracle_sign(sa);
  const int gb = oracle_sign(sb);
  if (gb == 0) return ga;
  if (ga == 0 || ga == gb) return ga == 0 ? gb : ga;
  return ga * oracle_sign(sa * sa - Scalar(static_cast<long>(p)) * sb * sb);
}

/// Long-double evaluation, independent of the exact approximation code.
inline long double oracle_value(const Scalar& x) {
  long double s = 0;
  for (const auto& t : x.terms()) {
    s += static_cast<long double>(t.coef.get_num().get_d()) / static_cast<long double>(t.coef.get_den().get_d()) *
         std::sqrt(static_cast<long double>(t.radicand));
  }
  return s;
}

/// Word evaluation as a left fold of compose over the expanded letters.
inline AffineMap fold_word(const std::vector<AffineMap>& gens, const Word& w) {
  AffineMap acc = AffineMap::identity(gens.front().dim());
  for (const auto& l : w) {
    const AffineMap g = l.exponent > 0 ? gens.at(l.generator) : invert_map(gens.at(l.generator));
    for (long i = 0; i < std::abs(l.exponent); ++i) acc = compose(acc, g);
  }
  return acc;
}

/// Orbit by naive level sets keyed on the printed form.
inline std::set<std::string> oracle_orbit(const GroupSpec& spec, const Vector& x, int depth) {
  std::vector<AffineMap> letters;
  for (const auto& g : spec.gens()) {
    letters.push_back(g);
    letters.push_back(invert_map(g));
  }
  std::set<std::string> seen{x.to_string()};
  std::vector<Vector> frontier{x};
  for (int d = 0; d < depth; ++d) {
    std::vector<Vector> next;
    for (const auto& p : frontier) {
      for (const auto& f : letters) {
        Vector q = f(p);
        if (seen.insert(q.to_string()).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

inline Vector vec(std::initializer_list<long> xs) {
  Vector v(xs.size());
  std::size_t i = 0;
  for (long x : xs) v[i++] = Scalar(x);
  return v;
}

inline Scalar q(long n, long d) { return Scalar(rat(n, d)); }

}  // namespace testing_support
