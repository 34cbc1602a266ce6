#include "homothety/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace homothety {

namespace {

// sqrt(r1) * sqrt(r2) = g * sqrt((r1/g) * (r2/g)) with g = gcd(r1, r2); the
// cofactors are coprime and squarefree so their product is squarefree.
std::pair<std::uint64_t, std::uint64_t> radical_product(std::uint64_t r1, std::uint64_t r2) {
  std::uint64_t a = r1;
  std::uint64_t b = r2;
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  const std::uint64_t g = a;
  const unsigned __int128 prod = static_cast<unsigned __int128>(r1 / g) * (r2 / g);
  if (prod > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("radicand product exceeds 64 bits");
  }
  return {static_cast<std::uint64_t>(prod), g};
}

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))));
  }
  return h;
}

// floor(sqrt(r) * 2^bits)
Integer scaled_isqrt(std::uint64_t r, unsigned bits) {
  Integer v(static_cast<unsigned long>(r));
  v <<= 2 * bits;
  Integer s;
  mpz_sqrt(s.get_mpz_t(), v.get_mpz_t());
  return s;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t m) {
  if (m == 0) throw std::domain_error("radicand must be positive");
  std::uint64_t root = 1;
  std::uint64_t rest = m;
  for (std::uint64_t d = 2; d <= rest / d; ++d) {
    while (rest % (d * d) == 0) {
      rest /= d * d;
      root *= d;
    }
  }
  return {rest, root};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= m / d; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value");
  return Rational(v);
}

double nearest_double(const Rational& q) {
  const double d = q.get_d();  // truncates toward zero
  if (sgn(q) == 0) return 0.0;
  const double away = std::nextafter(d, sgn(q) > 0 ? std::numeric_limits<double>::infinity()
                                                   : -std::numeric_limits<double>::infinity());
  if (!std::isfinite(away)) return d;
  const Rational e1 = abs(q - Rational(d));
  const Rational e2 = abs(Rational(away) - q);
  return e2 < e1 ? away : d;
}

Scalar::Scalar(long value) {
  if (value != 0) terms_.push_back({1, Rational(value)});
}

Scalar::Scalar(const Rational& value) {
  if (sgn(value) != 0) {
    Rational v(value);
    v.canonicalize();
    terms_.push_back({1, v});
  }
}

Scalar::Scalar(const Integer& value) : Scalar(Rational(value)) {}

Scalar Scalar::radical(const Rational& coef, std::uint64_t m) {
  auto [free, root] = split_square(m);
  Rational c = coef * Rational(static_cast<unsigned long>(root));
  Scalar s;
  if (sgn(c) != 0) s.terms_.push_back({free, c});
  return s;
}

Scalar Scalar::from_terms(const std::vector<std::pair<Rational, std::uint64_t>>& terms) {
  Scalar s;
  for (const auto& [c, m] : terms) s += radical(c, m);
  return s;
}

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().radicand == 1);
}

std::optional<Rational> Scalar::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.front().radicand == 1) return terms_.front().coef;
  return std::nullopt;
}

Rational Scalar::coefficient(std::uint64_t radicand) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                             [](const Term& t, std::uint64_t r) { return t.radicand < r; });
  if (it != terms_.end() && it->radicand == radicand) return it->coef;
  return Rational(0);
}

void Scalar::normalize_sorted() {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().radicand == t.radicand) {
      out.back().coef += t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return sgn(t.coef) == 0; });
  terms_ = std::move(out);
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->radicand < b->radicand)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->radicand < a->radicand) {
      out.push_back(*b++);
    } else {
      Rational c = a->coef + b->coef;
      if (sgn(c) != 0) out.push_back({a->radicand, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      if (x.radicand == 1 || y.radicand == 1) {
        r.terms_.push_back({x.radicand * y.radicand, x.coef * y.coef});
      } else {
        auto [rad, g] = radical_product(x.radicand, y.radicand);
        r.terms_.push_back({rad, x.coef * y.coef * Rational(static_cast<unsigned long>(g))});
      }
    }
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Scalar::Term& s, const Scalar::Term& t) { return s.radicand < t.radicand; });
  r.normalize_sorted();
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }
Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this / o; }

Scalar Scalar::conjugate(std::uint64_t prime) const {
  Scalar r(*this);
  for (auto& t : r.terms_) {
    if (t.radicand % prime == 0) t.coef = -t.coef;
  }
  return r;
}

std::vector<std::uint64_t> Scalar::radical_primes() const {
  std::vector<std::uint64_t> primes;
  for (const auto& t : terms_) {
    for (auto p : prime_factors(t.radicand)) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (auto q = as_rational()) return Scalar(Rational(1) / *q);
  const auto primes = radical_primes();
  if (primes.size() > kMaxRadicalPrimes) {
    throw std::domain_error("scalar involves " + std::to_string(primes.size()) +
                            " radical primes; at most " + std::to_string(kMaxRadicalPrimes) +
                            " are supported");
  }
  Scalar num(1L);
  Scalar den(*this);
  for (auto p : primes) {
    Scalar c = den.conjugate(p);
    num *= c;
    den *= c;
  }
  auto q = den.as_rational();
  if (!q) throw std::logic_error("conjugate product did not rationalize");
  for (auto& t : num.terms_) t.coef /= *q;
  return num;
}

Interval Scalar::enclose(unsigned bits) const {
  Interval iv{Rational(0), Rational(0)};
  Integer scale(1);
  scale <<= bits;
  for (const auto& t : terms_) {
    if (t.radicand == 1) {
      iv.lo += t.coef;
      iv.hi += t.coef;
      continue;
    }
    const Integer s = scaled_isqrt(t.radicand, bits);
    Rational lo(s, scale);
    Rational hi(s + 1, scale);
    lo.canonicalize();
    hi.canonicalize();
    if (sgn(t.coef) > 0) {
      iv.lo += t.coef * lo;
      iv.hi += t.coef * hi;
    } else {
      iv.lo += t.coef * hi;
      iv.hi += t.coef * lo;
    }
  }
  return iv;
}

int Scalar::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.front().coef);
  const int first = sgn(terms_.front().coef);
  if (std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return sgn(t.coef) == first; })) {
    return first;
  }
  // Nonzero elements are bounded away from 0, so refinement terminates.
  for (unsigned bits = 64;; bits *= 2) {
    const Interval iv = enclose(bits);
    if (sgn(iv.lo) > 0) return 1;
    if (sgn(iv.hi) < 0) return -1;
  }
}

Rational Scalar::approx_rational(unsigned bits) const {
  if (terms_.empty()) return Rational(0);
  if (auto q = as_rational()) return *q;
  for (unsigned p = std::max(64u, bits + 8);; p *= 2) {
    const Interval iv = enclose(p);
    if (sgn(iv.lo) != sgn(iv.hi) || sgn(iv.lo) == 0) continue;
    const Rational width = iv.hi - iv.lo;
    Rational bound = abs(iv.lo) < abs(iv.hi) ? abs(iv.lo) : abs(iv.hi);
    mpq_div_2exp(bound.get_mpq_t(), bound.get_mpq_t(), bits + 1);
    if (width < bound) {
      Rational mid = (iv.lo + iv.hi) / 2;
      mid.canonicalize();
      return mid;
    }
  }
}

double Scalar::approx(int bits) const {
  bits = std::clamp(bits, 1, 53);
  if (terms_.empty()) return 0.0;
  // 64 extra bits keep the enclosure error far below half an ulp.
  return nearest_double(approx_rational(static_cast<unsigned>(bits) + 64));
}

std::size_t Scalar::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    hash_combine(h, std::hash<std::uint64_t>{}(t.radicand));
    hash_combine(h, hash_mpz(t.coef.get_num()));
    hash_combine(h, hash_mpz(t.coef.get_den()));
  }
  return h;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    if (t.radicand == 1) {
      os << c.get_str();
    } else if (c == 1) {
      os << "sqrt(" << t.radicand << ")";
    } else if (c == -1) {
      os << "-sqrt(" << t.radicand << ")";
    } else {
      os << c.get_str() << "*sqrt(" << t.radicand << ")";
    }
    first = false;
  }
  return os.str();
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar pow(const Scalar& x, long n) {
  Scalar base = n < 0 ? x.inverse() : x;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  Scalar result(1L);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

Integer floor(const Scalar& x) {
  if (auto q = x.as_rational()) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q->get_num_mpz_t(), q->get_den_mpz_t());
    return f;
  }
  const Rational a = x.approx_rational(64);
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  while ((x - Scalar(k)).sign() < 0) k -= 1;
  while ((x - Scalar(Integer(k + 1))).sign() >= 0) k += 1;
  return k;
}

}  // namespace homothety
