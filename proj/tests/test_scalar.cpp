#include <doctest.h>

#include <cmath>
#include <limits>

#include "support.hpp"

using namespace homothety;
using namespace testing_support;

namespace {

const Scalar r2 = Scalar::sqrt(2);
const Scalar r3 = Scalar::sqrt(3);

}  // namespace

TEST_SUITE("scalar") {

TEST_CASE("arithmetic examples") {
  CHECK((Scalar(1L) + r2) * (Scalar(1L) - r2) == Scalar(-1L));
  CHECK(r2 * r3 == Scalar::sqrt(6));
  CHECK((q(1, 2) + r2) + (q(1, 2) - r2) == Scalar(1L));
  CHECK(Scalar::sqrt(12) == Scalar(2L) * r3);
  CHECK(Scalar::sqrt(6) * Scalar::sqrt(10) == Scalar(2L) * Scalar::sqrt(15));
  CHECK(Scalar::sqrt(1) == Scalar(1L));
  CHECK(Scalar::sqrt(49) == Scalar(7L));
}

TEST_CASE("canonical form") {
  const Scalar x = Scalar::from_terms({{rat(1, 2), 8}, {rat(-1), 2}, {rat(3, 6), 1}});
  // 1/2 * 2 sqrt2 - sqrt2 + 1/2 = 1/2
  CHECK(x == q(1, 2));
  CHECK(x.terms().size() == 1);
  CHECK((r2 - r2).is_zero());
  CHECK((r2 - r2).terms().empty());
  const Scalar y = Scalar(3L) + r3 + r2;
  for (std::size_t i = 1; i < y.terms().size(); ++i) CHECK(y.terms()[i - 1].radicand < y.terms()[i].radicand);
  CHECK(y.coefficient(3) == Rational(1));
  CHECK(y.coefficient(5) == Rational(0));
  CHECK(!y.is_rational());
  CHECK(q(5, 7).as_rational() == rat(5, 7));
}

TEST_CASE("inverse examples") {
  CHECK(r2.inverse() == r2 * q(1, 2));
  CHECK((Scalar(1L) + r2).inverse() == Scalar(-1L) + r2);
  const Scalar x = Scalar(1L) + r2 + r3;
  CHECK(x * x.inverse() == Scalar(1L));
  CHECK_THROWS_AS(Scalar().inverse(), std::domain_error);
  const Scalar five = Scalar::sqrt(2) + Scalar::sqrt(3) + Scalar::sqrt(5) + Scalar::sqrt(7) + Scalar::sqrt(11);
  CHECK_THROWS_AS(five.inverse(), std::domain_error);
  const Scalar four = Scalar::sqrt(2) + Scalar::sqrt(3) + Scalar::sqrt(5) + Scalar::sqrt(7);
  CHECK(four * four.inverse() == Scalar(1L));
}

TEST_CASE("sign examples") {
  CHECK((Scalar(3L) * r2 - Scalar(4L)).sign() == 1);
  CHECK(Scalar().sign() == 0);
  CHECK((Scalar(10L) * r2 + Scalar(10L) * r3 - Scalar(31L)).sign() == 1);
  CHECK((Scalar(-1L) * r2).sign() == -1);
  // 99/70 is a close convergent of sqrt2 from above
  CHECK((q(99, 70) - r2).sign() == 1);
  CHECK((q(577, 408) - r2).sign() == 1);
  CHECK((q(1393, 985) - r2).sign() == -1);
  // sqrt2 + sqrt3 vs sqrt(5 + 2 sqrt6) are equal; the difference of squares is zero
  CHECK(((r2 + r3) * (r2 + r3) - (Scalar(5L) + Scalar(2L) * Scalar::sqrt(6))).sign() == 0);
}

TEST_CASE("approx examples") {
  CHECK(Scalar().approx() == 0.0);
  const double s2 = r2.approx(53);
  CHECK(std::abs(s2 - std::sqrt(2.0)) <= std::ldexp(std::sqrt(2.0), -52));
  CHECK(q(1, 3).approx(53) == 1.0 / 3.0);
  CHECK(std::abs((Scalar(10L) * r2 + Scalar(10L) * r3 - Scalar(31L)).approx() - 0.46264) < 1e-4);
  // bits below 53 loosen, never tighten
  CHECK(std::abs(r2.approx(10) - std::sqrt(2.0)) < std::ldexp(1.5, -9));
}

TEST_CASE("enclosure brackets the value") {
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 200; ++i) {
    const Scalar x = random_scalar(rng);
    for (unsigned bits : {8u, 64u, 200u}) {
      const Interval iv = x.enclose(bits);
      CHECK(iv.lo <= iv.hi);
      const long double v = oracle_value(x);
      CHECK(static_cast<long double>(iv.lo.get_d()) <= v + 1e-12L);
      CHECK(static_cast<long double>(iv.hi.get_d()) >= v - 1e-12L);
    }
  }
}

TEST_CASE("ring laws on random values") {
  std::mt19937_64 rng(kSeed + 1);
  for (int i = 0; i < 300; ++i) {
    const Scalar a = random_scalar(rng);
    const Scalar b = random_scalar(rng);
    const Scalar c = random_scalar(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Scalar());
    CHECK((a - b).is_zero() == (a == b));
  }
}

TEST_CASE("inverse on 1000 random nonzero values") {
  std::mt19937_64 rng(kSeed + 2);
  for (int i = 0; i < 1000; ++i) {
    const Scalar x = random_nonzero_scalar(rng);
    REQUIRE(x * x.inverse() == Scalar(1L));
  }
}

TEST_CASE("sign agrees with the recursive oracle and is multiplicative") {
  std::mt19937_64 rng(kSeed + 3);
  for (int i = 0; i < 1000; ++i) {
    const Scalar x = random_nonzero_scalar(rng);
    const Scalar y = random_nonzero_scalar(rng);
    REQUIRE(x.sign() == oracle_sign(x));
    REQUIRE((x * y).sign() == x.sign() * y.sign());
    const long double v = oracle_value(x);
    if (std::abs(v) > 1e-12L) REQUIRE(x.sign() == (v > 0 ? 1 : -1));
  }
}

TEST_CASE("approx stays within the relative bound and is sign-consistent") {
  std::mt19937_64 rng(kSeed + 4);
  for (int i = 0; i < 1000; ++i) {
    const Scalar x = random_nonzero_scalar(rng);
    const double a = x.approx();
    const Rational exact = x.approx_rational(200);
    const Rational err = abs(Rational(a) - exact);
    // relative error below 2^-52, with slack for the 200-bit reference
    REQUIRE(err <= abs(exact) * Rational(Integer(1), Integer(1) << 52));
    REQUIRE((a > 0 ? 1 : -1) == x.sign());
  }
}

TEST_CASE("pow, floor, abs") {
  CHECK(pow(r2, 2) == Scalar(2L));
  CHECK(pow(r2, -2) == q(1, 2));
  CHECK(pow(Scalar(1L) + r2, 3) == (Scalar(1L) + r2) * (Scalar(1L) + r2) * (Scalar(1L) + r2));
  CHECK(pow(Scalar(7L), 0) == Scalar(1L));
  CHECK(floor(r2) == 1);
  CHECK(floor(-r2) == -2);
  CHECK(floor(Scalar(3L)) == 3);
  CHECK(floor(q(-7, 2)) == -4);
  CHECK(floor(Scalar(10L) * r2 + Scalar(10L) * r3 - Scalar(31L)) == 0);
  CHECK(abs(Scalar(-1L) * r3) == r3);
}

TEST_CASE("helpers") {
  CHECK(split_square(72) == std::make_pair<std::uint64_t, std::uint64_t>(2, 6));
  CHECK(prime_factors(60) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(exact_rational(0.5) == rat(1, 2));
  CHECK(nearest_double(rat(1, 3)) == 1.0 / 3.0);
  CHECK(nearest_double(rat(-2, 3)) == -2.0 / 3.0);
  CHECK(r2.hash() == (Scalar(2L) * r2 * q(1, 2)).hash());
  CHECK((Scalar(1L) + r2).conjugate(2) == Scalar(1L) - r2);
  CHECK(Scalar::sqrt(6).conjugate(3) == -Scalar::sqrt(6));
  CHECK((r2 + r3 + Scalar::sqrt(6)).radical_primes() == std::vector<std::uint64_t>{2, 3});
}

}
