#include <doctest.h>

#include <random>

#include "poly_literals.hpp"
#include "xxzpath/errors.hpp"
#include "xxzpath/qpoly.hpp"

using namespace xxz;
using xxz::testing::P;
using xxz::testing::R;

namespace {

QPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<Exponent> exponent(0, 20);
  std::uniform_int_distribution<long> coefficient(-50, 50);
  std::vector<QPoly::Term> terms;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) terms.push_back({exponent(rng), Integer(coefficient(rng))});
  return QPoly::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("add merges and cancels terms") {
  CHECK(QPoly::monomial(2) + QPoly::monomial(4) == P({{2, 1}, {4, 1}}));
  const QPoly sum = P({{2, 1}, {4, 1}}) + P({{4, -1}});
  CHECK(sum == P({{2, 1}}));
  CHECK(sum.size() == 1);
  const QPoly z11 = P({{2, 1}, {4, 1}});
  const QPoly z02 = QPoly(1);
  CHECK(z11 + z02 == P({{0, 1}, {2, 1}, {4, 1}}));
  CHECK((z11 - z11).is_zero());
}

TEST_CASE("multiply") {
  const QPoly p = P({{3, 2}, {7, -1}});
  CHECK(QPoly(1) * p == p);
  CHECK(P({{0, 1}, {2, 1}}) * P({{0, 1}, {2, -1}}) == P({{0, 1}, {4, -1}}));
  const QPoly z11 = P({{2, 1}, {4, 1}});
  CHECK(z11 * z11 == P({{4, 1}, {6, 2}, {8, 1}}));
  CHECK((QPoly() * p).is_zero());
}

TEST_CASE("multiply with widely spread exponents uses exact sparse product") {
  const QPoly a = P({{0, 1}, {1000000, 3}});
  const QPoly b = P({{5, 2}, {2000000, -1}});
  CHECK(a * b == P({{5, 2}, {1000005, 6}, {2000000, -1}, {3000000, -3}}));
}

TEST_CASE("shift") {
  CHECK(shift(QPoly(1), 0) == QPoly(1));
  CHECK(shift(P({{0, 1}, {2, 1}}), 2) == P({{2, 1}, {4, 1}}));
  const QPoly z12 = P({{2, 1}, {4, 1}, {6, 1}});
  CHECK(shift(z12, 4) == P({{6, 1}, {8, 1}, {10, 1}}));
  CHECK_THROWS_AS(shift(z12, -1), DomainError);
}

TEST_CASE("from_terms rejects negative exponents") {
  CHECK_THROWS_AS(QPoly::from_terms({{-2, Integer(1)}}), DomainError);
}

TEST_CASE("queries") {
  const QPoly p = P({{2, 3}, {6, -1}});
  CHECK(p.min_exponent() == 2);
  CHECK(p.max_exponent() == 6);
  CHECK(p.coefficient(6) == -1);
  CHECK(p.coefficient(4) == 0);
  CHECK(p.coefficient_sum() == 2);
  CHECK(p.all_exponents_even());
  CHECK_FALSE(p.all_coefficients_positive());
  CHECK(p.to_string() == "3*q^2 - q^6");
  CHECK(QPoly().to_string() == "0");
}

TEST_CASE("power") {
  CHECK(power(P({{0, 1}, {1, 1}}), 3) == P({{0, 1}, {1, 3}, {2, 3}, {3, 1}}));
  CHECK(power(P({{5, 2}}), 0) == QPoly(1));
}

TEST_CASE("division") {
  const QPoly a = QPoly::one_minus_power(8);
  const QPoly b = QPoly::one_minus_power(2);
  CHECK(divide_exact(a, b) == P({{0, 1}, {2, 1}, {4, 1}, {6, 1}}));
  const auto d = divide(P({{0, 1}, {3, 1}}), P({{0, 1}, {1, 1}}));
  CHECK(d.quotient * P({{0, 1}, {1, 1}}) + d.remainder == P({{0, 1}, {3, 1}}));
  CHECK_THROWS_AS(divide_exact(P({{0, 1}, {1, 1}}), P({{0, 1}, {2, 1}})), InexactDivision);
  CHECK_THROWS_AS(divide(QPoly(1), QPoly()), DivisionByZero);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(P({{2, 1}, {4, 1}}), R("1/2")) == R("5/16"));
  CHECK(evaluate(QRational(P({{2, 1}}), P({{2, 1}, {4, 1}})), R("1/2")) == R("4/5"));
  CHECK(evaluate(QPoly(1), 0.999) == 1.0);
  CHECK(evaluate(P({{2, 1}, {4, 1}}), 0.5) == doctest::Approx(0.3125));
  CHECK(evaluate(QPoly(), R("1/3")) == 0);
  CHECK_THROWS_AS(evaluate(QRational(QPoly(1), QPoly::one_minus_power(2)), Rational(1)),
                  DivisionByZero);
  CHECK_THROWS_AS(QRational(QPoly(1), QPoly()), DivisionByZero);
}

TEST_CASE("rational and float powers") {
  CHECK(rational_power(R("2/3"), -2) == R("9/4"));
  CHECK(rational_power(R("2/3"), 0) == 1);
  CHECK(float_power(0.5, -3) == 8.0);
}

TEST_CASE("QRational arithmetic is equality of rational functions") {
  const QRational a(P({{2, 1}}), P({{0, 1}, {2, 1}}));
  const QRational b(P({{4, 1}}), P({{2, 1}, {4, 1}}));
  CHECK(a == b);
  const QRational sum = a + QRational(QPoly(1));
  CHECK(sum == QRational(P({{0, 1}, {2, 2}}), P({{0, 1}, {2, 1}})));
  CHECK(a * b == QRational(P({{4, 1}}), P({{0, 1}, {2, 2}, {4, 1}})));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const QPoly a = random_poly(rng);
    const QPoly b = random_poly(rng);
    const QPoly c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == QPoly());
    CHECK(-(-a) == a);
    if (!b.is_zero()) {
      // Divisors with a unit leading coefficient divide exactly.
      const QPoly monic = b + QPoly::monomial(b.max_exponent() + 1);
      CHECK(divide_exact(a * monic, monic) == a);
    }
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(99);
  const Rational q = R("3/7");
  for (int i = 0; i < 200; ++i) {
    const QPoly a = random_poly(rng);
    const QPoly b = random_poly(rng);
    CHECK(evaluate(a * b, q) == evaluate(a, q) * evaluate(b, q));
    CHECK(evaluate(a + b, q) == evaluate(a, q) + evaluate(b, q));
    CHECK(evaluate(shift(a, 3), q) == evaluate(a, q) * q * q * q);
  }
}
