#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xxz {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponent = std::int64_t;

/// Sparse polynomial in q with non-negative exponents and unbounded integer
/// coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so two
/// polynomials are equal exactly when their term lists are equal.
class QPoly {
 public:
  struct Term {
    Exponent exponent;
    Integer coefficient;

    friend bool operator==(const Term&, const Term&) = default;
  };

  QPoly() = default;
  QPoly(long constant);  // NOLINT(google-explicit-constructor)

  static QPoly monomial(Exponent exponent, Integer coefficient = 1);
  /// Sorts, merges equal exponents and drops zeros. Throws DomainError on a
  /// negative exponent.
  static QPoly from_terms(std::vector<Term> terms);
  /// 1 - q^exponent
  static QPoly one_minus_power(Exponent exponent);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Both require a non-zero polynomial.
  Exponent min_exponent() const;
  Exponent max_exponent() const;

  Integer coefficient(Exponent exponent) const;
  /// Value at q = 1.
  Integer coefficient_sum() const;
  bool all_exponents_even() const;
  bool all_coefficients_positive() const;

  QPoly& operator+=(const QPoly& other);
  QPoly& operator-=(const QPoly& other);
  QPoly& operator*=(const QPoly& other);

  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator-(QPoly a);
  friend bool operator==(const QPoly&, const QPoly&) = default;

  /// Human-readable form such as "q^2 + 2*q^4"; for diagnostics only.
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Multiplies by q^k. Throws DomainError for k < 0.
QPoly shift(const QPoly& a, Exponent k);

QPoly power(const QPoly& base, unsigned exponent);

struct PolyDivision {
  QPoly quotient;
  QPoly remainder;
};

/// Long division over the integers. Every leading-coefficient quotient must
/// be exact, which holds whenever the divisor's leading coefficient is +-1.
/// Throws InexactDivision otherwise and DivisionByZero for a zero divisor.
PolyDivision divide(const QPoly& dividend, const QPoly& divisor);

/// Quotient of a division known to be exact; throws InexactDivision when a
/// remainder is left.
QPoly divide_exact(const QPoly& dividend, const QPoly& divisor);

/// Ratio of two polynomials. Not reduced to lowest terms.
class QRational {
 public:
  /// Throws DivisionByZero when `denominator` is the zero polynomial.
  QRational(QPoly numerator, QPoly denominator);
  QRational(QPoly value);  // NOLINT(google-explicit-constructor)

  const QPoly& numerator() const { return num_; }
  const QPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend QRational operator+(const QRational& a, const QRational& b);
  friend QRational operator*(const QRational& a, const QRational& b);
  /// Equality as rational functions (cross-multiplied).
  friend bool operator==(const QRational& a, const QRational& b);

 private:
  QPoly num_;
  QPoly den_;
};

Rational evaluate(const QPoly& a, const Rational& q);
double evaluate(const QPoly& a, double q);
/// Throws DivisionByZero when the denominator vanishes at q.
Rational evaluate(const QRational& a, const Rational& q);
double evaluate(const QRational& a, double q);

/// base^exponent for a possibly negative exponent; base must be non-zero
/// when exponent < 0.
Rational rational_power(const Rational& base, Exponent exponent);
double float_power(double base, Exponent exponent);

}  // namespace xxz
