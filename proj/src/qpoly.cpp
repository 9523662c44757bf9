#include "xxzpath/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "xxzpath/errors.hpp"

namespace xxz {

namespace {

// Merges a sorted term list in place, dropping zero coefficients.
void canonicalize_sorted(std::vector<QPoly::Term>& terms) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Integer sum = std::move(terms[i].coefficient);
    const Exponent e = terms[i].exponent;
    for (; j < terms.size() && terms[j].exponent == e; ++j) {
      sum += terms[j].coefficient;
    }
    if (sum != 0) {
      terms[out].exponent = e;
      terms[out].coefficient = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

template <class Combine>
std::vector<QPoly::Term> merge_terms(std::span<const QPoly::Term> a,
                                     std::span<const QPoly::Term> b,
                                     Combine combine) {
  std::vector<QPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exponent < b[j].exponent)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exponent < a[i].exponent) {
      out.push_back({b[j].exponent, combine(Integer(0), b[j].coefficient)});
      ++j;
    } else {
      Integer c = combine(a[i].coefficient, b[j].coefficient);
      if (c != 0) out.push_back({a[i].exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

Integer integer_power(const Integer& base, Exponent exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(),
             static_cast<unsigned long>(exponent));
  return out;
}

}  // namespace

QPoly::QPoly(long constant) {
  if (constant != 0) terms_.push_back({0, Integer(constant)});
}

QPoly QPoly::monomial(Exponent exponent, Integer coefficient) {
  if (exponent < 0) throw DomainError("QPoly exponents must be non-negative");
  QPoly p;
  if (coefficient != 0) p.terms_.push_back({exponent, std::move(coefficient)});
  return p;
}

QPoly QPoly::from_terms(std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exponent < 0) {
      throw DomainError("QPoly exponents must be non-negative");
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& x, const Term& y) {
                     return x.exponent < y.exponent;
                   });
  canonicalize_sorted(terms);
  QPoly p;
  p.terms_ = std::move(terms);
  return p;
}

QPoly QPoly::one_minus_power(Exponent exponent) {
  if (exponent == 0) return QPoly();
  return QPoly(1) - monomial(exponent);
}

Exponent QPoly::min_exponent() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no exponents");
  return terms_.front().exponent;
}

Exponent QPoly::max_exponent() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no exponents");
  return terms_.back().exponent;
}

Integer QPoly::coefficient(Exponent exponent) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), exponent,
      [](const Term& t, Exponent e) { return t.exponent < e; });
  if (it != terms_.end() && it->exponent == exponent) return it->coefficient;
  return 0;
}

Integer QPoly::coefficient_sum() const {
  Integer s = 0;
  for (const auto& t : terms_) s += t.coefficient;
  return s;
}

bool QPoly::all_exponents_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.exponent % 2 == 0; });
}

bool QPoly::all_coefficients_positive() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return sgn(t.coefficient) > 0; });
}

QPoly& QPoly::operator+=(const QPoly& other) {
  if (other.is_zero()) return *this;
  terms_ = merge_terms(terms_, other.terms_,
                       [](const Integer& x, const Integer& y) -> Integer {
                         return x + y;
                       });
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& other) {
  if (other.is_zero()) return *this;
  terms_ = merge_terms(terms_, other.terms_,
                       [](const Integer& x, const Integer& y) -> Integer {
                         return x - y;
                       });
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& other) {
  *this = *this * other;
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  const Exponent lo = a.min_exponent() + b.min_exponent();
  const Exponent hi = a.max_exponent() + b.max_exponent();
  const auto span = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t products = a.size() * b.size();

  QPoly out;
  if (span <= 4 * products + 64) {
    // Dense accumulator: partition functions are dense in even exponents.
    std::vector<Integer> acc(span);
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        mpz_addmul(acc[x.exponent + y.exponent - lo].get_mpz_t(),
                   x.coefficient.get_mpz_t(), y.coefficient.get_mpz_t());
      }
    }
    for (std::size_t k = 0; k < span; ++k) {
      if (acc[k] != 0) {
        out.terms_.push_back({lo + static_cast<Exponent>(k), std::move(acc[k])});
      }
    }
    return out;
  }

  std::vector<QPoly::Term> raw;
  raw.reserve(products);
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      raw.push_back({x.exponent + y.exponent, x.coefficient * y.coefficient});
    }
  }
  return QPoly::from_terms(std::move(raw));
}

QPoly operator-(QPoly a) {
  for (auto& t : a.terms_) t.coefficient = -t.coefficient;
  return a;
}

std::string QPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Integer c = t.coefficient;
    if (first) {
      if (sgn(c) < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    if (t.exponent == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << '*';
    os << 'q';
    if (t.exponent != 1) os << '^' << t.exponent;
  }
  return os.str();
}

QPoly shift(const QPoly& a, Exponent k) {
  if (k < 0) throw DomainError("shift amount must be non-negative");
  std::vector<QPoly::Term> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) t.exponent += k;
  return QPoly::from_terms(std::move(terms));
}

QPoly power(const QPoly& base, unsigned exponent) {
  QPoly result(1);
  QPoly b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b = b * b;
  }
  return result;
}

PolyDivision divide(const QPoly& dividend, const QPoly& divisor) {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (dividend.is_zero()) return {};

  const Exponent top = divisor.max_exponent();
  const Integer& lead = divisor.terms().back().coefficient;
  // Quotient exponents are >= 0, so every touched exponent is at least the
  // divisor's lowest one.
  const Exponent base =
      std::min(dividend.min_exponent(), divisor.min_exponent());
  std::vector<Integer> work(
      static_cast<std::size_t>(dividend.max_exponent() - base + 1));
  for (const auto& t : dividend.terms()) work[t.exponent - base] = t.coefficient;

  std::vector<QPoly::Term> quotient;
  for (Exponent e = dividend.max_exponent(); e >= top && e >= base; --e) {
    Integer& c = work[e - base];
    if (c == 0) continue;
    if (!mpz_divisible_p(c.get_mpz_t(), lead.get_mpz_t())) {
      throw InexactDivision("leading coefficient does not divide");
    }
    Integer factor = c / lead;
    const Exponent qe = e - top;
    for (const auto& d : divisor.terms()) {
      const Exponent target = qe + d.exponent;
      mpz_submul(work[target - base].get_mpz_t(), factor.get_mpz_t(),
                 d.coefficient.get_mpz_t());
    }
    quotient.push_back({qe, std::move(factor)});
  }

  std::vector<QPoly::Term> rest;
  for (std::size_t k = 0; k < work.size(); ++k) {
    if (work[k] != 0) {
      rest.push_back({base + static_cast<Exponent>(k), std::move(work[k])});
    }
  }
  return {QPoly::from_terms(std::move(quotient)),
          QPoly::from_terms(std::move(rest))};
}

QPoly divide_exact(const QPoly& dividend, const QPoly& divisor) {
  auto [quotient, remainder] = divide(dividend, divisor);
  if (!remainder.is_zero()) {
    throw InexactDivision("non-zero remainder: " + remainder.to_string());
  }
  return quotient;
}

QRational::QRational(QPoly numerator, QPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw DivisionByZero("QRational with zero denominator");
}

QRational::QRational(QPoly value) : num_(std::move(value)), den_(1) {}

QRational operator+(const QRational& a, const QRational& b) {
  if (a.den_ == b.den_) return QRational(a.num_ + b.num_, a.den_);
  return QRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRational operator*(const QRational& a, const QRational& b) {
  return QRational(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator==(const QRational& a, const QRational& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

Rational evaluate(const QPoly& a, const Rational& q) {
  if (a.is_zero()) return 0;
  Rational canonical = q;
  canonical.canonicalize();
  const Integer& num = canonical.get_num();
  const Integer& den = canonical.get_den();
  const auto terms = a.terms();
  const Exponent top = terms.back().exponent;

  // Horner over the integers: sum_i c_i num^{e_i} den^{top - e_i}.
  Integer acc = terms.back().coefficient;
  Integer den_power = 1;
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    const Exponent gap = terms[i + 1].exponent - terms[i].exponent;
    acc *= integer_power(num, gap);
    den_power *= integer_power(den, gap);
    acc += terms[i].coefficient * den_power;
  }
  acc *= integer_power(num, terms.front().exponent);
  Rational out(acc, integer_power(den, top));
  out.canonicalize();
  return out;
}

double evaluate(const QPoly& a, double q) {
  if (a.is_zero()) return 0.0;
  const auto terms = a.terms();
  double acc = terms.back().coefficient.get_d();
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    acc = acc * float_power(q, terms[i + 1].exponent - terms[i].exponent) +
          terms[i].coefficient.get_d();
  }
  return acc * float_power(q, terms.front().exponent);
}

Rational evaluate(const QRational& a, const Rational& q) {
  Rational den = evaluate(a.denominator(), q);
  if (den == 0) throw DivisionByZero("denominator vanishes at q");
  Rational out = evaluate(a.numerator(), q) / den;
  out.canonicalize();
  return out;
}

double evaluate(const QRational& a, double q) {
  const double den = evaluate(a.denominator(), q);
  if (den == 0.0) throw DivisionByZero("denominator vanishes at q");
  return evaluate(a.numerator(), q) / den;
}

Rational rational_power(const Rational& base, Exponent exponent) {
  if (exponent < 0) {
    if (base == 0) throw DivisionByZero("zero to a negative power");
    Rational inv = 1 / base;
    return rational_power(inv, -exponent);
  }
  Rational canonical = base;
  canonical.canonicalize();
  Rational out(integer_power(canonical.get_num(), exponent),
               integer_power(canonical.get_den(), exponent));
  out.canonicalize();
  return out;
}

double float_power(double base, Exponent exponent) {
  return std::pow(base, static_cast<double>(exponent));
}

}  // namespace xxz
