#include "xxzpath/fluctuations.hpp"

#include <algorithm>
#include <cmath>

#include "xxzpath/errors.hpp"

namespace xxz {

namespace {

void require_tail_args(double q, int window, int l) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("tail bound needs 0 < q < 1");
  if (l < 1) throw DomainError("tail bound needs l >= 1");
  if (window < 0) throw DomainError("tail bound needs L >= 0");
}

}  // namespace

void validate(const FluctuationQuery& query) {
  const int n = query.chain_length;
  const int len = query.window;
  if (n < 2 || n % 2 != 0) throw RangeError("chain length N must be even and >= 2");
  if (len < 2 || len % 2 != 0) throw RangeError("window L must be even and >= 2");
  if (len > n) throw RangeError("window L must not exceed N");
}

std::map<int, QRational> fluctuation_distribution(const FluctuationQuery& query,
                                                  ZCache& cache) {
  validate(query);
  const int half = query.chain_length / 2;
  const int before = query.first_site() - 1;
  const int len = query.window;
  const QPoly total = *cache.get(half, half);

  std::map<int, QPoly> numerators;
  for (int l = -len / 2; l <= len / 2; ++l) numerators[l] = QPoly();

  // Cut at the diagonals bounding the window; i downs before it, d inside.
  for (int i = std::max(0, before - half); i <= std::min(half, before); ++i) {
    const QPoly head = *cache.get(i, before - i);
    for (int d = 0; d <= len; ++d) {
      const int down = i + d;
      const int up = before + len - down;
      if (down > half || up > half || up < before - i) continue;
      const QPoly mid = z_generalized({i, before - i, down, up}, cache);
      const QPoly tail = z_generalized({down, up, half, half}, cache);
      numerators[len / 2 - d] += head * mid * tail;
    }
  }

  std::map<int, QRational> out;
  for (auto& [l, num] : numerators) out.emplace(l, QRational(std::move(num), total));
  return out;
}

RationalInterval exp_enclosure(const Rational& t) {
  if (t < 0) throw DomainError("exp enclosure needs t >= 0");
  Rational sum = 1;
  Rational term = 1;
  const Rational tolerance(Integer(1), Integer(1) << 80);
  for (long k = 1;; ++k) {
    term = term * t / k;
    term.canonicalize();
    sum += term;
    // Remaining tail: term * sum_{j>=1} (t/(k+1))^j <= term * t/(k+1-t).
    if (k + 1 > 2 * t) {
      Rational rest = term * t / (Rational(k + 1) - t);
      rest.canonicalize();
      if (rest <= tolerance * sum) {
        sum.canonicalize();
        Rational hi = sum + rest;
        hi.canonicalize();
        return {sum, hi};
      }
    }
  }
}

TailBound tail_bound(const Rational& q, int window, int l) {
  require_tail_args(q.get_d(), window, l);
  if (q <= 0 || q >= 1) throw DomainError("tail bound needs 0 < q < 1");
  const Rational gap = 1 - q * q;
  Rational base = rational_power(q, window + 1) / gap;
  Rational prefactor = rational_power(q, static_cast<Exponent>(l) * (l - 1)) *
                       rational_power(base, l);
  Integer factorial;
  mpz_fac_ui(factorial.get_mpz_t(), static_cast<unsigned long>(l));
  prefactor /= factorial;
  prefactor.canonicalize();
  Rational exponent = rational_power(q, window + 3) / gap;
  exponent.canonicalize();
  const RationalInterval e = exp_enclosure(exponent);

  TailBound out;
  out.q = q;
  out.window = window;
  out.l = l;
  out.value = {prefactor * e.lo, prefactor * e.hi};
  out.value.lo.canonicalize();
  out.value.hi.canonicalize();
  out.estimate = tail_bound(q.get_d(), window, l);
  return out;
}

double tail_bound(double q, int window, int l) {
  require_tail_args(q, window, l);
  const double gap = 1.0 - q * q;
  const double log_value = static_cast<double>(l) * (l - 1) * std::log(q) -
                           std::lgamma(l + 1.0) +
                           l * ((window + 1) * std::log(q) - std::log(gap)) +
                           std::pow(q, window + 3) / gap;
  return std::exp(log_value);
}

}  // namespace xxz
