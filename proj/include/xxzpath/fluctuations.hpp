#pragma once

#include <map>

#include "xxzpath/partition_functions.hpp"
#include "xxzpath/qpoly.hpp"

namespace xxz {

/// Window of even length `window` centred in a chain of even length
/// `chain_length`, in the sector (N/2, N/2).
struct FluctuationQuery {
  int chain_length = 0;  // N
  int window = 0;        // L

  /// First and last site of the window, 1-based.
  int first_site() const { return (chain_length - window) / 2 + 1; }
  int last_site() const { return (chain_length + window) / 2; }
};

/// Throws RangeError unless N and L are even with 2 <= L <= N.
void validate(const FluctuationQuery& query);

/// Exact law of F_L = (#up - #down)/2 over the window, for every
/// l in [-L/2, L/2]. All entries share the denominator Z(N/2, N/2).
std::map<int, QRational> fluctuation_distribution(const FluctuationQuery& query,
                                                  ZCache& cache);

struct RationalInterval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Enclosure of exp(t) for rational t >= 0 with relative width below 2^-80.
RationalInterval exp_enclosure(const Rational& t);

/// q^{l(l-1)} (1/l!) [q^{L+1}/(1-q^2)]^l exp[q^{L+3}/(1-q^2)]
struct TailBound {
  Rational q;
  int window = 0;
  int l = 0;
  RationalInterval value;
  double estimate = 0.0;
};

/// Throws DomainError unless 0 < q < 1, l >= 1 and L >= 0.
TailBound tail_bound(const Rational& q, int window, int l);
double tail_bound(double q, int window, int l);

}  // namespace xxz
