#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xxzpath/partition_functions.hpp"
#include "xxzpath/qpoly.hpp"

namespace xxz {

enum class Spin { down, up };

struct SiteSpin {
  int site = 0;  // 1-based position on the chain
  Spin spin = Spin::down;
  friend bool operator==(const SiteSpin&, const SiteSpin&) = default;
};

/// Joint spin constraint at strictly increasing sites of a sector.
struct CorrelationQuery {
  SectorSpec sector;
  std::vector<SiteSpin> sites;

  /// v: number of constrained down spins.
  int down_count() const;
  int up_count() const { return static_cast<int>(sites.size()) - down_count(); }
};

/// Parses "3:down,4:up" (also accepts d/u and -/+).
std::vector<SiteSpin> parse_sites(std::string_view text);
std::string format_sites(const std::vector<SiteSpin>& sites);

/// Throws RangeError for empty, unsorted or out-of-chain sites and
/// InconsistentQuery when more downs than n or more ups than m are asked for.
void validate(const CorrelationQuery& query);

/// Probability that the path passes through (x, y):
/// q^{2(x+y)(n-x)} Z(x,y) Z(n-x,m-y) / Z(n,m).
QRational point_prob(int n, int m, int x, int y, ZCache& cache);

/// Probability that site x holds a down spin, summed over the horizontal
/// bonds crossing the anti-diagonal x.
QRational spin_down_prob(int n, int m, int x, ZCache& cache);
QRational spin_up_prob(int n, int m, int x, ZCache& cache);

/// P(S_x = down, S_{x+1} = up), 1 <= x < n + m.
QRational pair_down_up_prob(int n, int m, int x, ZCache& cache);

/// Exact joint probability of a query, by cutting the path at every
/// constrained site and chaining translated partition functions.
QRational multipoint_prob(const CorrelationQuery& query, ZCache& cache);

// Upper bounds. Each returns the bound as an exact rational or a double.

/// q^{2(x-n)} (1 - q^{2n}) / (1 - q^{2(n+m)})
Rational bound_down(int n, int m, int x, const Rational& q);
double bound_down(int n, int m, int x, double q);

/// (1 - q^{2m}) / (1 - q^{2(n+m)})
Rational spin_up_bound(int n, int m, int x, const Rational& q);
double spin_up_bound(int n, int m, int x, double q);

/// q^{2(x-n)} (1-q^{2m})/(1-q^{2n}) (1-q^{2L})/(1-q^{2(L-1)}); needs n >= 1
/// and L >= 2, otherwise throws DomainError.
Rational pair_bound(int n, int m, int x, const Rational& q);
double pair_bound(int n, int m, int x, double q);

/// v(v-1) + 2 sum_k (x_k - n) alpha_k
Exponent exp_bound_exponent(const CorrelationQuery& query);
Rational exp_bound(const CorrelationQuery& query, const Rational& q);
double exp_bound(const CorrelationQuery& query, double q);

// The regimes in which the bounds are claimed.
bool down_bound_in_regime(int n, int m, int x);
bool up_bound_in_regime(int n, int m, int x);
bool pair_bound_in_regime(int n, int m, int x);
bool exp_bound_in_regime(const CorrelationQuery& query);

}  // namespace xxz
