#include "xxzpath/correlations.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "xxzpath/errors.hpp"

namespace xxz {

namespace {

Rational pw(const Rational& q, Exponent e) { return rational_power(q, e); }
double pw(double q, Exponent e) { return float_power(q, e); }

void require_site(int n, int m, int x, const char* what) {
  if (n < 0 || m < 0) throw RangeError("sector requires n, m >= 0");
  if (x < 1 || x > n + m) {
    throw RangeError(std::string(what) + ": site " + std::to_string(x) +
                     " outside [1, " + std::to_string(n + m) + "]");
  }
}

QPoly z(ZCache& cache, int n, int m) { return *cache.get(n, m); }

template <class S>
S bound_down_impl(int n, int m, int x, const S& q) {
  require_site(n, m, x, "down-spin bound");
  const S one = 1;
  S num = one - pw(q, 2 * static_cast<Exponent>(n));
  S den = one - pw(q, 2 * static_cast<Exponent>(n + m));
  S out = pw(q, 2 * static_cast<Exponent>(x - n)) * num / den;
  return out;
}

template <class S>
S spin_up_bound_impl(int n, int m, int x, const S& q) {
  require_site(n, m, x, "up-spin bound");
  const S one = 1;
  S num = one - pw(q, 2 * static_cast<Exponent>(m));
  S den = one - pw(q, 2 * static_cast<Exponent>(n + m));
  S out = num / den;
  return out;
}

template <class S>
S pair_bound_impl(int n, int m, int x, const S& q) {
  require_site(n, m, x, "pair bound");
  const int length = n + m;
  if (n < 1 || length < 2 || x >= length) {
    throw DomainError("pair bound needs n >= 1 and 1 <= x < n + m");
  }
  const S one = 1;
  S a = one - pw(q, 2 * static_cast<Exponent>(m));
  S b = one - pw(q, 2 * static_cast<Exponent>(n));
  S c = one - pw(q, 2 * static_cast<Exponent>(length));
  S d = one - pw(q, 2 * static_cast<Exponent>(length - 1));
  S out = pw(q, 2 * static_cast<Exponent>(x - n)) * (a / b) * (c / d);
  return out;
}

Spin parse_spin(std::string_view s) {
  if (s == "down" || s == "d" || s == "-") return Spin::down;
  if (s == "up" || s == "u" || s == "+") return Spin::up;
  throw PreconditionError("unknown spin value '" + std::string(s) +
                          "', expected down or up");
}

}  // namespace

int CorrelationQuery::down_count() const {
  return static_cast<int>(std::count_if(sites.begin(), sites.end(),
                                        [](const SiteSpin& s) {
                                          return s.spin == Spin::down;
                                        }));
}

std::vector<SiteSpin> parse_sites(std::string_view text) {
  std::vector<SiteSpin> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw PreconditionError("site entry '" + std::string(item) +
                              "' must look like 3:down");
    }
    int site = 0;
    const auto pos = item.substr(0, colon);
    const auto [ptr, ec] = std::from_chars(pos.data(), pos.data() + pos.size(), site);
    if (ec != std::errc() || ptr != pos.data() + pos.size()) {
      throw PreconditionError("site position '" + std::string(pos) +
                              "' is not an integer");
    }
    out.push_back({site, parse_spin(item.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_sites(const std::vector<SiteSpin>& sites) {
  std::string s;
  for (const auto& site : sites) {
    if (!s.empty()) s += ',';
    s += std::to_string(site.site);
    s += site.spin == Spin::down ? ":down" : ":up";
  }
  return s;
}

void validate(const CorrelationQuery& query) {
  const auto [n, m] = query.sector;
  if (n < 0 || m < 0) throw RangeError("sector requires n, m >= 0");
  if (query.sites.empty()) throw RangeError("query needs at least one site");
  int previous = 0;
  for (const auto& s : query.sites) {
    if (s.site <= previous) {
      throw RangeError("sites must be strictly increasing and >= 1");
    }
    if (s.site > n + m) {
      throw RangeError("site " + std::to_string(s.site) +
                       " beyond chain length " + std::to_string(n + m));
    }
    previous = s.site;
  }
  if (query.down_count() > n) {
    throw InconsistentQuery("query asks for more down spins than n");
  }
  if (query.up_count() > m) {
    throw InconsistentQuery("query asks for more up spins than m");
  }
}

QRational point_prob(int n, int m, int x, int y, ZCache& cache) {
  if (n < 0 || m < 0) throw RangeError("sector requires n, m >= 0");
  if (x < 0 || x > n || y < 0 || y > m) {
    throw RangeError("point (" + std::to_string(x) + "," + std::to_string(y) +
                     ") outside the box");
  }
  QPoly num = shift(z(cache, x, y) * z(cache, n - x, m - y),
                    2 * static_cast<Exponent>(x + y) * (n - x));
  return {std::move(num), z(cache, n, m)};
}

QRational spin_down_prob(int n, int m, int x, ZCache& cache) {
  require_site(n, m, x, "spin probability");
  QPoly num;
  for (int j = std::max(1, x - m); j <= std::min(n, x); ++j) {
    // Horizontal bond (j-1, x-j) -> (j, x-j).
    num += z(cache, j - 1, x - j) * z_generalized({j, x - j, n, m}, cache);
  }
  return {shift(num, 2 * static_cast<Exponent>(x)), z(cache, n, m)};
}

QRational spin_up_prob(int n, int m, int x, ZCache& cache) {
  require_site(n, m, x, "spin probability");
  QPoly num;
  for (int j = std::max(0, x - m); j <= std::min(n, x - 1); ++j) {
    // Vertical bond (j, x-j-1) -> (j, x-j).
    num += z(cache, j, x - j - 1) * z_generalized({j, x - j, n, m}, cache);
  }
  return {std::move(num), z(cache, n, m)};
}

QRational pair_down_up_prob(int n, int m, int x, ZCache& cache) {
  require_site(n, m, x, "pair probability");
  if (x >= n + m) throw RangeError("pair probability needs x < n + m");
  QPoly num;
  for (int j = std::max(1, x + 1 - m); j <= std::min(n, x); ++j) {
    num += z(cache, j - 1, x - j) * z_generalized({j, x - j + 1, n, m}, cache);
  }
  return {shift(num, 2 * static_cast<Exponent>(x)), z(cache, n, m)};
}

QRational multipoint_prob(const CorrelationQuery& query, ZCache& cache) {
  validate(query);
  const auto [n, m] = query.sector;

  // Path mass at the last cut, keyed by the number of down spins so far.
  std::map<int, QPoly> front{{0, QPoly(1)}};
  int diagonal = 0;
  for (const auto& [x, spin] : query.sites) {
    std::map<int, QPoly> next;
    for (const auto& [a, mass] : front) {
      const int a_up = diagonal - a;
      // Free segment to (b, x-1-b), then the constrained step into site x.
      for (int b = a; b <= std::min(n, x - 1); ++b) {
        const int b_up = x - 1 - b;
        if (b_up < a_up || b_up > m) continue;
        if (spin == Spin::down && b + 1 > n) continue;
        if (spin == Spin::up && b_up + 1 > m) continue;
        QPoly segment = mass * z_generalized({a, a_up, b, b_up}, cache);
        if (spin == Spin::down) {
          next[b + 1] += shift(segment, 2 * static_cast<Exponent>(x));
        } else {
          next[b] += segment;
        }
      }
    }
    front = std::move(next);
    diagonal = x;
  }

  QPoly num;
  for (const auto& [a, mass] : front) {
    const int a_up = diagonal - a;
    if (a > n || a_up > m) continue;
    num += mass * z_generalized({a, a_up, n, m}, cache);
  }
  return {std::move(num), z(cache, n, m)};
}

Rational bound_down(int n, int m, int x, const Rational& q) {
  return bound_down_impl(n, m, x, q);
}
double bound_down(int n, int m, int x, double q) {
  return bound_down_impl(n, m, x, q);
}

Rational spin_up_bound(int n, int m, int x, const Rational& q) {
  return spin_up_bound_impl(n, m, x, q);
}
double spin_up_bound(int n, int m, int x, double q) {
  return spin_up_bound_impl(n, m, x, q);
}

Rational pair_bound(int n, int m, int x, const Rational& q) {
  return pair_bound_impl(n, m, x, q);
}
double pair_bound(int n, int m, int x, double q) {
  return pair_bound_impl(n, m, x, q);
}

Exponent exp_bound_exponent(const CorrelationQuery& query) {
  const Exponent v = query.down_count();
  Exponent distance = 0;
  for (const auto& s : query.sites) {
    if (s.spin == Spin::down) distance += s.site - query.sector.n;
  }
  return v * (v - 1) + 2 * distance;
}

Rational exp_bound(const CorrelationQuery& query, const Rational& q) {
  return rational_power(q, exp_bound_exponent(query));
}

double exp_bound(const CorrelationQuery& query, double q) {
  return float_power(q, exp_bound_exponent(query));
}

bool down_bound_in_regime(int n, int m, int x) {
  return x >= n && x >= 1 && x <= n + m;
}

bool up_bound_in_regime(int n, int m, int x) {
  return x >= n && x >= m && x >= 1 && x <= n + m;
}

bool pair_bound_in_regime(int n, int m, int x) {
  return n >= 1 && x >= n && x >= m && x >= 1 && x < n + m;
}

bool exp_bound_in_regime(const CorrelationQuery& query) {
  const auto [n, m] = query.sector;
  return std::all_of(query.sites.begin(), query.sites.end(),
                     [&](const SiteSpin& s) {
                       return s.site > n && s.site > m && s.site <= n + m;
                     });
}

}  // namespace xxz
