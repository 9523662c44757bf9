#include <doctest.h>

#include "brute_force.hpp"
#include "poly_literals.hpp"
#include "xxzpath/correlations.hpp"
#include "xxzpath/errors.hpp"
#include "xxzpath/verification.hpp"

using namespace xxz;
using xxz::testing::P;
using xxz::testing::R;

namespace {

CorrelationQuery query(int n, int m, const char* sites) {
  return CorrelationQuery{SectorSpec{n, m}, parse_sites(sites)};
}

QRational brute(const CorrelationQuery& q) {
  return {testing::joint_numerator(q), testing::z_configurations(q.sector.n, q.sector.m)};
}

}  // namespace

TEST_CASE("site parsing") {
  const auto sites = parse_sites("3:down,4:up");
  REQUIRE(sites.size() == 2);
  CHECK(sites[0] == SiteSpin{3, Spin::down});
  CHECK(sites[1] == SiteSpin{4, Spin::up});
  CHECK(parse_sites("1:d,2:+") == std::vector<SiteSpin>{{1, Spin::down}, {2, Spin::up}});
  CHECK(format_sites(sites) == "3:down,4:up");
  CHECK_THROWS_AS(parse_sites("3:sideways"), PreconditionError);
  CHECK_THROWS_AS(parse_sites("x:up"), PreconditionError);
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(validate(query(2, 2, "3:down,2:up")), RangeError);
  CHECK_THROWS_AS(validate(query(2, 2, "5:down")), RangeError);
  CHECK_THROWS_AS(validate(CorrelationQuery{SectorSpec{2, 2}, {}}), RangeError);
  CHECK_THROWS_AS(validate(query(1, 3, "1:down,2:down")), InconsistentQuery);
  CHECK_THROWS_AS(validate(query(3, 0, "1:up")), InconsistentQuery);
}

TEST_CASE("point probabilities") {
  ZCache cache;
  CHECK(evaluate(point_prob(3, 2, 0, 0, cache), R("1/2")) == 1);
  CHECK(evaluate(point_prob(3, 2, 3, 2, cache), R("1/2")) == 1);
  CHECK(evaluate(point_prob(1, 1, 1, 0, cache), R("1/2")) == R("4/5"));
  // The points of one anti-diagonal partition the paths.
  for (int z = 0; z <= 7; ++z) {
    QRational total(QPoly(0));
    for (int x = std::max(0, z - 3); x <= std::min(4, z); ++x) {
      total = total + point_prob(4, 3, x, z - x, cache);
    }
    CHECK(total == QRational(QPoly(1)));
  }
}

TEST_CASE("single spin probabilities") {
  ZCache cache;
  const QRational down = spin_down_prob(1, 1, 2, cache);
  CHECK(down == QRational(P({{4, 1}}), P({{2, 1}, {4, 1}})));
  const Rational q = R("1/2");
  CHECK(evaluate(down, q) == bound_down(1, 1, 2, q));
  for (int x = 1; x <= 4; ++x) CHECK(spin_down_prob(0, 4, x, cache).is_zero());
  for (int x = 1; x <= 3; ++x) CHECK(spin_up_prob(3, 0, x, cache).is_zero());
  CHECK(spin_up_bound(3, 0, 2, q) == 0);

  const QRational up = spin_up_prob(1, 1, 2, cache);
  CHECK(up == QRational(P({{2, 1}}), P({{2, 1}, {4, 1}})));
  CHECK(evaluate(up, q) == spin_up_bound(1, 1, 2, q));
}

TEST_CASE("frozen single-spin values and their bounds") {
  ZCache cache;
  const Rational half = R("1/2");
  CHECK(evaluate(spin_down_prob(2, 2, 4, cache), half) == R("1/17"));
  CHECK(bound_down(2, 2, 4, half) == R("1/17"));
  CHECK(evaluate(spin_up_prob(2, 2, 4, cache), half) == R("16/17"));
  CHECK(spin_up_bound(2, 2, 4, half) == R("16/17"));
  CHECK(evaluate(spin_down_prob(2, 2, 2, cache), half) == R("92/119"));
  CHECK(evaluate(spin_up_prob(2, 2, 2, cache), half) == R("27/119"));

  const Rational q = R("3/10");
  const Rational down = evaluate(spin_down_prob(3, 3, 4, cache), q);
  CHECK(down == R("98907530899110489/1108603239374472589"));
  CHECK(bound_down(3, 3, 4, q) == R("90000/1000729"));
  CHECK(down <= bound_down(3, 3, 4, q));
  const Rational up = evaluate(spin_up_prob(3, 3, 4, cache), q);
  CHECK(up == R("1009695708475362100/1108603239374472589"));
  CHECK(spin_up_bound(3, 3, 4, q) == R("1000000/1000729"));
  CHECK(up <= spin_up_bound(3, 3, 4, q));
  CHECK(spin_up_bound(3, 3, 4, 0.3) == doctest::Approx(1000000.0 / 1000729.0));
}

TEST_CASE("adjacent pair") {
  ZCache cache;
  CHECK(pair_down_up_prob(1, 1, 1, cache) == QRational(P({{2, 1}}), P({{2, 1}, {4, 1}})));
  for (int x = 1; x < 3; ++x) {
    CHECK(pair_down_up_prob(0, 3, x, cache).is_zero());
    CHECK(pair_down_up_prob(3, 0, x, cache).is_zero());
  }
  const Rational half = R("1/2");
  CHECK(evaluate(pair_down_up_prob(2, 2, 2, cache), half) == R("260/357"));
  CHECK(pair_bound(2, 2, 2, half) == R("85/84"));
  const Rational q = R("3/10");
  CHECK(evaluate(pair_down_up_prob(3, 3, 4, cache), q) ==
        R("98835484170690000/1108603239374472589"));
  CHECK(pair_bound(3, 3, 4, q) == R("98901046341/1098894610000"));
  CHECK_THROWS_AS(pair_bound(0, 3, 1, half), DomainError);
  CHECK_THROWS_AS(pair_down_up_prob(2, 2, 4, cache), RangeError);
}

TEST_CASE("multipoint probabilities") {
  ZCache cache;
  const auto single = query(1, 1, "2:down");
  CHECK(multipoint_prob(single, cache) == spin_down_prob(1, 1, 2, cache));

  const auto two = query(2, 2, "3:down,4:down");
  const QRational p = multipoint_prob(two, cache);
  CHECK(p == QRational(P({{14, 1}}), z_closed(2, 2)));
  CHECK(evaluate(p, R("1/2")) == R("1/357"));
  CHECK(p == brute(two));

  // A fully specified configuration has a single path.
  const auto full = query(2, 3, "1:up,2:down,3:up,4:up,5:down");
  CHECK(multipoint_prob(full, cache) == QRational(P({{14, 1}}), z_closed(2, 3)));
}

TEST_CASE("multipoint probabilities match configuration sums") {
  ZCache cache;
  for (int n = 0; n <= 4; ++n) {
    for (int m = 0; m + n <= 6; ++m) {
      const int length = n + m;
      for (int x = 1; x <= length; ++x) {
        for (int y = x + 1; y <= length; ++y) {
          for (int s = 0; s < 4; ++s) {
            const CorrelationQuery q{SectorSpec{n, m},
                                     {{x, s & 1 ? Spin::down : Spin::up},
                                      {y, s & 2 ? Spin::down : Spin::up}}};
            const int downs = (s & 1) + (s >> 1 & 1);
            if (downs > n || 2 - downs > m) continue;
            CHECK(multipoint_prob(q, cache) == brute(q));
            CHECK(multipoint_prob(q, cache) == oracle_multipoint(q));
          }
        }
      }
    }
  }
}

TEST_CASE("exponential bound") {
  const Rational half = R("1/2");
  CHECK(exp_bound(query(3, 3, "2:up,5:up"), half) == 1);
  CHECK(exp_bound_exponent(query(1, 1, "2:down")) == 2);
  CHECK(exp_bound_exponent(query(2, 2, "3:down,4:down")) == 8);
  CHECK(exp_bound(query(2, 2, "3:down,4:down"), half) == R("1/256"));
  ZCache cache;
  CHECK(evaluate(multipoint_prob(query(2, 2, "3:down,4:down"), cache), half) <=
        exp_bound(query(2, 2, "3:down,4:down"), half));
  CHECK(exp_bound(query(2, 2, "3:down,4:down"), 0.5) == 1.0 / 256);
}

TEST_CASE("regimes") {
  CHECK(down_bound_in_regime(2, 2, 2));
  CHECK_FALSE(down_bound_in_regime(3, 2, 2));
  CHECK(up_bound_in_regime(2, 3, 3));
  CHECK_FALSE(up_bound_in_regime(2, 3, 2));
  CHECK(pair_bound_in_regime(2, 2, 2));
  CHECK_FALSE(pair_bound_in_regime(2, 2, 4));
  CHECK_FALSE(pair_bound_in_regime(0, 2, 1));
  CHECK(exp_bound_in_regime(query(2, 2, "3:down,4:down")));
  CHECK_FALSE(exp_bound_in_regime(query(2, 2, "2:down,4:down")));
}
