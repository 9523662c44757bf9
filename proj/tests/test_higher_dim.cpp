#include <doctest.h>

#include "brute_force.hpp"
#include "poly_literals.hpp"
#include "xxzpath/errors.hpp"
#include "xxzpath/higher_dim.hpp"

using namespace xxz;
using xxz::testing::P;

TEST_CASE("compositions") {
  CHECK(compositions(3, 3, 0) == std::vector<Composition>{{3, 0, 0, 0}});
  CHECK(compositions(3, 3, 3) ==
        std::vector<Composition>{{2, 0, 0, 1}, {1, 1, 1, 0}, {0, 3, 0, 0}});
  CHECK(compositions(3, 3, 4) ==
        std::vector<Composition>{{1, 1, 0, 1}, {1, 0, 2, 0}, {0, 2, 1, 0}});
  CHECK(compositions(3, 3, 10).empty());
  CHECK(multinomial({2, 0, 0, 1}) == 3);
  CHECK(multinomial({1, 1, 1, 0}) == 6);
  CHECK(multinomial({0, 3, 0, 0}) == 1);
}

TEST_CASE("reduction values") {
  ZCache cache;
  CHECK(z2d_reduction(3, 3, 0, cache) == QPoly(1));
  CHECK(z2d_reduction(2, 2, 1, cache) == P({{4, 2}, {6, 2}}));

  // q^12 {Z(1,2)^3 + 6 Z(1,2) Z(2,1) + 3 Z(3,0)}
  const QPoly z12 = z_closed(1, 2);
  const QPoly z21 = z_closed(2, 1);
  const QPoly z30 = z_closed(3, 0);
  const QPoly printed = shift(power(z12, 3) + QPoly(6) * z12 * z21 + QPoly(3) * z30, 12);
  CHECK(z2d_reduction(3, 3, 3, cache) == printed);
  CHECK(printed == P({{18, 1}, {20, 9}, {22, 18}, {24, 28}, {26, 18}, {28, 9}, {30, 1}}));

  const QPoly k4 = z2d_reduction(3, 3, 4, cache);
  CHECK(k4 == P({{26, 3}, {28, 12}, {30, 30}, {32, 36}, {34, 30}, {36, 12}, {38, 3}}));
  const QPoly recomputed =
      shift(QPoly(6) * z12 * z30 + QPoly(3) * z21 * z21 + QPoly(3) * z12 * z12 * z21, 16);
  CHECK(k4 == recomputed);
  CHECK_THROWS_AS(z2d_reduction(3, 3, 10, cache), RangeError);
  CHECK_THROWS_AS(z2d_reduction(0, 3, 0, cache), RangeError);
}

TEST_CASE("grand canonical product") {
  CHECK(z2d_product(1, 1) == std::vector<QPoly>{QPoly(1), P({{2, 1}})});
  // One site per diagonal is the one-dimensional chain.
  for (int m = 1; m <= 6; ++m) {
    const auto coefficients = z2d_product(1, m);
    for (int k = 0; k <= m; ++k) {
      CHECK(coefficients[static_cast<std::size_t>(k)] == z_closed(k, m - k));
    }
  }
  ZCache cache;
  CHECK(z2d_product(3, 3)[3] == z2d_reduction(3, 3, 3, cache));
}

TEST_CASE("elementary symmetric oracle") {
  CHECK(z2d_oracle(3, 3, 9) == P({{2 * 3 * (3 + 4 + 5), 1}}));
  CHECK(z2d_oracle(3, 3, 1) == P({{6, 3}, {8, 3}, {10, 3}}));
  ZCache cache;
  CHECK(z2d_oracle(3, 3, 3) == z2d_reduction(3, 3, 3, cache));
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      for (int k = 0; k <= n * m; ++k) {
        CHECK(z2d_oracle(n, m, k) == testing::z2d_configurations(n, m, k));
      }
    }
  }
}

TEST_CASE("power expansion agrees with product") {
  ZCache cache;
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) CHECK(z2d_power_expansion(n, m, cache) == z2d_product(n, m));
  }
}
