#include <doctest.h>

#include <cmath>

#include "poly_literals.hpp"
#include "xxzpath/errors.hpp"
#include "xxzpath/model_parameters.hpp"

using namespace xxz;
using xxz::testing::R;

TEST_CASE("exact q = 1/2") {
  const ModelParameters p = make_parameters(QValue{R("1/2")});
  REQUIRE(p.delta_exact.has_value());
  CHECK(*p.delta_exact == R("5/4"));
  CHECK(p.delta == 1.25);
  CHECK(p.beta == doctest::Approx(2 * std::log(2.0)));
  CHECK(p.boundary_field == doctest::Approx(0.3));
  CHECK(is_exact(p.q));
}

TEST_CASE("float q = 0.3") {
  const ModelParameters p = make_parameters(QValue{0.3});
  const double delta = (0.3 + 1 / 0.3) / 2;
  CHECK_FALSE(p.delta_exact.has_value());
  CHECK(p.delta == doctest::Approx(delta));
  CHECK(p.boundary_field == doctest::Approx(0.5 * std::sqrt(1 - 1 / (delta * delta))));
}

TEST_CASE("round trip through Delta") {
  for (double q : {0.05, 0.3, 0.5, 0.9}) {
    const ParameterReport r = parameters_roundtrip(QValue{q});
    CHECK(r.roundtrip_error < 1e-12);
    CHECK(r.exp_minus_beta == doctest::Approx(r.q_squared));
    CHECK_FALSE(r.near_isotropic);
  }
}

TEST_CASE("q close to 1 is flagged isotropic") {
  const ParameterReport r = parameters_roundtrip(QValue{0.9999});
  CHECK(r.near_isotropic);
  CHECK(r.parameters.boundary_field < 1e-3);
  CHECK(r.parameters.delta == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("q outside (0,1) is rejected") {
  CHECK_THROWS_AS(make_parameters(QValue{R("1")}), DomainError);
  CHECK_THROWS_AS(make_parameters(QValue{R("0")}), DomainError);
  CHECK_THROWS_AS(make_parameters(QValue{1.5}), DomainError);
  CHECK_THROWS_AS(make_parameters(QValue{-0.1}), DomainError);
}
