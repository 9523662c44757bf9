#include "xxzpath/model_parameters.hpp"

#include <cmath>

#include "xxzpath/errors.hpp"

namespace xxz {

double to_double(const QValue& q) {
  if (const auto* r = std::get_if<Rational>(&q)) return r->get_d();
  return std::get<double>(q);
}

bool is_exact(const QValue& q) { return std::holds_alternative<Rational>(q); }

ModelParameters make_parameters(const QValue& q) {
  ModelParameters p;
  p.q = q;
  if (const auto* r = std::get_if<Rational>(&q)) {
    if (*r <= 0 || *r >= 1) throw DomainError("q must lie strictly in (0,1)");
    Rational delta = (*r + 1 / *r) / 2;
    delta.canonicalize();
    p.delta_exact = delta;
    p.delta = delta.get_d();
  } else {
    const double x = std::get<double>(q);
    if (!(x > 0.0 && x < 1.0)) {
      throw DomainError("q must lie strictly in (0,1)");
    }
    p.delta = (x + 1.0 / x) / 2.0;
  }
  const double x = to_double(q);
  p.boundary_field = 0.5 * std::sqrt(1.0 - 1.0 / (p.delta * p.delta));
  p.beta = -2.0 * std::log(x);
  return p;
}

ParameterReport parameters_roundtrip(const QValue& q) {
  ParameterReport r;
  r.parameters = make_parameters(q);
  const double d = r.parameters.delta;
  r.q_from_delta = d - std::sqrt(d * d - 1.0);
  const double x = to_double(q);
  r.q_squared = x * x;
  r.exp_minus_beta = std::exp(-r.parameters.beta);
  r.roundtrip_error = std::abs(r.q_from_delta - x);
  r.near_isotropic = d - 1.0 < 1e-6;
  return r;
}

}  // namespace xxz
