#pragma once

#include <optional>
#include <variant>

#include "xxzpath/qpoly.hpp"

namespace xxz {

/// An anisotropy value q in (0,1), either exact or binary floating point.
using QValue = std::variant<Rational, double>;

double to_double(const QValue& q);
bool is_exact(const QValue& q);

/// Parameters of the ferromagnetic XXZ chain derived from q.
///
///   Delta = (q + 1/q) / 2,  A(Delta) = sqrt(1 - Delta^-2) / 2,  q^2 = e^-beta
struct ModelParameters {
  QValue q;
  std::optional<Rational> delta_exact;  // present when q is exact
  double delta = 0.0;
  double boundary_field = 0.0;  // A(Delta)
  double beta = 0.0;
};

/// Throws DomainError unless 0 < q < 1.
ModelParameters make_parameters(const QValue& q);

struct ParameterReport {
  ModelParameters parameters;
  double q_from_delta = 0.0;   // smaller root of q^2 - 2 Delta q + 1 = 0
  double q_squared = 0.0;
  double exp_minus_beta = 0.0;
  double roundtrip_error = 0.0;  // |q_from_delta - q|
  bool near_isotropic = false;   // Delta within 1e-6 of 1
};

ParameterReport parameters_roundtrip(const QValue& q);

}  // namespace xxz
