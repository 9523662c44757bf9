#pragma once

#include <json.hpp>

#include <string>

#include "xxzpath/qpoly.hpp"
#include "xxzpath/verification.hpp"

namespace xxz {

using Json = nlohmann::json;

/// [[exponent, "coefficient"], ...] sorted by exponent; [] for zero.
Json to_json(const QPoly& p);
/// {"den": <QPoly>, "num": <QPoly>}
Json to_json(const QRational& r);
Json to_json(const IdentityRecord& record);
/// {"passed": bool, "failures": n, "records": [...]}
Json to_json(const VerificationReport& report);

/// Throws PreconditionError on malformed input.
QPoly qpoly_from_json(const Json& j);
QRational qrational_from_json(const Json& j);

/// Exact rational q as text, e.g. "1/2". Throws PreconditionError.
Rational parse_rational(const std::string& text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace xxz
