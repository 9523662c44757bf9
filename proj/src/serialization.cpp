#include "xxzpath/serialization.hpp"

#include <array>
#include <charconv>

#include "xxzpath/errors.hpp"

namespace xxz {

Json to_json(const QPoly& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) {
    out.push_back(Json::array({t.exponent, t.coefficient.get_str()}));
  }
  return out;
}

Json to_json(const QRational& r) {
  return Json{{"num", to_json(r.numerator())}, {"den", to_json(r.denominator())}};
}

Json to_json(const IdentityRecord& record) {
  Json out{{"name", record.name},
           {"relation", record.relation},
           {"scope", record.scope},
           {"instances", record.instances},
           {"failures", record.failures},
           {"informational", record.informational},
           {"counterexample", nullptr}};
  if (record.counterexample) out["counterexample"] = *record.counterexample;
  return out;
}

Json to_json(const VerificationReport& report) {
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(to_json(r));
  return Json{{"passed", report.passed()},
              {"failures", report.failures()},
              {"records", std::move(records)}};
}

QPoly qpoly_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("QPoly JSON must be an array");
  std::vector<QPoly::Term> terms;
  Exponent previous = -1;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_string()) {
      throw PreconditionError("QPoly term must be [exponent, \"coefficient\"]");
    }
    const auto e = item[0].get<Exponent>();
    if (e <= previous) {
      throw PreconditionError("QPoly terms must be sorted by strictly increasing exponent");
    }
    previous = e;
    Integer c;
    if (c.set_str(item[1].get<std::string>(), 10) != 0) {
      throw PreconditionError("QPoly coefficient is not a decimal integer");
    }
    if (c == 0) throw PreconditionError("QPoly JSON must not hold zero coefficients");
    terms.push_back({e, std::move(c)});
  }
  return QPoly::from_terms(std::move(terms));
}

QRational qrational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw PreconditionError("QRational JSON must be {\"num\": ..., \"den\": ...}");
  }
  return {qpoly_from_json(j.at("num")), qpoly_from_json(j.at("den"))};
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw PreconditionError("'" + text + "' is not an exact rational such as 1/2");
  }
  r.canonicalize();
  return r;
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace xxz
