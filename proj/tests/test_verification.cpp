#include <doctest.h>

#include <set>

#include "poly_literals.hpp"
#include "xxzpath/verification.hpp"

using namespace xxz;
using xxz::testing::R;

namespace {

std::set<std::string> names(const VerificationReport& r) {
  std::set<std::string> out;
  for (const auto& record : r.records) out.insert(record.name);
  return out;
}

}  // namespace

TEST_CASE("identity suite passes and covers the core identities") {
  ZCache cache;
  const auto report = verify_identities(6, cache);
  CHECK(report.passed());
  CHECK(report.failures() == 0);
  const auto covered = names(report);
  for (const char* name : {"q_pascal_upper_corner", "q_pascal_lower_corner", "markov_cut",
                           "translation_to_origin", "translation_by_offset",
                           "time_reversal_symmetry", "generalized_time_reversal",
                           "area_exponent_identity"}) {
    CHECK(covered.count(name) == 1);
  }
  for (const auto& r : report.records) CHECK(r.instances > 0);
}

TEST_CASE("bound suite has no in-regime violations") {
  ZCache cache;
  const auto report = verify_bounds(7, {R("1/5"), R("1/2"), R("4/5")}, cache);
  CHECK(report.passed());
  CHECK(names(report).count("exponential_bound") == 1);
}

TEST_CASE("correlation and reduction suites pass") {
  ZCache cache;
  CHECK(verify_correlations(6, cache).passed());
  CHECK(verify_reduce2d(3, cache).passed());
}

TEST_CASE("informational failures do not fail a report") {
  VerificationReport report;
  report.records.push_back({"outside", "x", "y", 4, 2, "n=1", true});
  CHECK(report.passed());
  report.records.push_back({"inside", "x", "y", 4, 1, "n=2", false});
  CHECK_FALSE(report.passed());
  CHECK(report.failures() == 1);
}

TEST_CASE("path-sum oracle for joint queries") {
  const CorrelationQuery q{SectorSpec{2, 2}, parse_sites("3:down,4:down")};
  CHECK(evaluate(oracle_multipoint(q), R("1/2")) == R("1/357"));
}
