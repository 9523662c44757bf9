#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xxzpath/correlations.hpp"
#include "xxzpath/partition_functions.hpp"

namespace xxz {

struct IdentityRecord {
  std::string name;
  std::string relation;  // the checked statement, as a formula
  std::string scope;     // instance range actually covered
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::optional<std::string> counterexample;  // first (smallest) failure
  bool informational = false;  // failures here do not fail the report
};

struct VerificationReport {
  std::vector<IdentityRecord> records;

  bool passed() const;
  std::size_t failures() const;
  void append(const VerificationReport& other);
};

/// Path-sum oracle for a joint spin query: sums weights of every path in
/// the sector whose steps match the query.
QRational oracle_multipoint(const CorrelationQuery& query);

/// Partition-function identities (recursions, Markov cuts, translation,
/// symmetries, ratio relations, area statistic) for n, m up to `max_nm`.
/// Enumeration-backed checks are clipped to small sectors.
VerificationReport verify_identities(int max_nm, ZCache& cache);

/// Exact-rational checks of the four correlation bounds for n + m <= max_nm.
/// In-regime failures are hard failures, others informational.
VerificationReport verify_bounds(int max_nm, const std::vector<Rational>& grid,
                                 ZCache& cache);

/// Correlation functions against path enumeration for n + m <= max_nm and
/// site sets of size <= 3, plus total-probability, marginal and flip
/// symmetry checks.
VerificationReport verify_correlations(int max_nm, ZCache& cache);

/// Three-way equality of the two-dimensional reduction for N, M <= max_size.
VerificationReport verify_reduce2d(int max_size, ZCache& cache);

}  // namespace xxz
