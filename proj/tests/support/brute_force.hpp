#pragma once

// Spin-configuration oracles for tests. They never build lattice paths: a
// configuration is a set of down-spin sites, and its weight is q^{2 sum of
// those sites}.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "xxzpath/correlations.hpp"
#include "xxzpath/qpoly.hpp"

namespace xxz::testing {

/// Calls `visit(mask)` for each L-bit mask with exactly n bits set.
void for_each_configuration(int length, int downs,
                            const std::function<void(std::uint32_t)>& visit);

/// Sum of 2 * (offset + i) over the set bits i (0-based) of the mask.
Exponent configuration_exponent(std::uint32_t mask, int length, int offset);

/// Z(n, m) as a sum over configurations.
QPoly z_configurations(int n, int m);

/// Z(n',m';n,m): configurations of the sites n'+m'+1..n+m with n-n' downs.
QPoly z_box_configurations(int n0, int m0, int n, int m);

/// Sum of configuration weights matching the query (numerator over Z(n,m)).
QPoly joint_numerator(const CorrelationQuery& query);

/// Numerators of P(F_L = l) over Z(N/2, N/2), keyed by l.
std::map<int, QPoly> fluctuation_numerators(int chain_length, int window);

/// Elementary symmetric polynomial of the 2D site weights by subset sums.
QPoly z2d_configurations(int sites_per_diagonal, int diagonals, int k);

/// Area under the path of a configuration: sum over downs of the ups before.
int configuration_area(std::uint32_t mask, int length);

}  // namespace xxz::testing
