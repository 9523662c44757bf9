#pragma once

#include <vector>

#include "xxzpath/partition_functions.hpp"
#include "xxzpath/qpoly.hpp"

namespace xxz {

/// Tuple (k_0, ..., k_M): k_i diagonals-worth of sites carry i down spins.
using Composition = std::vector<int>;

/// All tuples of non-negative integers with sum_i i*k_i = k and
/// sum_i k_i = N, in descending lexicographic order. Empty for k > N*M.
std::vector<Composition> compositions(int sites_per_diagonal, int diagonals, int k);

/// N! / (k_0! ... k_M!)
Integer multinomial(const Composition& parts);

/// Two-dimensional partition function with k down spins, reduced to
/// one-dimensional ones:
///   q^{2(N-1)k} sum_K N!/(k_0!...k_M!) prod_j Z(j, M-j)^{k_j}.
/// Throws RangeError unless N, M >= 1 and 0 <= k <= N*M.
QPoly z2d_reduction(int sites_per_diagonal, int diagonals, int k, ZCache& cache);

/// Coefficients in the fugacity z of prod_{j=N}^{N+M-1} (1 + z q^{2j})^N;
/// entry k is Z_2d(k, NM - k).
std::vector<QPoly> z2d_product(int sites_per_diagonal, int diagonals);

/// Elementary symmetric polynomial e_k of the site weights q^{2j},
/// j = N..N+M-1, each with multiplicity N.
QPoly z2d_oracle(int sites_per_diagonal, int diagonals, int k);

/// Coefficients of {sum_l z^l q^{2(N-1)l} Z(l, M-l)}^N.
std::vector<QPoly> z2d_power_expansion(int sites_per_diagonal, int diagonals,
                                       ZCache& cache);

}  // namespace xxz
