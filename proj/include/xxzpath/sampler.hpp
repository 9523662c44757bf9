#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "xxzpath/lattice_paths.hpp"
#include "xxzpath/qpoly.hpp"

namespace xxz {

/// Exact sampler for paths from (0,0) to (n,m) with probability w(p)/Z(n,m).
///
/// Walks back from (n,m): the last step is vertical with probability
/// Z(n,m-1)/Z(n,m) and horizontal with probability q^{2(n+m)} Z(n-1,m)/Z(n,m).
/// Each choice compares a uniform integer in [0, den) against the exact
/// numerator, so the only randomness consumed is the 64-bit Mersenne twister
/// stream seeded with `seed`.
class PathSampler {
 public:
  /// Throws DomainError unless 0 < q < 1, RangeError for negative n or m.
  PathSampler(int n, int m, const Rational& q, std::uint64_t seed);

  Path draw();

  /// Probability that the last step into (x, y) is vertical.
  const Rational& vertical_probability(int x, int y) const;

 private:
  Integer uniform_below(const Integer& bound);

  int n_;
  int m_;
  std::vector<Rational> vertical_;  // (n+1) x (m+1)
  std::mt19937_64 engine_;
};

Path sample_path(int n, int m, const Rational& q, std::uint64_t seed);

}  // namespace xxz
