#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "xxzpath/lattice_paths.hpp"
#include "xxzpath/qpoly.hpp"

namespace xxz {

/// Sector with n down spins and m up spins on a chain of length n + m.
struct SectorSpec {
  int n = 0;
  int m = 0;
  int length() const { return n + m; }
};

/// Capacity from XXZPATH_CACHE_CAPACITY, or 65536 entries.
std::size_t default_cache_capacity();

/// Memo table (n, m) -> Z(n, m).
///
/// Readers share a lock; insertion takes it exclusively. A value, once
/// visible, is never replaced. Values past the capacity are still computed
/// and returned, just not stored.
class ZCache {
 public:
  struct Stats {
    std::size_t hits = 0;
    std::size_t misses = 0;
  };

  explicit ZCache(std::size_t capacity = default_cache_capacity());
  ZCache(const ZCache&) = delete;
  ZCache& operator=(const ZCache&) = delete;

  /// Z(n, m), filled in by the upper-corner q-Pascal recursion on a miss.
  std::shared_ptr<const QPoly> get(int n, int m);
  std::shared_ptr<const QPoly> find(int n, int m) const;

  Stats stats() const;
  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }

 private:
  void insert(int n, int m, std::shared_ptr<const QPoly> value);

  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<const QPoly>> table_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
};

/// q^{n(n+1)} times the Gaussian binomial [n+m choose n] in q^2, built by
/// telescoping products and exact divisions.
QPoly z_closed(int n, int m);

/// Z(n, m) from Z(n,m) = Z(n,m-1) + q^{2(n+m)} Z(n-1,m) with
/// Z(0,m) = 1 and Z(n,0) = q^{n(n+1)}.
QPoly z_recursive(int n, int m, ZCache& cache);

/// Generalized partition function of a box, translated to the origin:
/// Z(n',m';n,m) = q^{2(n'+m')(n-n')} Z(n-n', m-m').
QPoly z_generalized(const BoxSpec& box, ZCache& cache);
QPoly z_generalized(const BoxSpec& box);

/// Lowest exponent of Z over a box: 2(n'+m')a + a(a+1) with a = n - n'.
Exponent box_min_exponent(const BoxSpec& box);

struct MarkovTerm {
  LatticePoint cut;
  QPoly head;  // Z(n',m'; x,y)
  QPoly tail;  // Z(x,y; n,m)
};

/// Splits the box along the anti-diagonal x + y = z. Throws RangeError unless
/// n'+m' <= z <= n+m.
std::vector<MarkovTerm> markov_decompose(const BoxSpec& box, int z,
                                         ZCache& cache);
QPoly markov_sum(const std::vector<MarkovTerm>& terms);

/// Compares q^{v(2n-v+1)} Z(n-v,m-w) with Z(n,m), i.e. the bound
/// Z(n-v,m-w) <= q^{-2nv+v(v-1)} Z(n,m) multiplied through.
struct RatioBoundCheck {
  QPoly lhs;
  QPoly rhs;
  std::vector<Rational> holds_at;
  std::vector<Rational> violated_at;
  bool holds() const { return violated_at.empty(); }
};

std::vector<Rational> default_q_grid();

/// Throws RangeError unless 0 <= v <= n and 0 <= w <= m.
RatioBoundCheck ratio_bound_check(int n, int m, int v, int w, ZCache& cache,
                                  const std::vector<Rational>& grid = default_q_grid());

}  // namespace xxz
