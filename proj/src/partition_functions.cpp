#include "xxzpath/partition_functions.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <string>

#include "xxzpath/errors.hpp"

namespace xxz {

namespace {

constexpr std::size_t kFallbackCapacity = 1U << 16U;

void require_sector(int n, int m) {
  if (n < 0 || m < 0) {
    throw RangeError("sector requires n >= 0 and m >= 0, got (" +
                     std::to_string(n) + "," + std::to_string(m) + ")");
  }
}

}  // namespace

std::size_t default_cache_capacity() {
  const char* env = std::getenv("XXZPATH_CACHE_CAPACITY");
  if (env == nullptr) return kFallbackCapacity;
  std::size_t value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) return kFallbackCapacity;
  return value;
}

ZCache::ZCache(std::size_t capacity) : capacity_(capacity) {}

std::shared_ptr<const QPoly> ZCache::find(int n, int m) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find({n, m});
  return it == table_.end() ? nullptr : it->second;
}

void ZCache::insert(int n, int m, std::shared_ptr<const QPoly> value) {
  std::unique_lock lock(mutex_);
  if (table_.size() >= capacity_) return;
  table_.emplace(std::make_pair(n, m), std::move(value));
}

std::shared_ptr<const QPoly> ZCache::get(int n, int m) {
  require_sector(n, m);
  if (auto hit = find(n, m)) {
    hits_.fetch_add(1, std::memory_order_relaxed);
    return hit;
  }
  misses_.fetch_add(1, std::memory_order_relaxed);

  // Bottom-up fill of the (n+1) x (m+1) table, reusing whatever is cached.
  const auto cols = static_cast<std::size_t>(m + 1);
  std::vector<std::shared_ptr<const QPoly>> local(
      static_cast<std::size_t>(n + 1) * cols);
  auto at = [&](int i, int j) -> std::shared_ptr<const QPoly>& {
    return local[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)];
  };
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      if (auto cached = find(i, j)) {
        at(i, j) = std::move(cached);
        continue;
      }
      QPoly value;
      if (i == 0) {
        value = QPoly(1);
      } else if (j == 0) {
        value = QPoly::monomial(static_cast<Exponent>(i) * (i + 1));
      } else {
        value = *at(i, j - 1) + shift(*at(i - 1, j), 2 * static_cast<Exponent>(i + j));
      }
      at(i, j) = std::make_shared<const QPoly>(std::move(value));
      insert(i, j, at(i, j));
    }
  }
  return at(n, m);
}

ZCache::Stats ZCache::stats() const {
  return {hits_.load(std::memory_order_relaxed),
          misses_.load(std::memory_order_relaxed)};
}

std::size_t ZCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

QPoly z_closed(int n, int m) {
  require_sector(n, m);
  const int small = std::min(n, m);
  const int large = std::max(n, m);
  // [large + i choose i] from [large + i - 1 choose i - 1]; each step divides
  // exactly.
  QPoly gauss(1);
  for (int i = 1; i <= small; ++i) {
    gauss = divide_exact(gauss * QPoly::one_minus_power(2 * static_cast<Exponent>(large + i)),
                         QPoly::one_minus_power(2 * static_cast<Exponent>(i)));
  }
  return shift(gauss, static_cast<Exponent>(n) * (n + 1));
}

QPoly z_recursive(int n, int m, ZCache& cache) { return *cache.get(n, m); }

QPoly z_generalized(const BoxSpec& box, ZCache& cache) {
  validate(box);
  const Exponent factor =
      2 * static_cast<Exponent>(box.origin_n + box.origin_m) * box.width();
  return shift(*cache.get(box.width(), box.height()), factor);
}

QPoly z_generalized(const BoxSpec& box) {
  validate(box);
  const Exponent factor =
      2 * static_cast<Exponent>(box.origin_n + box.origin_m) * box.width();
  return shift(z_closed(box.width(), box.height()), factor);
}

Exponent box_min_exponent(const BoxSpec& box) {
  validate(box);
  const Exponent a = box.width();
  return 2 * static_cast<Exponent>(box.origin_n + box.origin_m) * a + a * (a + 1);
}

std::vector<MarkovTerm> markov_decompose(const BoxSpec& box, int z,
                                         ZCache& cache) {
  validate(box);
  if (z < box.origin_n + box.origin_m || z > box.n + box.m) {
    throw RangeError("cut z=" + std::to_string(z) + " outside [" +
                     std::to_string(box.origin_n + box.origin_m) + ", " +
                     std::to_string(box.n + box.m) + "]");
  }
  std::vector<MarkovTerm> out;
  const int x_lo = std::max(box.origin_n, z - box.m);
  const int x_hi = std::min(box.n, z - box.origin_m);
  for (int x = x_lo; x <= x_hi; ++x) {
    const int y = z - x;
    out.push_back({{x, y},
                   z_generalized({box.origin_n, box.origin_m, x, y}, cache),
                   z_generalized({x, y, box.n, box.m}, cache)});
  }
  return out;
}

QPoly markov_sum(const std::vector<MarkovTerm>& terms) {
  QPoly sum;
  for (const auto& t : terms) sum += t.head * t.tail;
  return sum;
}

std::vector<Rational> default_q_grid() {
  std::vector<Rational> grid;
  for (int k = 1; k <= 9; ++k) grid.emplace_back(k, 10);
  for (auto& r : grid) r.canonicalize();
  return grid;
}

RatioBoundCheck ratio_bound_check(int n, int m, int v, int w, ZCache& cache,
                                  const std::vector<Rational>& grid) {
  require_sector(n, m);
  if (v < 0 || v > n || w < 0 || w > m) {
    throw RangeError("ratio bound requires 0 <= v <= n and 0 <= w <= m");
  }
  RatioBoundCheck check;
  const Exponent lift = static_cast<Exponent>(v) * (2 * n - v + 1);
  check.lhs = shift(*cache.get(n - v, m - w), lift);
  check.rhs = *cache.get(n, m);
  for (const auto& q : grid) {
    if (evaluate(check.lhs, q) <= evaluate(check.rhs, q)) {
      check.holds_at.push_back(q);
    } else {
      check.violated_at.push_back(q);
    }
  }
  return check;
}

}  // namespace xxz
