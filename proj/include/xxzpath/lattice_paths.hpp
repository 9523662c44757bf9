#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "xxzpath/qpoly.hpp"

namespace xxz {

/// A horizontal step is a down spin, a vertical step an up spin.
enum class Step : std::uint8_t { horizontal, vertical };

struct LatticePoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Box of monotone paths from (origin_n, origin_m) to (n, m).
struct BoxSpec {
  int origin_n = 0;
  int origin_m = 0;
  int n = 0;
  int m = 0;

  int width() const { return n - origin_n; }
  int height() const { return m - origin_m; }
  friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

/// Throws RangeError unless 0 <= origin <= end componentwise.
void validate(const BoxSpec& box);

/// Monotone lattice path stored as a step sequence from an origin.
class Path {
 public:
  Path() = default;
  Path(LatticePoint origin, std::vector<Step> steps);

  LatticePoint origin() const { return origin_; }
  LatticePoint endpoint() const;
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  int horizontal_count() const;
  int vertical_count() const;

  /// alpha_1..alpha_L with 1 for a down spin (horizontal step).
  std::vector<int> spins() const;
  static Path from_spins(LatticePoint origin, const std::vector<int>& alpha);

  /// "(n',m'):HVH"
  std::string to_string() const;
  /// Throws PreconditionError on malformed text.
  static Path parse(std::string_view text);

  friend bool operator==(const Path&, const Path&) = default;

 private:
  LatticePoint origin_;
  std::vector<Step> steps_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Number of monotone paths in the box, saturating at SIZE_MAX.
std::size_t path_count(const BoxSpec& box);

/// Calls `visit` once per monotone path in the box, in lexicographic order
/// with H before V. Throws CapExceeded when the count exceeds `cap`.
void for_each_path(const BoxSpec& box, const std::function<void(const Path&)>& visit,
                   std::size_t cap = kDefaultEnumerationCap);

std::vector<Path> enumerate_paths(const BoxSpec& box,
                                  std::size_t cap = kDefaultEnumerationCap);

/// Exponent of the path weight: sum of 2(x_b + y_b) over horizontal bonds
/// ending at (x_b, y_b), in absolute lattice coordinates.
Exponent weight_exponent(const Path& p);
QPoly path_weight(const Path& p);

/// Plaquettes between the path and the floor of its box (y = origin.y).
std::int64_t path_area(const Path& p);

/// Reflection in the diagonal: swaps every step. Requires origin (0,0).
Path parity(const Path& p);
/// Reverses the step sequence. Requires origin (0,0).
Path time_reverse(const Path& p);

/// Sum of path weights over the box, by brute-force enumeration.
QPoly oracle_partition(const BoxSpec& box,
                       std::size_t cap = kDefaultEnumerationCap);

}  // namespace xxz
