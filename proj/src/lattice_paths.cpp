#include "xxzpath/lattice_paths.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "xxzpath/errors.hpp"

namespace xxz {

namespace {

void require_origin(const Path& p, const char* what) {
  if (p.origin() != LatticePoint{0, 0}) {
    throw PreconditionError(std::string(what) + " requires a path from (0,0)");
  }
}

Step flip(Step s) {
  return s == Step::horizontal ? Step::vertical : Step::horizontal;
}

void check_cap(const BoxSpec& box, std::size_t cap) {
  const std::size_t count = path_count(box);
  if (count > cap) {
    std::ostringstream os;
    os << "box (" << box.origin_n << ',' << box.origin_m << ';' << box.n << ','
       << box.m << ") holds " << count << " paths, above the cap of " << cap;
    throw CapExceeded(os.str());
  }
}

}  // namespace

void validate(const BoxSpec& box) {
  if (box.origin_n < 0 || box.origin_m < 0 || box.origin_n > box.n ||
      box.origin_m > box.m) {
    throw RangeError("box requires 0 <= n' <= n and 0 <= m' <= m");
  }
}

Path::Path(LatticePoint origin, std::vector<Step> steps)
    : origin_(origin), steps_(std::move(steps)) {
  if (origin.x < 0 || origin.y < 0) {
    throw RangeError("path origin must lie in the positive quadrant");
  }
}

LatticePoint Path::endpoint() const {
  return {origin_.x + horizontal_count(), origin_.y + vertical_count()};
}

int Path::horizontal_count() const {
  return static_cast<int>(
      std::count(steps_.begin(), steps_.end(), Step::horizontal));
}

int Path::vertical_count() const {
  return static_cast<int>(steps_.size()) - horizontal_count();
}

std::vector<int> Path::spins() const {
  std::vector<int> alpha;
  alpha.reserve(steps_.size());
  for (Step s : steps_) alpha.push_back(s == Step::horizontal ? 1 : 0);
  return alpha;
}

Path Path::from_spins(LatticePoint origin, const std::vector<int>& alpha) {
  std::vector<Step> steps;
  steps.reserve(alpha.size());
  for (int a : alpha) {
    if (a != 0 && a != 1) throw PreconditionError("spin values must be 0 or 1");
    steps.push_back(a == 1 ? Step::horizontal : Step::vertical);
  }
  return Path(origin, std::move(steps));
}

std::string Path::to_string() const {
  std::string s = "(" + std::to_string(origin_.x) + "," +
                  std::to_string(origin_.y) + "):";
  for (Step st : steps_) s.push_back(st == Step::horizontal ? 'H' : 'V');
  return s;
}

Path Path::parse(std::string_view text) {
  auto fail = [&]() -> Path {
    throw PreconditionError("malformed path text '" + std::string(text) +
                            "', expected (n',m'):STEPS");
  };
  const auto close = text.find("):");
  if (text.empty() || text.front() != '(' || close == std::string_view::npos) {
    return fail();
  }
  const auto inner = text.substr(1, close - 1);
  const auto comma = inner.find(',');
  if (comma == std::string_view::npos) return fail();
  const auto xs = inner.substr(0, comma);
  const auto ys = inner.substr(comma + 1);
  int x = 0;
  int y = 0;
  const auto px = std::from_chars(xs.data(), xs.data() + xs.size(), x);
  const auto py = std::from_chars(ys.data(), ys.data() + ys.size(), y);
  if (px.ec != std::errc() || px.ptr != xs.data() + xs.size() ||
      py.ec != std::errc() || py.ptr != ys.data() + ys.size()) {
    return fail();
  }
  std::vector<Step> steps;
  for (char c : text.substr(close + 2)) {
    if (c == 'H') {
      steps.push_back(Step::horizontal);
    } else if (c == 'V') {
      steps.push_back(Step::vertical);
    } else {
      return fail();
    }
  }
  return Path({x, y}, std::move(steps));
}

std::size_t path_count(const BoxSpec& box) {
  validate(box);
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(box.width() + box.height()),
               static_cast<unsigned long>(box.width()));
  if (!c.fits_ulong_p()) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(c.get_ui());
}

void for_each_path(const BoxSpec& box,
                   const std::function<void(const Path&)>& visit,
                   std::size_t cap) {
  check_cap(box, cap);
  const LatticePoint origin{box.origin_n, box.origin_m};
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(box.width() + box.height()));

  std::function<void(int, int)> walk = [&](int h_left, int v_left) {
    if (h_left == 0 && v_left == 0) {
      visit(Path(origin, steps));
      return;
    }
    if (h_left > 0) {
      steps.push_back(Step::horizontal);
      walk(h_left - 1, v_left);
      steps.pop_back();
    }
    if (v_left > 0) {
      steps.push_back(Step::vertical);
      walk(h_left, v_left - 1);
      steps.pop_back();
    }
  };
  walk(box.width(), box.height());
}

std::vector<Path> enumerate_paths(const BoxSpec& box, std::size_t cap) {
  std::vector<Path> out;
  out.reserve(path_count(box) <= cap ? path_count(box) : 0);
  for_each_path(box, [&](const Path& p) { out.push_back(p); }, cap);
  return out;
}

Exponent weight_exponent(const Path& p) {
  Exponent e = 0;
  int x = p.origin().x;
  int y = p.origin().y;
  for (Step s : p.steps()) {
    if (s == Step::horizontal) {
      ++x;
      e += 2 * static_cast<Exponent>(x + y);
    } else {
      ++y;
    }
  }
  return e;
}

QPoly path_weight(const Path& p) { return QPoly::monomial(weight_exponent(p)); }

std::int64_t path_area(const Path& p) {
  std::int64_t area = 0;
  int height = 0;
  for (Step s : p.steps()) {
    if (s == Step::horizontal) {
      area += height;
    } else {
      ++height;
    }
  }
  return area;
}

Path parity(const Path& p) {
  require_origin(p, "parity");
  std::vector<Step> steps = p.steps();
  std::transform(steps.begin(), steps.end(), steps.begin(), flip);
  return Path({0, 0}, std::move(steps));
}

Path time_reverse(const Path& p) {
  require_origin(p, "time reversal");
  std::vector<Step> steps(p.steps().rbegin(), p.steps().rend());
  return Path({0, 0}, std::move(steps));
}

QPoly oracle_partition(const BoxSpec& box, std::size_t cap) {
  check_cap(box, cap);
  // Histogram of weight exponents, accumulated along the recursion.
  std::vector<std::uint64_t> histogram;
  std::function<void(int, int, Exponent)> walk = [&](int x, int y, Exponent e) {
    if (x == box.n && y == box.m) {
      const auto idx = static_cast<std::size_t>(e);
      if (histogram.size() <= idx) histogram.resize(idx + 1);
      ++histogram[idx];
      return;
    }
    if (x < box.n) walk(x + 1, y, e + 2 * static_cast<Exponent>(x + 1 + y));
    if (y < box.m) walk(x, y + 1, e);
  };
  walk(box.origin_n, box.origin_m, 0);

  std::vector<QPoly::Term> terms;
  for (std::size_t e = 0; e < histogram.size(); ++e) {
    if (histogram[e] != 0) {
      terms.push_back({static_cast<Exponent>(e),
                       Integer(static_cast<unsigned long>(histogram[e]))});
    }
  }
  return QPoly::from_terms(std::move(terms));
}

}  // namespace xxz
