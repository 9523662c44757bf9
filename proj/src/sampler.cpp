#include "xxzpath/sampler.hpp"

#include <algorithm>

#include "xxzpath/errors.hpp"

namespace xxz {

PathSampler::PathSampler(int n, int m, const Rational& q, std::uint64_t seed)
    : n_(n), m_(m), engine_(seed) {
  if (n < 0 || m < 0) throw RangeError("sampler needs n, m >= 0");
  if (q <= 0 || q >= 1) throw DomainError("sampler needs 0 < q < 1");

  // Z(x,y) evaluated at q through the upper-corner recursion.
  const auto cols = static_cast<std::size_t>(m + 1);
  std::vector<Rational> value(static_cast<std::size_t>(n + 1) * cols);
  vertical_.assign(value.size(), Rational(0));
  auto idx = [cols](int x, int y) {
    return static_cast<std::size_t>(x) * cols + static_cast<std::size_t>(y);
  };
  const Rational q2 = q * q;
  for (int x = 0; x <= n; ++x) {
    for (int y = 0; y <= m; ++y) {
      if (x == 0) {
        value[idx(x, y)] = 1;
        vertical_[idx(x, y)] = 1;
        continue;
      }
      Rational left = rational_power(q2, x + y) * value[idx(x - 1, y)];
      Rational down = y > 0 ? value[idx(x, y - 1)] : Rational(0);
      Rational total = left + down;
      total.canonicalize();
      value[idx(x, y)] = total;
      Rational p = down / total;
      p.canonicalize();
      vertical_[idx(x, y)] = p;
    }
  }
}

const Rational& PathSampler::vertical_probability(int x, int y) const {
  return vertical_[static_cast<std::size_t>(x) * static_cast<std::size_t>(m_ + 1) +
                   static_cast<std::size_t>(y)];
}

Integer PathSampler::uniform_below(const Integer& bound) {
  // Rejection sampling on the smallest power of two covering `bound`.
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    Integer candidate = 0;
    std::size_t have = 0;
    while (have < bits) {
      const std::uint64_t word = engine_();
      const std::size_t take = std::min<std::size_t>(64, bits - have);
      const std::uint64_t masked = take == 64 ? word : (word & ((1ULL << take) - 1));
      Integer chunk;
      mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(masked), 0, 0, &masked);
      candidate = (candidate << take) | chunk;
      have += take;
    }
    if (candidate < bound) return candidate;
  }
}

Path PathSampler::draw() {
  std::vector<Step> reversed;
  reversed.reserve(static_cast<std::size_t>(n_ + m_));
  int x = n_;
  int y = m_;
  while (x > 0 || y > 0) {
    const Rational& p = vertical_probability(x, y);
    bool vertical = false;
    if (x == 0) {
      vertical = true;
    } else if (y > 0) {
      vertical = uniform_below(p.get_den()) < p.get_num();
    }
    if (vertical) {
      reversed.push_back(Step::vertical);
      --y;
    } else {
      reversed.push_back(Step::horizontal);
      --x;
    }
  }
  std::reverse(reversed.begin(), reversed.end());
  return Path({0, 0}, std::move(reversed));
}

Path sample_path(int n, int m, const Rational& q, std::uint64_t seed) {
  return PathSampler(n, m, q, seed).draw();
}

}  // namespace xxz
