#include "xxzpath/higher_dim.hpp"

#include <functional>
#include <string>

#include "xxzpath/errors.hpp"

namespace xxz {

namespace {

void require_grid(int sites_per_diagonal, int diagonals) {
  if (sites_per_diagonal < 1 || diagonals < 1) {
    throw RangeError("two-dimensional system needs N >= 1 and M >= 1");
  }
}

void require_k(int sites_per_diagonal, int diagonals, int k) {
  require_grid(sites_per_diagonal, diagonals);
  if (k < 0 || k > sites_per_diagonal * diagonals) {
    throw RangeError("k=" + std::to_string(k) + " outside [0, " +
                     std::to_string(sites_per_diagonal * diagonals) + "]");
  }
}

// Product of two polynomials in z with QPoly coefficients.
std::vector<QPoly> multiply_in_z(const std::vector<QPoly>& a,
                                 const std::vector<QPoly>& b) {
  std::vector<QPoly> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

std::vector<Composition> compositions(int sites_per_diagonal, int diagonals, int k) {
  require_grid(sites_per_diagonal, diagonals);
  std::vector<Composition> out;
  if (k < 0 || k > sites_per_diagonal * diagonals) return out;

  Composition parts(static_cast<std::size_t>(diagonals + 1), 0);
  // Assign k_0, k_1, ... in turn, largest first, so the output is in
  // descending lexicographic order.
  std::function<void(int, int, int)> fill = [&](int index, int sites_left,
                                                int downs_left) {
    if (index == diagonals) {
      if (sites_left * diagonals == downs_left) {
        parts[static_cast<std::size_t>(index)] = sites_left;
        out.push_back(parts);
      }
      return;
    }
    for (int take = sites_left; take >= 0; --take) {
      const int used = take * index;
      if (used > downs_left) continue;
      // Remaining sites must be able to absorb the remaining downs.
      const int rest_sites = sites_left - take;
      if (downs_left - used > rest_sites * diagonals) continue;
      if (downs_left - used < rest_sites * (index + 1)) continue;
      parts[static_cast<std::size_t>(index)] = take;
      fill(index + 1, rest_sites, downs_left - used);
    }
    parts[static_cast<std::size_t>(index)] = 0;
  };
  fill(0, sites_per_diagonal, k);
  return out;
}

Integer multinomial(const Composition& parts) {
  unsigned long total = 0;
  for (int p : parts) total += static_cast<unsigned long>(p);
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), total);
  for (int p : parts) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(p));
    out /= f;
  }
  return out;
}

QPoly z2d_reduction(int sites_per_diagonal, int diagonals, int k, ZCache& cache) {
  require_k(sites_per_diagonal, diagonals, k);
  QPoly sum;
  for (const auto& parts : compositions(sites_per_diagonal, diagonals, k)) {
    QPoly term = QPoly::monomial(0, multinomial(parts));
    for (int j = 1; j <= diagonals; ++j) {
      const int count = parts[static_cast<std::size_t>(j)];
      if (count > 0) {
        term *= power(*cache.get(j, diagonals - j), static_cast<unsigned>(count));
      }
    }
    sum += term;
  }
  return shift(sum, 2 * static_cast<Exponent>(sites_per_diagonal - 1) * k);
}

std::vector<QPoly> z2d_product(int sites_per_diagonal, int diagonals) {
  require_grid(sites_per_diagonal, diagonals);
  std::vector<QPoly> result{QPoly(1)};
  for (int j = sites_per_diagonal; j < sites_per_diagonal + diagonals; ++j) {
    // (1 + z q^{2j})^N by the binomial theorem.
    std::vector<QPoly> factor;
    for (int i = 0; i <= sites_per_diagonal; ++i) {
      Integer c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(sites_per_diagonal),
                   static_cast<unsigned long>(i));
      factor.push_back(QPoly::monomial(2 * static_cast<Exponent>(j) * i, c));
    }
    result = multiply_in_z(result, factor);
  }
  return result;
}

QPoly z2d_oracle(int sites_per_diagonal, int diagonals, int k) {
  require_k(sites_per_diagonal, diagonals, k);
  // e_0..e_k updated one site at a time: e_i <- e_i + w * e_{i-1}.
  std::vector<QPoly> e(static_cast<std::size_t>(k + 1));
  e[0] = QPoly(1);
  for (int j = sites_per_diagonal; j < sites_per_diagonal + diagonals; ++j) {
    for (int copy = 0; copy < sites_per_diagonal; ++copy) {
      for (int i = k; i >= 1; --i) {
        e[static_cast<std::size_t>(i)] +=
            shift(e[static_cast<std::size_t>(i - 1)], 2 * static_cast<Exponent>(j));
      }
    }
  }
  return e[static_cast<std::size_t>(k)];
}

std::vector<QPoly> z2d_power_expansion(int sites_per_diagonal, int diagonals,
                                       ZCache& cache) {
  require_grid(sites_per_diagonal, diagonals);
  std::vector<QPoly> base;
  for (int l = 0; l <= diagonals; ++l) {
    base.push_back(shift(*cache.get(l, diagonals - l),
                         2 * static_cast<Exponent>(sites_per_diagonal - 1) * l));
  }
  std::vector<QPoly> result{QPoly(1)};
  for (int i = 0; i < sites_per_diagonal; ++i) result = multiply_in_z(result, base);
  return result;
}

}  // namespace xxz
