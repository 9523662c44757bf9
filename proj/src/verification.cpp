#include "xxzpath/verification.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "xxzpath/errors.hpp"
#include "xxzpath/higher_dim.hpp"
#include "xxzpath/lattice_paths.hpp"

namespace xxz {

namespace {

// Largest n + m for which identities are checked against path enumeration.
constexpr int kEnumerationLimit = 12;

class Recorder {
 public:
  Recorder(std::string name, std::string relation, std::string scope,
           bool informational = false) {
    record_.name = std::move(name);
    record_.relation = std::move(relation);
    record_.scope = std::move(scope);
    record_.informational = informational;
  }

  template <class Describe>
  void check(bool ok, Describe&& describe) {
    ++record_.instances;
    if (ok) return;
    ++record_.failures;
    if (!record_.counterexample) record_.counterexample = describe();
  }

  IdentityRecord take() { return std::move(record_); }

 private:
  IdentityRecord record_;
};

std::string sector_text(int n, int m) {
  return "(n,m)=(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

std::string box_text(const BoxSpec& b) {
  std::ostringstream os;
  os << "box=(" << b.origin_n << "," << b.origin_m << ";" << b.n << "," << b.m << ")";
  return os.str();
}

std::string q_text(const Rational& q) { return "q=" + q.get_str(); }

std::string upto(const char* what, int k) {
  return std::string(what) + " <= " + std::to_string(k);
}

QPoly gen_oracle(int n0, int m0, int n, int m) {
  return oracle_partition({n0, m0, n, m});
}

// Every box inside [0, n+m <= limit], visited with a callback.
template <class Visit>
void for_each_box(int limit, Visit&& visit) {
  for (int n = 0; n <= limit; ++n) {
    for (int m = 0; n + m <= limit; ++m) {
      for (int n0 = 0; n0 <= n; ++n0) {
        for (int m0 = 0; m0 <= m; ++m0) visit(BoxSpec{n0, m0, n, m});
      }
    }
  }
}

std::vector<std::vector<int>> site_subsets(int length, int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> grow = [&](int next) {
    if (!current.empty()) out.push_back(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (int x = next; x <= length; ++x) {
      current.push_back(x);
      grow(x + 1);
      current.pop_back();
    }
  };
  grow(1);
  return out;
}

CorrelationQuery make_query(int n, int m, const std::vector<int>& sites,
                            unsigned spin_mask) {
  CorrelationQuery query{{n, m}, {}};
  for (std::size_t i = 0; i < sites.size(); ++i) {
    query.sites.push_back(
        {sites[i], ((spin_mask >> i) & 1U) != 0U ? Spin::down : Spin::up});
  }
  return query;
}

bool query_feasible(const CorrelationQuery& q) {
  return q.down_count() <= q.sector.n && q.up_count() <= q.sector.m;
}

// Multipoint probability with infeasible-by-count queries mapped to zero.
QRational multipoint_or_zero(const CorrelationQuery& q, ZCache& cache) {
  if (!query_feasible(q)) return QRational(QPoly(), *cache.get(q.sector.n, q.sector.m));
  return multipoint_prob(q, cache);
}

}  // namespace

bool VerificationReport::passed() const {
  return std::none_of(records.begin(), records.end(), [](const IdentityRecord& r) {
    return !r.informational && r.failures > 0;
  });
}

std::size_t VerificationReport::failures() const {
  std::size_t total = 0;
  for (const auto& r : records) {
    if (!r.informational) total += r.failures;
  }
  return total;
}

void VerificationReport::append(const VerificationReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

QRational oracle_multipoint(const CorrelationQuery& query) {
  validate(query);
  const auto [n, m] = query.sector;
  QPoly num;
  for_each_path({0, 0, n, m}, [&](const Path& p) {
    const auto& steps = p.steps();
    for (const auto& s : query.sites) {
      const Step want = s.spin == Spin::down ? Step::horizontal : Step::vertical;
      if (steps[static_cast<std::size_t>(s.site - 1)] != want) return;
    }
    num += path_weight(p);
  });
  return {std::move(num), oracle_partition({0, 0, n, m})};
}

VerificationReport verify_identities(int max_nm, ZCache& cache) {
  if (max_nm < 0) throw RangeError("max-nm must be non-negative");
  VerificationReport report;
  const int k = max_nm;
  const int enum_limit = std::min(k, kEnumerationLimit);

  std::map<std::pair<int, int>, QPoly> closed;
  for (int n = 0; n <= k; ++n) {
    for (int m = 0; m <= k; ++m) closed.emplace(std::make_pair(n, m), z_closed(n, m));
  }
  auto Z = [&](int n, int m) -> const QPoly& { return closed.at({n, m}); };
  auto one_minus = [](Exponent e) { return QPoly::one_minus_power(e); };

  {
    Recorder r("closed_form_matches_enumeration",
               "Z(n,m) closed form == sum of path weights over P(n,m)",
               upto("n+m", enum_limit));
    for (int n = 0; n <= enum_limit; ++n) {
      for (int m = 0; n + m <= enum_limit; ++m) {
        r.check(Z(n, m) == oracle_partition({0, 0, n, m}),
                [&] { return sector_text(n, m); });
      }
    }
    report.records.push_back(r.take());
  }
  {
    Recorder r("recursion_matches_closed_form",
               "Z(n,m) by upper-corner recursion == closed form", upto("n,m", k));
    for (int n = 0; n <= k; ++n) {
      for (int m = 0; m <= k; ++m) {
        r.check(z_recursive(n, m, cache) == Z(n, m), [&] { return sector_text(n, m); });
      }
    }
    report.records.push_back(r.take());
  }
  {
    Recorder r("degree_window_and_positivity",
               "coefficients > 0, exponents even, min n(n+1), max n(n+1)+2nm, "
               "Z(n,m)|_{q=1} = C(n+m,n)",
               upto("n,m", k));
    for (int n = 0; n <= k; ++n) {
      for (int m = 0; m <= k; ++m) {
        const QPoly& z = Z(n, m);
        Integer binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + m),
                     static_cast<unsigned long>(n));
        const Exponent low = static_cast<Exponent>(n) * (n + 1);
        const bool ok = !z.is_zero() && z.all_coefficients_positive() &&
                        z.all_exponents_even() && z.min_exponent() == low &&
                        z.max_exponent() == low + 2 * static_cast<Exponent>(n) * m &&
                        z.coefficient_sum() == binom;
        r.check(ok, [&] { return sector_text(n, m); });
      }
    }
    report.records.push_back(r.take());
  }
  {
    Recorder r("q_pascal_upper_corner", "Z(n,m) = Z(n,m-1) + q^{2(n+m)} Z(n-1,m)",
               "1 <= n,m <= " + std::to_string(k));
    for (int n = 1; n <= k; ++n) {
      for (int m = 1; m <= k; ++m) {
        r.check(Z(n, m) == Z(n, m - 1) + shift(Z(n - 1, m), 2 * static_cast<Exponent>(n + m)),
                [&] { return sector_text(n, m); });
      }
    }
    report.records.push_back(r.take());
  }
  {
    Recorder r("q_pascal_lower_corner", "Z(n,m) = q^{2n} Z(n-1,m) + q^{2n} Z(n,m-1)",
               "1 <= n,m <= " + std::to_string(k));
    for (int n = 1; n <= k; ++n) {
      for (int m = 1; m <= k; ++m) {
        r.check(Z(n, m) == shift(Z(n - 1, m) + Z(n, m - 1), 2 * static_cast<Exponent>(n)),
                [&] { return sector_text(n, m); });
      }
    }
    report.records.push_back(r.take());
  }
  {
    Recorder r("lower_corner_generalized",
               "Z(n,m) = q^2 Z(1,0;n,m) + Z(0,1;n,m), generalized Z by enumeration",
               "1 <= n,m, n+m <= " + std::to_string(enum_limit));
    for (int n = 1; n <= enum_limit; ++n) {
      for (int m = 1; n + m <= enum_limit; ++m) {
        r.check(Z(n, m) == shift(gen_oracle(1, 0, n, m), 2) + gen_oracle(0, 1, n, m),
                [&] { return sector_text(n, m); });
      }
    }
    report.records.push_back(r.take());
  }
  {
    Recorder trans("translation_to_origin",
                   "Z(n',m';n,m) = q^{2(n'+m')(n-n')} Z(n-n',m-m'), left side by enumeration",
                   upto("n+m", std::min(enum_limit, 10)));
    Recorder shift_rec("translation_by_offset",
                       "Z(n',m';n,m) = q^{2(x+y)(n-n')} Z(n'-x,m'-y;n-x,m-y), both sides "
                       "by enumeration",
                       upto("n+m", std::min(enum_limit, 10)));
    Recorder minexp("box_minimal_exponent",
                    "min exponent of Z(n',m';n,m) = [2(m'+1)+2n'](n-n') + (n-n')(n-n'-1)",
                    upto("n+m", std::min(enum_limit, 10)));
    Recorder sym("generalized_time_reversal",
                 "q^{(n'+m)(n'+m+1)} Z(n',m';n,m) = q^{(n+m')(n+m'+1)} Z(m',n';m,n), "
                 "both sides by enumeration",
                 upto("n+m", std::min(enum_limit, 10)));
    for_each_box(std::min(enum_limit, 10), [&](const BoxSpec& b) {
      const QPoly lhs = oracle_partition(b);
      trans.check(lhs == z_generalized(b, cache), [&] { return box_text(b); });
      const Exponent a = b.width();
      const Exponent formula =
          (2 * static_cast<Exponent>(b.origin_m + 1) + 2 * static_cast<Exponent>(b.origin_n)) * a +
          a * (a - 1);
      minexp.check(lhs.min_exponent() == formula && formula == box_min_exponent(b),
                   [&] { return box_text(b); });
      for (const auto& [dx, dy] : {std::pair{1, 0}, std::pair{0, 1},
                                   std::pair{b.origin_n, b.origin_m}}) {
        if (dx > b.origin_n || dy > b.origin_m) continue;
        const QPoly moved =
            gen_oracle(b.origin_n - dx, b.origin_m - dy, b.n - dx, b.m - dy);
        shift_rec.check(lhs == shift(moved, 2 * static_cast<Exponent>(dx + dy) * a), [&] {
          return box_text(b) + " shift=(" + std::to_string(dx) + "," + std::to_string(dy) + ")";
        });
      }
      const Exponent left = static_cast<Exponent>(b.origin_n + b.m) * (b.origin_n + b.m + 1);
      const Exponent right = static_cast<Exponent>(b.n + b.origin_m) * (b.n + b.origin_m + 1);
      const QPoly mirrored = gen_oracle(b.origin_m, b.origin_n, b.m, b.n);
      sym.check(shift(lhs, left) == shift(mirrored, right), [&] { return box_text(b); });
    });
    report.records.push_back(trans.take());
    report.records.push_back(shift_rec.take());
    report.records.push_back(minexp.take());
    report.records.push_back(sym.take());
  }
  {
    Recorder r("markov_cut", "Z(n',m';n,m) = sum_{x+y=z} Z(n',m';x,y) Z(x,y;n,m)",
               upto("n+m", enum_limit) + ", every cut z");
    for_each_box(enum_limit, [&](const BoxSpec& b) {
      const QPoly whole = z_generalized(b, cache);
      for (int z = b.origin_n + b.origin_m; z <= b.n + b.m; ++z) {
        r.check(markov_sum(markov_decompose(b, z, cache)) == whole,
                [&] { return box_text(b) + " z=" + std::to_string(z); });
      }
    });
    report.records.push_back(r.take());
  }
  {
    Recorder r("time_reversal_symmetry", "q^{m(m+1)} Z(n,m) = q^{n(n+1)} Z(m,n)",
               upto("n,m", k));
    for (int n = 0; n <= k; ++n) {
      for (int m = 0; m <= k; ++m) {
        r.check(shift(Z(n, m), static_cast<Exponent>(m) * (m + 1)) ==
                    shift(Z(m, n), static_cast<Exponent>(n) * (n + 1)),
                [&] { return sector_text(n, m); });
      }
    }
    report.records.push_back(r.take());
  }
  {
    Recorder down("ratio_relation_remove_down",
                  "(1-q^{2(n+m)}) q^{2n} Z(n-1,m) = (1-q^{2n}) Z(n,m)",
                  "1 <= n <= " + std::to_string(k) + ", 0 <= m <= " + std::to_string(k));
    Recorder up("ratio_relation_remove_up",
                "(1-q^{2(n+m)}) Z(n,m-1) = (1-q^{2m}) Z(n,m)",
                "0 <= n <= " + std::to_string(k) + ", 1 <= m <= " + std::to_string(k));
    Recorder both("ratio_relation_remove_pair",
                  "(1-q^{2(L-1)})(1-q^{2L}) q^{2n} Z(n-1,m-1) = (1-q^{2n})(1-q^{2m}) Z(n,m)",
                  "1 <= n,m <= " + std::to_string(k));
    for (int n = 0; n <= k; ++n) {
      for (int m = 0; m <= k; ++m) {
        const Exponent len = n + m;
        if (n >= 1) {
          down.check(one_minus(2 * len) * shift(Z(n - 1, m), 2 * static_cast<Exponent>(n)) ==
                         one_minus(2 * static_cast<Exponent>(n)) * Z(n, m),
                     [&] { return sector_text(n, m); });
        }
        if (m >= 1) {
          up.check(one_minus(2 * len) * Z(n, m - 1) ==
                       one_minus(2 * static_cast<Exponent>(m)) * Z(n, m),
                   [&] { return sector_text(n, m); });
        }
        if (n >= 1 && m >= 1) {
          both.check(one_minus(2 * (len - 1)) * one_minus(2 * len) *
                             shift(Z(n - 1, m - 1), 2 * static_cast<Exponent>(n)) ==
                         one_minus(2 * static_cast<Exponent>(n)) *
                             one_minus(2 * static_cast<Exponent>(m)) * Z(n, m),
                     [&] { return sector_text(n, m); });
        }
      }
    }
    report.records.push_back(down.take());
    report.records.push_back(up.take());
    report.records.push_back(both.take());
  }
  {
    const int limit = std::min(k, 8);
    Recorder r("ratio_bound",
               "Z(n-v,m-w) <= q^{-2nv+v(v-1)} Z(n,m) on q in {1/10,...,9/10}",
               upto("n,m", limit));
    for (int n = 0; n <= limit; ++n) {
      for (int m = 0; m <= limit; ++m) {
        for (int v = 0; v <= n; ++v) {
          for (int w = 0; w <= m; ++w) {
            const auto check = ratio_bound_check(n, m, v, w, cache);
            r.check(check.holds(), [&] {
              return sector_text(n, m) + " v=" + std::to_string(v) + " w=" +
                     std::to_string(w) + " " + q_text(check.violated_at.front());
            });
          }
        }
      }
    }
    report.records.push_back(r.take());
  }
  {
    const int limit = std::min(k, 10);
    Recorder area("area_exponent_identity", "exponent of w(p) = n(n+1) + 2 A(p)",
                  "all paths with " + upto("n+m", limit));
    Recorder parity_rec("area_parity", "A(p) + A(F p) = nm", "all paths with " + upto("n+m", limit));
    Recorder reverse_rec("area_time_reversal", "A(p) + A(T p) = nm",
                         "all paths with " + upto("n+m", limit));
    Recorder ft("area_parity_time_reversal", "A(p) = A(F T p), F and T involutions",
                "all paths with " + upto("n+m", limit));
    for (int n = 0; n <= limit; ++n) {
      for (int m = 0; n + m <= limit; ++m) {
        const auto nm = static_cast<std::int64_t>(n) * m;
        for_each_path({0, 0, n, m}, [&](const Path& p) {
          const auto a = path_area(p);
          auto describe = [&] { return p.to_string(); };
          area.check(weight_exponent(p) == static_cast<Exponent>(n) * (n + 1) + 2 * a, describe);
          const Path f = parity(p);
          const Path t = time_reverse(p);
          parity_rec.check(a + path_area(f) == nm && f.endpoint() == LatticePoint{m, n}, describe);
          reverse_rec.check(a + path_area(t) == nm && t.endpoint() == LatticePoint{n, m}, describe);
          ft.check(path_area(parity(t)) == a && parity(f) == p && time_reverse(t) == p, describe);
        });
      }
    }
    report.records.push_back(area.take());
    report.records.push_back(parity_rec.take());
    report.records.push_back(reverse_rec.take());
    report.records.push_back(ft.take());
  }
  return report;
}

VerificationReport verify_bounds(int max_nm, const std::vector<Rational>& grid,
                                 ZCache& cache) {
  if (max_nm < 0) throw RangeError("max-nm must be non-negative");
  VerificationReport report;
  const std::string scope = upto("n+m", max_nm) + ", q grid of " +
                            std::to_string(grid.size()) + " values";

  Recorder down_in("down_spin_bound", "P(S_x=down) <= q^{2(x-n)}(1-q^{2n})/(1-q^{2(n+m)}), x >= n",
                   scope);
  Recorder down_out("down_spin_bound_outside_regime", "same bound, x < n", scope, true);
  Recorder up_in("up_spin_bound", "P(S_x=up) <= (1-q^{2m})/(1-q^{2(n+m)}), x >= n, x >= m", scope);
  Recorder up_out("up_spin_bound_outside_regime", "same bound, x < n or x < m", scope, true);
  Recorder pair_in("opposite_pair_bound",
                   "P(S_x=down,S_{x+1}=up) <= q^{2(x-n)} (1-q^{2m})/(1-q^{2n}) "
                   "(1-q^{2L})/(1-q^{2(L-1)}), n <= x, m <= x, x < L",
                   scope);
  Recorder pair_out("opposite_pair_bound_outside_regime", "same bound, x < n or x < m", scope, true);
  Recorder exp_in("exponential_bound",
                  "P(spins at x_1..x_r) <= q^{v(v-1) + 2 sum_k (x_k-n) alpha_k}, "
                  "n,m < x_k <= L, every site set",
                  scope);
  Recorder exp_out("exponential_bound_outside_regime", "same bound, site sets of size <= 3 "
                   "with some x_k <= max(n,m)", scope, true);

  for (int n = 0; n <= max_nm; ++n) {
    for (int m = 0; n + m <= max_nm; ++m) {
      const int len = n + m;
      if (len == 0) continue;
      for (int x = 1; x <= len; ++x) {
        const QRational p_down = spin_down_prob(n, m, x, cache);
        const QRational p_up = spin_up_prob(n, m, x, cache);
        std::optional<QRational> p_pair;
        if (x < len) p_pair = pair_down_up_prob(n, m, x, cache);
        for (const auto& q : grid) {
          auto describe = [&] { return sector_text(n, m) + " x=" + std::to_string(x) + " " + q_text(q); };
          const Rational down_value = evaluate(p_down, q);
          (down_bound_in_regime(n, m, x) ? down_in : down_out)
              .check(down_value <= bound_down(n, m, x, q), describe);
          (up_bound_in_regime(n, m, x) ? up_in : up_out)
              .check(evaluate(p_up, q) <= spin_up_bound(n, m, x, q), describe);
          if (p_pair && n >= 1) {
            (pair_bound_in_regime(n, m, x) ? pair_in : pair_out)
                .check(evaluate(*p_pair, q) <= pair_bound(n, m, x, q), describe);
          }
        }
      }

      // Exponential bound: every subset of in-regime sites, all spins.
      const int first = std::max(n, m) + 1;
      std::vector<int> regime_sites;
      for (int x = first; x <= len; ++x) regime_sites.push_back(x);
      std::vector<std::vector<int>> sets;
      for (unsigned mask = 1; mask < (1U << regime_sites.size()); ++mask) {
        std::vector<int> s;
        for (std::size_t i = 0; i < regime_sites.size(); ++i) {
          if (((mask >> i) & 1U) != 0U) s.push_back(regime_sites[i]);
        }
        sets.push_back(std::move(s));
      }
      for (auto& s : site_subsets(len, 3)) {
        if (s.front() < first) sets.push_back(std::move(s));
      }
      for (const auto& s : sets) {
        for (unsigned spins = 0; spins < (1U << s.size()); ++spins) {
          const CorrelationQuery query = make_query(n, m, s, spins);
          if (!query_feasible(query)) continue;
          const QRational prob = multipoint_prob(query, cache);
          Recorder& rec = exp_bound_in_regime(query) ? exp_in : exp_out;
          for (const auto& q : grid) {
            rec.check(evaluate(prob, q) <= exp_bound(query, q), [&] {
              return sector_text(n, m) + " sites=" + format_sites(query.sites) + " " + q_text(q);
            });
          }
        }
      }
    }
  }
  for (auto* r : {&down_in, &down_out, &up_in, &up_out, &pair_in, &pair_out, &exp_in, &exp_out}) {
    report.records.push_back(r->take());
  }
  return report;
}

VerificationReport verify_correlations(int max_nm, ZCache& cache) {
  if (max_nm < 0) throw RangeError("max-nm must be non-negative");
  VerificationReport report;
  const std::string scope = upto("n+m", max_nm) + ", site sets of size <= 3";

  Recorder multi("multipoint_matches_enumeration",
                 "segment-decomposed joint probability == path-sum oracle", scope);
  Recorder total("total_probability", "sum over all spin assignments = 1", scope);
  Recorder marginal("marginal_consistency",
                    "summing the last site's spin recovers the smaller query", scope);
  Recorder single("single_site_consistency",
                  "P(S_x=down) + P(S_x=up) = 1 and both match the one-site query", scope);
  Recorder pair("pair_consistency", "P(S_x=down,S_{x+1}=up) matches the two-site query", scope);
  Recorder point("point_probability_matches_enumeration",
                 "q^{2(x+y)(n-x)} Z(x,y) Z(n-x,m-y)/Z(n,m) == share of paths through (x,y)",
                 upto("n+m", max_nm));
  Recorder flip("flip_reflection_symmetry", "P_{n,m}(S_x=down) = P_{m,n}(S_{L-x+1}=up)",
                upto("n+m", max_nm));

  for (int n = 0; n <= max_nm; ++n) {
    for (int m = 0; n + m <= max_nm; ++m) {
      const int len = n + m;
      const QPoly z = *cache.get(n, m);
      for (int x = 0; x <= n; ++x) {
        for (int y = 0; y <= m; ++y) {
          QPoly through;
          for_each_path({0, 0, n, m}, [&](const Path& p) {
            int px = 0;
            int py = 0;
            bool hit = px == x && py == y;
            for (Step s : p.steps()) {
              (s == Step::horizontal ? px : py) += 1;
              hit = hit || (px == x && py == y);
            }
            if (hit) through += path_weight(p);
          });
          point.check(point_prob(n, m, x, y, cache) == QRational(through, z),
                      [&] { return sector_text(n, m) + " point=(" + std::to_string(x) + "," + std::to_string(y) + ")"; });
        }
      }
      if (len == 0) continue;
      for (int x = 1; x <= len; ++x) {
        const QRational down = spin_down_prob(n, m, x, cache);
        const QRational up = spin_up_prob(n, m, x, cache);
        auto describe = [&] { return sector_text(n, m) + " x=" + std::to_string(x); };
        single.check(down + up == QRational(QPoly(1)) &&
                         down == multipoint_or_zero(make_query(n, m, {x}, 1U), cache) &&
                         up == multipoint_or_zero(make_query(n, m, {x}, 0U), cache),
                     describe);
        flip.check(down == spin_up_prob(m, n, len - x + 1, cache), describe);
        if (x < len) {
          // bit 0 -> site x down, bit 1 clear -> site x+1 up
          pair.check(pair_down_up_prob(n, m, x, cache) ==
                         multipoint_or_zero(make_query(n, m, {x, x + 1}, 1U), cache),
                     describe);
        }
      }
      for (const auto& sites : site_subsets(len, 3)) {
        QRational sum(QPoly(), z);
        for (unsigned spins = 0; spins < (1U << sites.size()); ++spins) {
          const CorrelationQuery query = make_query(n, m, sites, spins);
          auto describe = [&] { return sector_text(n, m) + " sites=" + format_sites(query.sites); };
          const QRational exact = multipoint_or_zero(query, cache);
          if (query_feasible(query)) {
            multi.check(exact == oracle_multipoint(query), describe);
          }
          sum = sum + exact;
          if (sites.size() >= 2 && ((spins >> (sites.size() - 1)) & 1U) == 0U) {
            // Pair this assignment with the one flipping the last site.
            const unsigned other = spins | (1U << (sites.size() - 1));
            const CorrelationQuery flipped = make_query(n, m, sites, other);
            std::vector<int> head(sites.begin(), sites.end() - 1);
            const CorrelationQuery reduced = make_query(n, m, head, spins);
            marginal.check(exact + multipoint_or_zero(flipped, cache) ==
                               multipoint_or_zero(reduced, cache),
                           describe);
          }
        }
        total.check(sum == QRational(QPoly(1)), [&] {
          std::vector<SiteSpin> s;
          for (int x : sites) s.push_back({x, Spin::down});
          return sector_text(n, m) + " sites=" + format_sites(s);
        });
      }
    }
  }
  for (auto* r : {&multi, &total, &marginal, &single, &pair, &point, &flip}) {
    report.records.push_back(r->take());
  }
  return report;
}

VerificationReport verify_reduce2d(int max_size, ZCache& cache) {
  if (max_size < 1) throw RangeError("max size must be >= 1");
  VerificationReport report;
  const std::string scope = upto("N,M", max_size) + ", every k";
  Recorder three("reduce2d_three_way",
                 "reduction == product coefficient == elementary symmetric oracle", scope);
  Recorder power("reduce2d_power_expansion",
                 "prod_j (1+z q^{2j})^N == {sum_l z^l q^{2(N-1)l} Z(l,M-l)}^N termwise", scope);
  Recorder counts("reduce2d_path_counts",
                  "sum_K multinomial * prod_j C(M,j)^{k_j} = C(NM,k)", scope);
  Recorder dual("reduce2d_complement",
                "q^{2ck} e_{NM-k} = q^{P} e_k with c = 2N+M-1, P = 2N sum_j j", scope);
  for (int big_n = 1; big_n <= max_size; ++big_n) {
    for (int big_m = 1; big_m <= max_size; ++big_m) {
      const auto product = z2d_product(big_n, big_m);
      const auto expansion = z2d_power_expansion(big_n, big_m, cache);
      const int sites = big_n * big_m;
      Exponent total_weight = 0;
      for (int j = big_n; j < big_n + big_m; ++j) total_weight += 2 * static_cast<Exponent>(big_n) * j;
      const Exponent centre = 2 * big_n + big_m - 1;
      for (int k = 0; k <= sites; ++k) {
        auto describe = [&] {
          return "N=" + std::to_string(big_n) + " M=" + std::to_string(big_m) + " k=" + std::to_string(k);
        };
        const QPoly reduced = z2d_reduction(big_n, big_m, k, cache);
        const QPoly oracle = z2d_oracle(big_n, big_m, k);
        const auto kk = static_cast<std::size_t>(k);
        three.check(reduced == product[kk] && reduced == oracle, describe);
        power.check(expansion.size() > kk && expansion[kk] == product[kk], describe);

        Integer weighted = 0;
        for (const auto& parts : compositions(big_n, big_m, k)) {
          Integer term = multinomial(parts);
          for (int j = 0; j <= big_m; ++j) {
            Integer c;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(big_m), static_cast<unsigned long>(j));
            Integer p;
            mpz_pow_ui(p.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(parts[static_cast<std::size_t>(j)]));
            term *= p;
          }
          weighted += term;
        }
        Integer binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(sites), static_cast<unsigned long>(k));
        counts.check(weighted == binom && reduced.coefficient_sum() == binom, describe);

        dual.check(shift(z2d_oracle(big_n, big_m, sites - k), 2 * centre * k) ==
                       shift(oracle, total_weight),
                   describe);
      }
    }
  }
  for (auto* r : {&three, &power, &counts, &dual}) report.records.push_back(r->take());
  return report;
}

}  // namespace xxz
