#include "lowlying/cli/verify_suite.hpp"

#include <cmath>
#include <sstream>

#include "lowlying/analysis.hpp"
#include "lowlying/density.hpp"
#include "lowlying/dirichlet.hpp"
#include "lowlying/frobenius.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying::cli {

namespace {

std::vector<u64> primes_from_5(u64 pmax) {
  std::vector<u64> out;
  for (const u64 p : sieve_primes(pmax))
    if (p >= 5) out.push_back(p);
  return out;
}

bool squarefree(u64 n) {
  for (const auto& f : factorize(n).factors)
    if (f.exponent > 1) return false;
  return true;
}

std::string describe(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << '=' << v << ' ';
  auto s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

}  // namespace

Check second_moment_check(u64 pmax) {
  Check c{"second_moment", true, 0.0, {}};
  for (const u64 p : primes_from_5(pmax)) {
    const auto expected = static_cast<i64>(p * p * (p - 1));
    const auto table = lambda_table(p, std::max<u64>(p, kDefaultTableCap));
    if (lambda_sq_total(p) != expected || lambda_sq_total(table) != expected) {
      c.pass = false;
      c.worst += 1;
      c.detail += "p=" + std::to_string(p) + " ";
    }
  }
  if (c.pass) c.detail = describe({{"pmax", double(pmax)}});
  return c;
}

Check twisted_sum_check(u64 pmax) {
  Check c{"twisted_complete_sum", true, 0.0, {}};
  for (const u64 p : primes_from_5(pmax)) {
    const auto table = lambda_table(p, std::max<u64>(p, kDefaultTableCap));
    const double scale = std::pow(static_cast<double>(p), 1.5);
    for (u64 h = 0; h < p; ++h)
      for (u64 k = 0; k < p; ++k) {
        const auto s = twisted_complete_sum(table, static_cast<i64>(h), static_cast<i64>(k));
        const double err = std::abs(s.bruteforce - s.closedform) / scale;
        c.worst = std::max(c.worst, err);
        if (k == 0 && s.closedform != 0.0) c.pass = false;
      }
  }
  c.pass = c.pass && c.worst <= 1e-6;
  c.detail = describe({{"pmax", double(pmax)}, {"max_err_over_p^1.5", c.worst}});
  return c;
}

Check gauss_bound_check(u64 lmax) {
  Check c{"gauss_sum_bound", true, 0.0, {}};
  std::size_t characters = 0;
  for (u64 l = 1; l <= lmax; ++l) {
    const auto group = unit_group_basis(l);
    const double bound = std::sqrt(static_cast<double>(l));
    for (const auto& chi : enumerate_characters(group)) {
      ++characters;
      const auto spec = gauss_sum_spectrum(chi);
      for (u64 a = 0; a < l; ++a) {
        if (!group->is_unit(static_cast<i64>(a))) continue;
        c.worst = std::max(c.worst, std::abs(spec[a]) - bound);
      }
    }
  }
  c.pass = c.worst <= 1e-9;
  c.detail = describe({{"lmax", double(lmax)}, {"characters", double(characters)}, {"max_excess", c.worst}});
  return c;
}

Check gauss_exact_check(u64 lmax) {
  Check c{"gauss_sum_exact", true, 0.0, {}};
  std::size_t tested = 0;
  for (u64 l = 3; l <= lmax; l += 2) {
    if (!squarefree(l)) continue;
    const auto group = unit_group_basis(l);
    const double root = std::sqrt(static_cast<double>(l));
    const std::complex<double> sign = l % 4 == 1 ? 1.0 : std::complex<double>(0.0, 1.0);
    for (const auto& chi : characters_killed_by(group, 2)) {
      if (chi.is_principal() || !chi.is_primitive()) continue;
      ++tested;
      const auto spec = gauss_sum_spectrum(chi);
      for (u64 a = 1; a < l; ++a) {
        if (!group->is_unit(static_cast<i64>(a))) continue;
        const auto expected = chi(static_cast<i64>(a)) * sign * root;
        c.worst = std::max(c.worst, std::abs(spec[a] - expected));
      }
    }
  }
  c.pass = tested > 0 && c.worst <= 1e-9;
  c.detail = describe({{"lmax", double(lmax)}, {"characters", double(tested)}, {"max_err", c.worst}});
  return c;
}

Check quadratic_gauss_check(u64 lmax) {
  Check c{"quadratic_gauss_bound", true, 0.0, {}};
  for (u64 l = 1; l <= lmax; ++l) {
    std::vector<std::complex<double>> e(l);
    for (u64 j = 0; j < l; ++j) e[j] = unit_root(static_cast<i64>(j), l);
    const double bound = 2.0 * std::sqrt(static_cast<double>(l));
    for (u64 a = 0; a < l; ++a) {
      if (gcd(a, l) != 1) continue;
      for (u64 k = 0; k < l; ++k) {
        // Phase (a b^2 + k b) mod l, stepped by a (2b + 1) + k.
        std::complex<double> s = 0.0;
        u64 idx = 0;
        for (u64 b = 0; b < l; ++b) {
          s += e[idx];
          idx = (idx + mul_mod(a, (2 * b + 1) % l, l) + k) % l;
        }
        c.worst = std::max(c.worst, std::abs(s) - bound);
      }
    }
    // The library routine on a slice, as a cross-check of the stepped phases.
    const auto direct = quadratic_gauss_bound_check(l, 1, static_cast<i64>(l / 2));
    if (!direct.pass) c.pass = false;
  }
  c.pass = c.pass && c.worst <= 1e-9;
  c.detail = describe({{"lmax", double(lmax)}, {"max_excess", c.worst}});
  return c;
}

Check cubic_structure_check(u64 limit) {
  Check c{"cubic_structure", true, 0.0, {}};
  const auto report = cubic_structure_report(limit);
  c.worst = static_cast<double>(report.violations.size());
  const auto n9 = primitive_cubic_characters(9).size();
  const auto n27 = primitive_cubic_characters(27).size();
  c.pass = report.violations.empty() && n9 == 2 && n27 == 0;
  c.detail = describe({{"limit", double(limit)},
                       {"moduli", double(report.moduli.size())},
                       {"violations", c.worst},
                       {"mod9", double(n9)},
                       {"mod27", double(n27)}});
  return c;
}

Check cube_root_count_check(u64 qmax) {
  Check c{"cube_root_count", true, 0.0, {}};
  for (u64 q = 1; q <= qmax; ++q) {
    const auto group = unit_group_basis(q);
    std::size_t expected = 1;
    for (const auto o : group->orders()) expected *= gcd(3, o);
    for (const auto& chi : enumerate_characters(group)) {
      const auto n = count_cube_roots(chi);
      // chi = conj(psi)^3 has exactly as many roots as the 3-torsion; others have none.
      const auto n_cube = count_cube_roots(chi.conj().pow(3));
      if ((n != 0 && n != expected) || n_cube != expected) {
        c.pass = false;
        c.worst += 1;
      }
    }
  }
  c.detail = describe({{"qmax", double(qmax)}, {"mismatches", c.worst}});
  return c;
}

Check poisson_mod_l_suite() {
  Check c{"poisson_mod_l", true, 0.0, {}};
  const Schwartz1D gauss = gaussian_schwartz();
  const Schwartz1D bump = bump_schwartz(0.5, 1.0);
  struct Case {
    const Schwartz1D* w;
    u64 l;
    i64 a;
    double D;
  };
  const Case cases[] = {{&gauss, 7, 3, 50.0}, {&gauss, 1, 0, 10.0}, {&gauss, 13, -2, 200.0},
                        {&bump, 5, 1, 100.0}, {&bump, 11, 4, 300.0}, {&bump, 30, 7, 1000.0}};
  for (const auto& k : cases) {
    const auto r = poisson_mod_l_check(*k.w, k.l, k.a, k.D);
    c.worst = std::max(c.worst, r.error / (1.0 + std::fabs(r.lhs)));
  }
  c.pass = c.worst <= 1e-9;
  c.detail = describe({{"max_rel_err", c.worst}});
  return c;
}

Check char_expansion_check(const std::vector<std::array<double, 3>>& triples, double X) {
  Check c{"character_expansion", true, 0.0, {}};
  const auto f = FamilySpec::make(X);
  for (const auto& [H, K, P] : triples) {
    const auto r = verify_char_expansion(H, K, P, f);
    c.worst = std::max(c.worst, r.relative());
  }
  c.pass = c.worst <= 1e-8;
  c.detail = describe({{"X", X}, {"triples", double(triples.size())}, {"max_rel_err", c.worst}});
  return c;
}

Check dual_path_check(double X, Rational nu) {
  Check c{"poisson_dual", true, 0.0, {}};
  const auto f = FamilySpec::make(X, nu);
  const double d = p1_direct(f);
  const double p = p1_poisson(f);
  c.worst = std::fabs(d - p) / (1.0 + std::fabs(d));
  c.pass = c.worst <= 1e-6;
  c.detail = describe({{"X", X}, {"direct", d}, {"poisson", p}, {"err", c.worst}});
  return c;
}

std::vector<Check> identity_suite(const RunConfig& c) {
  std::vector<Check> out;
  out.push_back(second_moment_check());
  out.push_back(twisted_sum_check());
  out.push_back(char_expansion_check({{4, 6, 50}, {3, 4, 40}, {5, 3, 30}}));
  out.push_back(poisson_mod_l_suite());
  out.push_back(gauss_bound_check());
  out.push_back(gauss_exact_check());
  out.push_back(quadratic_gauss_check());
  out.push_back(cubic_structure_check());
  out.push_back(cube_root_count_check());
  for (const double X : c.X)
    if (X <= 1e4) out.push_back(dual_path_check(X, c.nu));
  return out;
}

LemmaResults lemma_suite(const RunConfig& c, u64 growth_dmax) {
  LemmaResults res;
  const u64 seed = c.seed;

  const auto ls = large_sieve_random(100, seed);
  res.strict.push_back({"large_sieve", ls.failures == 0, ls.worst_margin,
                        describe({{"instances", double(ls.instances)}, {"failures", double(ls.failures)},
                                  {"worst_margin", ls.worst_margin}})});
  const auto gs = gallagher_spacing_random(100, seed);
  res.strict.push_back({"gallagher_spacing", gs.failures == 0, gs.worst_margin,
                        describe({{"instances", double(gs.instances)}, {"failures", double(gs.failures)},
                                  {"worst_margin", gs.worst_margin}})});

  Rng rng(seed);
  RatioReport hb{"heathbrown", {}};
  for (u64 size = 50; size <= 400; size *= 2) {
    std::vector<cplx> sqf(size), rnd(size);
    for (u64 n = 1; n <= size; ++n) {
      sqf[n - 1] = squarefree(n) ? 1.0 : 0.0;
      rnd[n - 1] = rng.disc();
    }
    hb.records.push_back(heathbrown_ratio(size, sqf, seed));
    hb.records.push_back(heathbrown_ratio(size, rnd, seed));
  }
  res.ratios.push_back(std::move(hb));

  RatioReport g2{"gallagher_integral", {}};
  for (const double T : {1.0, 5.0, 20.0}) {
    std::vector<cplx> a(40);
    for (auto& v : a) v = rng.disc();
    auto r = gallagher_integral_ratio(a, T);
    r.seed = seed;
    g2.records.push_back(std::move(r));
  }
  res.ratios.push_back(std::move(g2));

  res.ratios.push_back(dirichlet_meanvalue_random(7, 50, 50, seed));
  res.ratios.push_back(expsum_ratio(32, 64, 1, 1, 4, seed));
  res.ratios.push_back(weyl_ratio(16, 128, 3, 4, seed));
  res.growth = lemma_f_growth(growth_dmax);
  return res;
}

}  // namespace lowlying::cli
