#pragma once

#include <array>
#include <string>
#include <vector>

#include "lowlying/cli/config.hpp"
#include "lowlying/harness.hpp"

namespace lowlying::cli {

struct Check {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // largest normalized error, or failure count for exact checks
  std::string detail;
};

/// sum lambda^2 = p^2 (p - 1) for 5 <= p <= pmax, integer-exact on both the direct rows and the table.
Check second_moment_check(u64 pmax = 97);
/// Brute force against the closed form for all (h, k) mod p, 5 <= p <= pmax; error / p^{3/2}.
Check twisted_sum_check(u64 pmax = 50);
/// |tau_a(chi)| <= sqrt(l) for every character mod l <= lmax and unit a; error is the excess.
Check gauss_bound_check(u64 lmax = 300);
/// Real primitive chi mod odd squarefree l <= lmax: tau_a = chi(a) sqrt(l) or i chi(a) sqrt(l).
Check gauss_exact_check(u64 lmax = 499);
/// |sum e((a b^2 + k b)/l)| <= 2 sqrt(l) for l <= lmax, all units a and all k.
Check quadratic_gauss_check(u64 lmax = 300);
/// Primitive cubic characters up to limit have the expected modulus shape; 9 has 2, 27 has 0.
Check cubic_structure_check(u64 limit = 5000);
/// Cube-root counts against prod gcd(3, order_i) over small moduli.
Check cube_root_count_check(u64 qmax = 60);
/// Poisson summation in progressions for the Gaussian and a bump.
Check poisson_mod_l_suite();
/// Character-expansion identity at the given (H, K, P) triples; relative error.
Check char_expansion_check(const std::vector<std::array<double, 3>>& triples, double X = 1000.0);
/// p1_direct against p1_poisson; error / (1 + |direct|).
Check dual_path_check(double X, Rational nu = {7, 10});

std::vector<Check> identity_suite(const RunConfig& c);

struct LemmaResults {
  std::vector<Check> strict;  // constant-1 inequalities
  std::vector<RatioReport> ratios;
  std::vector<GrowthFit> growth;
};

/// Strict checks plus ratio harnesses; growth fits are reported, not asserted.
LemmaResults lemma_suite(const RunConfig& c, u64 growth_dmax = 100000);

}  // namespace lowlying::cli
