#pragma once

// Numerical checks of the analytic inequalities. Inequalities whose constant is
// exactly 1 get pass/fail; the rest record LHS / (RHS without constant).

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lowlying/arith.hpp"

namespace lowlying {

inline constexpr u64 kDefaultSeed = 20110317;

using cplx = std::complex<double>;

/// Portable uniform doubles on [0, 1) from mt19937_64.
class Rng {
 public:
  explicit Rng(u64 seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  u64 below(u64 n) { return gen_() % n; }
  cplx unit() { return std::polar(1.0, 2.0 * M_PI * uniform()); }
  /// Uniform in the closed unit disc.
  cplx disc() { return std::polar(std::sqrt(uniform()), 2.0 * M_PI * uniform()); }

 private:
  std::mt19937_64 gen_;
};

struct RatioRecord {
  std::string params;
  u64 seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioReport {
  std::string lemma;
  std::vector<RatioRecord> records;
  std::size_t instances() const { return records.size(); }
  double quantile(double q) const;
  double p50() const { return quantile(0.5); }
  double p90() const { return quantile(0.9); }
  double max_ratio() const { return quantile(1.0); }
};

/// lemma,params,seed,lhs,rhs,ratio
void write_ratio_csv(std::ostream& out, std::span<const RatioReport> reports);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// sum_{chi mod q} |sum_{M <= n < M+N} a_n chi(n)|^2 <= (q + N) sum |a_n|^2, a indexed from n = M.
InequalityCheck large_sieve_check(u64 q, u64 M, std::span<const cplx> a);

struct RandomizedSummary {
  std::size_t instances = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  // max lhs / rhs
  u64 seed = 0;
};

RandomizedSummary large_sieve_random(std::size_t trials, u64 seed = kDefaultSeed, u64 max_q = 200, u64 max_n = 200);

/// Denominator (P + N) sum_{q <= N} sum_{n1 n2 = q^2} |a_n1 a_n2| with a indexed from n = 1.
double heathbrown_denominator(u64 P, std::span<const cplx> a);
/// sum_{P <= p < 2P, p odd} |sum_{n <= N} a_n (n/p)|^2 over the denominator.
RatioRecord heathbrown_ratio(u64 P, std::span<const cplx> a, u64 seed = 0);

/// Adaptive Simpson on [a, b] to absolute error eps.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps, int max_depth = 50);

/// sum_{t in points} |S(t)|^2 <= (1/delta) int |S|^2 + (int |S|^2)^{1/2} (int |S'|^2)^{1/2} on [T0, T0+T].
/// PreconditionError when points leave [T0 + delta/2, T0 + T - delta/2] or are closer than delta.
InequalityCheck gallagher_spacing_check(const std::function<cplx(double)>& S, const std::function<cplx(double)>& dS,
                                        std::span<const double> points, double T0, double T, double delta);

RandomizedSummary gallagher_spacing_random(std::size_t trials, u64 seed = kDefaultSeed);

/// int_{-T}^{T} |sum a_n n^{-it}|^2 dt against T^2 int_0^inf |sum_{y < n <= tau y} a_n|^2 dy/y,
/// tau = exp(1/T), both in closed form; a indexed from n = 1.
RatioRecord gallagher_integral_ratio(std::span<const cplx> a, double T);

/// Characters mod q as b_{m,n}; rhoss[m] holds the points for the m-th character
/// in enumeration order. Ratio against (log 2N)(N + qT) sum |a_n|^2 n^{-2 sigma}.
RatioRecord dirichlet_meanvalue_check(u64 q, std::span<const cplx> a, const std::vector<std::vector<cplx>>& rhoss,
                                      double sigma, double T);

RatioReport dirichlet_meanvalue_random(u64 q, u64 N, std::size_t trials, u64 seed = kDefaultSeed);

struct GrowthFit {
  std::string name;
  double exponent = 0.0;  // stated growth exponent without epsilon
  double slope = 0.0;     // least squares over the grid
  double local_slope = 0.0;  // last two grid points
  std::vector<double> D;
  std::vector<double> sums;
  bool pass(double slack = 0.1) const { return slope <= exponent + slack; }
};

/// The six sums over d <= D built from d', d*, d_0 and (d^4)_0, on a geometric
/// grid from 100 to Dmax; slopes of log sum against log D.
std::vector<GrowthFit> lemma_f_growth(u64 Dmax, std::size_t grid_points = 25);

/// R(N,P,d0,k) = sum_{P <= p < 2P} |sum_{N <= n < 2N} e(n^3 d0^3 / (p k^2)) c_n| against
/// N^{1/2} P + N^{1/4} P^{5/4} k^{1/2} d0^{-3/4}. Trial 0 uses c_n = 1, later trials random phases.
RatioReport expsum_ratio(u64 N, u64 P, u64 d0, u64 k, std::size_t trials, u64 seed = kDefaultSeed);

/// sum_{P <= p < 2P} |sum_{H <= h < 2H} e(h^3 kbar^2 / p)| against H^{3/4} P + H P^{3/4} + H^{1/4} P^{5/4}.
/// Trial 0 uses the given k, later trials draw k from [1, 1000].
RatioReport weyl_ratio(u64 H, u64 P, u64 k, std::size_t trials, u64 seed = kDefaultSeed);

}  // namespace lowlying
