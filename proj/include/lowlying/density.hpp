#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lowlying/analysis.hpp"
#include "lowlying/arith.hpp"
#include "lowlying/dirichlet.hpp"
#include "lowlying/frobenius.hpp"

namespace lowlying {

/// The weighted family y^2 = x^3 + ax + b, weight w(a/A, b/B), A = X^{1/3}, B = X^{1/2}.
struct FamilySpec {
  double X = 0.0;
  double A = 0.0;
  double B = 0.0;
  Rational nu{7, 10};
  std::shared_ptr<const SmoothWeight> weight;
  TestFunctionPair phi;
  unsigned threads = 0;
  u64 table_cap = kDefaultTableCap;
  std::shared_ptr<FrobCache> cache;  // optional; tables are built on demand otherwise

  static FamilySpec make(double X, Rational nu = {7, 10}, BumpBox box = {});
  /// Same family with the weight multiplied by c.
  FamilySpec with_weight_scale(double c) const;
  double log_X() const { return std::log(X); }
};

/// Lattice points with nonzero weight: w(a/A, b/B) = wa[i] * wb[j].
struct FamilyLattice {
  std::vector<i64> a, b;
  std::vector<double> wa, wb;
  std::size_t curves() const { return a.size() * b.size(); }
};

FamilyLattice family_lattice(const FamilySpec& f);

/// Primes p > 3 with phihat(c log p / log X) possibly nonzero (p < X^{nu/c}).
std::vector<u64> support_primes(const FamilySpec& f, double c);

/// sum_{a,b} w(a/A, b/B). EmptyFamilyError when no lattice point has positive weight.
double w_total(const FamilySpec& f);

double p1_direct(const FamilySpec& f);

inline constexpr double kDefaultTailTol = 1e-14;

/// The Poisson-dual form of P1 including the h = 0 terms; (h, k) pairs are
/// dropped where the transform envelopes give |what(hA/p, kB/p)| < tail_tol.
/// Pairs (+-h, +-k) are folded so only h >= 0, k >= 1, p not dividing k are visited.
double p1_poisson(const FamilySpec& f, double tail_tol = kDefaultTailTol);

/// Summands visited by p1_poisson.
u64 poisson_term_count(const FamilySpec& f, double tail_tol = kDefaultTailTol);
/// Legendre-symbol terms of the direct path: sum over primes of (#curves) * p.
u64 direct_term_count(const FamilySpec& f);

double p2_direct(const FamilySpec& f);

struct ConductorTerm {
  double value = 0.0;  // exponents at 2 and 3 capped
  double lo = 0.0;     // exponents at 2 and 3 set to 0
  double hi = 0.0;     // same as value; kept separate for the band
  std::size_t curves = 0;
  std::size_t skipped = 0;
};

ConductorTerm conductor_term(const FamilySpec& f);

enum class Method { direct, poisson, both };
std::string to_string(Method m);
Method parse_method(const std::string& s);

struct DensityReport {
  double X = 0.0;
  Rational nu;
  Method method = Method::direct;
  double W = 0.0;
  double AB_mass = 0.0;  // A B int int w
  std::optional<double> P1_direct;
  std::optional<double> P1_poisson;
  double P1 = 0.0;  // the direct value when both are present
  double P2 = 0.0;
  ConductorTerm conductor;
  double predicted = 0.0;
  double assembled = 0.0;
  Rational rank_bound;
  u64 poisson_terms = 0;
  u64 direct_terms = 0;
  std::map<std::string, double> seconds;

  double gap() const { return std::fabs(assembled - predicted); }
  std::optional<double> dual_gap() const;
};

/// 1/2 + 1/nu.
Rational rank_bound(Rational nu);

DensityReport density_report(const FamilySpec& f, Method method, double tail_tol = kDefaultTailTol);

/// Smooth bump supported in [1, 2].
double dyadic_bump(double t);

using Dyadic = std::function<double(double)>;

/// Common per-prime weight (2 log p / (p^{3/2} log X)) phihat(log p / log X).
double prime_weight(const FamilySpec& f, u64 p);

/// sum_{h,k,p} weight(p) psi_4(p) (k/p) e(-h^3 kbar^2 / p) what(hA/p, kB/p) g(h/H) g(k/K) g(p/P).
std::complex<double> s_hkp_direct(double H, double K, double P, const FamilySpec& f, const Dyadic& g = dyadic_bump);

/// Q(d, k, chi) for chi modulo k^2/d; DomainError unless d | k^2.
std::complex<double> q_dk_chi(u64 d, u64 k, const DirichletCharacter& chi, double H, double K, double P,
                              const FamilySpec& f, const Dyadic& g = dyadic_bump);

struct ExpansionCheck {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double error;
  double relative() const { return error / std::max(std::abs(lhs), std::abs(rhs)); }
};

/// s_hkp_direct against sum_k sum_{d | k^2} phi(k^2/d)^{-1} sum_chi tau(chi) conj(chi)(d_0^3/d) Q(d, k, chi).
ExpansionCheck verify_char_expansion(double H, double K, double P, const FamilySpec& f,
                                     const Dyadic& g = dyadic_bump);

}  // namespace lowlying
