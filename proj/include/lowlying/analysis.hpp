#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "lowlying/arith.hpp"

namespace lowlying {

enum class PairKind { fejer, custom };

/// Even test function phi with phihat supported in [-nu, nu].
struct TestFunctionPair {
  double nu = 0.0;
  PairKind kind = PairKind::custom;
  std::function<double(double)> phi;
  std::function<double(double)> phihat;
  /// Decreasing upper bound for |phi(x)| on x >= 0.
  std::function<double(double)> envelope;
  /// Optional closed form of int_{|x| > R} phi(x) e(-xy) dx; when absent the
  /// quadrature runs out to where envelope drops below 1e-14.
  std::function<double(double R, double y)> tail;
};

/// phihat(y) = max(0, 1 - |y|/nu), phi(x) = nu (sin(pi nu x)/(pi nu x))^2.
TestFunctionPair fejer_pair(double nu);

/// c * phi, c * phihat.
TestFunctionPair scaled(const TestFunctionPair& pair, double c);

/// max over the grid of |int phi(x) e(-xy) dx - phihat(y)|. Panel Gauss-Legendre
/// on half-periods; DiagnosticError when two node counts disagree by more than tol.
double verify_fourier_pair(const TestFunctionPair& pair, std::span<const double> grid, double tol = 1e-9);

/// u(t) = exp(-1/(t(1-t))) on (0,1), 0 elsewhere.
double bump_profile(double t);

/// Transform of x -> u((x - lo)/len): len e(-v lo) int_0^1 u(t) e(-v len t) dt,
/// by fixed-node Gauss-Legendre.
class BumpTransform1D {
 public:
  BumpTransform1D(double lo, double hi, int nodes = 256);

  double lo() const { return lo_; }
  double length() const { return len_; }
  int nodes() const { return static_cast<int>(t_.size()); }

  std::complex<double> operator()(double v) const;
  /// Values at v = h * step for h = 0..count-1; exponentials by recurrence,
  /// reseeded every 64 steps.
  void along(double step, std::size_t count, std::vector<std::complex<double>>& out) const;

  /// Non-increasing upper bound for |transform(v')| over |v'| >= |v|.
  /// Beyond the resolved range it returns the last grid value.
  double envelope(double v) const;
  /// Smallest r with envelope(r) < tol; DiagnosticError if tol is below the resolved range.
  double radius(double tol) const;

 private:
  double lo_, len_;
  std::vector<double> t_, cw_;  // nodes on [0,1]; weight * u(node)
  std::vector<double> env_;     // suffix maxima of |int u e(-xi t)| on a grid in xi
};

struct BumpBox {
  double x0 = 0.5, x1 = 1.0, y0 = 0.5, y1 = 1.0;
  bool operator==(const BumpBox&) const = default;
};

/// w(x, y) = amplitude * u((x-x0)/(x1-x0)) * u((y-y0)/(y1-y0)).
class SmoothWeight {
 public:
  SmoothWeight(BumpBox box, double amplitude = 1.0, int nodes = 256);

  const BumpBox& box() const { return box_; }
  double amplitude() const { return amplitude_; }
  const BumpTransform1D& tx() const { return tx_; }
  const BumpTransform1D& ty() const { return ty_; }

  double wx(double x) const;  // amplitude folded into the x factor
  double wy(double y) const;
  double operator()(double x, double y) const { return wx(x) * wy(y); }

  /// 2D transform; cached when (u, v) lie on the 2^-10 grid.
  std::complex<double> what(double u, double v) const;
  double mass() const { return mass_; }

 private:
  BumpBox box_;
  double amplitude_;
  BumpTransform1D tx_, ty_;
  double mass_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, std::complex<double>> cache_;
};

/// Throws DomainError for a degenerate box.
std::shared_ptr<const SmoothWeight> bump_weight(BumpBox box, double amplitude = 1.0, int nodes = 256);

/// One-dimensional Schwartz function with its transform and tail radii.
struct Schwartz1D {
  std::function<double(double)> f;
  std::function<std::complex<double>(double)> fhat;
  /// |f(x)| < tol for |x| > radius.
  std::function<double(double tol)> radius;
  std::function<double(double tol)> hat_radius;
};

/// exp(-pi x^2), its own transform.
Schwartz1D gaussian_schwartz();
/// The bump profile on [lo, hi].
Schwartz1D bump_schwartz(double lo, double hi);

struct PoissonCheck {
  double lhs;
  double rhs;
  double error;
};

/// sum_{d = a mod l} w(d/D) against (D/l) sum_h what(hD/l) e(ha/l).
PoissonCheck poisson_mod_l_check(const Schwartz1D& w, u64 l, i64 a, double D);

}  // namespace lowlying
