#include "lowlying/analysis.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstring>
#include <mutex>
#include <string>

#include "lowlying/errors.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying {

namespace {

// Gauss-Legendre nodes and weights mapped to [0, 1].
template <int N>
void gl_nodes_fixed(std::vector<double>& t, std::vector<double>& w) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& wt = G::weights();
  t.clear();
  w.clear();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0.0) {
      t.push_back(0.5);
      w.push_back(wt[j] / 2);
      continue;
    }
    t.push_back(0.5 * (1 - x[j]));
    w.push_back(wt[j] / 2);
    t.push_back(0.5 * (1 + x[j]));
    w.push_back(wt[j] / 2);
  }
}

void gl_nodes(int n, std::vector<double>& t, std::vector<double>& w) {
  switch (n) {
    case 20: return gl_nodes_fixed<20>(t, w);
    case 30: return gl_nodes_fixed<30>(t, w);
    case 64: return gl_nodes_fixed<64>(t, w);
    case 128: return gl_nodes_fixed<128>(t, w);
    case 256: return gl_nodes_fixed<256>(t, w);
    case 512: return gl_nodes_fixed<512>(t, w);
    default: throw DomainError("gauss-legendre: unsupported node count " + std::to_string(n));
  }
}

struct Rule {
  std::vector<double> t, w;
  explicit Rule(int n) { gl_nodes(n, t, w); }
  template <class F>
  double integrate(F&& f, double a, double b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += w[i] * f(a + (b - a) * t[i]);
    return s * (b - a);
  }
};

// int_R^inf cos(omega x) / x^2 dx.
double cos_over_square_tail(double omega, double R) {
  omega = std::fabs(omega);
  if (omega < 1e-12) return 1.0 / R;
  // omega * int_z^inf cos t / t^2 dt, asymptotic series once z is large.
  auto asymptotic = [](double z) {
    std::complex<double> s = 0.0, ipow = 1.0;
    double fact = 1.0, zp = z * z;
    for (int n = 0; n < 12; ++n) {
      fact *= (n + 1);
      s += ipow * (fact / zp);
      ipow *= std::complex<double>(0.0, -1.0);
      zp *= z;
    }
    return (std::complex<double>(0.0, 1.0) * std::polar(1.0, z) * s).real();
  };
  constexpr double kSwitch = 40.0;
  if (omega * R >= kSwitch) return omega * asymptotic(omega * R);
  static const Rule rule(30);
  const double R1 = kSwitch / omega;
  const double half_period = M_PI / omega;
  CompensatedSum s;
  for (double x = R; x < R1;) {
    const double step = std::min({half_period, 0.5 * x, R1 - x});
    s.add(rule.integrate([omega](double v) { return std::cos(omega * v) / (v * v); }, x, x + step));
    x += step;
  }
  return s.value() + omega * asymptotic(kSwitch);
}

}  // namespace

TestFunctionPair fejer_pair(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("fejer_pair: nu must be positive");
  TestFunctionPair pair;
  pair.nu = nu;
  pair.kind = PairKind::fejer;
  pair.phihat = [nu](double y) { return std::max(0.0, 1.0 - std::fabs(y) / nu); };
  pair.phi = [nu](double x) {
    const double z = M_PI * nu * x;
    if (std::fabs(z) < 1e-8) return nu * (1.0 - z * z / 3.0);
    const double s = std::sin(z) / z;
    return nu * s * s;
  };
  pair.envelope = [nu](double x) {
    x = std::fabs(x);
    const double decay = 1.0 / (M_PI * M_PI * nu * x * x);
    return x == 0.0 ? nu : std::min(nu, decay);
  };
  pair.tail = [nu](double R, double y) {
    const double pi2 = 2.0 * M_PI;
    const double v = cos_over_square_tail(pi2 * y, R) - 0.5 * cos_over_square_tail(pi2 * (y + nu), R) -
                     0.5 * cos_over_square_tail(pi2 * (y - nu), R);
    return v / (M_PI * M_PI * nu);
  };
  return pair;
}

TestFunctionPair scaled(const TestFunctionPair& pair, double c) {
  TestFunctionPair out = pair;
  out.kind = PairKind::custom;
  out.phi = [f = pair.phi, c](double x) { return c * f(x); };
  out.phihat = [f = pair.phihat, c](double y) { return c * f(y); };
  out.envelope = [f = pair.envelope, c](double x) { return std::fabs(c) * f(x); };
  if (pair.tail) out.tail = [f = pair.tail, c](double R, double y) { return c * f(R, y); };
  return out;
}

double verify_fourier_pair(const TestFunctionPair& pair, std::span<const double> grid, double tol) {
  static const Rule coarse(20), fine(30);
  double R;
  if (pair.tail) {
    R = 200.0 / pair.nu;
  } else {
    R = 1.0;
    while (pair.envelope(R) >= 1e-14) {
      R *= 2.0;
      if (R > 1e7) throw DiagnosticError("verify_fourier_pair: envelope does not reach 1e-14 by x = 1e7");
    }
  }
  double worst = 0.0;
  for (const double y : grid) {
    const double h = 0.25 / (pair.nu + std::fabs(y) + 1e-3);
    CompensatedSum a, b;
    for (double x = 0.0; x < R; x += h) {
      const double x1 = std::min(x + h, R);
      auto f = [&](double v) { return pair.phi(v) * std::cos(2.0 * M_PI * v * y); };
      a.add(coarse.integrate(f, x, x1));
      b.add(fine.integrate(f, x, x1));
    }
    if (std::fabs(a.value() - b.value()) > tol)
      throw DiagnosticError("verify_fourier_pair: quadrature not converged at y = " + std::to_string(y));
    double value = 2.0 * b.value();
    if (pair.tail) value += pair.tail(R, y);
    worst = std::max(worst, std::fabs(value - pair.phihat(y)));
  }
  return worst;
}

double bump_profile(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (t * (1.0 - t)));
}

namespace {
constexpr double kEnvStep = 0.01;
// Gauss-Legendre with n nodes resolves e(-xi t) on [0, 1] well below xi = n / 2.
double env_max(std::size_t nodes) { return static_cast<double>(nodes) / 3.0; }
}  // namespace

BumpTransform1D::BumpTransform1D(double lo, double hi, int nodes) : lo_(lo), len_(hi - lo) {
  if (!(hi > lo)) throw DomainError("BumpTransform1D: empty interval");
  std::vector<double> w;
  gl_nodes(nodes, t_, w);
  cw_.resize(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) cw_[i] = w[i] * bump_profile(t_[i]);

  const auto n = static_cast<std::size_t>(env_max(t_.size()) / kEnvStep) + 1;
  env_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = j * kEnvStep;
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < t_.size(); ++i) s += cw_[i] * expi2pi(-xi * t_[i]);
    env_[j] = std::abs(s);
  }
  for (std::size_t j = n - 1; j-- > 0;) env_[j] = std::max(env_[j], env_[j + 1]);
}

std::complex<double> BumpTransform1D::operator()(double v) const {
  ComplexCompensatedSum s;
  for (std::size_t i = 0; i < t_.size(); ++i) s.add(cw_[i] * expi2pi(-v * len_ * t_[i]));
  return len_ * expi2pi(-v * lo_) * s.value();
}

void BumpTransform1D::along(double step, std::size_t count, std::vector<std::complex<double>>& out) const {
  out.resize(count);
  const std::size_t m = t_.size();
  std::vector<double> zr(m), zi(m), cr(m), ci(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto z = expi2pi(-step * len_ * t_[i]);
    zr[i] = z.real();
    zi[i] = z.imag();
  }
  for (std::size_t h = 0; h < count; ++h) {
    if (h % 64 == 0) {
      for (std::size_t i = 0; i < m; ++i) {
        const auto c = expi2pi(-static_cast<double>(h) * step * len_ * t_[i]);
        cr[i] = c.real();
        ci[i] = c.imag();
      }
    }
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sr += cw_[i] * cr[i];
      si += cw_[i] * ci[i];
      const double nr = cr[i] * zr[i] - ci[i] * zi[i];
      ci[i] = cr[i] * zi[i] + ci[i] * zr[i];
      cr[i] = nr;
    }
    out[h] = len_ * expi2pi(-static_cast<double>(h) * step * lo_) * std::complex<double>(sr, si);
  }
}

double BumpTransform1D::envelope(double v) const {
  const double xi = std::fabs(v) * len_;
  const auto j = static_cast<std::size_t>(xi / kEnvStep);
  if (j >= env_.size()) return len_ * env_.back() * 1.05;
  // Slack for variation between grid points.
  return len_ * env_[j] * 1.05;
}

double BumpTransform1D::radius(double tol) const {
  // env_ is a suffix maximum, so it is non-increasing.
  const auto it = std::partition_point(env_.begin(), env_.end(), [&](double e) { return len_ * e * 1.05 >= tol; });
  if (it == env_.end())
    throw DiagnosticError("BumpTransform1D: envelope does not reach " + std::to_string(tol) + " within the resolved range");
  const auto j = static_cast<std::size_t>(it - env_.begin());
  return (j * kEnvStep) / len_;
}

SmoothWeight::SmoothWeight(BumpBox box, double amplitude, int nodes)
    : box_(box), amplitude_(amplitude), tx_(box.x0, box.x1, nodes), ty_(box.y0, box.y1, nodes) {
  mass_ = amplitude_ * tx_(0.0).real() * ty_(0.0).real();
}

double SmoothWeight::wx(double x) const {
  return amplitude_ * bump_profile((x - box_.x0) / (box_.x1 - box_.x0));
}

double SmoothWeight::wy(double y) const { return bump_profile((y - box_.y0) / (box_.y1 - box_.y0)); }

std::complex<double> SmoothWeight::what(double u, double v) const {
  const double su = u * 1024.0, sv = v * 1024.0;
  const bool on_grid = su == std::floor(su) && sv == std::floor(sv) && std::fabs(su) < 1e6 && std::fabs(sv) < 1e6;
  if (!on_grid) return amplitude_ * tx_(u) * ty_(v);
  const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(su))) << 32) |
                   static_cast<std::uint32_t>(static_cast<std::int32_t>(sv));
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const auto value = amplitude_ * tx_(u) * ty_(v);
  std::unique_lock lock(cache_mutex_);
  cache_.emplace(key, value);
  return value;
}

std::shared_ptr<const SmoothWeight> bump_weight(BumpBox box, double amplitude, int nodes) {
  if (!(box.x0 > 0.0 && box.x0 < box.x1 && box.y0 > 0.0 && box.y0 < box.y1) || !std::isfinite(box.x1) ||
      !std::isfinite(box.y1))
    throw DomainError("bump_weight: box must satisfy 0 < x0 < x1 and 0 < y0 < y1");
  return std::make_shared<const SmoothWeight>(box, amplitude, nodes);
}

Schwartz1D gaussian_schwartz() {
  Schwartz1D g;
  g.f = [](double x) { return std::exp(-M_PI * x * x); };
  g.fhat = [](double u) { return std::complex<double>(std::exp(-M_PI * u * u), 0.0); };
  g.radius = [](double tol) { return std::sqrt(-std::log(tol) / M_PI); };
  g.hat_radius = g.radius;
  return g;
}

Schwartz1D bump_schwartz(double lo, double hi) {
  auto tr = std::make_shared<const BumpTransform1D>(lo, hi);
  Schwartz1D g;
  g.f = [lo, hi](double x) { return bump_profile((x - lo) / (hi - lo)); };
  g.fhat = [tr](double u) { return (*tr)(u); };
  g.radius = [lo, hi](double) { return std::max(std::fabs(lo), std::fabs(hi)); };
  g.hat_radius = [tr](double tol) { return tr->radius(tol); };
  return g;
}

PoissonCheck poisson_mod_l_check(const Schwartz1D& w, u64 l, i64 a, double D) {
  if (l == 0 || !(D > 0.0)) throw DomainError("poisson_mod_l_check: need l >= 1 and D > 0");
  // Near the rounding floor of the transform quadrature.
  constexpr double kTol = 1e-15;
  const double R = w.radius(kTol) * D;
  const auto L = static_cast<i64>(l);
  const i64 r = static_cast<i64>(reduce(a, l));
  // d = r + L n with |d| <= R
  const auto n_lo = static_cast<i64>(std::floor((-R - r) / L)) - 1;
  const auto n_hi = static_cast<i64>(std::ceil((R - r) / L)) + 1;
  CompensatedSum lhs;
  for (i64 n = n_lo; n <= n_hi; ++n) lhs.add(w.f(static_cast<double>(r + L * n) / D));

  const auto H = static_cast<i64>(std::ceil(w.hat_radius(kTol) * static_cast<double>(l) / D)) + 1;
  CompensatedSum rhs;
  for (i64 h = -H; h <= H; ++h) {
    const auto term = w.fhat(static_cast<double>(h) * D / static_cast<double>(l)) * unit_root(h * r, l);
    rhs.add(term.real());
  }
  const double right = rhs.value() * D / static_cast<double>(l);
  return {lhs.value(), right, std::fabs(lhs.value() - right)};
}

}  // namespace lowlying
