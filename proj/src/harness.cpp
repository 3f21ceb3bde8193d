#include "lowlying/harness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "lowlying/dirichlet.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying {

namespace {

std::string params_str(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ';';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

std::vector<u64> primes_between(u64 lo, u64 hi) {  // [lo, hi)
  std::vector<u64> out;
  if (hi < 2) return out;
  for (const u64 p : sieve_primes(hi - 1))
    if (p >= lo) out.push_back(p);
  return out;
}

double norm_sum(std::span<const cplx> a) {
  CompensatedSum s;
  for (const auto& v : a) s.add(std::norm(v));
  return s.value();
}

}  // namespace

double RatioReport::quantile(double q) const {
  if (records.empty()) return 0.0;
  std::vector<double> r;
  r.reserve(records.size());
  for (const auto& rec : records) r.push_back(rec.ratio);
  std::sort(r.begin(), r.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(r.size()))) ;
  return r[std::min(r.size() - 1, idx == 0 ? 0 : idx - 1)];
}

void write_ratio_csv(std::ostream& out, std::span<const RatioReport> reports) {
  out << "lemma,params,seed,lhs,rhs,ratio\n";
  out.precision(17);
  for (const auto& rep : reports)
    for (const auto& r : rep.records)
      out << rep.lemma << ',' << r.params << ',' << r.seed << ',' << r.lhs << ',' << r.rhs << ',' << r.ratio << '\n';
}

InequalityCheck large_sieve_check(u64 q, u64 M, std::span<const cplx> a) {
  if (q == 0) throw DomainError("large_sieve_check: q must be positive");
  const auto group = unit_group_basis(q);
  CompensatedSum lhs;
  for (const auto& chi : enumerate_characters(group)) {
    ComplexCompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const i64 ph = chi.phase(static_cast<i64>(M + i));
      if (ph >= 0) s.add(a[i] * group->root(static_cast<u64>(ph)));
    }
    lhs.add(std::norm(s.value()));
  }
  const double rhs = static_cast<double>(q + a.size()) * norm_sum(a);
  return {lhs.value(), rhs, lhs.value() <= rhs * (1.0 + 1e-12)};
}

RandomizedSummary large_sieve_random(std::size_t trials, u64 seed, u64 max_q, u64 max_n) {
  Rng rng(seed);
  RandomizedSummary s{trials, 0, 0.0, seed};
  for (std::size_t t = 0; t < trials; ++t) {
    const u64 q = 1 + rng.below(max_q);
    const u64 N = 1 + rng.below(max_n);
    const u64 M = 1 + rng.below(1000);
    std::vector<cplx> a(N);
    for (auto& v : a) v = rng.disc();
    const auto r = large_sieve_check(q, M, a);
    if (!r.pass) ++s.failures;
    if (r.rhs > 0) s.worst_margin = std::max(s.worst_margin, r.lhs / r.rhs);
  }
  return s;
}

double heathbrown_denominator(u64 P, std::span<const cplx> a) {
  const u64 N = a.size();
  CompensatedSum s;
  for (u64 n1 = 1; n1 <= N; ++n1) {
    if (a[n1 - 1] == 0.0) continue;
    // n1 = core * r^2; n2 = core * m^2 and q = core * r * m.
    u64 core = 1, r = 1;
    for (const auto& [p, e] : factorize(n1).factors) {
      if (e % 2) core *= p;
      for (int i = 0; i < e / 2; ++i) r *= p;
    }
    for (u64 m = 1; core * m * m <= N; ++m) {
      if (core * r * m > N) break;
      s.add(std::abs(a[n1 - 1]) * std::abs(a[core * m * m - 1]));
    }
  }
  return static_cast<double>(P + N) * s.value();
}

RatioRecord heathbrown_ratio(u64 P, std::span<const cplx> a, u64 seed) {
  if (P == 0 || a.empty()) throw DomainError("heathbrown_ratio: P and N must be positive");
  CompensatedSum lhs;
  for (const u64 p : primes_between(P, 2 * P)) {
    if (p == 2) continue;
    const LegendreTable leg(p);
    ComplexCompensatedSum s;
    for (u64 n = 1; n <= a.size(); ++n) s.add(a[n - 1] * static_cast<double>(leg.at(static_cast<i64>(n))));
    lhs.add(std::norm(s.value()));
  }
  RatioRecord r;
  r.params = params_str({{"P", double(P)}, {"N", double(a.size())}});
  r.seed = seed;
  r.lhs = lhs.value();
  r.rhs = heathbrown_denominator(P, a);
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
  return r;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw DiagnosticError("adaptive_simpson: recursion limit reached");
  if (std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps, int max_depth) {
  // Split into panels first so the initial estimate sees the oscillation.
  constexpr int kPanels = 64;
  const double h = (b - a) / kPanels;
  CompensatedSum total;
  for (int i = 0; i < kPanels; ++i) {
    const double x0 = a + i * h, x1 = (i + 1 == kPanels) ? b : x0 + h;
    const double fa = f(x0), fb = f(x1), fm = f(0.5 * (x0 + x1));
    const double whole = (x1 - x0) / 6.0 * (fa + 4.0 * fm + fb);
    total.add(simpson_step(f, x0, x1, fa, fm, fb, whole, eps / kPanels, max_depth));
  }
  return total.value();
}

InequalityCheck gallagher_spacing_check(const std::function<cplx(double)>& S, const std::function<cplx(double)>& dS,
                                        std::span<const double> points, double T0, double T, double delta) {
  if (!(delta > 0.0) || T < delta) throw PreconditionError("gallagher_spacing_check: need T >= delta > 0");
  std::vector<double> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] < T0 + delta / 2 || pts[i] > T0 + T - delta / 2)
      throw PreconditionError("gallagher_spacing_check: point outside [T0 + delta/2, T0 + T - delta/2]");
    if (i > 0 && pts[i] - pts[i - 1] < delta)
      throw PreconditionError("gallagher_spacing_check: points closer than delta");
  }
  CompensatedSum lhs;
  for (const double t : pts) lhs.add(std::norm(S(t)));

  auto s2 = [&](double t) { return std::norm(S(t)); };
  auto d2 = [&](double t) { return std::norm(dS(t)); };
  // Error budget 1e-10 of a rough scale; the pass test allows 1e-8 relative.
  auto scale = [&](auto& g) {
    double m = 0.0;
    for (int i = 0; i <= 256; ++i) m = std::max(m, g(T0 + T * i / 256.0));
    return std::max(m * T, 1e-300);
  };
  const double I1 = adaptive_simpson(s2, T0, T0 + T, 1e-10 * scale(s2));
  const double I2 = adaptive_simpson(d2, T0, T0 + T, 1e-10 * scale(d2));
  const double rhs = I1 / delta + std::sqrt(std::max(I1, 0.0) * std::max(I2, 0.0));
  return {lhs.value(), rhs, lhs.value() <= rhs * (1.0 + 1e-8)};
}

RandomizedSummary gallagher_spacing_random(std::size_t trials, u64 seed) {
  Rng rng(seed);
  RandomizedSummary s{trials, 0, 0.0, seed};
  for (std::size_t t = 0; t < trials; ++t) {
    const double T0 = rng.uniform(-10.0, 10.0);
    const double T = rng.uniform(2.0, 30.0);
    const double delta = rng.uniform(0.3, std::min(3.0, T));
    const std::size_t J = 1 + rng.below(6);
    std::vector<double> freq(J);
    std::vector<cplx> coef(J);
    for (std::size_t j = 0; j < J; ++j) {
      freq[j] = rng.uniform(-5.0, 5.0);
      coef[j] = rng.disc();
    }
    auto S = [&](double x) {
      cplx v = 0.0;
      for (std::size_t j = 0; j < J; ++j) v += coef[j] * std::polar(1.0, freq[j] * x);
      return v;
    };
    auto dS = [&](double x) {
      cplx v = 0.0;
      for (std::size_t j = 0; j < J; ++j) v += cplx(0.0, freq[j]) * coef[j] * std::polar(1.0, freq[j] * x);
      return v;
    };
    std::vector<double> pts;
    const double hi = T0 + T - delta / 2;
    for (double x = T0 + delta / 2 + rng.uniform() * delta; x <= hi; x += delta * (1.0 + rng.uniform())) pts.push_back(x);
    if (pts.empty()) pts.push_back(T0 + T / 2);
    const auto r = gallagher_spacing_check(S, dS, pts, T0, T, delta);
    if (!r.pass) ++s.failures;
    s.worst_margin = std::max(s.worst_margin, r.lhs / r.rhs);
  }
  return s;
}

RatioRecord gallagher_integral_ratio(std::span<const cplx> a, double T) {
  if (!(T >= 1.0)) throw DomainError("gallagher_integral_ratio: T must be at least 1");
  std::vector<u64> support;
  for (u64 n = 1; n <= a.size(); ++n)
    if (a[n - 1] != 0.0) support.push_back(n);

  CompensatedSum lhs;
  for (const u64 m : support)
    for (const u64 n : support) {
      const double x = std::log(static_cast<double>(n) / static_cast<double>(m));
      const double kernel = m == n ? 2.0 * T : 2.0 * std::sin(T * x) / x;
      lhs.add((a[m - 1] * std::conj(a[n - 1])).real() * kernel);
    }

  // The bracket sum is a step function of y with jumps at n and n / tau.
  const double tau = std::exp(1.0 / T);
  std::vector<double> breaks;
  for (const u64 n : support) {
    breaks.push_back(static_cast<double>(n));
    breaks.push_back(static_cast<double>(n) / tau);
  }
  std::sort(breaks.begin(), breaks.end());
  CompensatedSum inner;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double y0 = breaks[j], y1 = breaks[j + 1];
    if (y1 <= y0) continue;
    const double mid = 0.5 * (y0 + y1);
    cplx s = 0.0;
    for (const u64 n : support)
      if (mid < static_cast<double>(n) && static_cast<double>(n) <= tau * mid) s += a[n - 1];
    inner.add(std::norm(s) * std::log(y1 / y0));
  }
  RatioRecord r;
  r.params = params_str({{"N", double(a.size())}, {"T", T}});
  r.lhs = lhs.value();
  r.rhs = T * T * inner.value();
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
  return r;
}

RatioRecord dirichlet_meanvalue_check(u64 q, std::span<const cplx> a, const std::vector<std::vector<cplx>>& rhoss,
                                      double sigma, double T) {
  if (!(T >= 1.0)) throw PreconditionError("dirichlet_meanvalue_check: T must be at least 1");
  const auto group = unit_group_basis(q);
  const auto chars = enumerate_characters(group);
  if (rhoss.size() > chars.size()) throw PreconditionError("dirichlet_meanvalue_check: more point sets than characters");
  const u64 N = a.size();

  CompensatedSum lhs;
  for (std::size_t m = 0; m < rhoss.size(); ++m) {
    std::vector<double> gammas;
    for (const auto& rho : rhoss[m]) {
      if (rho.real() < sigma - 1e-12 || rho.real() > sigma + 1.0 + 1e-12 || std::fabs(rho.imag()) > T)
        throw PreconditionError("dirichlet_meanvalue_check: point outside the (sigma, T) window");
      gammas.push_back(rho.imag());
    }
    std::sort(gammas.begin(), gammas.end());
    for (std::size_t i = 1; i < gammas.size(); ++i)
      if (gammas[i] - gammas[i - 1] < 1.0) throw PreconditionError("dirichlet_meanvalue_check: spacing below 1");
    for (const auto& rho : rhoss[m]) {
      ComplexCompensatedSum s;
      for (u64 n = 1; n <= N; ++n) {
        const i64 ph = chars[m].phase(static_cast<i64>(n));
        if (ph < 0) continue;
        s.add(group->root(static_cast<u64>(ph)) * a[n - 1] * std::exp(-rho * std::log(static_cast<double>(n))));
      }
      lhs.add(std::norm(s.value()));
    }
  }
  CompensatedSum weight;
  for (u64 n = 1; n <= N; ++n) weight.add(std::norm(a[n - 1]) * std::pow(static_cast<double>(n), -2.0 * sigma));
  RatioRecord r;
  r.params = params_str({{"q", double(q)}, {"N", double(N)}, {"sigma", sigma}, {"T", T}});
  r.lhs = lhs.value();
  r.rhs = std::log(2.0 * static_cast<double>(N)) * (static_cast<double>(N) + static_cast<double>(q) * T) * weight.value();
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
  return r;
}

RatioReport dirichlet_meanvalue_random(u64 q, u64 N, std::size_t trials, u64 seed) {
  Rng rng(seed);
  RatioReport rep{"dirichlet_meanvalue", {}};
  const std::size_t M = euler_phi(q);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<cplx> a(N);
    for (auto& v : a) v = rng.disc();
    const double sigma = rng.uniform(0.0, 1.0);
    const double T = rng.uniform(1.0, 50.0);
    std::vector<std::vector<cplx>> rhoss(M);
    for (auto& set : rhoss)
      for (double g = -T + rng.uniform(); g <= T; g += 1.0 + 2.0 * rng.uniform())
        set.emplace_back(sigma + rng.uniform(), g);
    auto r = dirichlet_meanvalue_check(q, a, rhoss, sigma, T);
    r.seed = seed;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

std::vector<GrowthFit> lemma_f_growth(u64 Dmax, std::size_t grid_points) {
  if (Dmax < 100) throw DomainError("lemma_f_growth: Dmax must be at least 100");
  std::vector<u64> spf(Dmax + 1, 0);
  for (u64 i = 2; i <= Dmax; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= Dmax; j += i)
        if (spf[j] == 0) spf[j] = i;

  std::vector<GrowthFit> fits(6);
  const char* names[] = {"d d*^1/2 / (d0^1/2 d'^3/2)", "d d*^1/2 / (d0 d'^3/2)", "d / (d^4)_0",
                         "1 / d'^1/2",                 "d^1/3 / (d0^2/3 d')",    "d^1/3 d* / (d0^2/3 d'^3)"};
  const double exps[] = {0.5, 0.25, 0.0, 0.5, 0.0, 0.0};
  for (int i = 0; i < 6; ++i) {
    fits[i].name = names[i];
    fits[i].exponent = exps[i];
  }

  std::vector<u64> grid;
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double x = 100.0 * std::pow(static_cast<double>(Dmax) / 100.0, static_cast<double>(j) / (grid_points - 1));
    const auto g = std::min<u64>(Dmax, static_cast<u64>(std::llround(x)));
    if (grid.empty() || g > grid.back()) grid.push_back(g);
  }

  CompensatedSum acc[6];
  std::size_t next = 0;
  for (u64 d = 1; d <= Dmax; ++d) {
    double dp = 1, d0 = 1, d40 = 1;
    for (u64 n = d; n > 1;) {
      const u64 p = spf[n];
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      dp *= std::pow(double(p), (e + 1) / 2);
      d0 *= std::pow(double(p), (e + 2) / 3);
      d40 *= std::pow(double(p), (4 * e + 2) / 3);
    }
    const double dd = static_cast<double>(d);
    const double ds = dp * dp / dd;
    acc[0].add(dd * std::sqrt(ds) / (std::sqrt(d0) * std::pow(dp, 1.5)));
    acc[1].add(dd * std::sqrt(ds) / (d0 * std::pow(dp, 1.5)));
    acc[2].add(dd / d40);
    acc[3].add(1.0 / std::sqrt(dp));
    acc[4].add(std::cbrt(dd) / (std::pow(d0, 2.0 / 3.0) * dp));
    acc[5].add(std::cbrt(dd) * ds / (std::pow(d0, 2.0 / 3.0) * dp * dp * dp));
    if (next < grid.size() && d == grid[next]) {
      for (int i = 0; i < 6; ++i) {
        fits[i].D.push_back(dd);
        fits[i].sums.push_back(acc[i].value());
      }
      ++next;
    }
  }
  for (auto& f : fits) {
    const std::size_t n = f.D.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = std::log(f.D[j]), y = std::log(f.sums[j]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.local_slope = std::log(f.sums[n - 1] / f.sums[n - 2]) / std::log(f.D[n - 1] / f.D[n - 2]);
  }
  return fits;
}

RatioReport expsum_ratio(u64 N, u64 P, u64 d0, u64 k, std::size_t trials, u64 seed) {
  if (N == 0 || P == 0 || d0 == 0 || k == 0) throw DomainError("expsum_ratio: parameters must be positive");
  Rng rng(seed);
  RatioReport rep{"expsum", {}};
  const auto primes = primes_between(P, 2 * P);
  const double bound = std::sqrt(double(N)) * double(P) +
                       std::pow(double(N), 0.25) * std::pow(double(P), 1.25) * std::sqrt(double(k)) *
                           std::pow(double(d0), -0.75);
  const u128 d3 = static_cast<u128>(d0) * d0 * d0;
  for (std::size_t t = 0; t < std::max<std::size_t>(trials, 1); ++t) {
    std::vector<cplx> c(N);
    for (auto& v : c) v = t == 0 ? cplx(1.0, 0.0) : rng.unit();
    CompensatedSum R;
    for (const u64 p : primes) {
      const u128 mod = static_cast<u128>(p) * k * k;
      ComplexCompensatedSum s;
      for (u64 n = N; n < 2 * N; ++n) {
        const u128 num = (static_cast<u128>(n) * n % mod) * n % mod * (d3 % mod) % mod;
        s.add(c[n - N] * expi2pi(static_cast<double>(num) / static_cast<double>(mod)));
      }
      R.add(std::abs(s.value()));
    }
    RatioRecord r;
    r.params = params_str({{"N", double(N)}, {"P", double(P)}, {"d0", double(d0)}, {"k", double(k)}, {"trial", double(t)}});
    r.seed = seed;
    r.lhs = R.value();
    r.rhs = bound;
    r.ratio = r.lhs / r.rhs;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

RatioReport weyl_ratio(u64 H, u64 P, u64 k, std::size_t trials, u64 seed) {
  if (H == 0 || P == 0 || k == 0) throw DomainError("weyl_ratio: parameters must be positive");
  Rng rng(seed);
  RatioReport rep{"weyl", {}};
  const auto primes = primes_between(P, 2 * P);
  const double h = double(H), pp = double(P);
  const double bound = std::pow(h, 0.75) * pp + h * std::pow(pp, 0.75) + std::pow(h, 0.25) * std::pow(pp, 1.25);
  for (std::size_t t = 0; t < std::max<std::size_t>(trials, 1); ++t) {
    const u64 kk = t == 0 ? k : 1 + rng.below(1000);
    CompensatedSum lhs;
    for (const u64 p : primes) {
      if (kk % p == 0) continue;
      const u64 kinv = mod_inverse(static_cast<i64>(kk), p);
      const u64 c = mul_mod(kinv, kinv, p);
      ComplexCompensatedSum s;
      for (u64 x = H; x < 2 * H; ++x) {
        const u64 xr = x % p;
        s.add(unit_root(static_cast<i64>(mul_mod(mul_mod(mul_mod(xr, xr, p), xr, p), c, p)), p));
      }
      lhs.add(std::abs(s.value()));
    }
    RatioRecord r;
    r.params = params_str({{"H", h}, {"P", pp}, {"k", double(kk)}, {"trial", double(t)}});
    r.seed = seed;
    r.lhs = lhs.value();
    r.rhs = bound;
    r.ratio = r.lhs / r.rhs;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

}  // namespace lowlying
