#include "lowlying/density.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <tuple>
#include <cmath>

#include "lowlying/curve_models.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::shared_ptr<const FrobTable> table_for(const FamilySpec& f, u64 p) {
  if (f.cache) return f.cache->get(p);
  if (p > f.table_cap) return nullptr;
  return std::make_shared<const FrobTable>(lambda_table(p, f.table_cap));
}

// Weights of the family grouped by residue mod p, residues ascending.
struct ResidueWeights {
  std::vector<u64> residue;
  std::vector<double> weight;
};

ResidueWeights group_by_residue(const std::vector<i64>& values, const std::vector<double>& weights, u64 p) {
  std::vector<double> acc(p, 0.0);
  std::vector<unsigned char> seen(p, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const u64 r = reduce(values[i], p);
    acc[r] += weights[i];
    seen[r] = 1;
  }
  ResidueWeights out;
  for (u64 r = 0; r < p; ++r)
    if (seen[r]) {
      out.residue.push_back(r);
      out.weight.push_back(acc[r]);
    }
  return out;
}

// sum_{alpha, beta} F(lambda_{alpha,beta}(p)) Wa(alpha) Wb(beta) for one prime.
template <class F>
double grouped_sum(const FamilySpec& f, const FamilyLattice& lat, u64 p, F&& transform) {
  const auto ga = group_by_residue(lat.a, lat.wa, p);
  const auto gb = group_by_residue(lat.b, lat.wb, p);
  CompensatedSum total;
  if (const auto table = table_for(f, p)) {
    for (std::size_t i = 0; i < ga.residue.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < gb.residue.size(); ++j)
        row += transform((*table)(ga.residue[i], gb.residue[j])) * gb.weight[j];
      total.add(ga.weight[i] * row);
    }
    return total.value();
  }
  // Streaming evaluation above the table cap.
  const LegendreTable leg(p);
  std::vector<u64> base(p);
  for (u64 x = 0; x < p; ++x) base[x] = mul_mod(mul_mod(x, x, p), x, p);
  std::vector<u64> cubic(p);
  for (std::size_t i = 0; i < ga.residue.size(); ++i) {
    const u64 alpha = ga.residue[i];
    for (u64 x = 0; x < p; ++x) cubic[x] = (base[x] + mul_mod(alpha, x, p)) % p;
    double row = 0.0;
    for (std::size_t j = 0; j < gb.residue.size(); ++j) {
      const u64 beta = gb.residue[j];
      long s = 0;
      for (u64 x = 0; x < p; ++x) {
        u64 v = cubic[x] + beta;
        if (v >= p) v -= p;
        s += leg(v);
      }
      row += transform(static_cast<int>(-s)) * gb.weight[j];
    }
    total.add(ga.weight[i] * row);
  }
  return total.value();
}

// Per-prime map-reduce: slots filled in any order, reduced ascending.
template <class Fn>
double reduce_over_primes(const std::vector<u64>& primes, unsigned threads, Fn&& fn) {
  std::vector<double> slots(primes.size(), 0.0);
  parallel_for(primes.size(), threads, [&](std::size_t i) { slots[i] = fn(primes[i]); });
  return ordered_sum(slots);
}

std::vector<u64> inverse_table(u64 p) {
  std::vector<u64> inv(p, 0);
  inv[1] = 1;
  for (u64 i = 2; i < p; ++i) inv[i] = (p - mul_mod(p / i, inv[p % i], p)) % p;
  return inv;
}

// Ranges of the truncated Poisson sum for one prime.
struct PoissonWindow {
  double cx, cy;
  std::size_t h_count = 0;           // h = 0 .. h_count-1
  std::vector<std::size_t> k_count;  // per h: k = 1 .. k_count[h]
};

PoissonWindow poisson_window(const FamilySpec& f, u64 p, double tol) {
  const auto& w = *f.weight;
  PoissonWindow win{f.A / static_cast<double>(p), f.B / static_cast<double>(p), 0, {}};
  const double amp = std::fabs(w.amplitude());
  const double ey1 = w.ty().envelope(win.cy);
  if (amp * w.tx().envelope(0.0) * ey1 < tol) return win;
  const double rx = w.tx().radius(tol / (amp * ey1));
  win.h_count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rx / win.cx)));
  win.k_count.resize(win.h_count);
  for (std::size_t h = 0; h < win.h_count; ++h) {
    const double ex = amp * w.tx().envelope(static_cast<double>(h) * win.cx);
    if (ex <= 0.0) continue;
    const double ry = w.ty().radius(tol / ex);
    const double n = std::ceil(ry / win.cy) - 1.0;
    win.k_count[h] = n > 0.0 ? static_cast<std::size_t>(n) : 0;
  }
  return win;
}

}  // namespace

FamilySpec FamilySpec::make(double X, Rational nu, BumpBox box) {
  if (!(X > 0.0) || !std::isfinite(X)) throw DomainError("FamilySpec: X must be positive");
  if (!(nu.num > 0)) throw DomainError("FamilySpec: nu must be positive");
  FamilySpec f;
  f.X = X;
  f.A = std::cbrt(X);
  f.B = std::sqrt(X);
  f.nu = nu;
  f.weight = bump_weight(box);
  f.phi = fejer_pair(nu.value());
  return f;
}

FamilySpec FamilySpec::with_weight_scale(double c) const {
  FamilySpec g = *this;
  g.weight = bump_weight(weight->box(), weight->amplitude() * c, weight->tx().nodes());
  return g;
}

FamilyLattice family_lattice(const FamilySpec& f) {
  const auto& w = *f.weight;
  const auto& box = w.box();
  FamilyLattice lat;
  for (auto a = static_cast<i64>(std::floor(box.x0 * f.A)); a <= static_cast<i64>(std::ceil(box.x1 * f.A)); ++a) {
    const double v = w.wx(static_cast<double>(a) / f.A);
    if (v != 0.0) {
      lat.a.push_back(a);
      lat.wa.push_back(v);
    }
  }
  for (auto b = static_cast<i64>(std::floor(box.y0 * f.B)); b <= static_cast<i64>(std::ceil(box.y1 * f.B)); ++b) {
    const double v = w.wy(static_cast<double>(b) / f.B);
    if (v != 0.0) {
      lat.b.push_back(b);
      lat.wb.push_back(v);
    }
  }
  return lat;
}

std::vector<u64> support_primes(const FamilySpec& f, double c) {
  const double limit = std::pow(f.X, f.phi.nu / c);
  std::vector<u64> out;
  for (const u64 p : sieve_primes(static_cast<u64>(std::ceil(limit)) + 1)) {
    if (p <= 3) continue;
    if (f.phi.phihat(c * std::log(static_cast<double>(p)) / f.log_X()) != 0.0) out.push_back(p);
  }
  return out;
}

double w_total(const FamilySpec& f) {
  const auto lat = family_lattice(f);
  if (lat.curves() == 0)
    throw EmptyFamilyError("w_total: no lattice point in the weight box at X = " + std::to_string(f.X));
  return ordered_sum(lat.wa) * ordered_sum(lat.wb);
}

double prime_weight(const FamilySpec& f, u64 p) {
  const double lp = std::log(static_cast<double>(p));
  return 2.0 * lp / (std::pow(static_cast<double>(p), 1.5) * f.log_X()) * f.phi.phihat(lp / f.log_X());
}

double p1_direct(const FamilySpec& f) {
  const auto lat = family_lattice(f);
  const double L = f.log_X();
  return reduce_over_primes(support_primes(f, 1.0), f.threads, [&](u64 p) {
    const double lp = std::log(static_cast<double>(p));
    const double weight = f.phi.phihat(lp / L) * 2.0 * lp / (static_cast<double>(p) * L);
    return weight * grouped_sum(f, lat, p, [](int l) { return static_cast<double>(l); });
  });
}

double p2_direct(const FamilySpec& f) {
  const auto lat = family_lattice(f);
  const double L = f.log_X();
  return reduce_over_primes(support_primes(f, 2.0), f.threads, [&](u64 p) {
    const double lp = std::log(static_cast<double>(p));
    const double pd = static_cast<double>(p);
    const double weight = f.phi.phihat(2.0 * lp / L) * 2.0 * lp / (pd * pd * L);
    return weight * grouped_sum(f, lat, p, [pd](int l) { return static_cast<double>(l) * l - pd; });
  });
}

double p1_poisson(const FamilySpec& f, double tail_tol) {
  if (!(tail_tol > 0.0) || tail_tol > 1e-6)
    throw DiagnosticError("p1_poisson: tail_tol must lie in (0, 1e-6] to certify the truncation");
  const auto& w = *f.weight;
  const double L = f.log_X();
  const double scale = -f.A * f.B / L;
  return reduce_over_primes(support_primes(f, 1.0), f.threads, [&](u64 p) {
    const auto win = poisson_window(f, p, tail_tol);
    if (win.h_count == 0) return 0.0;
    const std::size_t k_max = win.k_count[0];

    std::vector<std::complex<double>> wx, wy;
    w.tx().along(win.cx, win.h_count, wx);
    w.ty().along(win.cy, k_max + 1, wy);
    // Fold k and -k: what_y(v) + (-1/p) conj(what_y(v)), then multiply by psi_4(p).
    const bool one_mod_four = p % 4 == 1;
    std::vector<double> yk(k_max + 1, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k) yk[k] = one_mod_four ? 2.0 * wy[k].real() : -2.0 * wy[k].imag();

    const LegendreTable leg(p);
    const auto inv = inverse_table(p);
    std::vector<u64> invsq(p, 0), cube(p, 0);
    for (u64 r = 1; r < p; ++r) {
      invsq[r] = mul_mod(inv[r], inv[r], p);
      cube[r] = mul_mod(mul_mod(r, r, p), r, p);
    }
    std::vector<double> cr(p), ci(p);  // e(-r/p)
    for (u64 r = 0; r < p; ++r) {
      const auto z = unit_root(-static_cast<i64>(r), p);
      cr[r] = z.real();
      ci[r] = z.imag();
    }

    const double amp = w.amplitude();
    CompensatedSum total;
    for (std::size_t h = 0; h < win.h_count; ++h) {
      const std::complex<double> x = amp * wx[h];
      const u64 h3 = cube[h % p];
      double row = 0.0;
      for (std::size_t k = 1; k <= win.k_count[h]; ++k) {
        const u64 kr = k % p;
        if (kr == 0) continue;
        const u64 theta = mul_mod(h3, invsq[kr], p);
        // h and -h folded: 2 Re(e(-theta/p) what_x); h = 0 appears once.
        const double xv = h == 0 ? x.real() : 2.0 * (cr[theta] * x.real() - ci[theta] * x.imag());
        row += leg(kr) * xv * yk[k];
      }
      total.add(row);
    }
    const double lp = std::log(static_cast<double>(p));
    return scale * 2.0 * lp / std::pow(static_cast<double>(p), 1.5) * f.phi.phihat(lp / L) * total.value();
  });
}

u64 poisson_term_count(const FamilySpec& f, double tail_tol) {
  u64 count = 0;
  for (const u64 p : support_primes(f, 1.0)) {
    const auto win = poisson_window(f, p, tail_tol);
    for (const auto k : win.k_count) count += k - k / p;
  }
  return count;
}

u64 direct_term_count(const FamilySpec& f) {
  const auto curves = static_cast<u64>(family_lattice(f).curves());
  u64 count = 0;
  for (const u64 p : support_primes(f, 1.0)) count += curves * p;
  return count;
}

ConductorTerm conductor_term(const FamilySpec& f) {
  const auto lat = family_lattice(f);
  const double W = w_total(f);
  struct Slot {
    double hi = 0.0, lo = 0.0;
    std::size_t skipped = 0;
  };
  std::vector<Slot> slots(lat.a.size());
  parallel_for(lat.a.size(), f.threads, [&](std::size_t i) {
    CompensatedSum hi, lo;
    for (std::size_t j = 0; j < lat.b.size(); ++j) {
      if (discriminant(lat.a[i], lat.b[j]) == 0) {
        ++slots[i].skipped;
        continue;
      }
      const auto c = conductor(lat.a[i], lat.b[j]);
      const double wt = lat.wa[i] * lat.wb[j];
      hi.add(c.log_N() * wt);
      lo.add(c.log_lo() * wt);
    }
    slots[i].hi = hi.value();
    slots[i].lo = lo.value();
  });
  CompensatedSum hi, lo;
  ConductorTerm out;
  for (const auto& s : slots) {
    hi.add(s.hi);
    lo.add(s.lo);
    out.skipped += s.skipped;
  }
  const double norm = W * f.log_X();
  out.value = out.hi = hi.value() / norm;
  out.lo = lo.value() / norm;
  out.curves = lat.curves() - out.skipped;
  return out;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::poisson: return "poisson";
    default: return "both";
  }
}

Method parse_method(const std::string& s) {
  if (s == "direct") return Method::direct;
  if (s == "poisson") return Method::poisson;
  if (s == "both") return Method::both;
  throw DomainError("unknown method '" + s + "' (expected direct, poisson or both)");
}

std::optional<double> DensityReport::dual_gap() const {
  if (P1_direct && P1_poisson) return std::fabs(*P1_direct - *P1_poisson);
  return std::nullopt;
}

Rational rank_bound(Rational nu) { return Rational::make(1, 2) + nu.inverse(); }

DensityReport density_report(const FamilySpec& f, Method method, double tail_tol) {
  DensityReport r;
  r.X = f.X;
  r.nu = f.nu;
  r.method = method;
  r.rank_bound = rank_bound(f.nu);

  auto t0 = Clock::now();
  r.W = w_total(f);
  r.AB_mass = f.A * f.B * f.weight->mass();
  r.seconds["W"] = seconds_since(t0);

  if (method != Method::poisson) {
    t0 = Clock::now();
    r.P1_direct = p1_direct(f);
    r.seconds["P1_direct"] = seconds_since(t0);
    r.direct_terms = direct_term_count(f);
  }
  if (method != Method::direct) {
    t0 = Clock::now();
    r.P1_poisson = p1_poisson(f, tail_tol);
    r.seconds["P1_poisson"] = seconds_since(t0);
    r.poisson_terms = poisson_term_count(f, tail_tol);
  }
  r.P1 = r.P1_direct ? *r.P1_direct : *r.P1_poisson;

  t0 = Clock::now();
  r.P2 = p2_direct(f);
  r.seconds["P2"] = seconds_since(t0);

  t0 = Clock::now();
  r.conductor = conductor_term(f);
  r.seconds["conductor"] = seconds_since(t0);

  const double phihat0 = f.phi.phihat(0.0);
  const double phi0 = f.phi.phi(0.0);
  r.predicted = phihat0 + phi0 / 2.0;
  r.assembled = phihat0 * r.conductor.value + phi0 / 2.0 - (r.P1 + r.P2) / r.W;
  return r;
}

double dyadic_bump(double t) { return bump_profile(t - 1.0); }

namespace {

std::vector<u64> primes_in_window(double P) {
  std::vector<u64> out;
  for (const u64 p : sieve_primes(static_cast<u64>(std::ceil(2.0 * P)) + 1))
    if (p > 3 && static_cast<double>(p) > P && static_cast<double>(p) < 2.0 * P) out.push_back(p);
  return out;
}

std::vector<u64> integers_in_window(double lo, double hi) {
  std::vector<u64> out;
  for (auto n = static_cast<u64>(std::max(1.0, std::floor(lo))); static_cast<double>(n) <= hi; ++n)
    if (static_cast<double>(n) > lo && static_cast<double>(n) < hi) out.push_back(n);
  return out;
}

// Q(d, k, chi) with the transform values supplied by `what(n, k, p)` where n = h d_0.
template <class What>
std::complex<double> q_sum(u64 d, u64 k, const DirichletCharacter& chi, double H, double K, double P,
                           const FamilySpec& f, const Dyadic& g, What&& what) {
  const u64 d0 = d_triple(d).d_zero;
  const double gk = g(static_cast<double>(k) / K);
  if (gk == 0.0) return 0.0;
  ComplexCompensatedSum sum;
  for (const u64 p : primes_in_window(P)) {
    const int kp = legendre(static_cast<i64>(k), p);
    if (kp == 0) continue;
    const auto chip = chi(static_cast<i64>(p));
    if (chip == 0.0) continue;
    const double gp = g(static_cast<double>(p) / P);
    const auto pre = psi4(p) * chip * static_cast<double>(kp) * gk * gp * prime_weight(f, p);
    for (const u64 h : integers_in_window(H / static_cast<double>(d0), 2.0 * H / static_cast<double>(d0))) {
      const auto ch = chi(static_cast<i64>(h));
      if (ch == 0.0) continue;
      const auto cc = std::conj(ch);
      const double n = static_cast<double>(h * d0);
      const double gh = g(n / H);
      if (gh == 0.0) continue;
      const double arg = -(n * n * n) / (static_cast<double>(p) * static_cast<double>(k) * static_cast<double>(k));
      sum.add(pre * cc * cc * cc * expi2pi(arg) * gh * what(h * d0, k, p));
    }
  }
  return sum.value();
}

}  // namespace

std::complex<double> s_hkp_direct(double H, double K, double P, const FamilySpec& f, const Dyadic& g) {
  ComplexCompensatedSum sum;
  for (const u64 p : primes_in_window(P)) {
    const double gp = g(static_cast<double>(p) / P);
    const auto pre = psi4(p) * gp * prime_weight(f, p);
    for (const u64 k : integers_in_window(K, 2.0 * K)) {
      const int kp = legendre(static_cast<i64>(k), p);
      if (kp == 0) continue;
      const double gk = g(static_cast<double>(k) / K);
      const u64 kinv = mod_inverse(static_cast<i64>(k), p);
      const u64 kinv2 = mul_mod(kinv, kinv, p);
      for (const u64 h : integers_in_window(H, 2.0 * H)) {
        const double gh = g(static_cast<double>(h) / H);
        const u64 hr = h % p;
        const u64 theta = mul_mod(mul_mod(mul_mod(hr, hr, p), hr, p), kinv2, p);
        const auto wv = f.weight->what(static_cast<double>(h) * f.A / static_cast<double>(p),
                                       static_cast<double>(k) * f.B / static_cast<double>(p));
        sum.add(pre * static_cast<double>(kp) * gk * gh * unit_root(-static_cast<i64>(theta), p) * wv);
      }
    }
  }
  return sum.value();
}

std::complex<double> q_dk_chi(u64 d, u64 k, const DirichletCharacter& chi, double H, double K, double P,
                              const FamilySpec& f, const Dyadic& g) {
  if (d == 0 || k == 0 || (k * k) % d != 0) throw DomainError("q_dk_chi: d must divide k^2");
  if (chi.modulus() != k * k / d) throw DomainError("q_dk_chi: character modulus must be k^2/d");
  return q_sum(d, k, chi, H, K, P, f, g, [&](u64 n, u64 kk, u64 p) {
    return f.weight->what(static_cast<double>(n) * f.A / static_cast<double>(p),
                          static_cast<double>(kk) * f.B / static_cast<double>(p));
  });
}

ExpansionCheck verify_char_expansion(double H, double K, double P, const FamilySpec& f, const Dyadic& g) {
  const auto lhs = s_hkp_direct(H, K, P, f, g);

  std::map<std::tuple<u64, u64, u64>, std::complex<double>> memo;
  auto what = [&](u64 n, u64 k, u64 p) {
    const auto key = std::make_tuple(n, k, p);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto v = f.weight->what(static_cast<double>(n) * f.A / static_cast<double>(p),
                                  static_cast<double>(k) * f.B / static_cast<double>(p));
    memo.emplace(key, v);
    return v;
  };

  ComplexCompensatedSum rhs;
  for (const u64 k : integers_in_window(K, 2.0 * K)) {
    const u64 k2 = k * k;
    for (const u64 d : factorize(k2).divisors()) {
      const u64 m = k2 / d;
      const u64 d0 = d_triple(d).d_zero;
      const auto shift = static_cast<i64>(d0 * d0 * d0 / d);
      const double inv_phi = 1.0 / static_cast<double>(euler_phi(m));
      for (const auto& chi : enumerate_characters(m)) {
        const auto c = std::conj(chi(shift));
        if (c == 0.0) continue;
        const auto q = q_sum(d, k, chi, H, K, P, f, g, what);
        if (q == 0.0) continue;
        rhs.add(inv_phi * gauss_sum(chi, 1) * c * q);
      }
    }
  }
  const auto r = rhs.value();
  return {lhs, r, std::abs(lhs - r)};
}

}  // namespace lowlying
