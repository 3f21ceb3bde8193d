#include "lowlying/curve_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lowlying/errors.hpp"
#include "lowlying/frobenius.hpp"

namespace lowlying {

namespace {

u64 abs_u(i64 v) { return v < 0 ? static_cast<u64>(-(v + 1)) + 1 : static_cast<u64>(v); }

int valuation(u64 n, u64 p) {
  if (n == 0) return std::numeric_limits<int>::max();
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

u64 ipow(u64 base, int e) {
  u64 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

ShortModel minimal_short_model(i64 a, i64 b) {
  if (discriminant(a, b) == 0) throw DomainError("minimal_short_model: singular curve");
  // Any prime dividing u divides the nonzero one of a, b (or their gcd).
  const u64 g = gcd(abs_u(a), abs_u(b));
  u64 u = 1;
  for (const auto& [p, e] : factorize(g).factors) {
    (void)e;
    const int k = std::min(valuation(abs_u(a), p) / 4, valuation(abs_u(b), p) / 6);
    u *= ipow(p, k);
  }
  const i64 u4 = static_cast<i64>(ipow(u, 4));
  const i64 u6 = static_cast<i64>(ipow(u, 6));
  return {a / u4, b / u6, u};
}

ReductionType reduction_type(i64 a, i64 b, u64 p) {
  if (p < 5 || !is_prime(p)) throw DomainError("reduction_type: p must be a prime >= 5");
  const i128 disc = discriminant(a, b);
  if (disc == 0) throw DomainError("reduction_type: singular curve");
  if (reduce(a, p) == 0 && reduce(b, p) == 0 && valuation(abs_u(a), p) >= 4 && valuation(abs_u(b), p) >= 6)
    throw PreconditionError("reduction_type: model not minimal at p");
  const i128 P = static_cast<i128>(p);
  if (disc % P != 0) return {ReductionKind::good, 0};
  const i128 c4 = -48 * static_cast<i128>(a);
  if (c4 % P != 0) return {ReductionKind::multiplicative, 1};
  return {ReductionKind::additive, 2};
}

double ConductorResult::log_N() const { return std::log(static_cast<double>(N)); }
double ConductorResult::log_lo() const { return std::log(static_cast<double>(N_lo)); }

ConductorResult conductor(i64 a, i64 b) {
  const ShortModel m = minimal_short_model(a, b);
  const i128 disc = discriminant(m.a, m.b);
  const i128 mag = disc < 0 ? -disc : disc;
  if (mag > static_cast<i128>(std::numeric_limits<u64>::max()))
    throw DomainError("conductor: discriminant exceeds 64 bits");

  ConductorResult r;
  for (const auto& [p, v] : factorize(static_cast<u64>(mag)).factors) {
    int f;
    if (p == 2) {
      f = std::min(v, kConductorCap2);
      r.exact = false;
    } else if (p == 3) {
      f = std::min(v, kConductorCap3);
      r.exact = false;
    } else {
      f = reduction_type(m.a, m.b, p).exponent;
    }
    if (f == 0) continue;
    r.per_prime.push_back({p, f});
    r.N *= ipow(p, f);
    if (p > 3) r.N_lo *= ipow(p, f);
  }
  return r;
}

}  // namespace lowlying
