#include "lowlying/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowlying/errors.hpp"
#include "lowlying/numeric.hpp"

namespace lowlying {

namespace {

void require_large_prime(u64 p, const char* where) {
  if (p <= 3 || !is_prime(p))
    throw DomainError(std::string(where) + ": p must be a prime > 3, got " + std::to_string(p));
}

// Row alpha of the table by direct summation: out[beta] = -sum_x ((x^3 + alpha x + beta)/p).
void direct_row(const LegendreTable& leg, u64 alpha, std::int16_t* out) {
  const u64 p = leg.prime();
  std::vector<u64> cubic(p);
  for (u64 x = 0; x < p; ++x) cubic[x] = (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(alpha, x, p)) % p;
  for (u64 beta = 0; beta < p; ++beta) {
    int s = 0;
    for (u64 x = 0; x < p; ++x) {
      u64 v = cubic[x] + beta;
      if (v >= p) v -= p;
      s += leg(v);
    }
    out[beta] = static_cast<std::int16_t>(-s);
  }
}

}  // namespace

i128 discriminant(i64 a, i64 b) {
  const i128 A = a, B = b;
  return -16 * (4 * A * A * A + 27 * B * B);
}

CurveParams CurveParams::make(i64 a, i64 b) {
  // |a| < 2^18 and |b| < 2^26 keep the discriminant inside 63 bits.
  if (a <= -(i64{1} << 18) || a >= (i64{1} << 18) || b <= -(i64{1} << 26) || b >= (i64{1} << 26))
    throw DomainError("CurveParams: coefficients too large");
  const i128 d = discriminant(a, b);
  if (d == 0) throw DomainError("CurveParams: singular curve");
  return {a, b, static_cast<i64>(d)};
}

i64 lambda_p(i64 a, i64 b, const LegendreTable& leg) {
  const u64 p = leg.prime();
  const u64 ar = reduce(a, p), br = reduce(b, p);
  i64 s = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 v = (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(ar, x, p) + br) % p;
    s += leg(v);
  }
  return -s;
}

i64 lambda_p(i64 a, i64 b, u64 p) {
  require_large_prime(p, "lambda_p");
  return lambda_p(a, b, LegendreTable(p));
}

i64 lambda_p2(i64 a, i64 b, u64 p) {
  const i64 l = lambda_p(a, b, p);
  return l * l - static_cast<i64>(p);
}

FrobTable::FrobTable(u64 p, std::vector<std::int16_t> values) : p_(p), values_(std::move(values)) {
  if (values_.size() != p * p) throw PreconditionError("FrobTable: expected p^2 entries");
}

FrobTable lambda_table(u64 p, u64 cap) {
  require_large_prime(p, "lambda_table");
  if (p > cap)
    throw PreconditionError("lambda_table: p = " + std::to_string(p) + " exceeds table cap " +
                            std::to_string(cap) + "; use streaming evaluation");
  const LegendreTable leg(p);
  u64 g = 2;
  while (leg(g) != -1) ++g;

  // base[0] = alpha 1, base[1] = alpha g.
  std::vector<std::int16_t> base(2 * p);
  direct_row(leg, 1, base.data());
  direct_row(leg, g, base.data() + p);

  std::vector<std::int16_t> values(p * p);
  direct_row(leg, 0, values.data());

  std::vector<u64> root(p, 0);  // root[d^2] = d
  for (u64 d = 1; d < p; ++d) root[mul_mod(d, d, p)] = d;
  const u64 ginv = mod_inverse(static_cast<i64>(g), p);

  // lambda_{d^2 a0, d^3 beta} = (d/p) lambda_{a0, beta}
  for (u64 alpha = 1; alpha < p; ++alpha) {
    const bool square = leg(alpha) == 1;
    const u64 d = square ? root[alpha] : root[mul_mod(alpha, ginv, p)];
    const std::int16_t* src = base.data() + (square ? 0 : p);
    const int sign = leg(d);
    const u64 dcube_inv = mod_inverse(static_cast<i64>(mul_mod(mul_mod(d, d, p), d, p)), p);
    std::int16_t* row = values.data() + alpha * p;
    u64 beta0 = 0;
    for (u64 beta = 0; beta < p; ++beta) {
      row[beta] = static_cast<std::int16_t>(sign * src[beta0]);
      beta0 += dcube_inv;
      if (beta0 >= p) beta0 -= p;
    }
  }
  return FrobTable(p, std::move(values));
}

TwistedSum twisted_complete_sum(const FrobTable& table, i64 h, i64 k) {
  const u64 p = table.prime();
  std::vector<std::complex<double>> roots(p);
  for (u64 r = 0; r < p; ++r) roots[r] = unit_root(static_cast<i64>(r), p);
  const u64 hr = reduce(h, p), kr = reduce(k, p);

  ComplexCompensatedSum brute;
  for (u64 alpha = 0; alpha < p; ++alpha) {
    const u64 ha = mul_mod(hr, alpha, p);
    for (u64 beta = 0; beta < p; ++beta) {
      const int l = table(alpha, beta);
      if (l != 0) brute.add(static_cast<double>(l) * roots[(ha + mul_mod(kr, beta, p)) % p]);
    }
  }

  std::complex<double> closed{0.0, 0.0};
  if (kr != 0) {
    const u64 kinv = mod_inverse(static_cast<i64>(kr), p);
    const u64 phase = mul_mod(mul_mod(mul_mod(hr, hr, p), hr, p), mul_mod(kinv, kinv, p), p);
    const double scale = -legendre(static_cast<i64>(kr), p) * std::pow(static_cast<double>(p), 1.5);
    closed = scale * psi4(p) * unit_root(-static_cast<i64>(phase), p);
  }
  return {brute.value(), closed};
}

TwistedSum twisted_complete_sum(u64 p, i64 h, i64 k) {
  return twisted_complete_sum(lambda_table(p, std::max(p, kDefaultTableCap)), h, k);
}

i64 lambda_sq_total(const FrobTable& table) {
  i64 s = 0;
  for (const auto v : table.values()) s += static_cast<i64>(v) * v;
  return s;
}

i64 lambda_sq_total(u64 p) {
  require_large_prime(p, "lambda_sq_total");
  // Independent of the twist shortcut used by lambda_table.
  const LegendreTable leg(p);
  std::vector<std::int16_t> row(p);
  i64 s = 0;
  for (u64 alpha = 0; alpha < p; ++alpha) {
    direct_row(leg, alpha, row.data());
    for (const auto v : row) s += static_cast<i64>(v) * v;
  }
  return s;
}

}  // namespace lowlying
