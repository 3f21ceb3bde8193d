#include "lowlying/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "lowlying/errors.hpp"

namespace lowlying {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = sieve_primes(kTrialLimit);
  return primes;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
  u64 x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant; n must be odd composite.
u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

std::vector<u64> sieve_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

u64 Factorization::product() const {
  u64 result = 1;
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) result *= p;
  return result;
}

int Factorization::valuation(u64 p) const {
  for (const auto& f : factors)
    if (f.prime == p) return f.exponent;
  return 0;
}

std::vector<u64> Factorization::divisors() const {
  std::vector<u64> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  Factorization result;
  result.n = n;
  u64 rest = n;
  for (u64 p : small_primes()) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (rest > 1) {
    std::vector<u64> large;
    split_large(rest, large);
    std::sort(large.begin(), large.end());
    for (u64 p : large) {
      if (!result.factors.empty() && result.factors.back().prime == p)
        ++result.factors.back().exponent;
      else
        result.factors.push_back({p, 1});
    }
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

u64 euler_phi(u64 n) {
  if (n == 0) return 0;
  u64 phi = n;
  for (const auto& f : factorize(n).factors) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

int jacobi(i64 n, u64 m) {
  if (m == 0 || (m & 1) == 0) throw DomainError("jacobi: modulus must be odd and positive");
  u64 a = reduce(n, m);
  int sign = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const u64 r = m & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, m);
    if ((a & 3) == 3 && (m & 3) == 3) sign = -sign;
    a %= m;
  }
  return m == 1 ? sign : 0;
}

int legendre(i64 n, u64 p) {
  if (p == 2 || !is_prime(p)) throw DomainError("legendre: p must be an odd prime");
  return jacobi(n, p);
}

u64 mod_inverse(i64 a, u64 m) {
  if (m == 0) throw DomainError("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  i128 r0 = static_cast<i128>(m), r1 = static_cast<i128>(reduce(a, m));
  i128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    std::tie(r0, r1) = std::pair<i128, i128>{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair<i128, i128>{s1, s0 - q * s1};
  }
  if (r0 != 1) throw DomainError("mod_inverse: argument not coprime to modulus");
  i128 inv = s0 % static_cast<i128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

std::complex<double> psi4(u64 p) {
  if (p == 2 || !is_prime(p)) throw DomainError("psi4: p must be an odd prime");
  return (p % 4 == 1) ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 1.0};
}

u64 least_root_multiple(const Factorization& f, int k) {
  u64 result = 1;
  for (const auto& [p, e] : f.factors) {
    const int need = (e + k - 1) / k;
    for (int i = 0; i < need; ++i) result *= p;
  }
  return result;
}

DTriple d_triple(u64 d) {
  const Factorization f = factorize(d);
  const u64 dp = least_root_multiple(f, 2);
  return {dp, static_cast<u64>(static_cast<u128>(dp) * dp / d), least_root_multiple(f, 3)};
}

LegendreTable::LegendreTable(u64 p) : p_(p), symbols_(p, -1) {
  if (p == 2 || !is_prime(p)) throw DomainError("LegendreTable: p must be an odd prime");
  symbols_[0] = 0;
  for (u64 x = 1; x <= p / 2; ++x) symbols_[x * x % p] = 1;
}

Rational Rational::make(i64 num, i64 den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i64 g = std::gcd(num < 0 ? -num : num, den);
  return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw DomainError("Rational: cannot parse '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) {
    i64 v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) fail();
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return make(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) fail();
    const bool negative = !whole.empty() && whole.front() == '-';
    const i64 w = (whole.empty() || whole == "-") ? 0 : parse_int(whole);
    i64 den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const i64 f = parse_int(frac);
    const i64 magnitude = (w < 0 ? -w : w) * den + f;
    return make(negative ? -magnitude : magnitude, den);
  }
  return make(parse_int(text), 1);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::operator+(const Rational& o) const {
  return make(num * o.den + o.num * den, den * o.den);
}

Rational Rational::inverse() const { return make(den, num); }

}  // namespace lowlying
