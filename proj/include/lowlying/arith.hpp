#pragma once

// Integer and modular arithmetic used throughout: primes, factorization,
// quadratic symbols, inverses, the mod-4 character psi_4 and the
// d' / d* / d_0 arithmetic functions.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lowlying {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

std::vector<u64> sieve_primes(u64 limit);

struct PrimeFactor {
  u64 prime;
  int exponent;
  bool operator==(const PrimeFactor&) const = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimeFactor> factors;  // ascending by prime

  u64 product() const;
  int valuation(u64 p) const;
  std::vector<u64> divisors() const;  // ascending
};

/// Trial division below 10^6, Pollard–Brent rho above. Throws DomainError for n = 0.
Factorization factorize(u64 n);

bool is_prime(u64 n);

u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);
u64 euler_phi(u64 n);

/// Reduce to the least non-negative residue.
inline u64 reduce(i64 a, u64 m) {
  const i64 r = static_cast<i64>(static_cast<i128>(a) % static_cast<i128>(m));
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

/// Jacobi symbol (n/m) for odd positive m.
int jacobi(i64 n, u64 m);

/// Legendre symbol (n/p); throws DomainError unless p is an odd prime.
int legendre(i64 n, u64 p);

/// Inverse of a modulo m; throws DomainError when gcd(a, m) > 1.
u64 mod_inverse(i64 a, u64 m);

/// Sign of the quadratic Gauss sum mod an odd prime: 1 for p = 1 mod 4, i for p = 3 mod 4.
std::complex<double> psi4(u64 p);

struct DTriple {
  u64 d_prime;  // least d' with d | d'^2
  u64 d_star;   // d'^2 / d
  u64 d_zero;   // least d_0 with d | d_0^3
  bool operator==(const DTriple&) const = default;
};

DTriple d_triple(u64 d);

/// Least m with n | m^k; computed from the factorization.
u64 least_root_multiple(const Factorization& f, int k);

/// Precomputed quadratic characters mod an odd prime.
class LegendreTable {
 public:
  explicit LegendreTable(u64 p);

  u64 prime() const { return p_; }
  int operator()(u64 residue) const { return symbols_[residue]; }
  int at(i64 n) const { return symbols_[reduce(n, p_)]; }

 private:
  u64 p_;
  std::vector<signed char> symbols_;
};

/// Exact rational with positive denominator, always in lowest terms.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  static Rational make(i64 num, i64 den);
  /// Accepts "a/b", integers and finite decimals ("0.7" -> 7/10).
  static Rational parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational inverse() const;
  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const {
    return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
  }
};

}  // namespace lowlying
