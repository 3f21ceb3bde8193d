#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "doctest.h"
#include "lowlying/arith.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/numeric.hpp"

using namespace lowlying;

TEST_CASE("sieve and primality agree") {
  const auto primes = sieve_primes(2000);
  CHECK(primes.size() == 303);
  std::size_t j = 0;
  for (u64 n = 0; n <= 2000; ++n) {
    const bool listed = j < primes.size() && primes[j] == n;
    CHECK(is_prime(n) == listed);
    if (listed) ++j;
  }
  CHECK(is_prime(1'000'000'007ULL));
  CHECK_FALSE(is_prime(1'000'000'007ULL * 998'244'353ULL));
}

TEST_CASE("factorize reconstructs n") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const u64 n = 1 + gen() % (1ULL << 62);
    const auto f = factorize(n);
    CHECK(f.product() == n);
    for (const auto& pf : f.factors) CHECK(is_prime(pf.prime));
  }
  CHECK(factorize(1).factors.empty());
  CHECK_THROWS_AS(factorize(0), DomainError);
  CHECK(factorize(360).divisors().size() == 24);
}

TEST_CASE("legendre and jacobi") {
  for (const u64 p : {5ULL, 7ULL, 11ULL, 101ULL}) {
    for (i64 m = -20; m <= 20; ++m) {
      CHECK(legendre(m, p) == legendre(m + static_cast<i64>(p), p));
      for (i64 n = 1; n <= 10; ++n) CHECK(legendre(m * n, p) == legendre(m, p) * legendre(n, p));
      // Euler's criterion as the oracle.
      const u64 r = reduce(m, p);
      const int euler = r == 0 ? 0 : (pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1);
      CHECK(legendre(m, p) == euler);
    }
  }
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(7, 15) == -1);
  CHECK_THROWS_AS(legendre(3, 9), DomainError);
  const LegendreTable t(13);
  for (i64 n = -30; n < 30; ++n) CHECK(t.at(n) == legendre(n, 13));
}

TEST_CASE("psi4") {
  CHECK(psi4(13) == std::complex<double>(1, 0));
  CHECK(psi4(7) == std::complex<double>(0, 1));
  CHECK_THROWS_AS(psi4(2), DomainError);
}

TEST_CASE("mod inverse") {
  for (u64 m : {7ULL, 36ULL, 1000003ULL})
    for (i64 a = -50; a < 50; ++a)
      if (std::gcd(static_cast<u64>(std::abs(a)), m) == 1) CHECK(mul_mod(reduce(a, m), mod_inverse(a, m), m) == 1 % m);
  CHECK_THROWS_AS(mod_inverse(6, 9), DomainError);
}

TEST_CASE("d_triple matches brute force") {
  CHECK(d_triple(12) == DTriple{6, 3, 6});
  CHECK(d_triple(1) == DTriple{1, 1, 1});
  CHECK(d_triple(97) == DTriple{97, 97, 97});
  for (u64 d = 1; d <= 10000; ++d) {
    u64 dp = 1, d0 = 1;
    while ((dp * dp) % d) ++dp;
    while ((d0 * d0 * d0) % d) ++d0;
    const auto t = d_triple(d);
    REQUIRE(t.d_prime == dp);
    REQUIRE(t.d_zero == d0);
    REQUIRE(t.d_star * d == dp * dp);
  }
}

TEST_CASE("rational") {
  CHECK(Rational::parse("0.7") == Rational{7, 10});
  CHECK(Rational::parse("14/20") == Rational{7, 10});
  CHECK(Rational::parse("2") == Rational{2, 1});
  CHECK(Rational::make(1, 2) + Rational::make(10, 7) == Rational{27, 14});
  CHECK(Rational{7, 10}.inverse() == Rational{10, 7});
  CHECK(Rational::parse("-3/6").str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("x"), DomainError);
  CHECK_THROWS_AS(Rational::make(1, 0), DomainError);
}

TEST_CASE("crc64 check value") {
  const std::string s = "123456789";
  CHECK(crc64({reinterpret_cast<const unsigned char*>(s.data()), s.size()}) == 0x995DC9BBDF1939FAULL);
}

TEST_CASE("compensated and ordered sums") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
  const std::vector<double> v{1e100, 1.0, -1e100};
  CHECK(ordered_sum(v) == 1.0);
}

TEST_CASE("unit roots hit the axes exactly") {
  CHECK(unit_root(1, 4) == std::complex<double>(0, 1));
  CHECK(unit_root(-1, 4) == std::complex<double>(0, -1));
  CHECK(unit_root(2, 4) == std::complex<double>(-1, 0));
  CHECK(std::abs(unit_root(1, 6) - std::polar(1.0, M_PI / 3)) < 1e-15);
}

TEST_CASE("parallel_for with ordered reduction is thread-count independent") {
  std::vector<double> slots(1000);
  auto run = [&](unsigned threads) {
    parallel_for(slots.size(), threads, [&](std::size_t i) { slots[i] = 1.0 / (1.0 + i); });
    return ordered_sum(slots);
  };
  const double one = run(1);
  CHECK(run(4) == one);
}
