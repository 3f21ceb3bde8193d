#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lowlying/errors.hpp"
#include "lowlying/frobenius.hpp"

using namespace lowlying;
namespace fs = std::filesystem;

namespace {
fs::path scratch_dir(const char* name) {
  auto d = fs::temp_directory_path() / ("lowlying_test_" + std::string(name));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}
}  // namespace

TEST_CASE("lambda examples") {
  CHECK(lambda_p(1, 1, 5) == -3);
  CHECK(lambda_p(0, 1, 7) == -4);
  CHECK(lambda_p(2, 3, 11) == -1);
  CHECK(lambda_p(0, 0, 13) == 0);
  CHECK_THROWS_AS(lambda_p(1, 1, 3), DomainError);
  // 37a in short form: a_p = 5 -> -2, 7 -> -1, 11 -> -5, 13 -> -2, 17 -> 0, 19 -> 0, 23 -> 2.
  const std::pair<u64, int> ap[] = {{5, -2}, {7, -1}, {11, -5}, {13, -2}, {17, 0}, {19, 0}, {23, 2}};
  for (const auto& [p, v] : ap) CHECK(lambda_p(-16, 16, p) == v);
}

TEST_CASE("hasse bound at good primes") {
  for (const u64 p : {5ULL, 7ULL, 31ULL, 101ULL})
    for (i64 a = 0; a < 12; ++a)
      for (i64 b = 0; b < 12; ++b) {
        const auto d = discriminant(a, b);
        if (d % static_cast<i128>(p) == 0) continue;
        CHECK(std::abs(static_cast<double>(lambda_p(a, b, p))) < 2.0 * std::sqrt(double(p)));
      }
}

TEST_CASE("lambda_p2") { CHECK(lambda_p2(1, 1, 5) == 9 - 5); }

TEST_CASE("table equals direct evaluation") {
  for (const u64 p : {5ULL, 7ULL, 13ULL, 29ULL}) {
    const auto t = lambda_table(p);
    for (u64 a = 0; a < p; ++a)
      for (u64 b = 0; b < p; ++b) REQUIRE(t(a, b) == lambda_p(static_cast<i64>(a), static_cast<i64>(b), p));
    CHECK(t.at(-1, static_cast<i64>(p) + 2) == lambda_p(-1, 2, p));
  }
  CHECK_THROWS_AS(lambda_table(3), DomainError);
  CHECK_THROWS_AS(lambda_table(101, 100), PreconditionError);
}

TEST_CASE("second moment") {
  CHECK(lambda_sq_total(5) == 100);
  CHECK(lambda_sq_total(7) == 294);
  CHECK(lambda_sq_total(11) == 1210);
  for (const u64 p : {13ULL, 97ULL}) CHECK(lambda_sq_total(lambda_table(p)) == static_cast<i64>(p * p * (p - 1)));
}

TEST_CASE("twisted complete sums") {
  const auto s = twisted_complete_sum(5, 0, 1);
  CHECK(std::abs(s.closedform - std::complex<double>(-11.18033988749895, 0)) < 1e-9);
  CHECK(std::abs(s.bruteforce - s.closedform) < 1e-9);
  for (const u64 p : {7ULL, 11ULL}) {
    const auto t = lambda_table(p);
    for (i64 h = 0; h < static_cast<i64>(p); ++h) {
      const auto z = twisted_complete_sum(t, h, 0);
      CHECK(z.closedform == std::complex<double>(0, 0));
      CHECK(std::abs(z.bruteforce) < 1e-9);
      for (i64 k = 1; k < static_cast<i64>(p); ++k) {
        const auto w = twisted_complete_sum(t, h, k);
        CHECK(std::abs(w.bruteforce - w.closedform) < 1e-9);
      }
    }
  }
}

TEST_CASE("cache file round trip and corruption") {
  const auto dir = scratch_dir("frob");
  const auto t = lambda_table(31);
  const auto path = dir / FrobCache::file_name(31);
  save_table(t, path);
  CHECK(load_table(path) == t);

  std::string bytes;
  {
    std::ifstream in(path, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto write = [&](const std::string& b) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << b;
  };
  auto flipped = bytes;
  flipped[40] ^= 0x10;
  write(flipped);
  CHECK_THROWS_AS(load_table(path), ChecksumError);
  write(bytes.substr(0, bytes.size() - 9));
  CHECK_THROWS_AS(load_table(path), ChecksumError);
  write("JUNK" + bytes.substr(4));
  CHECK_THROWS_AS(load_table(path), FormatError);

  // The cache rebuilds a corrupt entry and writes it back.
  write(flipped);
  FrobCache cache(dir, 100);
  const auto got = cache.get(31);
  REQUIRE(got);
  CHECK(*got == t);
  CHECK(load_table(path) == t);
  CHECK(cache.get(101) == nullptr);
  fs::remove_all(dir);
}

TEST_CASE("cache without a directory stays in memory") {
  FrobCache cache(std::nullopt, 50);
  const auto a = cache.get(47);
  const auto b = cache.get(47);
  CHECK(a == b);
  CHECK(cache.get(53) == nullptr);
}

TEST_CASE("curve params") {
  const auto c = CurveParams::make(1, 1);
  CHECK(c.disc == -496);
  CHECK_THROWS_AS(CurveParams::make(0, 0), DomainError);
  CHECK_THROWS_AS(CurveParams::make(-3, 2), DomainError);
}
