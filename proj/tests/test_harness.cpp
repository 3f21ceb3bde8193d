#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lowlying/errors.hpp"
#include "lowlying/harness.hpp"

using namespace lowlying;

TEST_CASE("large sieve") {
  const std::vector<cplx> one{1.0};
  const auto r = large_sieve_check(1, 1, one);
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(2.0));
  CHECK(r.pass);
  // Four characters mod 5 over n = 1..4, all-ones: only the principal character survives.
  const std::vector<cplx> ones(4, 1.0);
  const auto s = large_sieve_check(5, 1, ones);
  CHECK(s.lhs == doctest::Approx(16.0));
  CHECK(s.rhs == doctest::Approx(36.0));
  const auto rnd = large_sieve_random(100);
  CHECK(rnd.failures == 0);
  CHECK(rnd.worst_margin <= 1.0);
}

TEST_CASE("heath-brown diagonal") {
  std::vector<cplx> a(6, 0.0);
  a[5] = 2.0;  // n0 = 6, squarefree
  CHECK(heathbrown_denominator(10, a) == doctest::Approx(16.0 * 4.0));
  const auto r = heathbrown_ratio(10, a, 1);
  CHECK(r.ratio > 0.0);
  CHECK(r.rhs == doctest::Approx(64.0));
}

TEST_CASE("gallagher spacing") {
  auto S = [](double t) { return std::polar(1.0, t); };
  auto dS = [](double t) { return std::complex<double>(0.0, 1.0) * std::polar(1.0, t); };
  const std::vector<double> pts{2.0, 3.0, 4.0};
  const auto r = gallagher_spacing_check(S, dS, pts, 0.0, 10.0, 1.0);
  CHECK(r.lhs == doctest::Approx(3.0));
  CHECK(r.rhs == doctest::Approx(20.0));  // 10 / 1 + sqrt(10 * 10)
  CHECK(r.pass);
  const std::vector<double> close{2.0, 2.5};
  CHECK_THROWS_AS(gallagher_spacing_check(S, dS, close, 0.0, 10.0, 1.0), PreconditionError);
  const std::vector<double> edge{0.2};
  CHECK_THROWS_AS(gallagher_spacing_check(S, dS, edge, 0.0, 10.0, 1.0), PreconditionError);
  const auto rnd = gallagher_spacing_random(100);
  CHECK(rnd.failures == 0);
}

TEST_CASE("adaptive simpson") {
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12) == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("gallagher integral ratio") {
  std::vector<cplx> a(7, 0.0);
  a[6] = 1.5;
  for (const double T : {1.0, 4.0, 25.0}) CHECK(gallagher_integral_ratio(a, T).ratio == doctest::Approx(2.0));
  std::vector<cplx> b{0.0, 1.0, std::complex<double>(0.3, -0.4)};
  const auto r1 = gallagher_integral_ratio(b, 5.0);
  for (auto& v : b) v *= 2.0;
  CHECK(gallagher_integral_ratio(b, 5.0).ratio == doctest::Approx(r1.ratio));
  CHECK(std::isfinite(r1.ratio));
  CHECK_THROWS_AS(gallagher_integral_ratio(b, 0.5), DomainError);
}

TEST_CASE("dirichlet mean value") {
  std::vector<cplx> a(5, 0.0);
  a[2] = 1.0;  // n0 = 3
  const std::vector<std::vector<cplx>> rhos{{cplx(0.5, 0.0)}};
  const auto r = dirichlet_meanvalue_check(7, a, rhos, 0.5, 1.0);
  CHECK(r.lhs == doctest::Approx(1.0 / 3.0));
  CHECK(r.ratio == doctest::Approx(1.0 / (std::log(10.0) * 12.0)));
  const std::vector<std::vector<cplx>> bad{{cplx(0.5, 0.0), cplx(0.5, 0.5)}};
  CHECK_THROWS_AS(dirichlet_meanvalue_check(7, a, bad, 0.5, 1.0), PreconditionError);
  const auto rep = dirichlet_meanvalue_random(7, 50, 20);
  CHECK(rep.instances() == 20);
  CHECK(rep.max_ratio() >= rep.p90());
  CHECK(rep.p90() >= rep.p50());
  CHECK(rep.p50() >= 0.0);
}

TEST_CASE("reports are deterministic in the seed") {
  auto csv = [](u64 seed) {
    const std::vector<RatioReport> reps{dirichlet_meanvalue_random(7, 30, 5, seed), weyl_ratio(16, 128, 3, 3, seed)};
    std::ostringstream os;
    write_ratio_csv(os, reps);
    return os.str();
  };
  CHECK(csv(11) == csv(11));
  CHECK(csv(11) != csv(12));
  CHECK(csv(11).rfind("lemma,params,seed,lhs,rhs,ratio\n", 0) == 0);
}

TEST_CASE("growth sums") {
  const auto fits = lemma_f_growth(2000, 10);
  REQUIRE(fits.size() == 6);
  // The grid starts at D = 100.
  for (const auto& f : fits) CHECK(f.D.front() == 100.0);
  CHECK(fits[5].pass());
  CHECK_THROWS_AS(lemma_f_growth(50), DomainError);
}

TEST_CASE("exponential sum harnesses") {
  const auto e = expsum_ratio(1, 64, 1, 1, 2);
  for (const auto& r : e.records) CHECK(r.ratio <= 1.0);
  const auto w = weyl_ratio(1, 64, 5, 1);
  CHECK(w.records[0].ratio < 1.0);
  CHECK(w.records[0].lhs == doctest::Approx(13.0));  // primes in [64, 128)
  CHECK(expsum_ratio(32, 64, 1, 1, 3).instances() == 3);
}
