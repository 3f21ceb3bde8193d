#include <cmath>
#include <vector>

#include "doctest.h"
#include "lowlying/analysis.hpp"
#include "lowlying/errors.hpp"

using namespace lowlying;

TEST_CASE("fejer pair values") {
  const auto f = fejer_pair(0.7);
  CHECK(f.phi(0.0) == doctest::Approx(0.7));
  CHECK(f.phihat(0.0) == 1.0);
  CHECK(f.phihat(0.7) == 0.0);
  CHECK(f.phihat(0.35) == doctest::Approx(0.5));
  CHECK(f.phi(1.0 / 0.7) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(fejer_pair(0.0), DomainError);
}

TEST_CASE("fejer pair is a Fourier pair") {
  std::vector<double> grid;
  for (int i = -10; i <= 10; ++i) grid.push_back(0.1 * i);
  CHECK(verify_fourier_pair(fejer_pair(0.7), grid) < 1e-8);
  CHECK(verify_fourier_pair(fejer_pair(0.5), grid) < 1e-8);
  CHECK(verify_fourier_pair(scaled(fejer_pair(0.7), 3.0), grid) < 3e-8);
}

TEST_CASE("a wrong pair is caught") {
  auto bad = fejer_pair(0.7);
  bad.phihat = [](double y) { return std::max(0.0, 1.0 - std::fabs(y) / 0.6); };
  const std::vector<double> grid{0.3};
  CHECK(verify_fourier_pair(bad, grid) > 1e-2);
}

TEST_CASE("bump transform against high-precision quadrature") {
  const BumpTransform1D t(0.5, 1.0);
  // int_0^1 exp(-1/(t(1-t))) dt and the transform at v = 3, from 30-digit quadrature.
  CHECK(std::abs(t(0.0) - 0.5 * 0.00702985840660965623924) < 1e-16);
  CHECK(std::abs(t(3.0) - std::complex<double>(0.0, -0.00137907741591676880)) < 1e-15);
}

TEST_CASE("recurrence matches direct evaluation") {
  const BumpTransform1D t(0.5, 1.0);
  std::vector<std::complex<double>> out;
  t.along(0.37, 300, out);
  for (std::size_t h = 0; h < out.size(); h += 7) CHECK(std::abs(out[h] - t(0.37 * h)) < 1e-15);
}

TEST_CASE("envelope bounds the transform and radius is consistent") {
  const BumpTransform1D t(0.5, 1.0);
  for (double v = 0.0; v < 150.0; v += 0.173) CHECK(std::abs(t(v)) <= t.envelope(v));
  const double r = t.radius(1e-12);
  CHECK(t.envelope(r) < 1e-12);
  CHECK(t.envelope(r - 0.1) >= 1e-12);
  CHECK_THROWS_AS(t.radius(1e-30), DiagnosticError);
  CHECK_THROWS_AS(BumpTransform1D(1.0, 1.0), DomainError);
}

TEST_CASE("smooth weight") {
  const auto w = bump_weight({0.5, 1.0, 0.5, 1.0}, 2.0);
  CHECK((*w)(0.75, 0.75) == doctest::Approx(2.0 * std::exp(-8.0)));
  CHECK((*w)(0.5, 0.75) == 0.0);
  const auto z = w->what(0.25, 0.5);
  CHECK(std::abs(z - 2.0 * w->tx()(0.25) * w->ty()(0.5)) < 1e-18);
  CHECK(w->mass() == doctest::Approx(2.0 * 0.25 * 0.00702985840660965 * 0.00702985840660965));
  CHECK_THROWS_AS(bump_weight({1.0, 0.5, 0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(bump_weight({0.0, 0.5, 0.5, 1.0}), DomainError);
}

TEST_CASE("poisson summation in progressions") {
  const auto g = gaussian_schwartz();
  const auto r = poisson_mod_l_check(g, 7, 3, 50.0);
  CHECK(r.error < 1e-12 * (1.0 + std::fabs(r.lhs)));
  // l = 1 is the plain Poisson formula.
  const auto one = poisson_mod_l_check(g, 1, 0, 1.0);
  CHECK(one.error < 1e-14);
  const auto b = bump_schwartz(0.5, 1.0);
  for (u64 l : {5ULL, 11ULL, 30ULL}) {
    const auto s = poisson_mod_l_check(b, l, 4, 300.0);
    CHECK(s.error < 1e-12 * (1.0 + std::fabs(s.lhs)));
  }
  CHECK_THROWS_AS(poisson_mod_l_check(g, 0, 0, 1.0), DomainError);
}
