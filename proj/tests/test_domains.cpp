#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "quadbound/domains.hpp"
#include "test_util.hpp"

using namespace quadbound;
using testutil::close_abs;
using testutil::close_rel;

TEST_CASE("ellipse_params closed form") {
  const auto [a2, b2] = ellipse_params(2.0);
  CHECK(a2 == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(b2 == doctest::Approx(0.75).epsilon(1e-15));

  const auto [a3, b3] = ellipse_params(3.0);
  CHECK(close_rel(a3, 5.0 / 3.0, 1e-15));
  CHECK(close_rel(b3, 4.0 / 3.0, 1e-15));
  CHECK(close_rel(a3 * a3 - b3 * b3, 1.0, 1e-14));

  CHECK_THROWS_AS(ellipse_params(1.0), std::domain_error);
  CHECK_THROWS_AS(ellipse_params(0.5), std::domain_error);
}

TEST_CASE("ellipse invariants on a c grid") {
  for (double c : {1.01, 1.1, 1.5, 2.0, 4.0}) {
    const EllipseDomain e(c);
    CHECK(close_rel(e.a * e.a - e.b * e.b, 1.0, 1e-14));
    CHECK(close_rel(e.a + e.b, c, 1e-14));
    CHECK(e.a > 1.0);
    CHECK(e.b > 0.0);
    CHECK(e.a > e.b);
  }
  // b < 1 holds only below c = 1 + sqrt(2)
  CHECK(EllipseDomain(2.0).b < 1.0);
  CHECK(EllipseDomain(4.0).b > 1.0);
  // at large c the cancellation in a^2 - b^2 grows like c^2 eps
  const EllipseDomain wide(25.0);
  CHECK(close_abs(wide.a * wide.a - wide.b * wide.b, 1.0, 1e-12));
  CHECK(close_abs((wide.a - wide.b) * (wide.a + wide.b), 1.0, 2e-13));
  // degenerate limit: b ~ (c-1)
  const EllipseDomain thin(1.0 + 1e-9);
  CHECK(close_rel(thin.b, 1e-9, 1e-5));
}

TEST_CASE("ellipse_delta_at piecewise values") {
  const EllipseDomain e(2.0);
  CHECK(close_abs(e.delta_at(0.0), 0.75, 1e-15));
  CHECK(close_abs(e.delta_at(1.0), 0.25, 1e-15));
  CHECK(close_abs(e.delta_at(-1.0), 0.25, 1e-15));
  // both branches agree at the breakpoint x = 1/a = 0.8
  const double x = 1.0 / e.a;
  CHECK(close_abs(e.delta_at(x), 0.45, 1e-13));
  CHECK(close_abs(std::sqrt(e.a * e.a - 1.0) * std::sqrt(1.0 - x * x), e.a - x, 1e-12));

  CHECK_THROWS_AS(e.delta_at(1.0001), std::domain_error);
  CHECK_THROWS_AS(e.delta_at(-2.0), std::domain_error);
}

TEST_CASE("ellipse_delta_at is even, positive, 1-Lipschitz, below the sup") {
  for (double c : {1.05, 1.5, 2.0, 4.0}) {
    const EllipseDomain e(c);
    const double sup = e.delta_sup();
    double prev = e.delta_at(-1.0);
    for (int i = 0; i <= 200; ++i) {
      const double x = -1.0 + 2.0 * i / 200.0;
      const double d = e.delta_at(x);
      CHECK(d > 0.0);
      CHECK(d <= sup * (1.0 + 1e-14));
      CHECK(close_abs(d, e.delta_at(-x), 1e-15));
      if (i > 0) CHECK(std::abs(d - prev) <= (2.0 / 200.0) * (1.0 + 1e-12));
      prev = d;
    }
    CHECK(close_abs(e.delta_at(0.0), sup, 1e-15));
  }
}

TEST_CASE("delta_sup closed form and monotonicity in c") {
  CHECK(close_abs(EllipseDomain(2.0).delta_sup(), 0.75, 1e-15));
  CHECK(close_rel(EllipseDomain(1.0 + 1e-9).delta_sup(), 1e-9, 1e-5));
  double prev = 0.0;
  for (double c : {1.01, 1.1, 1.5, 2.0, 4.0}) {
    const double d = EllipseDomain(c).delta_sup();
    CHECK(d > prev);
    prev = d;
  }
}

TEST_CASE("generic NiceDomainSpec") {
  NiceDomainSpec constant;
  constant.delta_at = [](double) { return 2.0; };
  constant.convex = true;
  CHECK(close_abs(delta_sup(constant), 2.0, 1e-12));
  CHECK(constant.koebe_L() == 0.5);
  constant.convex = false;
  CHECK(constant.koebe_L() == 0.25);

  NiceDomainSpec bump;
  bump.delta_at = [](double x) { return 1.0 + 0.25 * std::cos(3.0 * x); };
  CHECK(close_abs(delta_sup(bump), 1.25, 1e-10));

  // sampled sup matches the ellipse closed form
  for (double c : {1.2, 2.0}) {
    const EllipseDomain e(c);
    NiceDomainSpec spec;
    spec.delta_at = [e](double x) { return e.delta_at(x); };
    CHECK(close_rel(delta_sup(spec), e.delta_sup(), 1e-10));
  }
}

TEST_CASE("analyticity domain handles") {
  const EllipseDomain e(2.0);
  const AnalyticityDomain de = domain_of(e);
  CHECK(de.contains(Complex(1.2, 0.1)));
  CHECK(!de.contains(Complex(0.0, 0.76)));
  CHECK(close_abs(de.delta_at(0.0), 0.75, 1e-15));

  const AnalyticityDomain disk = disk_domain(2.0);
  CHECK(close_abs(disk.delta_at(0.5), 1.5, 1e-15));
  CHECK(disk.contains(Complex(1.0, 1.0)));
  CHECK(!disk.contains(Complex(2.1, 0.0)));
  CHECK_THROWS_AS(disk_domain(0.9), std::domain_error);

  CHECK(whole_plane().contains(Complex(1e6, -1e6)));
  CHECK(std::isinf(whole_plane().delta_at(0.3)));
}
