#include "quadbound/domains.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quadbound {

EllipseDomain::EllipseDomain(double c_) : c(c_) {
  if (!(c > 1.0) || !std::isfinite(c))
    throw std::domain_error("EllipseDomain: require c > 1");
  a = (c * c + 1.0) / (2.0 * c);
  b = (c * c - 1.0) / (2.0 * c);
}

double EllipseDomain::delta_at(double x) const {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("EllipseDomain::delta_at: require |x| <= 1");
  // Both branches agree at |x| = 1/a; the smooth branch is used there.
  if (std::abs(x) <= 1.0 / a)
    return std::sqrt(a * a - 1.0) * std::sqrt(1.0 - x * x);
  return a - std::abs(x);
}

double EllipseDomain::delta_sup() const { return (c * c - 1.0) / (2.0 * c); }

bool EllipseDomain::contains(Complex z, double slack) const {
  const double xr = z.real() / a;
  const double yr = z.imag() / b;
  return xr * xr + yr * yr < 1.0 + slack;
}

std::pair<double, double> ellipse_params(double c) {
  const EllipseDomain e(c);
  return {e.a, e.b};
}

AnalyticityDomain domain_of(const EllipseDomain& e) {
  return AnalyticityDomain{
      "ellipse(c=" + std::to_string(e.c) + ")",
      [e](double x) { return e.delta_at(x); },
      [e](const Complex& z) { return e.contains(z); },
  };
}

AnalyticityDomain disk_domain(double radius) {
  if (!(radius > 1.0))
    throw std::domain_error("disk_domain: need radius > 1 to contain [-1,1]");
  return AnalyticityDomain{
      "disk(r=" + std::to_string(radius) + ")",
      [radius](double x) {
        if (!(std::abs(x) <= 1.0))
          throw std::domain_error("disk_domain::delta_at: require |x| <= 1");
        return radius - std::abs(x);
      },
      [radius](const Complex& z) { return std::abs(z) < radius * (1.0 + 1e-12); },
  };
}

AnalyticityDomain whole_plane() {
  return AnalyticityDomain{
      "plane",
      [](double) { return std::numeric_limits<double>::infinity(); },
      [](const Complex&) { return true; },
  };
}

double delta_sup(const NiceDomainSpec& dom) {
  if (!dom.delta_at) throw std::invalid_argument("delta_sup: missing delta_at");
  const int n = 4096;
  double best = -std::numeric_limits<double>::infinity();
  double best_x = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -1.0 + 2.0 * i / n;
    const double v = dom.delta_at(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // Golden-section refinement around the best grid point.
  const double h = 2.0 / n;
  double lo = std::max(-1.0, best_x - h), hi = std::min(1.0, best_x + h);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = dom.delta_at(x1), f2 = dom.delta_at(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dom.delta_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dom.delta_at(x1);
    }
  }
  return std::max(best, std::max(f1, f2));
}

}  // namespace quadbound
