#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace quadbound {

using Complex = std::complex<double>;

/// Interior of the ellipse with foci at +-1 whose semi-axis sum equals c > 1.
struct EllipseDomain {
  explicit EllipseDomain(double c);

  double c;  ///< sum of semi-axes
  double a;  ///< major semi-axis, (c^2+1)/(2c)
  double b;  ///< minor semi-axis, (c^2-1)/(2c)

  /// Distance from x in [-1,1] to the complement of the ellipse.
  /// Piecewise: sqrt(a^2-1) sqrt(1-x^2) for |x| <= 1/a, otherwise a - |x|.
  double delta_at(double x) const;

  /// sup of delta_at over [-1,1]; equals (c^2-1)/(2c) in closed form.
  double delta_sup() const;

  /// Interior test x^2/a^2 + y^2/b^2 < 1 + slack (closure admitted via slack).
  bool contains(Complex z, double slack = 1e-12) const;
};

/// Semi-axes (a, b) of the ellipse with semi-axis sum c. Throws for c <= 1.
std::pair<double, double> ellipse_params(double c);

/// The geometry of a domain of analyticity that the library actually
/// consumes: distance from segment points to the complement plus a
/// containment test. Never a boundary-curve representation.
struct AnalyticityDomain {
  std::string name;
  std::function<double(double)> delta_at;
  std::function<bool(const Complex&)> contains;
};

AnalyticityDomain domain_of(const EllipseDomain& e);
AnalyticityDomain disk_domain(double radius);
AnalyticityDomain whole_plane();

/// User-specified nice domain (open, simply connected, conjugation-symmetric,
/// containing [-1,1]). Only delta_at and the convexity flag feed the bounds;
/// an explicit conformal map to the disk may be supplied when known.
struct NiceDomainSpec {
  std::function<double(double)> delta_at;
  bool convex = false;
  std::optional<std::function<Complex(const Complex&)>> map;

  double koebe_L() const { return convex ? 0.5 : 0.25; }
};

/// Sampled supremum of delta_at over [-1,1]. delta_at is 1-Lipschitz for
/// genuine distance functions, so a fine scan plus local refinement is exact
/// to the refinement tolerance.
double delta_sup(const NiceDomainSpec& dom);

}  // namespace quadbound
