#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "quadbound/domains.hpp"

namespace quadbound {

/// Moebius pseudodistance |(w - z)/(1 - conj(w) z)| on the unit disk.
/// Throws std::domain_error unless both arguments lie strictly inside.
double mobius_m(Complex w, Complex z);

/// Poincare distance arctanh(m(w, z)) = (1/2) ln((1+m)/(1-m)).
double poincare_p(Complex w, Complex z);

/// Conformal map f_D : D -> unit disk normalized by f_D(0) = 0 and
/// f_D([0,1]) in [0,1).
///
/// For the ellipse with semi-axis sum c the map is a Jacobi theta quotient in
/// the variable v = arcsin(z). It is evaluated through the conjugate-nome
/// (imaginary-transformed) product
///
///   f(z) = tanh(pi v / (4 eps)) *
///          prod_{m>=1} (1 - 2 p^{2m} cosh(2u) + p^{4m})
///                    / (1 + 2 p^{2m} cosh(2u) + p^{4m}),
///
/// with u = pi v / (4 eps) and p = exp(-pi^2/(4 eps)), which stays
/// numerically stable however thin the ellipse is (the direct nome-q series
/// cancels catastrophically as c -> 1). The nome q = exp(-4 eps) is not
/// trusted a priori: it is calibrated by root-finding on the mean boundary
/// modulus until max ||f|-1| over boundary samples is tiny, starting from the
/// analytic value q = c^-4. The achieved residual is recorded.
class ConformalMap {
 public:
  static ConformalMap ellipse(double c);
  static ConformalMap disk(double radius);
  /// Wraps a user-supplied map from a NiceDomainSpec. Requires spec.map;
  /// boundary_residual is not available for user maps (reported as NaN).
  static ConformalMap from_spec(const NiceDomainSpec& spec, std::string name);

  /// Checked evaluation; throws std::domain_error outside the closure.
  Complex operator()(Complex z) const;
  /// Real fast path for x in [-1,1].
  double real_at(double x) const;
  /// atanh(f_D(x)) for x in [-1,1]: the Poincare coordinate of x along the
  /// real geodesic. For the ellipse this is computed in a cancellation-free
  /// form, which stays exact even where f_D(x) itself rounds to 1.
  double atanh_at(double x) const;

  const AnalyticityDomain& domain() const { return domain_; }
  double delta_sup() const { return delta_sup_; }
  bool convex() const { return convex_; }
  double koebe_L() const { return convex_ ? 0.5 : 0.25; }
  double nome() const { return nome_; }
  double boundary_residual() const { return boundary_residual_; }
  const std::optional<EllipseDomain>& ellipse_domain() const { return ellipse_; }

 private:
  ConformalMap() = default;

  std::function<Complex(const Complex&)> eval_;
  std::function<double(double)> eval_real_;
  std::function<double(double)> atanh_real_;
  AnalyticityDomain domain_;
  std::optional<EllipseDomain> ellipse_;
  double delta_sup_ = 0.0;
  bool convex_ = false;
  double nome_ = 0.0;
  double boundary_residual_ = 0.0;
};

/// c_D^*(w, z) = m(f_D(w), f_D(z)). Real pairs on [-1,1] go through the
/// geodesic identity m = |tanh(atanh f_D(w) - atanh f_D(z))|, which survives
/// the saturation of f_D near the segment endpoints on thin ellipses.
double cstar(const ConformalMap& map, Complex w, Complex z);

/// Koebe-type lower bound tanh(L dist / deltaD) for c_D^* between segment
/// points at distance dist; L = 1/2 for convex domains, 1/4 in general.
double cstar_koebe_lower(double deltaD, double L, double dist);

namespace detail {

/// Direct theta series in the nome q (cross-check oracle; loses precision
/// for q near 1, i.e. thin ellipses).
Complex theta1(Complex v, double q);
Complex theta4(Complex v, double q);

/// theta1(v, q)/theta4(v, q) evaluated in the conjugate-nome form with
/// eps = -ln(q)/4. Stable for all q in (0, 1).
Complex theta_ratio(Complex v, double eps);
double theta_ratio_real(double v, double eps);

/// atanh(theta_ratio_real(v, eps)) without cancellation: both 1 - f and
/// 1 + f are assembled from nonnegative exponentially small pieces.
double theta_ratio_atanh_real(double v, double eps);

/// ln|tanh(d)|, stable for both tiny and huge |d|.
double log_tanh_abs(double d);

}  // namespace detail

}  // namespace quadbound
