#pragma once

#include <map>
#include <string>

#include "quadbound/quadrature.hpp"

namespace quadbound {

/// One computed bound, tagged with everything the formula consumed.
struct BoundRecord {
  enum class Kind { lower, upper };
  std::string name;
  Kind kind = Kind::lower;
  double value = 0.0;
  std::map<std::string, double> params;
  std::string provenance;

  std::string to_json() const;
  /// Fixed columns: name,kind,c,n,N,weight,value,provenance (missing params
  /// print empty cells; the weight column is supplied by the caller).
  std::string csv_row(const std::string& weight) const;
  static std::string csv_header();
};

/// Guaranteed worst-case error gamma for any N-information quadrature on a
/// nice domain with segment clearance deltaD:
///   convex:  ((1 + 1/(2 deltaD))^{2 deltaD} (2 deltaD + 1))^{-2N}
///   general: the L = 1/4 clearance bound, halved to keep the same
///            error-constant convention.
double new_lower_gamma(double deltaD, int N, bool convex);

/// Clearance-only lower bound for J_+(D;N) under the Lebesgue measure:
/// 2 L^{2N} deltaD^{2N deltaD/L} / (deltaD+L)^{(2N/L)(deltaD+L)}.
double jplus_lower_general(double deltaD, double L, int N);

/// Measure-aware lower bound sup_eps tanh(L eps/deltaD)^{2N}
/// (alpha([-1,1]) - omega(2 N eps)), maximized over a logarithmic eps-grid.
double new_lower_measure(const WeightMeasure& w, double deltaD, double L, int N);

/// Closed-form ellipse specialization
///   2 (((c^2-1+c)/(c^2-1))^{(c^2-1)/c} ((c^2-1+c)/c))^{-2N};
/// agrees with 2*new_lower_gamma(delta_sup(c), N, convex=true).
double new_lower_ellipse(double c, int N);

/// Weight data for Bakhvalov's kappa_0 = pi P0 (1 - 1/c) c^{-2m} (sinh ln c)^m.
struct BakhvalovWeight {
  int m = 0;
  double P0 = 1.0;
  static BakhvalovWeight lebesgue() { return {2, 1.0}; }
  static BakhvalovWeight chebyshev() { return {0, 1.0}; }
  static BakhvalovWeight custom(int m, double P0) { return {m, P0}; }
};

double bakhvalov_kappa0(double c, const BakhvalovWeight& preset);

/// Petras' orthonormal-polynomial bound k_n = (sum_v sup_{E_c} |p_v|^2)^{-1},
/// with boundary suprema taken over 512 samples plus a parabolic refinement.
double petras_kn(const WeightMeasure& w, double c, int n);

/// Szegoe limit 2 pi (1 - c^-2) min_{|z|=c} |D(1/z)|^2 of c^{2n} k_n.
/// Exact for the chebyshev kind (D == 1); trapezoidal Szegoe-function
/// evaluation for the lebesgue kind.
double szego_limit(const WeightMeasure& w, double c);

/// Explicit finite-n lower bounds for rho_n(A(E_c), d alpha) printed by
/// Petras for the Lebesgue and Chebyshev weights.
double petras_explicit_lower(WeightMeasure::Kind kind, double c, int n);

/// Osipenko's Chebyshev-weight asymptotics 2 pi / c^{2n} (reference value).
double osipenko_chebyshev(double c, int n);

enum class GaussUpperMethod { rabinowitz, petras, petras26 };

/// Upper bounds for r_n(c) = rho(G_n, A_0(E_c,1), dx).
double gauss_legendre_upper(double c, int n, GaussUpperMethod method);

struct WitnessLower {
  double bound;
  AnalyticFunction witness;  ///< (2 c^{2n}/(c^{4n}+1)) T_{2n}, sup-norm 1 on E_c
};

/// Scaled-Chebyshev witness and the closed-form lower bound
/// pi (1 - 1/(4n)) / (c^{2n} (1 + c^{-4n})) for |I - G_n| it realizes.
WitnessLower chebyshev_witness_lower(double c, int n);

struct InfoBounds {
  double N_l;
  double N_g;
};

/// Clamped-at-1 information-count estimates
/// max(1, ln(M/eps * kappa)/(2 ln c)).
InfoBounds info_bounds(double M_over_eps, double c, double kappa_l, double kappa_g);

struct EllipseNodeEstimates {
  double exact;       ///< (1/2) ln(M/eps) / ln(base(c)) from the ellipse bound
  double asymptotic;  ///< -ln(M/eps) / (4 (c-1) ln(c-1)), meaningful for c near 1
  double ratio_to_Ng; ///< exact / (ln(M/eps)/ln c), reported as a magnitude
};

EllipseNodeEstimates ellipse_node_estimates(double M_over_eps, double c);

}  // namespace quadbound
