#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadbound/domains.hpp"

namespace quadbound {

/// Raised when the adaptive integrator cannot meet the requested absolute
/// tolerance; carries the best estimate it reached.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

/// Reference integrator: adaptive bisection with a nested Gauss-Kronrod 7-15
/// pair per panel, absolute-error target.
double integrate_real(const std::function<double(double)>& f, double a, double b, double tol);

/// Finite absolutely continuous Borel measure d(alpha) = p(x) dx on [-1,1].
class WeightMeasure {
 public:
  enum class Kind { lebesgue, chebyshev, custom };

  static WeightMeasure lebesgue();
  static WeightMeasure chebyshev();
  /// Custom density p >= 0. endpoint_singularity declares whether p blows up
  /// (integrably) at +-1; passing nullopt leaves the weight usable for
  /// integration but the orthonormal-polynomial path will refuse it.
  static WeightMeasure custom(std::function<double(double)> density,
                              std::optional<bool> endpoint_singularity, bool szego_class,
                              double mass_tol = 1e-12);

  Kind kind() const { return kind_; }
  const char* kind_name() const;
  double density(double x) const;
  double total_mass() const { return total_mass_; }
  bool szego_class() const { return szego_class_; }
  std::optional<bool> endpoint_singularity() const { return endpoint_singularity_; }

 private:
  WeightMeasure() = default;
  Kind kind_ = Kind::lebesgue;
  std::function<double(double)> density_;
  double total_mass_ = 0.0;
  bool szego_class_ = true;
  std::optional<bool> endpoint_singularity_;
};

/// Integral of g against d(alpha). The chebyshev kind (and singular custom
/// densities) are integrated under x = cos(theta) to remove the endpoint
/// singularity.
double integrate_against(const WeightMeasure& w, const std::function<double(double)>& g,
                         double tol);

/// Element of A(D, M): a complex evaluator together with the domain of
/// analyticity it is valid on, a sup-norm bound and a realness flag.
struct AnalyticFunction {
  std::function<Complex(const Complex&)> eval;
  AnalyticityDomain domain;
  double bound = std::numeric_limits<double>::infinity();
  bool real_on_real = false;

  Complex operator()(const Complex& z) const { return eval(z); }
  double real_at(double x) const { return eval(Complex(x, 0.0)).real(); }
};

/// I(f, alpha) for functions that are real on the real line.
double integrate(const AnalyticFunction& f, const WeightMeasure& w, double tol);

/// omega(delta, alpha): the largest alpha-mass carried by a Borel subset of
/// [-1,1] of Lebesgue measure at most delta. Closed forms for the lebesgue
/// and chebyshev kinds; a superlevel-set threshold search otherwise.
double omega_modulus(const WeightMeasure& w, double delta);

/// Orthonormal polynomials p_0..p_n for d(alpha), held as three-term
/// recurrence coefficients: x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
class OrthonormalBasis {
 public:
  OrthonormalBasis(const WeightMeasure& w, int n_max);

  int max_degree() const { return n_max_; }
  double operator()(int k, double x) const;
  Complex operator()(int k, Complex z) const;
  double derivative(int k, double x) const;

  const std::vector<double>& diag() const { return a_; }     // a_0..a_{n-1}
  const std::vector<double>& offdiag() const { return b_; }  // b_1..b_n at [1..n]

 private:
  template <typename T>
  T eval_impl(int k, T x) const;

  int n_max_ = 0;
  double p0_ = 0.0;
  std::vector<double> a_;
  std::vector<double> b_;  // b_[0] unused
};

/// Quadrature with derivative data, S(f) = sum_j sum_{k<r_j} b_{kj} f^(k)(z_j).
struct QuadratureRule {
  QuadratureRule(std::vector<double> nodes_, std::vector<int> orders_,
                 std::vector<std::vector<double>> coeffs_);
  static QuadratureRule from_values(std::vector<double> nodes, std::vector<double> weights);

  std::vector<double> nodes;                ///< strictly ascending, in [-1,1]
  std::vector<int> orders;                  ///< r_j >= 1; data used: f^(0..r_j-1)
  std::vector<std::vector<double>> coeffs;  ///< coeffs[j][k], k < r_j

  int info_count() const;  ///< |R| = sum r_j

  std::string to_json() const;
  static QuadratureRule from_json(const std::string& text);
};

/// n-point Gauss rule for the lebesgue or chebyshev weight, built from the
/// symmetric tridiagonal eigenproblem with Newton polishing.
QuadratureRule gauss_rule(const WeightMeasure& w, int n);

/// f^(k)(x) through the Cauchy-integral trapezoid rule on the circle of the
/// given radius; samples double until two successive estimates agree.
double derivative_eval(const AnalyticFunction& f, double x, int k, double radius);

/// Applies the rule, taking derivatives on circles of radius
/// min(delta_D(z_j)/2, 0.1).
double apply_rule(const QuadratureRule& rule, const AnalyticFunction& f);

/// R(f, alpha) = I(f, alpha) - S(f).
double quadrature_error(const QuadratureRule& rule, const AnalyticFunction& f,
                        const WeightMeasure& w, double tol);

}  // namespace quadbound
