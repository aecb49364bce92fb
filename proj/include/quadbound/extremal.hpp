#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quadbound/hyperbolic.hpp"
#include "quadbound/quadrature.hpp"

namespace quadbound {

/// Least even integer >= k.
int round_even(int k);

/// Nodes x_1 < ... < x_n in [-1,1] with positive multiplicities k_j;
/// N = sum k_j is the information count.
struct NodeScheme {
  NodeScheme(std::vector<double> nodes_, std::vector<int> mults_);

  std::vector<double> nodes;
  std::vector<int> mults;

  int total() const;  ///< N
  std::vector<int> even_mults() const;  ///< r(k_j)
};

/// The unique maximizer of the integral over F_+(D; X; K): the Blaschke
/// product prod_j ((f_D(z) - f_D(x_j)) / (1 - f_D(x_j) f_D(z)))^{r(k_j)}.
/// Nonnegative on [-1,1] and bounded by 1.
AnalyticFunction extremal_function(const ConformalMap& map, const NodeScheme& scheme);

/// J_+(D; X; K) = integral of prod_j m(f_D(x), f_D(x_j))^{r(k_j)} d(alpha).
/// The product is accumulated in log space so that deep zeros do not
/// underflow the integrand.
double jplus_exact(const ConformalMap& map, const WeightMeasure& w, const NodeScheme& scheme,
                   double tol);

struct OptimizerConfig {
  std::uint64_t seed = 1;
  int random_starts = 2;
  bool exhaustive_multiplicities = false;  ///< enumerate compositions for N <= 6
  double step_tol = 1e-10;
  int max_sweeps = 50;
  double final_tol = 1e-11;
  /// When set, every evaluated scheme is checked against this known lower
  /// bound for J_+(D; N) (the evaluation throws if 2*value falls below it).
  std::optional<double> jplus_floor;
};

struct JplusResult {
  double value;
  NodeScheme scheme;
};

/// Best-effort upper estimate of J_+(D; N): multistart coordinate descent
/// over node placements (multiplicities fixed to ones unless the exhaustive
/// switch is on). Deterministic for a fixed config.
JplusResult jplus_minimize(const ConformalMap& map, const WeightMeasure& w, int N,
                           const OptimizerConfig& cfg);

struct Adversary {
  AnalyticFunction f0;
  double guaranteed_error;
};

/// Worst-case integrand for a linear rule with derivative data: M times the
/// extremal function at the rule's own (nodes, orders). The rule sees the
/// same information as g == 0, so its error on f0 is at least M*J_+.
Adversary adversary_for_rule(const ConformalMap& map, const WeightMeasure& w,
                             const QuadratureRule& rule, double M, double tol = 1e-12);

/// h(z) = (omega g(z) + conj(omega g(conj z)))/2; real on the real line,
/// h(x) = Re(omega g(x)) there, same bound as g.
AnalyticFunction symmetrize_real(const AnalyticFunction& g, Complex omega);

}  // namespace quadbound
