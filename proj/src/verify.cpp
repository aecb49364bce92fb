#include "quadbound/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "quadbound/bounds.hpp"
#include "quadbound/extremal.hpp"
#include "quadbound/hyperbolic.hpp"
#include "quadbound/quadrature.hpp"

namespace quadbound {

namespace {

constexpr double kPi = std::numbers::pi;

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << msg;
    }
  }
  void note(const std::string& msg) {
    if (detail.tellp() > 0) detail << "; ";
    detail << msg;
  }
};

// Brute-force omega oracle: threshold search over superlevel sets of the
// density itself. For the chebyshev density the superlevel set of t >= 1 is
// a symmetric pair of end intervals whose inner edge is located by bisection
// on p(x) - t; the alpha-mass is integrated numerically.
double omega_oracle_chebyshev(const WeightMeasure& w, double delta) {
  const auto level_x = [&](double t) {
    // inner edge of {x > 0 : p(x) > t}
    if (w.density(0.0) > t) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (w.density(mid) > t ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double tlo = 0.5, thi = 1e12;
  for (int it = 0; it < 300; ++it) {
    const double tm = std::sqrt(tlo * thi);
    const double lam = 2.0 * (1.0 - level_x(tm));
    (lam > delta ? tlo : thi) = tm;
  }
  const double xt = level_x(thi);
  const double lam = 2.0 * (1.0 - xt);
  const double mass =
      2.0 * integrate_real([&](double th) { return w.density(std::cos(th)) * std::sin(th); }, 0.0,
                           std::acos(xt), 1e-12);
  return mass + std::max(0.0, delta - lam) * thi;
}

CriterionResult criterion1(const VerifyOptions& opt) {
  Check ck;
  const double reference = 2.0 * std::pow(std::pow(5.0 / 3.0, 1.5) * 2.5, -8.0);
  const double got = new_lower_ellipse(2.0, 4);
  ck.require(std::abs(got - reference) <= 1e-12 * reference,
             "ellipse closed form: got " + fmt(got) + " want " + fmt(reference));
  const double cs[] = {1.2, 1.5, 2.0, 3.0, 4.0};
  const int Ns[] = {1, 2, 4, 8, 16};
  double worst = 0.0;
  for (double c : cs)
    for (int N : Ns) {
      const double delta = (c * c - 1.0) / (2.0 * c);
      const double lhs = new_lower_ellipse(c, N);
      const double rhs = 2.0 * new_lower_gamma(delta, N, true) * (1.0 + opt.gamma_perturb);
      worst = std::max(worst, std::abs(lhs - rhs) / lhs);
    }
  ck.require(worst <= 1e-13, "consistency identity worst rel diff " + fmt(worst));
  ck.note("worst rel diff " + fmt(worst));
  return {1, "closed-form reproduction and two-route consistency", ck.ok, ck.detail.str()};
}

CriterionResult criterion2(const VerifyOptions&) {
  Check ck;
  const double c = 1.0 + 1e-6;
  for (int N : {1, 8, 64}) {
    const double v = new_lower_ellipse(c, N);
    ck.require(v >= 1.9 && v <= 2.0, "new bound at N=" + std::to_string(N) + ": " + fmt(v));
  }
  const double kappa = bakhvalov_kappa0(c, BakhvalovWeight::lebesgue());
  ck.require(kappa < 1e-16, "kappa0 " + fmt(kappa));
  ck.note("new bound stays near 2 while kappa0 = " + fmt(kappa));
  return {2, "non-vanishing limit as the ellipse shrinks", ck.ok, ck.detail.str()};
}

CriterionResult criterion3(const VerifyOptions& opt) {
  Check ck;
  const WeightMeasure leb = WeightMeasure::lebesgue();
  for (double c : {1.2, 1.5, 2.0}) {
    const ConformalMap map = ConformalMap::ellipse(c);
    const double delta = (c * c - 1.0) / (2.0 * c);
    for (int n : {2, 4, 8}) {
      const QuadratureRule rule = gauss_rule(leb, n);
      const Adversary adv = adversary_for_rule(map, leb, rule, 1.0, 1e-12);
      const double measured = std::abs(quadrature_error(rule, adv.f0, leb, 1e-12));
      const double gamma = new_lower_gamma(delta, n, true);
      const double upper = gauss_legendre_upper(c, n, GaussUpperMethod::petras);
      ck.require(measured >= gamma - opt.slack, "c=" + fmt(c) + " n=" + std::to_string(n) +
                                                    ": measured " + fmt(measured) + " < gamma " +
                                                    fmt(gamma));
      ck.require(measured <= upper, "c=" + fmt(c) + " n=" + std::to_string(n) + ": measured " +
                                        fmt(measured) + " > upper " + fmt(upper));
    }
  }
  return {3, "adversary error sandwiched between gamma and the Gauss upper bound", ck.ok,
          ck.detail.str()};
}

CriterionResult criterion4(const VerifyOptions& opt) {
  Check ck;
  const WeightMeasure leb = WeightMeasure::lebesgue();
  for (double c : {1.2, 1.5, 2.0}) {
    for (int n : {2, 4, 8}) {
      const QuadratureRule rule = gauss_rule(leb, n);
      const WitnessLower wl = chebyshev_witness_lower(c, n);
      const double err = std::abs(quadrature_error(rule, wl.witness, leb, 1e-12));
      const double upper = gauss_legendre_upper(c, n, GaussUpperMethod::petras);
      ck.require(err >= wl.bound - opt.slack, "c=" + fmt(c) + " n=" + std::to_string(n) +
                                                  ": measured " + fmt(err) + " < bound " +
                                                  fmt(wl.bound));
      ck.require(err <= upper, "c=" + fmt(c) + " n=" + std::to_string(n) + ": measured " +
                                   fmt(err) + " > upper " + fmt(upper));
    }
  }
  return {4, "scaled-Chebyshev witness realizes its closed-form lower bound", ck.ok,
          ck.detail.str()};
}

CriterionResult criterion5(const VerifyOptions&) {
  Check ck;
  const double c = 1.5;
  const int n = 30;
  const double scale = std::exp(2.0 * n * std::log(c));
  const double cheb = scale * petras_kn(WeightMeasure::chebyshev(), c, n);
  const double cheb_target = 2.0 * kPi * (1.0 - 1.0 / (c * c));
  ck.require(std::abs(cheb / cheb_target - 1.0) <= 0.02,
             "chebyshev c^{2n} k_n " + fmt(cheb) + " vs " + fmt(cheb_target));
  const double leb = scale * petras_kn(WeightMeasure::lebesgue(), c, n);
  const double leb_lo = 0.8 * kPi * std::pow(1.0 - 1.0 / (c * c), 2.0);
  const double leb_hi = 2.0 * kPi * (1.0 - 1.0 / (c * c));
  ck.require(leb >= leb_lo && leb <= leb_hi,
             "lebesgue c^{2n} k_n " + fmt(leb) + " outside [" + fmt(leb_lo) + "," + fmt(leb_hi) + "]");
  ck.note("cheb " + fmt(cheb) + " (target " + fmt(cheb_target) + "), leb " + fmt(leb));
  return {5, "Szegoe-limit consistency of the orthonormal-polynomial bound", ck.ok,
          ck.detail.str()};
}

CriterionResult criterion6(const VerifyOptions&) {
  Check ck;
  const double ratio = bakhvalov_kappa0(1.01, BakhvalovWeight::lebesgue()) / (kPi * 1e-6);
  ck.require(ratio >= 0.95 && ratio <= 1.05,
             "lebesgue kappa0(1.01)/(pi (c-1)^3) = " + fmt(ratio) +
                 " outside [0.95, 1.05]; exact second-order expansion gives "
                 "1 - 6(c-1) + O((c-1)^2) = 0.9421 at c = 1.01, so the band would "
                 "require c <= 1.0083");
  for (double c : {1.01, 1.5, 2.0, 4.0}) {
    const double got = bakhvalov_kappa0(c, BakhvalovWeight::chebyshev());
    const double want = kPi * (1.0 - 1.0 / c);
    ck.require(std::abs(got - want) <= 1e-14 * want,
               "chebyshev preset mismatch at c=" + fmt(c));
  }
  return {6, "Bakhvalov weight presets", ck.ok, ck.detail.str()};
}

CriterionResult criterion7(const VerifyOptions&) {
  Check ck;
  const double c = 1.0 + 1e-4;
  const EllipseNodeEstimates est = ellipse_node_estimates(1e8, c);
  const double r1 = est.exact / est.asymptotic;
  ck.require(r1 >= 0.9 && r1 <= 1.1, "exact/asymptotic " + fmt(r1));
  const double target = std::abs(1.0 / (4.0 * std::log(c - 1.0)));
  const double r2 = est.ratio_to_Ng / target;
  ck.require(r2 >= 0.75 && r2 <= 1.25, "ratio-to-Ng/target " + fmt(r2));
  ck.note("exact " + fmt(est.exact) + ", asymptotic " + fmt(est.asymptotic) + ", ratio " +
          fmt(est.ratio_to_Ng));
  return {7, "node-count asymptotics near the degenerate ellipse", ck.ok, ck.detail.str()};
}

CriterionResult criterion8(const VerifyOptions& opt) {
  Check ck;
  const ConformalMap map = ConformalMap::ellipse(2.0);
  std::mt19937_64 rng(opt.seed);

  const auto random_scheme = [&](int max_mult) {
    const int n = 1 + int(uniform01(rng) * 3.0);
    std::vector<double> nodes;
    while (static_cast<int>(nodes.size()) < n) {
      const double x = -0.9 + 1.8 * uniform01(rng);
      bool ok = true;
      for (double y : nodes) ok = ok && std::abs(x - y) > 0.05;
      if (ok) nodes.push_back(x);
    }
    std::sort(nodes.begin(), nodes.end());
    std::vector<int> mults(n);
    for (int j = 0; j < n; ++j) mults[j] = 1 + int(uniform01(rng) * max_mult);
    return NodeScheme(nodes, mults);
  };

  for (const WeightMeasure& w : {WeightMeasure::lebesgue(), WeightMeasure::chebyshev()}) {
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const NodeScheme scheme = random_scheme(2);
      std::vector<int> deeper = scheme.mults;
      bool bumped = false;
      for (size_t j = 0; j < deeper.size(); ++j) {
        if (uniform01(rng) < 0.5) {
          deeper[j] += 2;  // strictly deeper zero: r(k+2) = r(k) + 2
          bumped = true;
        }
      }
      if (!bumped) deeper[0] += 2;
      const NodeScheme competitor_scheme(scheme.nodes, deeper);
      const double value = jplus_exact(map, w, scheme, 1e-12);
      const AnalyticFunction competitor = extremal_function(map, competitor_scheme);
      const double cval = integrate(competitor, w, 1e-12);
      if (!(cval < value)) ++failures;
    }
    ck.require(failures == 0, std::string(w.kind_name()) + ": " + std::to_string(failures) +
                                  " competitors not strictly below J+");
  }

  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const NodeScheme scheme = random_scheme(3);
    std::vector<std::vector<double>> coeffs;
    for (size_t j = 0; j < scheme.nodes.size(); ++j) {
      std::vector<double> row(scheme.mults[j]);
      for (double& v : row) v = -2.0 + 4.0 * uniform01(rng);
      coeffs.push_back(row);
    }
    const QuadratureRule rule(scheme.nodes, scheme.mults, coeffs);
    const AnalyticFunction f0 = extremal_function(map, scheme);
    worst = std::max(worst, std::abs(apply_rule(rule, f0)));
  }
  ck.require(worst <= 1e-9, "zero-data residual " + fmt(worst));
  ck.note("zero-data worst residual " + fmt(worst));
  return {8, "extremality and zero-data of the Blaschke adversary", ck.ok, ck.detail.str()};
}

CriterionResult criterion9(const VerifyOptions& opt) {
  Check ck;
  std::mt19937_64 rng(opt.seed ^ 0xabcdef12345ULL);
  std::ostringstream residuals;
  for (double c : {1.05, 1.2, 1.5, 2.0, 4.0}) {
    const ConformalMap map = ConformalMap::ellipse(c);
    ck.require(map.boundary_residual() < 1e-8,
               "c=" + fmt(c) + ": residual " + fmt(map.boundary_residual()));
    residuals << " " << fmt(map.boundary_residual());
    const double delta = map.delta_sup();
    for (int i = 0; i < 500; ++i) {
      const double w = -1.0 + 2.0 * uniform01(rng);
      const double z = -1.0 + 2.0 * uniform01(rng);
      const double lhs = cstar(map, w, z);
      const double rhs = cstar_koebe_lower(delta, 0.5, std::abs(w - z));
      if (!(lhs >= rhs - opt.slack)) {
        ck.require(false, "Koebe inequality fails at c=" + fmt(c) + " w=" + fmt(w) +
                              " z=" + fmt(z) + ": " + fmt(lhs) + " < " + fmt(rhs));
        break;
      }
    }
  }
  ck.note("boundary residuals:" + residuals.str());
  return {9, "conformal map certification and Koebe inequality", ck.ok, ck.detail.str()};
}

CriterionResult criterion10(const VerifyOptions&) {
  Check ck;
  const WeightMeasure w = WeightMeasure::chebyshev();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double delta = 2.0 * (i + 0.5) / 20.0;
    const double got = omega_modulus(w, delta);
    const double want = omega_oracle_chebyshev(w, delta);
    worst = std::max(worst, std::abs(got - want));
  }
  ck.require(worst <= 1e-8, "worst deviation " + fmt(worst));
  ck.note("worst deviation from the superlevel oracle " + fmt(worst));
  return {10, "omega modulus matches the brute-force superlevel oracle", ck.ok, ck.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
  std::vector<CriterionResult> out;
  out.push_back(criterion1(opt));
  out.push_back(criterion2(opt));
  out.push_back(criterion3(opt));
  out.push_back(criterion4(opt));
  out.push_back(criterion5(opt));
  out.push_back(criterion6(opt));
  out.push_back(criterion7(opt));
  out.push_back(criterion8(opt));
  out.push_back(criterion9(opt));
  out.push_back(criterion10(opt));
  return out;
}

}  // namespace quadbound
