#include "quadbound/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace quadbound {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Kronrod 7-15 pair on [-1,1] (positive abscissae; even indices are
// Kronrod-only, odd indices carry the embedded Gauss-7 rule).
constexpr std::array<double, 8> kGkNodes = {
    0.991455371120812639, 0.949107912342758525, 0.864864423359769073, 0.741531185599394440,
    0.586087235467691130, 0.405845151377397167, 0.207784955007898468, 0.0};
constexpr std::array<double, 8> kGkWeights = {
    0.022935322010529225, 0.063092092629978553, 0.104790010322250184, 0.140653259715525919,
    0.169004726639267903, 0.190350578064785410, 0.204432940075298892, 0.209482141084727828};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693, 0.279705391489276668, 0.381830050505118945, 0.417959183673469388};

struct Panel {
  double value15;
  double err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double k15 = 0.0, g7 = 0.0, resabs = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double f1 = f(m - h * kGkNodes[i]);
    const double f2 = f(m + h * kGkNodes[i]);
    k15 += kGkWeights[i] * (f1 + f2);
    resabs += kGkWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) g7 += kGaussWeights[i / 2] * (f1 + f2);
  }
  const double fc = f(m);
  k15 += kGkWeights[7] * fc;
  resabs += kGkWeights[7] * std::abs(fc);
  g7 += kGaussWeights[3] * fc;
  // the difference estimate cannot claim more than rounding allows
  const double floor_ = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(h) * resabs;
  return {h * k15, std::max(std::abs(h * (k15 - g7)), floor_)};
}

struct AdaptState {
  const std::function<double(double)>* f;
  long evals = 0;
  long max_evals = 0;
  bool exhausted = false;
};

void adapt(AdaptState& st, double a, double b, double tol, int depth, double& total,
           double& total_err) {
  const Panel p = gk15(*st.f, a, b);
  st.evals += 15;
  if (p.err <= tol || depth >= 52 || st.evals > st.max_evals) {
    if (p.err > tol) st.exhausted = true;
    total += p.value15;
    total_err += p.err;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(st, a, m, 0.5 * tol, depth + 1, total, total_err);
  adapt(st, m, b, 0.5 * tol, depth + 1, total, total_err);
}

}  // namespace

double integrate_real(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_real: need tol > 0");
  if (a == b) return 0.0;
  AdaptState st{&f, 0, 4'000'000, false};
  double total = 0.0, total_err = 0.0;
  adapt(st, a, b, tol, 0, total, total_err);
  if (st.exhausted || total_err > tol)
    throw IntegrationError("integrate_real: tolerance not reached", total, total_err);
  return total;
}

WeightMeasure WeightMeasure::lebesgue() {
  WeightMeasure w;
  w.kind_ = Kind::lebesgue;
  w.density_ = [](double) { return 1.0; };
  w.total_mass_ = 2.0;
  w.szego_class_ = true;
  w.endpoint_singularity_ = false;
  return w;
}

WeightMeasure WeightMeasure::chebyshev() {
  WeightMeasure w;
  w.kind_ = Kind::chebyshev;
  w.density_ = [](double x) { return 1.0 / std::sqrt(std::max(1.0 - x * x, 1e-300)); };
  w.total_mass_ = kPi;
  w.szego_class_ = true;
  w.endpoint_singularity_ = true;
  return w;
}

WeightMeasure WeightMeasure::custom(std::function<double(double)> density,
                                    std::optional<bool> endpoint_singularity, bool szego_class,
                                    double mass_tol) {
  if (!density) throw std::invalid_argument("WeightMeasure::custom: missing density");
  for (int i = 0; i <= 1000; ++i) {
    const double x = -1.0 + 2.0 * i / 1000.0;
    const double p = density(x);
    if (std::isfinite(p) && p < 0.0)
      throw std::invalid_argument("WeightMeasure::custom: density must be nonnegative");
  }
  WeightMeasure w;
  w.kind_ = Kind::custom;
  w.density_ = std::move(density);
  w.szego_class_ = szego_class;
  w.endpoint_singularity_ = endpoint_singularity;
  const bool singular = endpoint_singularity.value_or(false);
  if (singular) {
    w.total_mass_ = integrate_real(
        [&w](double th) { return w.density_(std::cos(th)) * std::sin(th); }, 0.0, kPi, mass_tol);
  } else {
    w.total_mass_ = integrate_real([&w](double x) { return w.density_(x); }, -1.0, 1.0, mass_tol);
  }
  return w;
}

const char* WeightMeasure::kind_name() const {
  switch (kind_) {
    case Kind::lebesgue: return "lebesgue";
    case Kind::chebyshev: return "chebyshev";
    default: return "custom";
  }
}

double WeightMeasure::density(double x) const { return density_(x); }

double integrate_against(const WeightMeasure& w, const std::function<double(double)>& g,
                         double tol) {
  switch (w.kind()) {
    case WeightMeasure::Kind::lebesgue:
      return integrate_real(g, -1.0, 1.0, tol);
    case WeightMeasure::Kind::chebyshev:
      return integrate_real([&g](double th) { return g(std::cos(th)); }, 0.0, kPi, tol);
    default:
      if (w.endpoint_singularity().value_or(false)) {
        return integrate_real(
            [&](double th) {
              const double x = std::cos(th);
              return g(x) * w.density(x) * std::sin(th);
            },
            0.0, kPi, tol);
      }
      return integrate_real([&](double x) { return g(x) * w.density(x); }, -1.0, 1.0, tol);
  }
}

double integrate(const AnalyticFunction& f, const WeightMeasure& w, double tol) {
  if (!f.real_on_real)
    throw std::invalid_argument("integrate: integrand must be real on the real line");
  return integrate_against(w, [&f](double x) { return f.real_at(x); }, tol);
}

namespace {

// Superlevel intervals {x in [-1,1] : p(x) > t}, located on a uniform grid
// with bisection refinement of the crossings.
std::vector<std::pair<double, double>> superlevel_intervals(const WeightMeasure& w, double t) {
  const int n = 4000;
  const auto above = [&](double x) { return w.density(x) > t; };
  const auto refine = [&](double lo, double hi) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (above(mid) == above(lo) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  std::vector<std::pair<double, double>> out;
  bool inside = above(-1.0);
  double start = -1.0;
  double prev = -1.0;
  for (int i = 1; i <= n; ++i) {
    const double x = -1.0 + 2.0 * i / n;
    const bool now = above(x);
    if (now != inside) {
      const double cross = refine(prev, x);
      if (inside)
        out.emplace_back(start, cross);
      else
        start = cross;
      inside = now;
    }
    prev = x;
  }
  if (inside) out.emplace_back(start, 1.0);
  return out;
}

double intervals_measure(const std::vector<std::pair<double, double>>& iv) {
  double s = 0.0;
  for (const auto& [a, b] : iv) s += b - a;
  return s;
}

double mass_over(const WeightMeasure& w, const std::vector<std::pair<double, double>>& iv,
                 double tol) {
  const bool singular = w.endpoint_singularity().value_or(false);
  double s = 0.0;
  for (const auto& [a, b] : iv) {
    if (singular) {
      // theta substitution keeps integrable endpoint singularities bounded
      s += integrate_real([&](double th) { return w.density(std::cos(th)) * std::sin(th); },
                          std::acos(b), std::acos(a), tol);
    } else {
      s += integrate_real([&](double x) { return w.density(x); }, a, b, tol);
    }
  }
  return s;
}

}  // namespace

double omega_modulus(const WeightMeasure& w, double delta) {
  if (delta < 0.0) throw std::domain_error("omega_modulus: need delta >= 0");
  delta = std::min(delta, 2.0);
  if (delta == 0.0) return 0.0;
  switch (w.kind()) {
    case WeightMeasure::Kind::lebesgue:
      return delta;
    case WeightMeasure::Kind::chebyshev:
      // optimal set: two end intervals of total length delta
      return kPi - 2.0 * std::asin(1.0 - 0.5 * delta);
    default: {
      double pmax = 0.0;
      for (int i = 0; i <= 4000; ++i) {
        const double p = w.density(-1.0 + 2.0 * i / 4000.0);
        if (std::isfinite(p)) pmax = std::max(pmax, p);
      }
      // threshold t with lambda_1({p > t}) = delta, by bisection
      double lo = 0.0, hi = std::max(pmax, 1.0) * 2.0;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (intervals_measure(superlevel_intervals(w, mid)) > delta ? lo : hi) = mid;
      }
      const auto iv = superlevel_intervals(w, hi);
      const double lam = intervals_measure(iv);
      // plateau correction: leftover length is filled at density ~ threshold
      return mass_over(w, iv, 1e-12) + std::max(0.0, delta - lam) * hi;
    }
  }
}

OrthonormalBasis::OrthonormalBasis(const WeightMeasure& w, int n_max) {
  if (n_max < 0) throw std::invalid_argument("OrthonormalBasis: need n_max >= 0");
  n_max_ = n_max;
  a_.assign(n_max, 0.0);
  b_.assign(n_max + 1, 0.0);
  switch (w.kind()) {
    case WeightMeasure::Kind::lebesgue:
      p0_ = 1.0 / std::sqrt(2.0);
      for (int k = 1; k <= n_max; ++k) b_[k] = k / std::sqrt(4.0 * k * k - 1.0);
      return;
    case WeightMeasure::Kind::chebyshev:
      p0_ = 1.0 / std::sqrt(kPi);
      if (n_max >= 1) b_[1] = 1.0 / std::sqrt(2.0);
      for (int k = 2; k <= n_max; ++k) b_[k] = 0.5;
      return;
    default: {
      if (!w.endpoint_singularity().has_value())
        throw std::invalid_argument(
            "OrthonormalBasis: custom weight must declare its endpoint-singularity flag "
            "before moments are computed");
      // Stieltjes procedure driven by the reference integrator.
      p0_ = 1.0 / std::sqrt(w.total_mass());
      const double tol = 1e-13;
      for (int k = 0; k < n_max; ++k) {
        const auto pk = [&](double x) { return eval_impl<double>(k, x); };
        const auto pkm1 = [&](double x) { return k > 0 ? eval_impl<double>(k - 1, x) : 0.0; };
        a_[k] = integrate_against(w, [&](double x) { return x * pk(x) * pk(x); }, tol);
        const auto t = [&](double x) { return (x - a_[k]) * pk(x) - b_[k] * pkm1(x); };
        const double nrm2 = integrate_against(w, [&](double x) { return t(x) * t(x); }, tol);
        if (!(nrm2 > 1e-24))
          throw IntegrationError("OrthonormalBasis: recurrence broke down", nrm2, nrm2);
        b_[k + 1] = std::sqrt(nrm2);
      }
      return;
    }
  }
}

template <typename T>
T OrthonormalBasis::eval_impl(int k, T x) const {
  if (k < 0 || k > n_max_) throw std::invalid_argument("OrthonormalBasis: degree out of range");
  T pm1 = T(0.0), p = T(p0_);
  for (int j = 0; j < k; ++j) {
    T pn = ((x - a_[j]) * p - b_[j] * pm1) / b_[j + 1];
    pm1 = p;
    p = pn;
  }
  return p;
}

double OrthonormalBasis::operator()(int k, double x) const { return eval_impl<double>(k, x); }
Complex OrthonormalBasis::operator()(int k, Complex z) const { return eval_impl<Complex>(k, z); }

double OrthonormalBasis::derivative(int k, double x) const {
  if (k < 0 || k > n_max_) throw std::invalid_argument("OrthonormalBasis: degree out of range");
  double pm1 = 0.0, p = p0_, dm1 = 0.0, d = 0.0;
  for (int j = 0; j < k; ++j) {
    const double pn = ((x - a_[j]) * p - b_[j] * pm1) / b_[j + 1];
    const double dn = ((x - a_[j]) * d + p - b_[j] * dm1) / b_[j + 1];
    pm1 = p;
    p = pn;
    dm1 = d;
    d = dn;
  }
  return d;
}

QuadratureRule::QuadratureRule(std::vector<double> nodes_, std::vector<int> orders_,
                               std::vector<std::vector<double>> coeffs_)
    : nodes(std::move(nodes_)), orders(std::move(orders_)), coeffs(std::move(coeffs_)) {
  if (nodes.empty() || nodes.size() != orders.size() || nodes.size() != coeffs.size())
    throw std::invalid_argument("QuadratureRule: inconsistent shapes");
  for (size_t j = 0; j < nodes.size(); ++j) {
    if (!(std::abs(nodes[j]) <= 1.0))
      throw std::domain_error("QuadratureRule: nodes must lie in [-1,1]");
    if (j + 1 < nodes.size() && !(nodes[j] < nodes[j + 1]))
      throw std::domain_error("QuadratureRule: nodes must be strictly ascending");
    if (orders[j] < 1) throw std::domain_error("QuadratureRule: orders must be >= 1");
    if (coeffs[j].size() != static_cast<size_t>(orders[j]))
      throw std::invalid_argument("QuadratureRule: coeffs shape must match orders");
  }
}

QuadratureRule QuadratureRule::from_values(std::vector<double> nodes,
                                           std::vector<double> weights) {
  if (nodes.size() != weights.size())
    throw std::invalid_argument("QuadratureRule::from_values: size mismatch");
  std::vector<int> orders(nodes.size(), 1);
  std::vector<std::vector<double>> coeffs;
  coeffs.reserve(nodes.size());
  for (double w : weights) coeffs.push_back({w});
  return QuadratureRule(std::move(nodes), std::move(orders), std::move(coeffs));
}

int QuadratureRule::info_count() const {
  int n = 0;
  for (int r : orders) n += r;
  return n;
}

std::string QuadratureRule::to_json() const {
  nlohmann::json j;
  j["nodes"] = nodes;
  j["orders"] = orders;
  j["coeffs"] = coeffs;
  j["info_count"] = info_count();
  return j.dump();
}

QuadratureRule QuadratureRule::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  QuadratureRule rule(j.at("nodes").get<std::vector<double>>(),
                      j.at("orders").get<std::vector<int>>(),
                      j.at("coeffs").get<std::vector<std::vector<double>>>());
  if (j.contains("info_count") && j["info_count"].get<int>() != rule.info_count())
    throw std::invalid_argument("QuadratureRule::from_json: info_count mismatch");
  return rule;
}

QuadratureRule gauss_rule(const WeightMeasure& w, int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: need n >= 1");
  if (w.kind() == WeightMeasure::Kind::custom)
    throw std::invalid_argument("gauss_rule: unsupported weight kind");
  const OrthonormalBasis basis(w, n);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub = Eigen::VectorXd::Zero(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = basis.diag()[k];
  for (int k = 1; k < n; ++k) sub[k - 1] = basis.offdiag()[k];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> nodes(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(nodes.begin(), nodes.end());

  // Newton polishing on p_n, then Christoffel weights 1/sum p_k(x_j)^2.
  std::vector<double> weights(n);
  for (int j = 0; j < n; ++j) {
    double x = nodes[j];
    for (int it = 0; it < 20; ++it) {
      const double step = basis(n, x) / basis.derivative(n, x);
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes[j] = x;
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double pk = basis(k, x);
      s += pk * pk;
    }
    weights[j] = 1.0 / s;
  }
  return QuadratureRule::from_values(std::move(nodes), std::move(weights));
}

double derivative_eval(const AnalyticFunction& f, double x, int k, double radius) {
  if (k < 0) throw std::domain_error("derivative_eval: need k >= 0");
  if (k == 0) return f.real_at(x);
  if (!(radius > 0.0) || radius > f.domain.delta_at(x))
    throw std::domain_error("derivative_eval: radius must lie in (0, delta_D(x)]");

  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  const double scale = kfact / std::pow(radius, k);

  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int m = 64; m <= 8192; m *= 2) {
    Complex acc = 0.0;
    double fmax = 0.0;
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * kPi * j / m;
      const Complex fz = f(Complex(x + radius * std::cos(th), radius * std::sin(th)));
      fmax = std::max(fmax, std::abs(fz));
      acc += fz * std::exp(Complex(0.0, -k * th));
    }
    const double est = scale * (acc / double(m)).real();
    // stall floor: rounding in the circle sum amplified by k!/r^k
    const double floor_ = 32.0 * std::numeric_limits<double>::epsilon() * scale * fmax;
    if (!std::isnan(prev) && std::abs(est - prev) <= std::max(1e-12 * std::max(1.0, std::abs(est)), floor_))
      return est;
    prev = est;
  }
  return prev;
}

double apply_rule(const QuadratureRule& rule, const AnalyticFunction& f) {
  double s = 0.0;
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const double z = rule.nodes[j];
    const double radius = std::min(f.domain.delta_at(z) / 2.0, 0.1);
    for (int k = 0; k < rule.orders[j]; ++k) {
      const double c = rule.coeffs[j][k];
      if (c == 0.0) continue;
      s += c * (k == 0 ? f.real_at(z) : derivative_eval(f, z, k, radius));
    }
  }
  return s;
}

double quadrature_error(const QuadratureRule& rule, const AnalyticFunction& f,
                        const WeightMeasure& w, double tol) {
  return integrate(f, w, tol) - apply_rule(rule, f);
}

}  // namespace quadbound
