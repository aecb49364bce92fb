#include "quadbound/hyperbolic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace quadbound {

namespace {

constexpr double kPi = std::numbers::pi;

Complex safe_tanh(Complex u) {
  // One-sided exponential form; never overflows.
  if (u.real() >= 0.0) {
    const Complex t = std::exp(-2.0 * u);
    return (1.0 - t) / (1.0 + t);
  }
  const Complex t = std::exp(2.0 * u);
  return (t - 1.0) / (t + 1.0);
}

}  // namespace

double mobius_m(Complex w, Complex z) {
  if (!(std::abs(w) < 1.0) || !(std::abs(z) < 1.0))
    throw std::domain_error("mobius_m: arguments must lie in the open unit disk");
  return std::abs((w - z) / (1.0 - std::conj(w) * z));
}

double poincare_p(Complex w, Complex z) { return std::atanh(mobius_m(w, z)); }

namespace detail {

Complex theta1(Complex v, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("theta1: need 0 < q < 1");
  const double lq = std::log(q);
  const Complex i(0.0, 1.0);
  Complex sum = 0.0;
  double peak = 0.0;
  for (int n = 0; n < 200000; ++n) {
    const double e = (n + 0.5) * (n + 0.5) * lq;
    const Complex iv = i * (double(2 * n + 1) * v);
    Complex term = -i * (std::exp(e + iv) - std::exp(e - iv));
    if (n % 2) term = -term;
    sum += term;
    peak = std::max(peak, std::abs(term));
    if (n >= 2 && std::abs(term) < 1e-18 * std::max(1.0, peak)) return sum;
  }
  throw std::runtime_error("theta1: series did not converge");
}

Complex theta4(Complex v, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("theta4: need 0 < q < 1");
  const double lq = std::log(q);
  const Complex i(0.0, 1.0);
  Complex sum = 1.0;
  double peak = 1.0;
  for (int n = 1; n < 200000; ++n) {
    const double e = double(n) * double(n) * lq;
    const Complex iv = i * (2.0 * n * v);
    Complex term = std::exp(e + iv) + std::exp(e - iv);
    if (n % 2) term = -term;
    sum += term;
    peak = std::max(peak, std::abs(term));
    if (n >= 2 && std::abs(term) < 1e-18 * std::max(1.0, peak)) return sum;
  }
  throw std::runtime_error("theta4: series did not converge");
}

Complex theta_ratio(Complex v, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("theta_ratio: need eps > 0");
  const double L = kPi * kPi / (4.0 * eps);  // = ln(1/p)
  const Complex u = (kPi / (4.0 * eps)) * v;
  Complex prod = 1.0;
  for (int m = 1; m < 100000; ++m) {
    // p^{2m} * 2 cosh(2u); both exponents have negative real part since
    // |Re(2u)| <= L for v = arcsin(z) with z in the closed ellipse.
    const Complex twocos = std::exp(2.0 * u - 2.0 * m * L) + std::exp(-2.0 * u - 2.0 * m * L);
    const double p4m = std::exp(-4.0 * m * L);
    prod *= (1.0 - twocos + p4m) / (1.0 + twocos + p4m);
    if (std::abs(twocos) + p4m < 1e-18) return safe_tanh(u) * prod;
  }
  throw std::runtime_error("theta_ratio: product did not converge");
}

double theta_ratio_real(double v, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("theta_ratio_real: need eps > 0");
  const double L = kPi * kPi / (4.0 * eps);
  const double u = kPi * v / (4.0 * eps);
  double prod = 1.0;
  for (int m = 1; m < 100000; ++m) {
    const double twocos = std::exp(2.0 * u - 2.0 * m * L) + std::exp(-2.0 * u - 2.0 * m * L);
    const double p4m = std::exp(-4.0 * m * L);
    prod *= (1.0 - twocos + p4m) / (1.0 + twocos + p4m);
    if (twocos + p4m < 1e-18) return std::tanh(u) * prod;
  }
  throw std::runtime_error("theta_ratio_real: product did not converge");
}

double theta_ratio_atanh_real(double v, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("theta_ratio_atanh_real: need eps > 0");
  const double L = kPi * kPi / (4.0 * eps);
  const double au = std::abs(kPi * v / (4.0 * eps));
  double lnP = 0.0;
  for (int m = 1; m < 100000; ++m) {
    const double twocos = std::exp(2.0 * au - 2.0 * m * L) + std::exp(-2.0 * au - 2.0 * m * L);
    const double p4m = std::exp(-4.0 * m * L);
    lnP += std::log1p(p4m - twocos) - std::log1p(p4m + twocos);
    if (twocos + p4m < 1e-18) break;
  }
  const double one_m_P = -std::expm1(lnP);       // 1 - P >= 0
  const double one_p_P = 2.0 - one_m_P;          // 1 + P
  const double e2 = std::exp(-2.0 * au);
  // atanh(tanh(u) P) = (1/2) ln((1+P + e^{-2u}(1-P)) / (1-P + e^{-2u}(1+P)))
  const double num = one_p_P + e2 * one_m_P;
  const double den = one_m_P + e2 * one_p_P;
  double s;
  if (den > 0.0) {
    s = 0.5 * std::log(num / den);
  } else {
    // both denominator pieces underflowed; assemble ln(den) at exponent level
    const double la = 2.0 * au - 2.0 * L;        // ln(1 - P) to leading order
    const double lb = std::log(2.0) - 2.0 * au;  // ln(e^{-2u} (1 + P))
    const double hi = std::max(la, lb);
    s = 0.5 * (std::log(num) - (hi + std::log1p(std::exp(std::min(la, lb) - hi))));
  }
  return v < 0.0 ? -s : s;
}

double log_tanh_abs(double d) {
  d = std::abs(d);
  if (d == 0.0) return -std::numeric_limits<double>::infinity();
  const double e = std::exp(-2.0 * d);
  return std::log1p(-2.0 * e / (1.0 + e));
}

}  // namespace detail

ConformalMap ConformalMap::ellipse(double c) {
  const EllipseDomain dom(c);

  // Boundary samples; arcsin is independent of the calibration parameter.
  const int kSamples = 64;
  std::vector<Complex> vs;
  vs.reserve(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    const double t = 2.0 * kPi * k / kSamples;
    const Complex z(dom.a * std::cos(t), dom.b * std::sin(t));
    vs.push_back(std::asin(z));
  }

  // mean(|f| - 1) over the boundary is decreasing in s = 4*eps = -ln(q):
  // a fatter calibrated ellipse pulls the samples inward.
  const auto mean_excess = [&](double s) {
    const double eps = 0.25 * s;
    double acc = 0.0;
    for (const Complex& v : vs) acc += std::abs(detail::theta_ratio(v, eps)) - 1.0;
    return acc / kSamples;
  };

  const double s0 = 4.0 * std::log(c);  // analytic value of -ln(q)
  double lo = 0.9 * s0, hi = 1.1 * s0;
  for (int it = 0; it < 200 && mean_excess(lo) < 0.0; ++it) lo *= 0.9;
  for (int it = 0; it < 200 && mean_excess(hi) > 0.0; ++it) hi *= 1.1;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * s0; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_excess(mid) > 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  const double eps = 0.25 * s;

  double residual = 0.0;
  for (const Complex& v : vs)
    residual = std::max(residual, std::abs(std::abs(detail::theta_ratio(v, eps)) - 1.0));

  ConformalMap m;
  m.domain_ = domain_of(dom);
  m.ellipse_ = dom;
  m.delta_sup_ = dom.delta_sup();
  m.convex_ = true;
  m.nome_ = std::exp(-s);
  m.boundary_residual_ = residual;
  m.eval_ = [eps](const Complex& z) { return detail::theta_ratio(std::asin(z), eps); };
  m.eval_real_ = [eps](double x) { return detail::theta_ratio_real(std::asin(x), eps); };
  m.atanh_real_ = [eps](double x) { return detail::theta_ratio_atanh_real(std::asin(x), eps); };
  return m;
}

ConformalMap ConformalMap::disk(double radius) {
  ConformalMap m;
  m.domain_ = disk_domain(radius);
  m.delta_sup_ = radius;
  m.convex_ = true;
  m.nome_ = 0.0;
  m.boundary_residual_ = 0.0;
  m.eval_ = [radius](const Complex& z) { return z / radius; };
  m.eval_real_ = [radius](double x) { return x / radius; };
  m.atanh_real_ = [radius](double x) { return std::atanh(x / radius); };
  return m;
}

ConformalMap ConformalMap::from_spec(const NiceDomainSpec& spec, std::string name) {
  if (!spec.map)
    throw std::invalid_argument(
        "ConformalMap::from_spec: spec carries no conformal evaluator; "
        "only cstar_koebe_lower is available for such domains");
  if (!spec.delta_at) throw std::invalid_argument("from_spec: missing delta_at");
  ConformalMap m;
  auto delta = spec.delta_at;
  m.domain_ = AnalyticityDomain{
      std::move(name),
      delta,
      // Conservative containment: the disk about the nearest segment point.
      [delta](const Complex& z) {
        const double x = std::clamp(z.real(), -1.0, 1.0);
        return std::abs(z - Complex(x, 0.0)) < delta(x);
      },
  };
  m.delta_sup_ = quadbound::delta_sup(spec);
  m.convex_ = spec.convex;
  m.nome_ = 0.0;
  m.boundary_residual_ = std::numeric_limits<double>::quiet_NaN();
  auto f = *spec.map;
  m.eval_ = f;
  m.eval_real_ = [f](double x) { return f(Complex(x, 0.0)).real(); };
  m.atanh_real_ = [f](double x) { return std::atanh(f(Complex(x, 0.0)).real()); };
  return m;
}

Complex ConformalMap::operator()(Complex z) const {
  if (!domain_.contains(z))
    throw std::domain_error("ConformalMap: point outside the domain closure");
  return eval_(z);
}

double ConformalMap::real_at(double x) const {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("ConformalMap::real_at: require |x| <= 1");
  return eval_real_(x);
}

double ConformalMap::atanh_at(double x) const {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("ConformalMap::atanh_at: require |x| <= 1");
  return atanh_real_(x);
}

double cstar(const ConformalMap& map, Complex w, Complex z) {
  if (w.imag() == 0.0 && z.imag() == 0.0 && std::abs(w.real()) <= 1.0 &&
      std::abs(z.real()) <= 1.0)
    return std::abs(std::tanh(map.atanh_at(w.real()) - map.atanh_at(z.real())));
  return mobius_m(map(w), map(z));
}

double cstar_koebe_lower(double deltaD, double L, double dist) {
  if (!(deltaD > 0.0)) throw std::domain_error("cstar_koebe_lower: need deltaD > 0");
  if (!(L > 0.0 && L <= 0.5)) throw std::domain_error("cstar_koebe_lower: need L in (0, 1/2]");
  if (!(dist >= 0.0)) throw std::domain_error("cstar_koebe_lower: need dist >= 0");
  return std::tanh(L * dist / deltaD);
}

}  // namespace quadbound
