#include "quadbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "quadbound/domains.hpp"

namespace quadbound {

namespace {
constexpr double kPi = std::numbers::pi;
}

double new_lower_gamma(double deltaD, int N, bool convex) {
  if (!(deltaD > 0.0)) throw std::domain_error("new_lower_gamma: need deltaD > 0");
  if (N < 1) throw std::domain_error("new_lower_gamma: need N >= 1");
  if (convex) {
    const double lnb = 2.0 * deltaD * std::log1p(1.0 / (2.0 * deltaD)) + std::log1p(2.0 * deltaD);
    return std::exp(-2.0 * N * lnb);
  }
  return 0.5 * jplus_lower_general(deltaD, 0.25, N);
}

double jplus_lower_general(double deltaD, double L, int N) {
  if (!(deltaD > 0.0)) throw std::domain_error("jplus_lower_general: need deltaD > 0");
  if (!(L > 0.0 && L <= 0.5)) throw std::domain_error("jplus_lower_general: need L in (0, 1/2]");
  if (N < 1) throw std::domain_error("jplus_lower_general: need N >= 1");
  const double lg = 2.0 * N * std::log(L) + (2.0 * N * deltaD / L) * std::log(deltaD) -
                    (2.0 * N / L) * (deltaD + L) * std::log(deltaD + L);
  return 2.0 * std::exp(lg);
}

double new_lower_measure(const WeightMeasure& w, double deltaD, double L, int N) {
  if (!(deltaD > 0.0)) throw std::domain_error("new_lower_measure: need deltaD > 0");
  if (!(L > 0.0 && L <= 0.5)) throw std::domain_error("new_lower_measure: need L in (0, 1/2]");
  if (N < 1) throw std::domain_error("new_lower_measure: need N >= 1");
  const double mass = w.total_mass();
  const double lo = 1e-6 * deltaD;
  const double hi = std::max(1.0 / N, 2.0 * lo);
  double best = 0.0;
  const int grid = 64;
  for (int i = 0; i < grid; ++i) {
    const double eps = lo * std::pow(hi / lo, double(i) / (grid - 1));
    const double t = std::tanh(L * eps / deltaD);
    const double tail = mass - omega_modulus(w, std::min(2.0 * N * eps, 2.0));
    if (tail <= 0.0) continue;
    best = std::max(best, std::pow(t, 2.0 * N) * tail);
  }
  return best;
}

double new_lower_ellipse(double c, int N) {
  if (!(c > 1.0)) throw std::domain_error("new_lower_ellipse: need c > 1");
  if (N < 1) throw std::domain_error("new_lower_ellipse: need N >= 1");
  const double c2m1 = (c - 1.0) * (c + 1.0);  // c^2 - 1 without cancellation
  const double lnb = (c2m1 / c) * std::log((c2m1 + c) / c2m1) + std::log((c2m1 + c) / c);
  return 2.0 * std::exp(-2.0 * N * lnb);
}

double bakhvalov_kappa0(double c, const BakhvalovWeight& preset) {
  if (!(c > 1.0)) throw std::domain_error("bakhvalov_kappa0: need c > 1");
  if (preset.m < 0 || !(preset.P0 > 0.0))
    throw std::domain_error("bakhvalov_kappa0: need m >= 0 and P0 > 0");
  const double sinh_h = 0.5 * (c - 1.0 / c);  // sinh(ln c)
  return kPi * preset.P0 * (1.0 - 1.0 / c) * std::pow(c, -2.0 * preset.m) *
         std::pow(sinh_h, preset.m);
}

double petras_kn(const WeightMeasure& w, double c, int n) {
  if (!(c > 1.0)) throw std::domain_error("petras_kn: need c > 1");
  if (n < 0) throw std::domain_error("petras_kn: need n >= 0");
  if (w.kind() == WeightMeasure::Kind::custom)
    throw std::invalid_argument("petras_kn: supported for the lebesgue and chebyshev kinds");
  const OrthonormalBasis basis(w, n);
  const EllipseDomain dom(c);

  const int S = 512;
  std::vector<Complex> zs(S);
  for (int i = 0; i < S; ++i) {
    const double t = 2.0 * kPi * i / S;
    zs[i] = Complex(dom.a * std::cos(t), dom.b * std::sin(t));
  }
  const double h = 2.0 * kPi / S;

  double sum = 0.0;
  std::vector<double> g(S);
  for (int nu = 0; nu <= n; ++nu) {
    for (int i = 0; i < S; ++i) g[i] = std::norm(basis(nu, zs[i]));
    double sup = 0.0;
    for (int i = 0; i < S; ++i) {
      const double gm = g[(i + S - 1) % S], g0 = g[i], gp = g[(i + 1) % S];
      sup = std::max(sup, g0);
      if (g0 >= gm && g0 >= gp) {
        const double denom = gm - 2.0 * g0 + gp;
        if (denom < 0.0) {
          // one parabolic (Newton) refinement of the sampled maximum
          double dt = 0.5 * h * (gm - gp) / denom;
          dt = std::clamp(dt, -h, h);
          const double t = 2.0 * kPi * i / S + dt;
          const Complex z(dom.a * std::cos(t), dom.b * std::sin(t));
          sup = std::max(sup, std::norm(basis(nu, z)));
        }
      }
    }
    sum += sup;  // sup of |p_nu|^2 already
  }
  return 1.0 / sum;
}

double szego_limit(const WeightMeasure& w, double c) {
  if (!(c > 1.0)) throw std::domain_error("szego_limit: need c > 1");
  if (w.kind() == WeightMeasure::Kind::chebyshev)
    return 2.0 * kPi * (1.0 - 1.0 / (c * c));  // w(cos t)|sin t| == 1, D == 1
  if (w.kind() != WeightMeasure::Kind::lebesgue)
    throw std::domain_error("szego_limit: supported for the lebesgue and chebyshev kinds");
  if (!w.szego_class()) throw std::domain_error("szego_limit: weight not in the Szegoe class");

  // ln(w(cos t)|sin t|) on a half-step-offset trapezoid grid (the offset
  // dodges the log singularities of |sin t| at t = 0, +-pi).
  const int T = 4096;
  std::vector<double> lnw(T), ts(T);
  for (int j = 0; j < T; ++j) {
    ts[j] = -kPi + (j + 0.5) * 2.0 * kPi / T;
    lnw[j] = std::log(std::abs(std::sin(ts[j])));
  }
  const int Z = 256;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < Z; ++k) {
    const Complex zeta = std::polar(1.0 / c, 2.0 * kPi * k / Z);
    Complex acc = 0.0;
    for (int j = 0; j < T; ++j) {
      const Complex e = std::polar(1.0, -ts[j]);
      acc += (1.0 + zeta * e) / (1.0 - zeta * e) * lnw[j];
    }
    const Complex lnD = acc * (2.0 * kPi / T) / (4.0 * kPi);
    best = std::min(best, std::exp(2.0 * lnD.real()));
  }
  return 2.0 * kPi * (1.0 - 1.0 / (c * c)) * best;
}

double petras_explicit_lower(WeightMeasure::Kind kind, double c, int n) {
  if (!(c > 1.0)) throw std::domain_error("petras_explicit_lower: need c > 1");
  if (n < 1) throw std::domain_error("petras_explicit_lower: need n >= 1");
  const double c2 = c * c;
  switch (kind) {
    case WeightMeasure::Kind::lebesgue: {
      // worst-case (largest) printed eps_n keeps the bound valid
      const double eps_n = (c2 * c2 + 4.0 * c2 + 18.0) / (4.0 * n * c2 * (c2 - 1.0)) +
                           std::pow(n + 2.0, 1.5) / std::pow(c, n + 2.0);
      const double base = kPi * std::pow(1.0 - 1.0 / c2, 2.0) * std::exp(-2.0 * n * std::log(c));
      return base / (1.0 + eps_n);
    }
    case WeightMeasure::Kind::chebyshev: {
      const double floor_ = kPi * std::pow(1.0 - 1.0 / c2, 3.0) /
                            (2.0 * std::exp(2.0 * n * std::log(c)));
      const double x =
          ((2.0 * n + 3.0) * (c2 - 1.0) + std::pow(c, -2.0 * n - 2.0)) / std::pow(c, 2.0 * n + 4.0);
      // the bracket degenerates for c near 1 at small n; fall back to the
      // unconditional floor there
      if (x < 0.5) return floor_ / (1.0 - x);
      return floor_;
    }
    default:
      throw std::invalid_argument("petras_explicit_lower: lebesgue or chebyshev only");
  }
}

double osipenko_chebyshev(double c, int n) {
  if (!(c > 1.0)) throw std::domain_error("osipenko_chebyshev: need c > 1");
  if (n < 1) throw std::domain_error("osipenko_chebyshev: need n >= 1");
  return 2.0 * kPi * std::exp(-2.0 * n * std::log(c));
}

double gauss_legendre_upper(double c, int n, GaussUpperMethod method) {
  if (!(c > 1.0)) throw std::domain_error("gauss_legendre_upper: need c > 1");
  if (n < 1) throw std::domain_error("gauss_legendre_upper: need n >= 1");
  const double cm2n = std::exp(-2.0 * n * std::log(c));
  switch (method) {
    case GaussUpperMethod::rabinowitz:
      return std::min(4.0, 64.0 / (15.0 * (1.0 - 1.0 / (c * c))) * cm2n);
    case GaussUpperMethod::petras:
      return 4.0 * cm2n * (1.0 + 3.0 / (2.0 * n * c * c) + 4.0 * std::pow(c, -(n + 1.0)));
    case GaussUpperMethod::petras26:
      return 26.0 * cm2n;
  }
  throw std::invalid_argument("gauss_legendre_upper: unknown method");
}

namespace {

template <typename T>
T chebyshev_T(int m, T z) {
  if (m == 0) return T(1.0);
  T tm1 = T(1.0), t = z;
  for (int j = 1; j < m; ++j) {
    T tn = 2.0 * z * t - tm1;
    tm1 = t;
    t = tn;
  }
  return t;
}

}  // namespace

WitnessLower chebyshev_witness_lower(double c, int n) {
  if (!(c > 1.0)) throw std::domain_error("chebyshev_witness_lower: need c > 1");
  if (n < 1) throw std::domain_error("chebyshev_witness_lower: need n >= 1");
  const double lnc = std::log(c);
  const double bound = kPi * (1.0 - 0.25 / n) /
                       (std::exp(2.0 * n * lnc) * (1.0 + std::exp(-4.0 * n * lnc)));
  const double scale = 1.0 / std::cosh(2.0 * n * lnc);  // = 2 c^{2n}/(c^{4n}+1)

  AnalyticFunction f;
  f.domain = domain_of(EllipseDomain(c));
  f.bound = 1.0;
  f.real_on_real = true;
  const int deg = 2 * n;
  f.eval = [scale, deg](const Complex& z) { return scale * chebyshev_T<Complex>(deg, z); };
  return WitnessLower{bound, std::move(f)};
}

InfoBounds info_bounds(double M_over_eps, double c, double kappa_l, double kappa_g) {
  if (!(M_over_eps > 0.0) || !(c > 1.0) || !(kappa_l > 0.0) || !(kappa_g > 0.0))
    throw std::domain_error("info_bounds: need M/eps > 0, c > 1, kappas > 0");
  const double halflog = 2.0 * std::log(c);
  return InfoBounds{std::max(1.0, std::log(M_over_eps * kappa_l) / halflog),
                    std::max(1.0, std::log(M_over_eps * kappa_g) / halflog)};
}

EllipseNodeEstimates ellipse_node_estimates(double M_over_eps, double c) {
  if (!(M_over_eps > 1.0)) throw std::domain_error("ellipse_node_estimates: need M/eps > 1");
  if (!(c > 1.0)) throw std::domain_error("ellipse_node_estimates: need c > 1");
  const double c2m1 = (c - 1.0) * (c + 1.0);
  const double lnb = (c2m1 / c) * std::log((c2m1 + c) / c2m1) + std::log((c2m1 + c) / c);
  const double lnMe = std::log(M_over_eps);
  EllipseNodeEstimates est;
  est.exact = 0.5 * lnMe / lnb;
  est.asymptotic = -lnMe / (4.0 * (c - 1.0) * std::log(c - 1.0));  // c near 1
  est.ratio_to_Ng = std::abs(est.exact / (lnMe / std::log(c)));
  return est;
}

}  // namespace quadbound
