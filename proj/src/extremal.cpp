#include "quadbound/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>

namespace quadbound {

namespace {

constexpr double kPi = std::numbers::pi;

Complex pow_int(Complex base, int e) {
  Complex r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;  // reproducible across platforms
}

// Fixed quadrature grid against d(alpha) used inside the optimizer; the
// integrand is analytic on [-1,1], so composite Gauss panels converge
// spectrally and a recomputation with the adaptive integrator only matters
// at the final reporting step.
struct ObjectiveGrid {
  std::vector<double> x;   // segment abscissae
  std::vector<double> wt;  // quadrature weights including the density
};

ObjectiveGrid make_grid(const WeightMeasure& w) {
  const WeightMeasure leb = WeightMeasure::lebesgue();
  const QuadratureRule g24 = gauss_rule(leb, 24);
  ObjectiveGrid grid;
  const int panels = 8;
  const bool theta_space = w.kind() == WeightMeasure::Kind::chebyshev ||
                           (w.kind() == WeightMeasure::Kind::custom &&
                            w.endpoint_singularity().value_or(false));
  const double lo = theta_space ? 0.0 : -1.0;
  const double hi = theta_space ? kPi : 1.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    for (size_t i = 0; i < g24.nodes.size(); ++i) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * g24.nodes[i];
      const double base = 0.5 * (b - a) * g24.coeffs[i][0];
      if (w.kind() == WeightMeasure::Kind::chebyshev) {
        grid.x.push_back(std::cos(t));
        grid.wt.push_back(base);
      } else if (theta_space) {
        grid.x.push_back(std::cos(t));
        grid.wt.push_back(base * w.density(std::cos(t)) * std::sin(t));
      } else {
        grid.x.push_back(t);
        grid.wt.push_back(base * w.density(t));
      }
    }
  }
  return grid;
}

}  // namespace

int round_even(int k) {
  if (k < 1) throw std::domain_error("round_even: need k >= 1");
  return k + (k & 1);
}

NodeScheme::NodeScheme(std::vector<double> nodes_, std::vector<int> mults_)
    : nodes(std::move(nodes_)), mults(std::move(mults_)) {
  if (nodes.empty() || nodes.size() != mults.size())
    throw std::invalid_argument("NodeScheme: inconsistent shapes");
  for (size_t j = 0; j < nodes.size(); ++j) {
    if (!(std::abs(nodes[j]) <= 1.0))
      throw std::domain_error("NodeScheme: nodes must lie in [-1,1]");
    if (j + 1 < nodes.size() && !(nodes[j] < nodes[j + 1]))
      throw std::domain_error("NodeScheme: nodes must be strictly ascending");
    if (mults[j] < 1) throw std::domain_error("NodeScheme: multiplicities must be >= 1");
  }
}

int NodeScheme::total() const {
  int n = 0;
  for (int k : mults) n += k;
  return n;
}

std::vector<int> NodeScheme::even_mults() const {
  std::vector<int> r;
  r.reserve(mults.size());
  for (int k : mults) r.push_back(round_even(k));
  return r;
}

AnalyticFunction extremal_function(const ConformalMap& map, const NodeScheme& scheme) {
  const std::vector<int> rs = scheme.even_mults();
  std::vector<double> fj(scheme.nodes.size());
  for (size_t j = 0; j < scheme.nodes.size(); ++j) fj[j] = map.real_at(scheme.nodes[j]);

  AnalyticFunction f;
  f.domain = map.domain();
  f.bound = 1.0;
  f.real_on_real = true;
  f.eval = [map, fj, rs](const Complex& z) {
    const Complex F = map(z);
    Complex prod = 1.0;
    for (size_t j = 0; j < fj.size(); ++j)
      prod *= pow_int((F - fj[j]) / (1.0 - fj[j] * F), rs[j]);
    return prod;
  };
  return f;
}

double jplus_exact(const ConformalMap& map, const WeightMeasure& w, const NodeScheme& scheme,
                   double tol) {
  const std::vector<int> rs = scheme.even_mults();
  std::vector<double> sj(scheme.nodes.size());
  for (size_t j = 0; j < scheme.nodes.size(); ++j) sj[j] = map.atanh_at(scheme.nodes[j]);
  // m(f(x), f(x_j)) = |tanh(s(x) - s_j)| with s = atanh(f); log-space product
  const auto integrand = [&](double x) {
    const double s = map.atanh_at(x);
    double lg = 0.0;
    for (size_t j = 0; j < sj.size(); ++j) {
      const double l = detail::log_tanh_abs(s - sj[j]);
      if (std::isinf(l)) return 0.0;
      lg += rs[j] * l;
    }
    return std::exp(lg);
  };
  return integrate_against(w, integrand, tol);
}

JplusResult jplus_minimize(const ConformalMap& map, const WeightMeasure& w, int N,
                           const OptimizerConfig& cfg) {
  if (N < 1) throw std::invalid_argument("jplus_minimize: need N >= 1");

  const ObjectiveGrid grid = make_grid(w);
  std::vector<double> Sgrid(grid.x.size());
  for (size_t i = 0; i < grid.x.size(); ++i) Sgrid[i] = map.atanh_at(grid.x[i]);

  // objective for fixed even multiplicities rs and Poincare node coordinates sj
  const auto objective = [&](const std::vector<double>& sj, const std::vector<int>& rs) {
    double acc = 0.0;
    for (size_t i = 0; i < grid.x.size(); ++i) {
      double lg = 0.0;
      bool zero = false;
      for (size_t j = 0; j < sj.size(); ++j) {
        const double l = detail::log_tanh_abs(Sgrid[i] - sj[j]);
        if (std::isinf(l)) {
          zero = true;
          break;
        }
        lg += rs[j] * l;
      }
      if (!zero) acc += grid.wt[i] * std::exp(lg);
    }
    if (cfg.jplus_floor && 2.0 * acc < *cfg.jplus_floor * (1.0 - 1e-9))
      throw std::logic_error("jplus_minimize: scheme fell below the guaranteed J+ floor");
    return acc;
  };

  // multiplicity splits to explore
  std::vector<std::vector<int>> splits;
  splits.push_back(std::vector<int>(N, 1));
  if (cfg.exhaustive_multiplicities && N <= 6) {
    std::vector<int> cur;
    const std::function<void(int)> rec = [&](int rest) {
      if (rest == 0) {
        if (static_cast<int>(cur.size()) < N) splits.push_back(cur);
        return;
      }
      for (int k = 1; k <= rest; ++k) {
        cur.push_back(k);
        rec(rest - k);
        cur.pop_back();
      }
    };
    rec(N);
  }

  struct Candidate {
    double value;
    std::vector<double> nodes;
    std::vector<int> mults;
  };

  const auto run_start = [&](std::vector<double> nodes, const std::vector<int>& mults) {
    std::vector<int> rs;
    rs.reserve(mults.size());
    for (int k : mults) rs.push_back(round_even(k));
    const int n = static_cast<int>(nodes.size());
    std::vector<double> sj(n);
    for (int j = 0; j < n; ++j) sj[j] = map.atanh_at(nodes[j]);
    double best = objective(sj, rs);

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      double moved = 0.0;
      for (int j = 0; j < n; ++j) {
        const double gap = 1e-6;
        double lo = (j == 0) ? -1.0 : nodes[j - 1] + gap;
        double hi = (j == n - 1) ? 1.0 : nodes[j + 1] - gap;
        if (!(lo < hi)) continue;
        const auto eval1d = [&](double xj) {
          sj[j] = map.atanh_at(xj);
          return objective(sj, rs);
        };
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = eval1d(x1), f2 = eval1d(x2);
        for (int it = 0; it < 60 && hi - lo > 0.25 * cfg.step_tol; ++it) {
          if (f1 > f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval1d(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval1d(x1);
          }
        }
        const double xnew = (f1 < f2) ? x1 : x2;
        const double fnew = std::min(f1, f2);
        if (fnew < best) {
          moved = std::max(moved, std::abs(xnew - nodes[j]));
          nodes[j] = xnew;
          best = fnew;
        }
        sj[j] = map.atanh_at(nodes[j]);
      }
      if (moved < cfg.step_tol) break;
    }
    return Candidate{best, std::move(nodes), mults};
  };

  const WeightMeasure leb = WeightMeasure::lebesgue();
  std::vector<std::pair<std::vector<double>, std::vector<int>>> starts;
  for (const auto& mults : splits) {
    const int n = static_cast<int>(mults.size());
    // Chebyshev points
    std::vector<double> cheb(n);
    for (int j = 0; j < n; ++j) cheb[j] = -std::cos((2.0 * j + 1.0) * kPi / (2.0 * n));
    std::sort(cheb.begin(), cheb.end());
    starts.emplace_back(cheb, mults);
    // equispaced interior points
    std::vector<double> eq(n);
    for (int j = 0; j < n; ++j) eq[j] = -1.0 + 2.0 * (j + 1.0) / (n + 1.0);
    starts.emplace_back(eq, mults);
    // Gauss-Legendre nodes
    starts.emplace_back(gauss_rule(leb, n).nodes, mults);
    // seeded random starts
    for (int s = 0; s < cfg.random_starts; ++s) {
      std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * (s + 1) + 131 * starts.size());
      std::vector<double> r(n);
      for (int tries = 0; tries < 1000; ++tries) {
        for (int j = 0; j < n; ++j) r[j] = -0.999 + 1.998 * uniform01(rng);
        std::sort(r.begin(), r.end());
        bool ok = true;
        for (int j = 0; j + 1 < n; ++j) ok = ok && (r[j + 1] - r[j] > 1e-3);
        if (ok) break;
      }
      starts.emplace_back(r, mults);
    }
  }

  // starts run concurrently; the reduction is deterministic (best value,
  // ties broken by lexicographically smallest node vector)
  std::vector<std::future<Candidate>> futs;
  futs.reserve(starts.size());
  for (const auto& [nodes, mults] : starts)
    futs.push_back(std::async(std::launch::async, run_start, nodes, std::cref(mults)));
  std::vector<Candidate> cands;
  cands.reserve(futs.size());
  for (auto& f : futs) cands.push_back(f.get());

  const Candidate* best = &cands.front();
  for (const Candidate& c : cands) {
    if (c.value < best->value - 0.0 ||
        (c.value == best->value && c.nodes < best->nodes))
      best = &c;
  }

  NodeScheme scheme(best->nodes, best->mults);
  return JplusResult{jplus_exact(map, w, scheme, cfg.final_tol), std::move(scheme)};
}

Adversary adversary_for_rule(const ConformalMap& map, const WeightMeasure& w,
                             const QuadratureRule& rule, double M, double tol) {
  if (!(M >= 0.0)) throw std::domain_error("adversary_for_rule: need M >= 0");
  NodeScheme scheme = [&] {
    try {
      return NodeScheme(rule.nodes, rule.orders);
    } catch (const std::exception&) {
      throw std::domain_error("adversary_for_rule: rule carries node/multiplicity data "
                              "the extremal construction cannot honor");
    }
  }();

  const AnalyticFunction base = extremal_function(map, scheme);
  AnalyticFunction f0 = base;
  f0.bound = M;
  f0.eval = [base, M](const Complex& z) { return M * base.eval(z); };
  const double guaranteed = M == 0.0 ? 0.0 : M * jplus_exact(map, w, scheme, tol);
  return Adversary{std::move(f0), guaranteed};
}

AnalyticFunction symmetrize_real(const AnalyticFunction& g, Complex omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw std::domain_error("symmetrize_real: need |omega| = 1");
  AnalyticFunction h;
  h.domain = g.domain;
  h.bound = g.bound;
  h.real_on_real = true;
  auto eval = g.eval;
  h.eval = [eval, omega](const Complex& z) {
    return 0.5 * (omega * eval(z) + std::conj(omega * eval(std::conj(z))));
  };
  return h;
}

}  // namespace quadbound
