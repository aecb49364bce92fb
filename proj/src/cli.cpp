#include "quadbound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quadbound/extremal.hpp"
#include "quadbound/hyperbolic.hpp"
#include "quadbound/verify.hpp"

namespace quadbound::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_real_list(std::string text) {
  if (const auto eq = text.find('='); eq != std::string::npos) text = text.substr(eq + 1);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw UsageError("cannot parse real value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_real_list(text)) {
    if (v != std::floor(v)) throw UsageError("expected integer list, got '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

BoundRecord record(std::string name, BoundRecord::Kind kind, double value,
                   std::map<std::string, double> params, std::string provenance) {
  if (!std::isfinite(value) || value < 0.0)
    throw std::logic_error("bound record '" + name + "' has invalid value");
  return BoundRecord{std::move(name), kind, value, std::move(params), std::move(provenance)};
}

WeightMeasure weight_of(const RunConfig& cfg) {
  if (cfg.weight == "lebesgue") return WeightMeasure::lebesgue();
  if (cfg.weight == "chebyshev") return WeightMeasure::chebyshev();
  throw UsageError("unsupported weight '" + cfg.weight + "'");
}

struct DomainChoice {
  bool is_disk = false;
  double value = 0.0;  // ellipse c, or disk radius
};

std::vector<DomainChoice> domains_of(const RunConfig& cfg) {
  std::vector<DomainChoice> out;
  for (double c : cfg.c_list) {
    if (!(c > 1.0)) throw UsageError("ellipse parameter must satisfy c > 1");
    out.push_back({false, c});
  }
  if (!cfg.preset.empty()) {
    if (cfg.preset == "thin")
      out.push_back({false, 1.05});
    else if (cfg.preset == "classic")
      out.push_back({false, 2.0});
    else if (cfg.preset == "wide")
      out.push_back({false, 4.0});
    else if (cfg.preset == "disk2")
      out.push_back({true, 2.0});
    else
      throw UsageError("unknown preset '" + cfg.preset + "'");
  }
  if (out.empty()) throw UsageError("no domain given: use --ellipse c=<r> or --preset");
  return out;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw UsageError("need --tol > 0");
  for (int n : cfg.n_list)
    if (n < 1) throw UsageError("need n >= 1");
  for (int N : cfg.N_list)
    if (N < 1) throw UsageError("need N >= 1");
  if (!(cfg.M >= 0.0)) throw UsageError("need M >= 0");
  if (cfg.format != "csv" && cfg.format != "json")
    throw UsageError("unsupported format '" + cfg.format + "'");
  weight_of(cfg);
}

void sort_rows(std::vector<BoundRecord>& rows) {
  const auto param = [](const BoundRecord& r, const char* key) {
    const auto it = r.params.find(key);
    return it == r.params.end() ? 0.0 : it->second;
  };
  std::sort(rows.begin(), rows.end(), [&](const BoundRecord& x, const BoundRecord& y) {
    if (x.name != y.name) return x.name < y.name;
    if (param(x, "c") != param(y, "c")) return param(x, "c") < param(y, "c");
    if (param(x, "n") != param(y, "n")) return param(x, "n") < param(y, "n");
    return param(x, "N") < param(y, "N");
  });
}

void bounds_rows_for(const RunConfig& cfg, const DomainChoice& dom, int n,
                     std::vector<BoundRecord>& rows) {
  const WeightMeasure w = weight_of(cfg);
  const bool leb = w.kind() == WeightMeasure::Kind::lebesgue;
  const int N = n;

  if (dom.is_disk) {
    const double delta = dom.value;
    rows.push_back(record("delta_sup", BoundRecord::Kind::lower, delta, {{"N", double(N)}},
                          "largest disk about the segment inside the domain"));
    if (leb)
      rows.push_back(record("new_lower_gamma", BoundRecord::Kind::lower,
                            new_lower_gamma(delta, N, true), {{"N", double(N)}},
                            "conformal-distance bound via segment clearance"));
    rows.push_back(record("new_lower_measure", BoundRecord::Kind::lower,
                          new_lower_measure(w, delta, 0.5, N), {{"N", double(N)}},
                          "measure-aware conformal-distance bound"));
    return;
  }

  const double c = dom.value;
  const EllipseDomain e(c);
  const double delta = e.delta_sup();
  const double cm2n = std::exp(-2.0 * n * std::log(c));

  rows.push_back(record("delta_sup", BoundRecord::Kind::lower, delta, {{"c", c}},
                        "ellipse segment clearance (c^2-1)/(2c)"));
  if (leb) {
    rows.push_back(record("new_lower_ellipse", BoundRecord::Kind::lower, new_lower_ellipse(c, N),
                          {{"c", c}, {"n", double(n)}, {"N", double(N)}},
                          "conformal-distance lower bound, ellipse closed form"));
    rows.push_back(record("new_lower_gamma", BoundRecord::Kind::lower,
                          new_lower_gamma(delta, N, true),
                          {{"c", c}, {"n", double(n)}, {"N", double(N)}, {"delta", delta}},
                          "conformal-distance bound via segment clearance"));
  } else {
    rows.push_back(record("new_lower_measure", BoundRecord::Kind::lower,
                          new_lower_measure(w, delta, 0.5, N),
                          {{"c", c}, {"n", double(n)}, {"N", double(N)}, {"delta", delta}},
                          "measure-aware conformal-distance bound"));
  }

  const BakhvalovWeight preset = leb ? BakhvalovWeight::lebesgue() : BakhvalovWeight::chebyshev();
  rows.push_back(record("bakhvalov_lower", BoundRecord::Kind::lower,
                        bakhvalov_kappa0(c, preset) * cm2n, {{"c", c}, {"n", double(n)}},
                        "Bakhvalov (1955) kappa0 c^{-2n}"));
  rows.push_back(record("petras_explicit_lower", BoundRecord::Kind::lower,
                        petras_explicit_lower(w.kind(), c, n), {{"c", c}, {"n", double(n)}},
                        leb ? "Petras (1998) Cor. 3.6" : "Petras (1998) Cor. 3.5"));
  rows.push_back(record("petras_kn", BoundRecord::Kind::lower, petras_kn(w, c, n),
                        {{"c", c}, {"n", double(n)}},
                        "Petras (1998) Thm 2.1 orthonormal-polynomial bound"));
  if (!leb)
    rows.push_back(record("osipenko_chebyshev", BoundRecord::Kind::lower,
                          osipenko_chebyshev(c, n), {{"c", c}, {"n", double(n)}},
                          "Osipenko (1995) 2 pi c^{-2n} (asymptotic reference)"));
  // information-count estimates from the fixed M and eps
  if (cfg.M / cfg.eps > 1.0) {
    const double Me = cfg.M / cfg.eps;
    const EllipseNodeEstimates est = ellipse_node_estimates(Me, c);
    rows.push_back(record("node_lower_exact", BoundRecord::Kind::lower, est.exact,
                          {{"c", c}, {"M_over_eps", Me}},
                          "information count forced by the conformal-distance bound"));
    if (c < 2.0)
      rows.push_back(record("node_lower_asymptotic", BoundRecord::Kind::lower, est.asymptotic,
                            {{"c", c}, {"M_over_eps", Me}},
                            "thin-ellipse asymptotic of the information count"));
    rows.push_back(record("node_gauss_upper", BoundRecord::Kind::upper,
                          std::log(Me) / std::log(c), {{"c", c}, {"M_over_eps", Me}},
                          "Gauss-Legendre node count reaching accuracy eps"));
  }

  if (leb) {
    rows.push_back(record("chebyshev_witness_lower", BoundRecord::Kind::lower,
                          chebyshev_witness_lower(c, n).bound, {{"c", c}, {"n", double(n)}},
                          "Petras (1995) scaled T_{2n} witness"));
    rows.push_back(record("gauss_upper_rabinowitz", BoundRecord::Kind::upper,
                          gauss_legendre_upper(c, n, GaussUpperMethod::rabinowitz),
                          {{"c", c}, {"n", double(n)}}, "Rabinowitz (1969) eq. (18)"));
    rows.push_back(record("gauss_upper_petras", BoundRecord::Kind::upper,
                          gauss_legendre_upper(c, n, GaussUpperMethod::petras),
                          {{"c", c}, {"n", double(n)}}, "Petras (1995) Thm 4"));
    rows.push_back(record("gauss_upper_petras26", BoundRecord::Kind::upper,
                          gauss_legendre_upper(c, n, GaussUpperMethod::petras26),
                          {{"c", c}, {"n", double(n)}}, "Petras (1995) 26 c^{-2n}"));
  }
}

ConformalMap map_of(const DomainChoice& dom) {
  return dom.is_disk ? ConformalMap::disk(dom.value) : ConformalMap::ellipse(dom.value);
}

void export_adversary(const RunConfig& cfg, const DomainChoice& dom, const Adversary& adv,
                      const QuadratureRule& rule) {
  if (!cfg.export_table.empty()) {
    std::ofstream out(cfg.export_table);
    if (!out) throw UsageError("cannot open " + cfg.export_table);
    out << "x,f0\n";
    char buf[96];
    for (int i = 0; i <= 512; ++i) {
      const double x = -1.0 + 2.0 * i / 512.0;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, adv.f0.real_at(x));
      out << buf;
    }
  }
  if (!cfg.export_descriptor.empty()) {
    nlohmann::json j;
    if (dom.is_disk)
      j["c"] = nullptr;
    else
      j["c"] = dom.value;
    j["domain"] = adv.f0.domain.name;
    j["nodes"] = rule.nodes;
    j["mults"] = rule.orders;
    j["M"] = cfg.M;
    std::ofstream out(cfg.export_descriptor);
    if (!out) throw UsageError("cannot open " + cfg.export_descriptor);
    out << j.dump(2) << "\n";
  }
}

}  // namespace

std::vector<BoundRecord> run_bounds(const RunConfig& cfg) {
  validate(cfg);
  std::vector<BoundRecord> rows;
  for (const DomainChoice& dom : domains_of(cfg))
    for (int n : cfg.n_list) bounds_rows_for(cfg, dom, n, rows);
  // extra information counts, when requested explicitly
  const WeightMeasure w = weight_of(cfg);
  for (const DomainChoice& dom : domains_of(cfg)) {
    if (dom.is_disk) continue;
    const double c = dom.value;
    const double delta = EllipseDomain(c).delta_sup();
    for (int N : cfg.N_list) {
      if (w.kind() == WeightMeasure::Kind::lebesgue)
        rows.push_back(record("new_lower_ellipse", BoundRecord::Kind::lower,
                              new_lower_ellipse(c, N), {{"c", c}, {"N", double(N)}},
                              "conformal-distance lower bound, ellipse closed form"));
      else
        rows.push_back(record("new_lower_measure", BoundRecord::Kind::lower,
                              new_lower_measure(w, delta, 0.5, N),
                              {{"c", c}, {"N", double(N)}, {"delta", delta}},
                              "measure-aware conformal-distance bound"));
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<BoundRecord> run_adversary(const RunConfig& cfg, bool& all_ok) {
  validate(cfg);
  all_ok = true;
  const WeightMeasure w = weight_of(cfg);
  const bool leb = w.kind() == WeightMeasure::Kind::lebesgue;
  const auto domains = domains_of(cfg);
  const bool exporting = !cfg.export_table.empty() || !cfg.export_descriptor.empty();
  if (exporting && (domains.size() != 1 || cfg.n_list.size() != 1))
    throw UsageError("adversary export needs exactly one domain and one n");

  std::vector<BoundRecord> rows;
  for (const DomainChoice& dom : domains) {
    const ConformalMap map = map_of(dom);
    for (int n : cfg.n_list) {
      const QuadratureRule rule = gauss_rule(w, n);
      const Adversary adv = adversary_for_rule(map, w, rule, cfg.M, 1e-12);
      const double measured = std::abs(quadrature_error(rule, adv.f0, w, std::min(cfg.tol, 1e-10)));
      std::map<std::string, double> params{{"n", double(n)}, {"N", double(rule.info_count())},
                                           {"M", cfg.M}};
      if (!dom.is_disk) params["c"] = dom.value;
      rows.push_back(record("adversary_guaranteed", BoundRecord::Kind::lower,
                            adv.guaranteed_error, params, "M J+ at the rule's own scheme"));
      rows.push_back(record("adversary_measured", BoundRecord::Kind::lower, measured, params,
                            "measured |I - Q| on the adversary"));
      if (leb)
        rows.push_back(record("new_lower_gamma", BoundRecord::Kind::lower,
                              cfg.M * new_lower_gamma(map.delta_sup(), rule.info_count(), map.convex()),
                              params, "conformal-distance bound via segment clearance"));
      if (measured < adv.guaranteed_error - cfg.tol) {
        all_ok = false;
        std::cerr << "adversary check failed: measured " << measured << " < guaranteed "
                  << adv.guaranteed_error << " - tol (" << adv.f0.domain.name << ", n=" << n
                  << ")\n";
      }
      if (exporting) export_adversary(cfg, dom, adv, rule);
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<BoundRecord> run_sweep(const RunConfig& cfg, bool& all_ok) {
  validate(cfg);
  // grid points evaluated concurrently, gathered in deterministic order
  std::vector<std::future<std::vector<BoundRecord>>> futs;
  for (const DomainChoice& dom : domains_of(cfg)) {
    futs.push_back(std::async(std::launch::async, [cfg, dom]() {
      RunConfig one = cfg;
      one.c_list = dom.is_disk ? std::vector<double>{} : std::vector<double>{dom.value};
      one.preset = dom.is_disk ? "disk2" : "";
      std::vector<BoundRecord> rows = run_bounds(one);
      bool ok = true;
      std::vector<BoundRecord> adv = run_adversary(one, ok);
      if (!ok) throw std::runtime_error("adversary check failed during sweep");
      rows.insert(rows.end(), adv.begin(), adv.end());
      return rows;
    }));
  }
  std::vector<BoundRecord> rows;
  all_ok = true;
  for (auto& f : futs) {
    try {
      const auto part = f.get();
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const std::runtime_error&) {
      all_ok = false;
    }
  }
  sort_rows(rows);
  return rows;
}

std::string render_csv(const std::vector<BoundRecord>& rows, const std::string& weight) {
  std::string out = BoundRecord::csv_header();
  out += '\n';
  for (const BoundRecord& r : rows) {
    out += r.csv_row(weight);
    out += '\n';
  }
  return out;
}

std::string render_json(const std::vector<BoundRecord>& rows, const std::string& weight) {
  nlohmann::json arr = nlohmann::json::array();
  for (const BoundRecord& r : rows) {
    nlohmann::json j = nlohmann::json::parse(r.to_json());
    j["weight"] = weight;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

namespace {

int emit(const RunConfig& cfg, const std::vector<BoundRecord>& rows) {
  const std::string text =
      cfg.format == "csv" ? render_csv(rows, cfg.weight) : render_json(rows, cfg.weight);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    if (!out) throw UsageError("cannot open " + cfg.out);
    out << text;
  }
  return 0;
}

int run_verify_command(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.slack = cfg.tol;
  opt.gamma_perturb = cfg.dev_perturb_gamma;
  opt.seed = cfg.seed;
  const auto results = run_acceptance(opt);
  bool all = true;
  for (const CriterionResult& r : results) {
    std::cout << (r.passed ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.title;
    if (!r.detail.empty()) std::cout << " -- " << r.detail;
    std::cout << "\n";
    all = all && r.passed;
  }
  std::cout << (all ? "verification passed" : "verification FAILED") << " ("
            << std::count_if(results.begin(), results.end(),
                             [](const CriterionResult& r) { return r.passed; })
            << "/" << results.size() << " criteria)\n";
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"bounds for worst-case quadrature errors of bounded analytic integrands"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string ellipse_arg, n_arg, N_arg;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--ellipse", ellipse_arg, "ellipse parameter list, e.g. c=1.5,2");
    sub->add_option("--preset", cfg.preset, "named domain: thin|classic|wide|disk2");
    sub->add_option("--weight", cfg.weight, "lebesgue|chebyshev")->capture_default_str();
    sub->add_option("--n", n_arg, "comma list of Gauss sizes");
    sub->add_option("--N", N_arg, "comma list of information counts");
    sub->add_option("--M", cfg.M, "sup-norm bound")->capture_default_str();
    sub->add_option("--eps", cfg.eps, "target accuracy for node estimates")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "assertion slack / integration tolerance")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv|json")->capture_default_str();
  };

  CLI::App* bounds = app.add_subcommand("bounds", "tabulate all bounds on a (c, n) grid");
  add_common(bounds);
  CLI::App* adversary =
      app.add_subcommand("adversary", "build worst-case integrands for Gauss rules");
  add_common(adversary);
  adversary->add_option("--export-table", cfg.export_table, "CSV samples x,f0(x)");
  adversary->add_option("--export-descriptor", cfg.export_descriptor,
                        "JSON descriptor {c, nodes, mults, M}");
  CLI::App* sweep = app.add_subcommand("sweep", "bounds + adversary over the whole grid");
  add_common(sweep);
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify);
  verify->add_option("--dev-perturb-gamma", cfg.dev_perturb_gamma,
                     "mutation self-test: perturb the gamma bound and expect failure");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!ellipse_arg.empty()) cfg.c_list = parse_real_list(ellipse_arg);
    if (!n_arg.empty()) cfg.n_list = parse_int_list(n_arg);
    if (!N_arg.empty()) cfg.N_list = parse_int_list(N_arg);

    if (verify->parsed()) {
      cfg.command = "verify";
      return run_verify_command(cfg);
    }
    bool ok = true;
    std::vector<BoundRecord> rows;
    if (bounds->parsed()) {
      cfg.command = "bounds";
      rows = run_bounds(cfg);
    } else if (adversary->parsed()) {
      cfg.command = "adversary";
      rows = run_adversary(cfg, ok);
    } else {
      cfg.command = "sweep";
      rows = run_sweep(cfg, ok);
    }
    emit(cfg, rows);
    return ok ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace quadbound::cli
