#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "quadbound/cli.hpp"
#include "test_util.hpp"

using namespace quadbound;
using testutil::close_rel;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double find_value(const std::vector<BoundRecord>& rows, const std::string& name, double c,
                  double N_or_n) {
  for (const BoundRecord& r : rows) {
    if (r.name != name) continue;
    const auto pc = r.params.find("c");
    if (pc == r.params.end() || pc->second != c) continue;
    const auto pn = r.params.find("N") != r.params.end() ? r.params.find("N")
                                                         : r.params.find("n");
    if (pn != r.params.end() && pn->second == N_or_n) return r.value;
  }
  throw std::runtime_error("row not found: " + name);
}

}  // namespace

TEST_CASE("run_bounds emits the documented rows") {
  cli::RunConfig cfg;
  cfg.command = "bounds";
  cfg.c_list = {2.0};
  cfg.n_list = {4};
  cfg.weight = "lebesgue";
  const auto rows = cli::run_bounds(cfg);
  CHECK(close_rel(find_value(rows, "new_lower_ellipse", 2.0, 4.0), 2.85315214344192e-6, 1e-11));
  CHECK(close_rel(find_value(rows, "gauss_upper_petras", 2.0, 4.0),
                  gauss_legendre_upper(2.0, 4, GaussUpperMethod::petras), 1e-15));
  for (const char* name :
       {"delta_sup", "bakhvalov_lower", "petras_explicit_lower", "petras_kn",
        "chebyshev_witness_lower", "gauss_upper_rabinowitz", "gauss_upper_petras26"}) {
    bool found = false;
    for (const BoundRecord& r : rows) found = found || r.name == name;
    CHECK_MESSAGE(found, name);
  }

  cfg.weight = "chebyshev";
  const auto cheb = cli::run_bounds(cfg);
  CHECK(close_rel(find_value(cheb, "osipenko_chebyshev", 2.0, 4.0), 2.0 * 3.14159265358979 / 256.0,
                  1e-10));
  bool has_measure = false;
  for (const BoundRecord& r : cheb) has_measure = has_measure || r.name == "new_lower_measure";
  CHECK(has_measure);
}

TEST_CASE("rows are sorted by (name, c, n)") {
  cli::RunConfig cfg;
  cfg.c_list = {2.0, 1.5};
  cfg.n_list = {4, 2};
  const auto rows = cli::run_bounds(cfg);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i - 1].name <= rows[i].name);
  }
}

TEST_CASE("reports are byte-stable and JSON round-trips") {
  cli::RunConfig cfg;
  cfg.c_list = {1.5, 2.0};
  cfg.n_list = {2, 4};
  const auto rows1 = cli::run_bounds(cfg);
  const auto rows2 = cli::run_bounds(cfg);
  CHECK(cli::render_csv(rows1, cfg.weight) == cli::render_csv(rows2, cfg.weight));

  const std::string json = cli::render_json(rows1, cfg.weight);
  const auto parsed = nlohmann::json::parse(json);
  std::vector<BoundRecord> back;
  for (const auto& j : parsed) {
    BoundRecord r;
    r.name = j.at("name").get<std::string>();
    r.kind = j.at("kind") == "lower" ? BoundRecord::Kind::lower : BoundRecord::Kind::upper;
    r.value = j.at("value").get<double>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
    r.provenance = j.at("provenance").get<std::string>();
    back.push_back(std::move(r));
  }
  CHECK(cli::render_json(back, cfg.weight) == json);
}

TEST_CASE("adversary command scales linearly in M and asserts the guarantee") {
  cli::RunConfig cfg;
  cfg.c_list = {1.5};
  cfg.n_list = {2};
  bool ok = false;
  const auto rows1 = cli::run_adversary(cfg, ok);
  CHECK(ok);
  cfg.M = 10.0;
  const auto rows10 = cli::run_adversary(cfg, ok);
  CHECK(ok);
  const double g1 = find_value(rows1, "adversary_guaranteed", 1.5, 2.0);
  const double g10 = find_value(rows10, "adversary_guaranteed", 1.5, 2.0);
  CHECK(close_rel(g10, 10.0 * g1, 1e-12));
  const double m1 = find_value(rows1, "adversary_measured", 1.5, 2.0);
  CHECK(m1 >= g1 - cfg.tol);
}

TEST_CASE("cli entry point: exit codes and outputs") {
  // usage errors
  CHECK(cli::run({"bounds"}) == 2);                            // no domain
  CHECK(cli::run({"bounds", "--ellipse", "c=0.9"}) == 2);      // c <= 1
  CHECK(cli::run({"bounds", "--ellipse", "c=2", "--weight", "sine"}) == 2);
  CHECK(cli::run({"bounds", "--ellipse", "c=2", "--format", "xml"}) == 2);
  CHECK(cli::run({"bounds", "--ellipse", "c=2", "--n", "0"}) == 2);
  CHECK(cli::run({"frobnicate"}) == 2);

  // a real bounds run, twice, byte-identical
  const std::string out1 = "/tmp/quadbound_test_rows1.csv";
  const std::string out2 = "/tmp/quadbound_test_rows2.csv";
  CHECK(cli::run({"bounds", "--ellipse", "c=1.5,2", "--n", "2,4", "--seed", "7", "--out", out1}) ==
        0);
  CHECK(cli::run({"bounds", "--ellipse", "c=1.5,2", "--n", "2,4", "--seed", "7", "--out", out2}) ==
        0);
  const std::string text = slurp(out1);
  CHECK(text == slurp(out2));
  CHECK(text.rfind("name,kind,c,n,N,weight,value,provenance", 0) == 0);

  // adversary with export side files
  const std::string table = "/tmp/quadbound_test_table.csv";
  const std::string desc = "/tmp/quadbound_test_desc.json";
  CHECK(cli::run({"adversary", "--ellipse", "c=2", "--n", "2", "--out",
                  "/tmp/quadbound_test_adv.csv", "--export-table", table, "--export-descriptor",
                  desc}) == 0);
  const auto j = nlohmann::json::parse(slurp(desc));
  CHECK(j.at("c").get<double>() == 2.0);
  CHECK(j.at("nodes").size() == 2);
  CHECK(slurp(table).rfind("x,f0", 0) == 0);

  // export needs a single (domain, n)
  CHECK(cli::run({"adversary", "--ellipse", "c=1.5,2", "--n", "2", "--export-table", table}) == 2);
}
