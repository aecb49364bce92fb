#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadbound/bounds.hpp"

namespace quadbound::cli {

struct RunConfig {
  std::string command;             // bounds | adversary | sweep | verify
  std::vector<double> c_list;      // ellipse parameters, each > 1
  std::vector<int> n_list{4};      // polynomial degrees / Gauss sizes
  std::vector<int> N_list;         // information counts (defaults to n)
  std::string weight = "lebesgue"; // lebesgue | chebyshev
  double M = 1.0;
  double eps = 1e-6;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::string out;                 // empty = stdout
  std::string format = "csv";     // csv | json
  std::string preset;              // named domain preset
  std::string export_table;        // adversary: CSV samples x,f0(x)
  std::string export_descriptor;   // adversary: JSON {c, nodes, mults, M}
  double dev_perturb_gamma = 0.0;  // verify self-test hook
};

/// Report rows produced by the bounds/adversary/sweep commands.
std::vector<BoundRecord> run_bounds(const RunConfig& cfg);
std::vector<BoundRecord> run_adversary(const RunConfig& cfg, bool& all_ok);
std::vector<BoundRecord> run_sweep(const RunConfig& cfg, bool& all_ok);

std::string render_csv(const std::vector<BoundRecord>& rows, const std::string& weight);
std::string render_json(const std::vector<BoundRecord>& rows, const std::string& weight);

/// Entry point. Exit codes: 0 success, 1 verification/assertion failure,
/// 2 usage error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace quadbound::cli
