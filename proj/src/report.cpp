#include <cstdio>

#include "json.hpp"
#include "quadbound/bounds.hpp"

namespace quadbound {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string param_or_empty(const std::map<std::string, double>& params, const char* key,
                           bool integral) {
  const auto it = params.find(key);
  if (it == params.end()) return "";
  if (integral) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(it->second));
    return buf;
  }
  return fmt_double(it->second);
}

}  // namespace

std::string BoundRecord::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["kind"] = kind == Kind::lower ? "lower" : "upper";
  j["value"] = value;
  j["params"] = params;
  j["provenance"] = provenance;
  return j.dump();
}

std::string BoundRecord::csv_header() { return "name,kind,c,n,N,weight,value,provenance"; }

std::string BoundRecord::csv_row(const std::string& weight) const {
  std::string row = name;
  row += ',';
  row += kind == Kind::lower ? "lower" : "upper";
  row += ',';
  row += param_or_empty(params, "c", false);
  row += ',';
  row += param_or_empty(params, "n", true);
  row += ',';
  row += param_or_empty(params, "N", true);
  row += ',';
  row += weight;
  row += ',';
  row += fmt_double(value);
  row += ',';
  row += provenance;
  return row;
}

}  // namespace quadbound
