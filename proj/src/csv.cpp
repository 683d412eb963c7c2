#include "spinflip/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "spinflip/config.hpp"

#ifndef SPINFLIP_VERSION
#define SPINFLIP_VERSION "0.0.0"
#endif

namespace spinflip {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string metadata_line(std::string_view command, const nlohmann::json& config) {
  std::string line = "# spinflip version=" SPINFLIP_VERSION " schema_version=";
  line += std::to_string(kSchemaVersion);
  line += " command=";
  line += command;
  line += " config=";
  line += config.dump();
  return line;
}

void write_csv(std::ostream& out, const Table& table, std::string_view metadata) {
  out << metadata << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << '\n';
  }
}

nlohmann::json table_to_json(const Table& table, std::string_view command,
                             const nlohmann::json& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (double x : row) {
      if (std::isfinite(x)) r.push_back(x);
      else r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  return {{"spinflip_version", SPINFLIP_VERSION},
          {"schema_version", kSchemaVersion},
          {"command", command},
          {"config", config},
          {"columns", table.columns},
          {"rows", std::move(rows)}};
}

}  // namespace spinflip
