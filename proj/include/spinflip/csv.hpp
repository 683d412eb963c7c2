#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace spinflip {

/// Numeric table written as RFC 4180 CSV with `#` metadata lines.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// 17 significant digits, enough to round-trip any double. NaN prints as "nan".
std::string format_double(double x);

/// One `# ` line: artifact version, schema version, command and the full
/// resolved configuration as compact JSON.
std::string metadata_line(std::string_view command, const nlohmann::json& config);

void write_csv(std::ostream& out, const Table& table, std::string_view metadata);

/// JSON mirror of a table; NaN becomes null.
nlohmann::json table_to_json(const Table& table, std::string_view command,
                             const nlohmann::json& config);

}  // namespace spinflip
