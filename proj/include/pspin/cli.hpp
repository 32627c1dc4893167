#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "pspin/table.hpp"

namespace pspin::cli {

inline constexpr const char* kToolName = "pspin";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kSuccess = 0, kIoError = 1, kArgumentError = 2, kNumericalFailure = 3 };

/// Locale-independent rendering with 12 significant digits; "nan", "inf".
std::string format_number(double value);

/// Header row of column names, then one line per row.
void write_csv(const Table& table, std::ostream& out);

/// {"metadata": ..., "columns": [...], "rows": [{column: value}, ...]} with
/// numbers rounded exactly as in the CSV and NaN mapped to null.
void write_json(const Table& table, const nlohmann::ordered_json& metadata, std::ostream& out);

/// Entry point behind the pspin executable. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pspin::cli
