#pragma once

#include <string>
#include <variant>
#include <vector>

namespace pspin {

using Cell = std::variant<double, long long, std::string>;

/// Column-named result table; the unit of CSV/JSON serialization.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

}  // namespace pspin
