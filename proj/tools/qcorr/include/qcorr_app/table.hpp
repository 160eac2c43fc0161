// Buffered CSV tables: rows are filled by index and written in order.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qcorr::app {

using Cell = std::variant<double, std::string>;

struct Table {
  std::string name;     // file stem
  std::string comment;  // resolved configuration, written as "# ..."
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::optional<std::string> failure;  // written as a FAILED footer

  std::vector<double> column(std::size_t i) const;  // numeric cells only; others become NaN
  std::size_t column_index(const std::string& name) const;
};

// %.12g
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);

}  // namespace qcorr::app
