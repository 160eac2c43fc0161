#include "qcorr_app/table.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qcorr::app {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> Table::column(std::size_t i) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const double* v = std::get_if<double>(&row.at(i));
    out.push_back(v ? *v : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

std::size_t Table::column_index(const std::string& n) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == n) return i;
  throw std::out_of_range("no column " + n);
}

void write_csv(std::ostream& out, const Table& t) {
  out << "# " << t.comment << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* v = std::get_if<double>(&row[i]))
        out << format_number(*v);
      else
        out << std::get<std::string>(row[i]);
    }
    out << '\n';
  }
  if (t.failure) out << "# FAILED: " << *t.failure << '\n';
}

}  // namespace qcorr::app
