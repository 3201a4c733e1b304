#include "gmd/table_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gmd/errors.hpp"

namespace gmd {

namespace {

constexpr const char* kQuantileHeader = "q,row_label,value,stderr,excluded_count\n";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::string& where) {
  if (text.empty()) throw DataError("empty field at " + where);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) {
    throw DataError("cannot parse '" + text + "' at " + where);
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> read_csv_column(const std::string& path, bool has_header,
                                    const std::string& column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  std::size_t index = 0;
  std::size_t line_no = 0;
  if (has_header) {
    if (!std::getline(in, line)) throw DataError(path + " is empty");
    ++line_no;
    if (!column.empty()) {
      const auto names = split_fields(line);
      std::size_t i = 0;
      for (; i < names.size() && names[i] != column; ++i) {
      }
      if (i == names.size()) throw DataError(path + " has no column '" + column + "'");
      index = i;
    }
  } else if (!column.empty()) {
    throw DataError("column '" + column + "' requested but " + path + " has no header");
  }
  std::vector<double> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    const std::string where = path + ":" + std::to_string(line_no);
    if (index >= fields.size()) throw DataError("missing field at " + where);
    out.push_back(parse_number(fields[index], where));
  }
  return out;
}

void write_quantile_table(std::ostream& os, const QuantileTable& table) {
  os << kQuantileHeader;
  for (std::size_t i = 0; i < table.q_levels.size(); ++i) {
    os << format_number(table.q_levels[i]) << ',' << to_string(table.source) << ','
       << format_number(table.quantiles[i]) << ',';
    if (table.replication_stats) os << format_number(table.replication_stats->std_error[i]);
    os << ',' << table.excluded << '\n';
  }
}

void write_approximation_report(std::ostream& os, const ApproximationReport& report) {
  os << kQuantileHeader;
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < report.q_levels.size(); ++i) {
      os << format_number(report.q_levels[i]) << ',' << row.label << ','
         << format_number(row.values[i]) << ',';
      if (!row.std_errors.empty()) os << format_number(row.std_errors[i]);
      os << ',' << row.excluded << '\n';
    }
  }
}

void write_bias_mse_report(std::ostream& os, const BiasMseReport& report) {
  os << "p_over_N,row_label,value,stderr,excluded_count\n";
  for (const char* what : {"bias", "rmse"}) {
    for (const auto& row : report.rows) {
      const double v = what[0] == 'b' ? row.bias_x10 : row.rmse_x10;
      os << format_number(row.p_over_N) << ',' << what << '_' << row.method << ','
         << format_number(v) << ",,0\n";
    }
  }
}

}  // namespace gmd
