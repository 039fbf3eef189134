#include "halfgain/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace halfgain {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", kCsvSignificantDigits, value);
  return buf;
}

void CsvTable::add_column(std::string name, std::vector<double> values) {
  if (!columns_.empty() && values.size() != rows())
    throw DimensionError("csv: column '" + name + "' has " + std::to_string(values.size()) + " rows, expected " +
                         std::to_string(rows()));
  header_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return columns_[i];
  throw DimensionError("csv: no column named '" + name + "'");
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t j = 0; j < header_.size(); ++j) out << (j ? "," : "") << header_[j];
  out << '\n';
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < columns_.size(); ++j) out << (j ? "," : "") << format_number(columns_[j][i]);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable CsvTable::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: missing header");
  CsvTable t;
  t.header_ = split(line);
  t.columns_.resize(t.header_.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header_.size())
      throw ConfigError("csv: line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) + " cells");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      char* end = nullptr;
      const double v = std::strtod(cells[j].c_str(), &end);
      if (end == cells[j].c_str() || *end != '\0')
        throw ConfigError("csv: line " + std::to_string(lineno) + ": not a number '" + cells[j] + "'");
      t.columns_[j].push_back(v);
    }
  }
  return t;
}

CsvTable trace_table(const SimTrace& trace) {
  CsvTable t;
  t.add_column("time", trace.time);
  t.add_column("r", trace.r);
  t.add_column("d", trace.d);
  t.add_column("n", trace.n);
  t.add_column("u", trace.u);
  t.add_column("y", trace.y);
  for (Eigen::Index j = 0; j < trace.xhat.cols(); ++j) {
    const Eigen::VectorXd col = trace.xhat.col(j);
    t.add_column("xhat" + std::to_string(j + 1), std::vector<double>(col.data(), col.data() + col.size()));
  }
  return t;
}

Json to_json(const Metrics& m) {
  Json j;
  j["rms_u"] = m.rms_u;
  j["rms_y_err"] = m.rms_y_err;
  j["overshoot_pct"] = m.overshoot_pct;
  j["settling_time_2pct"] = m.settling_time_2pct;
  return j;
}

Json complex_list_json(const ComplexList& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back({{"re", v.real()}, {"im", v.imag()}});
  return arr;
}

}  // namespace halfgain
