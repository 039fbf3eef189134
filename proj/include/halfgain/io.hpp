#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "halfgain/sim.hpp"
#include "halfgain/tuning.hpp"

namespace halfgain {

using Json = nlohmann::ordered_json;

inline constexpr int kCsvSignificantDigits = 12;

/// Shortest "%.12g" rendering; inf/nan are written as inf, -inf, nan.
std::string format_number(double value);

/// Column-oriented numeric table with a header row. Written comma-separated
/// with LF line endings.
class CsvTable {
 public:
  void add_column(std::string name, std::vector<double> values);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }
  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const { return columns_.empty() ? 0 : columns_.front().size(); }
  std::size_t cols() const { return columns_.size(); }

  void write(std::ostream& out) const;
  /// Throws ConfigError on malformed input.
  static CsvTable read(std::istream& in);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> columns_;
};

/// time, r, d, n, u, y, xhat1 … xhat{n+1}
CsvTable trace_table(const SimTrace& trace);

Json to_json(const Metrics& m);
Json complex_list_json(const ComplexList& values);

}  // namespace halfgain
