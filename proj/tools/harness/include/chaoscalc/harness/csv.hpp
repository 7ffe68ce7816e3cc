#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace chaoscalc::harness {

/// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_double(double v);

using CsvField = std::variant<std::string, double, long long, bool>;

/// Comma-separated rows with a header line.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<CsvField>& fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace chaoscalc::harness
