#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "p1energy/metric.hpp"

namespace p1energy::io {

// Deterministic decimal rendering used everywhere a double reaches an output
// file (12 significant digits).
std::string format_double(double v);

// PointSet JSON: {"schema":1, "field":{...}, "points":[[c0,c1],...]} with
// p-adic coordinates as decimal strings of unit * p^val (or exact rationals
// and precision balls).
std::string point_set_to_json(const metric::PointSet& z);
metric::PointSet point_set_from_json(const std::string& text);

// CSV with versioned comment header: "# schema=1", one "# key=value" line
// per metadata entry, then the column row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& columns,
            const std::vector<std::pair<std::string, std::string>>& meta);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  size_t width_;
};

}  // namespace p1energy::io
