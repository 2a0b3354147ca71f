#pragma once

// CSV output with RFC-4180 quoting. Every file starts with a comment line
// carrying the tool version, seed and tolerance, then a header row.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "renyikit/protocol_sim.hpp"

namespace renyikit {

/// Quotes the field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

/// "# renyikit <version> seed=<seed|none> tol=<tol>"
std::string csv_comment(std::optional<std::uint64_t> seed, double tol);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view line);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

/// Shortest round-trip text; "inf", "-inf", "nan" for non-finite values.
std::string csv_number(double v);

inline const std::vector<std::string> kSimRecordColumns = {
    "n", "M", "beta", "estimator", "value_bits", "stderr", "seed", "rounding_note", "caveat"};

/// Header plus one row per record. `scale` multiplies value and stderr
/// (ln 2 for nats); the column name follows the unit.
void write_sim_records(CsvWriter& w, const std::vector<SimRecord>& records,
                       double scale = 1.0, std::string_view unit = "bits");

}  // namespace renyikit
