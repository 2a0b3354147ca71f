#include "renyikit/csv.hpp"

#include <cmath>

#include "renyikit/order.hpp"
#include "renyikit/version.hpp"

namespace renyikit {

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_comment(std::optional<std::uint64_t> seed, double tol) {
  return std::string("# renyikit ") + kVersion +
         " seed=" + (seed ? std::to_string(*seed) : std::string("none")) +
         " tol=" + format_double(tol);
}

void CsvWriter::comment(std::string_view line) {
  if (line.empty() || line.front() != '#') out_ << "# ";
  out_ << line << "\r\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << "\r\n";
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

void write_sim_records(CsvWriter& w, const std::vector<SimRecord>& records, double scale,
                       std::string_view unit) {
  auto header = kSimRecordColumns;
  header[4] = "value_" + std::string(unit);
  w.row(header);
  for (const auto& r : records) {
    w.row({std::to_string(r.n), std::to_string(r.M), csv_number(r.beta), r.estimator,
           csv_number(r.value_bits * scale),
           r.stderr_bits ? csv_number(*r.stderr_bits * scale) : std::string(),
           r.seed ? std::to_string(*r.seed) : std::string(), r.rounding_note, r.caveat});
  }
}

}  // namespace renyikit
