#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ttlab {

struct ComparisonRow {
  std::string name;
  double empirical = 0.0;
  double theoretical = 0.0;
  double std_error = 0.0;
  std::optional<double> ks;
  double tolerance = 0.0;
  bool pass = false;
  std::string target_formula;  // auditable statement of the theoretical target
};

struct ComparisonReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string version;
  bool incomplete = false;
  std::vector<ComparisonRow> rows;

  bool all_pass() const;
  void add(ComparisonRow row);
};

// FNV-1a 64-bit hash of the raw config bytes, as 16 hex digits.
std::string config_hash_hex(const std::string& raw);

// Fixed decimal formatting with 17 significant digits (reproducible CSV).
std::string format_g17(double x);

// Byte-stable JSON serialization of the report.
std::string report_to_json(const ComparisonReport& report);

// Minimal CSV sink with deterministic formatting.
class CsvSink {
 public:
  CsvSink() = default;
  explicit CsvSink(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }
  void write_file(const std::string& path) const;

 private:
  std::string text_;
  std::size_t columns_ = 0;
};

}  // namespace ttlab
