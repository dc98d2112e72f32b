#include "ttlab/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ttlab/version.hpp"

namespace ttlab {

bool ComparisonReport::all_pass() const {
  for (const auto& row : rows)
    if (!row.pass) return false;
  return !incomplete;
}

void ComparisonReport::add(ComparisonRow row) { rows.push_back(std::move(row)); }

std::string config_hash_hex(const std::string& raw) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : raw) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_to_json(const ComparisonReport& report) {
  nlohmann::ordered_json j;
  j["scenario"] = report.scenario;
  j["provenance"] = {{"config_hash", report.config_hash},
                     {"seed", report.seed},
                     {"version", report.version.empty() ? kVersion
                                                        : report.version}};
  j["incomplete"] = report.incomplete;
  j["all_pass"] = report.all_pass();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["name"] = row.name;
    r["empirical"] = format_g17(row.empirical);
    r["theoretical"] = format_g17(row.theoretical);
    r["std_error"] = format_g17(row.std_error);
    if (row.ks)
      r["ks"] = format_g17(*row.ks);
    else
      r["ks"] = nullptr;
    r["tolerance"] = format_g17(row.tolerance);
    r["pass"] = row.pass;
    r["target"] = row.target_formula;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

CsvSink::CsvSink(std::vector<std::string> header) : columns_(header.size()) {
  row(header);
}

void CsvSink::row(const std::vector<std::string>& cells) {
  if (columns_ == 0) columns_ = cells.size();
  if (cells.size() != columns_)
    throw std::invalid_argument("CsvSink: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void CsvSink::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text_;
}

}  // namespace ttlab
