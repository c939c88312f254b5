#pragma once

#include <nlohmann/json.hpp>

#include <deque>
#include <filesystem>
#include <string>
#include <vector>

namespace twisted::cli {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<nlohmann::json> rows;  ///< each row is a JSON array, one cell per column
};

struct VerdictEntry {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string id;
  std::string kind;
  std::uint64_t seed = 0;
  nlohmann::json config;
  std::deque<Table> tables;  ///< stable references while tables are appended
  std::vector<VerdictEntry> verdicts;
  nlohmann::json summary = nlohmann::json::object();
  double seconds = 0.0;

  bool all_pass() const;
  const Table& table(const std::string& name) const;
};

/// Full report document; timing lives under "timing" only.
nlohmann::json to_json(const Report& report);
std::string table_csv(const Table& table);

/// Writes report.json and <table>.csv for each table into `dir`.
void write_outputs(const Report& report, const std::filesystem::path& dir);

}  // namespace twisted::cli
