#include "twisted_cli/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "twisted/errors.hpp"
#include "twisted/format.hpp"

namespace twisted::cli {

namespace {

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

bool Report::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const VerdictEntry& v) { return v.pass; });
}

const Table& Report::table(const std::string& name) const {
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw InvalidInput("report has no table '" + name + "'");
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["id"] = report.id;
  doc["kind"] = report.kind;
  doc["seed"] = report.seed;
  doc["config"] = report.config;
  auto& tables = doc["tables"] = nlohmann::json::object();
  for (const auto& t : report.tables) tables[t.name] = {{"columns", t.columns}, {"rows", t.rows}};
  auto& verdicts = doc["verdicts"] = nlohmann::json::array();
  for (const auto& v : report.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  doc["summary"] = report.summary;
  doc["timing"] = {{"seconds", report.seconds}};
  return doc;
}

std::string table_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

void write_outputs(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << body;
  };
  write(dir / "report.json", to_json(report).dump(2) + "\n");
  for (const auto& t : report.tables) write(dir / (t.name + ".csv"), table_csv(t));
}

}  // namespace twisted::cli
