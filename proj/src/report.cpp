#include "hilbmod/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hilbmod {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

Table::Table(std::string n, std::vector<std::string> cols) : name(std::move(n)), columns(std::move(cols)) {}

void Table::addRow(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw InvalidArgument("Table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                          std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& col) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == col) return i;
  throw InvalidArgument("Table " + name + ": no column " + col);
}

const std::string& Table::cell(std::size_t row, const std::string& col) const { return rows.at(row)[column(col)]; }

double Table::number(std::size_t row, const std::string& col) const { return std::stod(cell(row, col)); }

namespace {

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string Table::csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csvField(columns[i]);
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csvField(r[i]);
    os << '\n';
  }
  return os.str();
}

VerdictEntry make_verdict(std::string name, const ConvergenceResult& r) {
  return VerdictEntry{std::move(name), r.verdict, r.rule, r.incrementRate, r.thresholds.describe()};
}

const Table& ExperimentReport::table(const std::string& t) const {
  for (const auto& tab : tables)
    if (tab.name == t) return tab;
  throw InvalidArgument("report " + name + ": no table " + t);
}

const VerdictEntry& ExperimentReport::verdict(const std::string& v) const {
  for (const auto& e : verdicts)
    if (e.name == v) return e;
  throw InvalidArgument("report " + name + ": no verdict " + v);
}

bool ExperimentReport::hasVerdict(const std::string& v) const {
  for (const auto& e : verdicts)
    if (e.name == v) return true;
  return false;
}

std::string report_json(const ExperimentReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["experiment"] = r.name;
  j["seed"] = r.seed;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  ordered_json results = ordered_json::object();
  for (const auto& [k, v] : r.summary) results[k] = v;
  j["results"] = results;
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.verdicts) {
    ordered_json e;
    e["name"] = v.name;
    e["verdict"] = to_string(v.verdict);
    e["rule"] = v.rule;
    e["increment_rate"] = v.incrementRate ? format_number(*v.incrementRate) : "";
    e["thresholds"] = v.thresholds;
    verdicts.push_back(e);
  }
  j["verdicts"] = verdicts;
  ordered_json tables = ordered_json::array();
  for (const auto& t : r.tables) {
    ordered_json e;
    e["name"] = t.name;
    e["file"] = t.name + ".csv";
    e["columns"] = t.columns;
    e["rows"] = t.rows.size();
    tables.push_back(e);
  }
  j["tables"] = tables;
  j["notes"] = r.notes;
  j["theorem_violation"] = r.theoremViolation;
  return j.dump(2) + "\n";
}

void write_report(const ExperimentReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto put = [&](const std::filesystem::path& p, const std::string& content) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << content;
  };
  put(dir / "report.json", report_json(r));
  for (const auto& t : r.tables) put(dir / (t.name + ".csv"), t.csv());
}

std::string summary_text(const ExperimentReport& r) {
  std::ostringstream os;
  os << r.name << " (seed " << r.seed << ")\n";
  std::size_t width = 0;
  for (const auto& [k, v] : r.summary) width = std::max(width, k.size());
  for (const auto& v : r.verdicts)
    if (v.name.find('[') == std::string::npos) width = std::max(width, v.name.size());
  for (const auto& [k, v] : r.summary) os << "  " << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  std::size_t perPair = 0;
  for (const auto& v : r.verdicts) {
    if (v.name.find('[') != std::string::npos) {
      ++perPair;
      continue;
    }
    os << "  " << v.name << std::string(width - v.name.size() + 2, ' ') << to_string(v.verdict) << "  [" << v.rule
       << "]\n";
  }
  if (perPair > 0) os << "  (" << perPair << " per-pair verdicts in report.json)\n";
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  if (r.theoremViolation) os << "  THEOREM CHECK FAILED\n";
  return os.str();
}

}  // namespace hilbmod
