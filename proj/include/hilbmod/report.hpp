#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbmod/schatten.hpp"

namespace hilbmod {

/// Shortest decimal form that reads back to the same double ("%.17g" family),
/// "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  Table() = default;
  Table(std::string name, std::vector<std::string> columns);

  void addRow(std::vector<std::string> row);
  std::size_t column(const std::string& name) const;
  const std::string& cell(std::size_t row, const std::string& col) const;
  double number(std::size_t row, const std::string& col) const;
  std::string csv() const;
};

struct VerdictEntry {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  std::string rule;
  std::optional<double> incrementRate;
  std::string thresholds;
};

VerdictEntry make_verdict(std::string name, const ConvergenceResult& r);

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Table> tables;
  std::vector<VerdictEntry> verdicts;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  double runtimeSeconds = 0.0;
  /// Set when a theorem-backed finite-matrix check failed.
  bool theoremViolation = false;

  void param(const std::string& key, const std::string& value) { parameters.emplace_back(key, value); }
  void result(const std::string& key, const std::string& value) { summary.emplace_back(key, value); }
  const Table& table(const std::string& name) const;
  const VerdictEntry& verdict(const std::string& name) const;
  bool hasVerdict(const std::string& name) const;
};

/// report.json content: everything except runtimeSeconds, keys in insertion order.
std::string report_json(const ExperimentReport& report);

/// Writes report.json and <table>.csv into `dir` (created if missing).
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

/// Plain-text summary for the terminal.
std::string summary_text(const ExperimentReport& report);

}  // namespace hilbmod
