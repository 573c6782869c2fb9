// report.hpp
//
// ConvergenceReport: the rows of one finite-tau experiment and its verdict.
//
// CSV schema (one row per checkpoint, header always present):
//   experiment_id,params,tau,value,target,deviation,error_scale
// params is "name=value" pairs joined with ';'. deviation = value/target - 1.
//
// JSON schema:
//   { "experiment_id": str, "params": {name: str}, "verdict": str,
//     "floor": num, "rows": [{tau, value, target, deviation, error_scale}],
//     "notes": {name: str} }

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ladderlab::experiments {

enum class Verdict { trend_ok, trend_violated, inconclusive };
std::string_view to_string(Verdict v) noexcept;

struct NamedValue {
  std::string name;
  std::string value;
};

struct ReportRow {
  double tau = 0.0;
  double value = 0.0;
  double target = 0.0;
  double deviation = 0.0;
  double error_scale = 0.0;
};

struct ConvergenceReport {
  std::string experiment_id;
  std::vector<NamedValue> params;
  std::vector<ReportRow> rows;
  Verdict verdict = Verdict::inconclusive;
  double floor = 0.0;
  std::vector<NamedValue> notes;

  void add_row(double tau, double value, double target, double error_scale);
  void set_param(std::string name, std::string value);
  void set_param(std::string name, double value);
  void set_note(std::string name, std::string value);
  void set_note(std::string name, double value);
  // nullptr when absent.
  const std::string* note(std::string_view name) const;
  std::string param_string() const;
  // Sorts rows by tau and assigns the verdict.
  void finalize(double floor);
};

// Fewer than two finite rows: inconclusive. Otherwise trend_ok when the last
// three |deviation| are all at most floor, or when they are nonincreasing and
// the last does not exceed the first.
Verdict assess_trend(std::span<const ReportRow> rows, double floor);

// Shortest decimal text that round-trips.
std::string format_number(double x);

void write_csv_header(std::ostream& out);
void write_csv_rows(const ConvergenceReport& report, std::ostream& out);
void write_csv(const ConvergenceReport& report, std::ostream& out);
void write_json(const ConvergenceReport& report, std::ostream& out);
void write_json(std::span<const ConvergenceReport> reports, std::ostream& out);

}  // namespace ladderlab::experiments
