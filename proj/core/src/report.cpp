// report.cpp

#include "ladderlab/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace ladderlab::experiments {
namespace {

nlohmann::ordered_json to_json(const ConvergenceReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& p : r.params) params[p.name] = p.value;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& n : r.notes) notes[n.name] = n.value;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"tau", row.tau},
                    {"value", row.value},
                    {"target", row.target},
                    {"deviation", row.deviation},
                    {"error_scale", row.error_scale}});
  }
  return {{"experiment_id", r.experiment_id},
          {"params", params},
          {"verdict", std::string(to_string(r.verdict))},
          {"floor", r.floor},
          {"rows", rows},
          {"notes", notes}};
}

void upsert(std::vector<NamedValue>& list, std::string name, std::string value) {
  for (auto& item : list) {
    if (item.name == name) {
      item.value = std::move(value);
      return;
    }
  }
  list.push_back({std::move(name), std::move(value)});
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::trend_ok: return "trend_ok";
    case Verdict::trend_violated: return "trend_violated";
    case Verdict::inconclusive: break;
  }
  return "inconclusive";
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void ConvergenceReport::add_row(double tau, double value, double target, double error_scale) {
  rows.push_back({tau, value, target, value / target - 1.0, error_scale});
}

void ConvergenceReport::set_param(std::string name, std::string value) {
  upsert(params, std::move(name), std::move(value));
}
void ConvergenceReport::set_param(std::string name, double value) {
  upsert(params, std::move(name), format_number(value));
}
void ConvergenceReport::set_note(std::string name, std::string value) {
  upsert(notes, std::move(name), std::move(value));
}
void ConvergenceReport::set_note(std::string name, double value) {
  upsert(notes, std::move(name), format_number(value));
}

const std::string* ConvergenceReport::note(std::string_view name) const {
  for (const auto& n : notes) {
    if (n.name == name) return &n.value;
  }
  return nullptr;
}

std::string ConvergenceReport::param_string() const {
  std::string out;
  for (const auto& p : params) {
    if (!out.empty()) out += ';';
    out += p.name + '=' + p.value;
  }
  return out;
}

void ConvergenceReport::finalize(double floor_value) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.tau < b.tau; });
  floor = floor_value;
  verdict = assess_trend(rows, floor_value);
}

Verdict assess_trend(std::span<const ReportRow> rows, double floor) {
  if (rows.size() < 2) return Verdict::inconclusive;
  for (const auto& r : rows) {
    if (!std::isfinite(r.deviation)) return Verdict::inconclusive;
  }
  const double first = std::abs(rows.front().deviation);
  const double last = std::abs(rows.back().deviation);
  const std::size_t start = rows.size() >= 3 ? rows.size() - 3 : 0;
  bool nonincreasing = true;
  bool under_floor = true;
  for (std::size_t i = start; i < rows.size(); ++i) {
    const double d = std::abs(rows[i].deviation);
    if (d > floor) under_floor = false;
    if (i > start && d > std::abs(rows[i - 1].deviation)) nonincreasing = false;
  }
  // Wobble below the floor is noise, not a trend.
  if (under_floor) return Verdict::trend_ok;
  return (last <= first && nonincreasing) ? Verdict::trend_ok : Verdict::trend_violated;
}

void write_csv_header(std::ostream& out) {
  out << "experiment_id,params,tau,value,target,deviation,error_scale\n";
}

void write_csv_rows(const ConvergenceReport& report, std::ostream& out) {
  const std::string params = report.param_string();
  for (const auto& r : report.rows) {
    out << report.experiment_id << ',' << params << ',' << format_number(r.tau) << ','
        << format_number(r.value) << ',' << format_number(r.target) << ','
        << format_number(r.deviation) << ',' << format_number(r.error_scale) << '\n';
  }
}

void write_csv(const ConvergenceReport& report, std::ostream& out) {
  write_csv_header(out);
  write_csv_rows(report, out);
}

void write_json(const ConvergenceReport& report, std::ostream& out) {
  out << to_json(report).dump(2) << '\n';
}

void write_json(std::span<const ConvergenceReport> reports, std::ostream& out) {
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const auto& r : reports) all.push_back(to_json(r));
  out << all.dump(2) << '\n';
}

}  // namespace ladderlab::experiments
