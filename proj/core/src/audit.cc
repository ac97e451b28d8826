#include "causalnet/audit.h"

#include <algorithm>

#include <fmt/format.h>

namespace causalnet {

bool AuditReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const AuditEntry& e) {
    return !e.asserted || e.pass;
  });
}

double AuditReport::worst_deviation() const {
  double worst = 0.0;
  for (const auto& e : entries) {
    if (e.asserted) worst = std::max(worst, e.deviation);
  }
  return worst;
}

std::string FormatReal(double value) {
  // fmt's default formatting ignores the global locale.
  std::string s = fmt::format("{:.9f}", value);
  if (s == "-0.000000000") s.erase(0, 1);
  return s;
}

namespace {

std::string Status(const AuditEntry& e) {
  if (!e.asserted) return e.pass ? "info:holds" : "info:fails";
  return e.pass ? "pass" : "FAIL";
}

std::string CsvField(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

}  // namespace

std::string FormatAuditTable(const AuditReport& report) {
  std::size_t label_width = 5;
  std::size_t status_width = 6;
  for (const auto& e : report.entries) {
    label_width = std::max(label_width, e.label.size());
    status_width = std::max(status_width, Status(e).size());
  }
  std::string out;
  if (!report.title.empty()) out += report.title + "\n";
  out += fmt::format("{:<{}}  {:<{}}  {:>12}  {}\n", "check", label_width,
                     "status", status_width, "deviation", "detail");
  for (const auto& e : report.entries) {
    std::string detail = e.witness;
    if (!e.note.empty()) {
      detail += detail.empty() ? e.note : " (" + e.note + ")";
    }
    std::string line =
        fmt::format("{:<{}}  {:<{}}  {:>12}  {}", e.label, label_width,
                    Status(e), status_width, FormatReal(e.deviation), detail);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  out += std::string("overall: ") + (report.pass() ? "pass" : "FAIL") + "\n";
  return out;
}

std::string FormatAuditCsv(const AuditReport& report) {
  std::string out = "check,asserted,pass,deviation,witness,note\n";
  for (const auto& e : report.entries) {
    out += CsvField(e.label) + "," + (e.asserted ? "1" : "0") + "," +
           (e.pass ? "1" : "0") + "," + FormatReal(e.deviation) + "," +
           CsvField(e.witness) + "," + CsvField(e.note) + "\n";
  }
  return out;
}

}  // namespace causalnet
