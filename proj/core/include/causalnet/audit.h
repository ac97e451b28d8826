#ifndef CAUSALNET_AUDIT_H_
#define CAUSALNET_AUDIT_H_

#include <string>
#include <vector>

namespace causalnet {

// One checked (or merely reported) claim.
struct AuditEntry {
  std::string label;
  bool pass = true;
  double deviation = 0.0;
  std::string witness;
  // Informational rows are reported but do not affect the overall verdict.
  bool asserted = true;
  std::string note;
};

struct AuditReport {
  std::string title;
  std::vector<AuditEntry> entries;

  bool pass() const;
  double worst_deviation() const;  // over asserted entries
};

// Reals are printed with nine fixed fractional digits.
std::string FormatReal(double value);

std::string FormatAuditTable(const AuditReport& report);
// Header "check,asserted,pass,deviation,witness,note".
std::string FormatAuditCsv(const AuditReport& report);

}  // namespace causalnet

#endif  // CAUSALNET_AUDIT_H_
