#pragma once

#include <map>
#include <string>
#include <vector>

namespace fkm {

/// Outcome of a single numerical check. Failures are reported here rather than thrown.
struct VerificationRecord {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  /// Named sub-residuals, kept in key order for stable reports.
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;

  /// Folds another deviation into the running maximum. NaN counts as failure.
  void observe(double deviation);
  /// Recomputes `pass` from the stored maximum (strict `<` unless tolerance is 0).
  void finalize();
};

}  // namespace fkm
