#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fkm/verification.hpp"

namespace fkm {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "fkm-willmore-report/1";

struct GridEntry {
  int m = 1;
  int k = 1;
  friend bool operator==(const GridEntry&, const GridEntry&) = default;
};

/// Default grid covering m = 1..6 with ambient dimension at most 16.
std::vector<GridEntry> default_grid();

struct Tolerances {
  double pde = 1e-8;
  double cert = 1e-10;
  double geom = 1e-8;
  double willmore = 1e-7;
};

/// Shifts entry (row, col) of P_alpha by `amount` in every configuration.
struct FaultInjection {
  int alpha = 0;
  int row = 0;
  int col = 0;
  double amount = 1e-3;
};

struct VerificationConfig {
  std::vector<GridEntry> configurations = default_grid();
  int n_points = 20;
  int n_normals = 50;
  int pde_samples = 1000;
  int ricci_dirs = 100;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::optional<FaultInjection> fault;
  int threads = 1;
  bool include_timing = false;
  bool export_points = false;
};

enum class ConfigStatus { kVerified, kFailed, kInadmissible, kError };
std::string to_string(ConfigStatus status);

struct ConfigurationResult {
  GridEntry entry;
  int l = 0;
  int m1 = 0;
  int m2 = 0;
  int focal_dim = 0;
  ConfigStatus status = ConfigStatus::kVerified;
  std::string error;
  bool internal_error = false;  ///< aborted by an unexpected numerical failure

  /// Measured values grouped by pipeline stage, in insertion order.
  nlohmann::ordered_json sections = nlohmann::ordered_json::object();
  /// One entry per acceptance-relevant check, in key order.
  std::map<std::string, bool> checks;
  std::vector<std::vector<double>> points;

  bool pass() const { return status == ConfigStatus::kVerified; }
};

struct VerificationReport {
  std::vector<ConfigurationResult> configurations;
  std::uint64_t seed = 0;
  std::optional<double> wall_time_s;
  bool overall_pass = true;

  /// 0 all pass, 1 verification failure, 3 internal numerical error.
  int exit_code() const;
};

/// Runs the full pipeline for every grid entry. Each entry's seed is
/// mix_seed(cfg.seed, index). Hard errors inside an entry mark it and the run
/// continues.
VerificationReport run_suite(const VerificationConfig& cfg);

nlohmann::ordered_json to_json(const VerificationReport& report, const VerificationConfig& cfg);
std::string render_text(const VerificationReport& report);

}  // namespace fkm
