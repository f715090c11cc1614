#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fkm/report.hpp"

namespace fkm {

enum class ReportFormat { kJson, kText };

struct CliOptions {
  VerificationConfig config;
  std::optional<std::string> out;
  ReportFormat format = ReportFormat::kJson;
  std::optional<std::string> dump_matrices;
  bool help = false;
  std::string help_text;
};

/// Parses `m:k[,m:k...]`. Throws ParseError naming the offending token.
std::vector<GridEntry> parse_grid(const std::string& spec);

/// Parses command-line arguments (without the program name). `env_seed` is the
/// value of FKM_SEED, used when --seed is absent. Throws ParseError on any
/// usage error.
CliOptions parse_cli(const std::vector<std::string>& args,
                     const std::optional<std::string>& env_seed = std::nullopt);

/// Runs the verifier for parsed options, writing the report and optional
/// matrix dump. Returns the process exit code.
int run_cli(const CliOptions& opts);

}  // namespace fkm
