#include "fkm/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fkm/clifford.hpp"
#include "fkm/errors.hpp"

namespace fkm {

namespace {

int parse_int(const std::string& text, const std::string& token) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ParseError("malformed grid token '" + token + "': expected m:k with integers");
  return value;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ParseError("seed must be an unsigned 64-bit integer, got '" + text + "'");
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + text + "' is not a number");
  }
}

void apply_tolerance(Tolerances& tol, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) throw ParseError("--tol expects name=value, got '" + item + "'");
  const std::string name = item.substr(0, eq);
  const double value = parse_double(item.substr(eq + 1), "--tol " + name);
  if (!(value > 0.0)) throw ParseError("--tol " + name + " must be positive");
  if (name == "pde")
    tol.pde = value;
  else if (name == "cert")
    tol.cert = value;
  else if (name == "geom")
    tol.geom = value;
  else if (name == "willmore")
    tol.willmore = value;
  else
    throw ParseError("unknown tolerance '" + name + "' (expected pde, cert, geom, willmore)");
}

FaultInjection parse_fault(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4)
    throw ParseError("--inject-fault expects alpha:row:col:amount, got '" + text + "'");
  FaultInjection f;
  f.alpha = parse_int(parts[0], text);
  f.row = parse_int(parts[1], text);
  f.col = parse_int(parts[2], text);
  f.amount = parse_double(parts[3], "--inject-fault amount");
  return f;
}

}  // namespace

std::vector<GridEntry> parse_grid(const std::string& spec) {
  std::vector<GridEntry> grid;
  std::stringstream ss(spec);
  for (std::string token; std::getline(ss, token, ',');) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw ParseError("malformed grid token '" + token + "'");
    GridEntry e;
    e.m = parse_int(token.substr(0, colon), token);
    e.k = parse_int(token.substr(colon + 1), token);
    if (e.m < 1) throw ParseError("grid token '" + token + "': m must be >= 1");
    if (e.k < 1) throw ParseError("grid token '" + token + "': k must be >= 1");
    grid.push_back(e);
  }
  if (grid.empty()) throw ParseError("--grid needs at least one m:k entry");
  return grid;
}

CliOptions parse_cli(const std::vector<std::string>& args,
                     const std::optional<std::string>& env_seed) {
  CliOptions opts;
  VerificationConfig& cfg = opts.config;

  CLI::App app{"Numerical verification that focal submanifolds M+ of FKM isoparametric "
               "polynomials are Willmore",
               "fkm_verify"};
  std::string grid, seed, format = "json", fault;
  std::vector<std::string> tols;
  std::string out, dump;
  app.add_option("--grid", grid, "Configurations as m:k[,m:k...]");
  app.add_option("--points", cfg.n_points, "Focal points per configuration")
      ->check(CLI::PositiveNumber);
  app.add_option("--normals", cfg.n_normals, "Random unit normals per point")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--pde-samples", cfg.pde_samples, "Sphere samples for the Cartan-Munzner check")
      ->check(CLI::PositiveNumber);
  app.add_option("--ricci-dirs", cfg.ricci_dirs, "Random tangent directions per point")
      ->check(CLI::Range(2, 1000000));
  app.add_option("--seed", seed, "64-bit seed (falls back to FKM_SEED, then 0)");
  app.add_option("--tol", tols, "Tolerance override name=value (pde, cert, geom, willmore)")
      ->take_all();
  app.add_option("--out", out, "Report file (default: standard output)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--dump-matrices", dump, "Write the integer Clifford matrices to PATH");
  app.add_option("--threads", cfg.threads, "Worker threads for per-point work")
      ->check(CLI::PositiveNumber);
  app.add_option("--inject-fault", fault, "Shift one entry: alpha:row:col:amount");
  app.add_flag("--timing", cfg.include_timing, "Include wall time in the report");
  app.add_flag("--export-points", cfg.export_points, "Include sampled points in the report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    opts.help = true;
    opts.help_text = app.help();
    return opts;
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  if (!grid.empty()) cfg.configurations = parse_grid(grid);
  if (!seed.empty())
    cfg.seed = parse_seed(seed);
  else if (env_seed && !env_seed->empty())
    cfg.seed = parse_seed(*env_seed);
  for (const std::string& t : tols) apply_tolerance(cfg.tolerances, t);
  if (!out.empty()) opts.out = out;
  if (!dump.empty()) opts.dump_matrices = dump;
  if (!fault.empty()) cfg.fault = parse_fault(fault);
  opts.format = format == "text" ? ReportFormat::kText : ReportFormat::kJson;
  return opts;
}

int run_cli(const CliOptions& opts) {
  if (opts.help) {
    std::cout << opts.help_text;
    return 0;
  }
  if (opts.dump_matrices) {
    std::ofstream dump(*opts.dump_matrices);
    if (!dump) {
      std::cerr << "cannot open " << *opts.dump_matrices << '\n';
      return 2;
    }
    for (const GridEntry& e : opts.config.configurations) {
      try {
        write_matrix_dump(dump, build_clifford_system(e.m, e.k));
      } catch (const AdmissibilityError&) {
      }
    }
  }

  const VerificationReport report = run_suite(opts.config);
  const std::string body = opts.format == ReportFormat::kJson
                               ? to_json(report, opts.config).dump(2) + "\n"
                               : render_text(report);
  if (opts.out) {
    std::ofstream file(*opts.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open " << *opts.out << '\n';
      return 2;
    }
    file << body;
  } else {
    std::cout << body;
  }
  return report.exit_code();
}

}  // namespace fkm
