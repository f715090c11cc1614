#include "fkm/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

#include "fkm/clifford.hpp"
#include "fkm/errors.hpp"
#include "fkm/extrinsic_geometry.hpp"
#include "fkm/fkm_polynomial.hpp"
#include "fkm/focal_sampler.hpp"
#include "fkm/random.hpp"
#include "fkm/willmore.hpp"

namespace fkm {

namespace {

using json = nlohmann::ordered_json;

// Sub-seed streams per configuration.
enum Stream : std::uint64_t { kPdeStream = 1, kSampleStream = 2, kPointStream = 3 };
// Sub-seed streams per point.
enum PointStream : std::uint64_t { kNormalStream = 1, kRicciStream = 2, kProbeStream = 3 };

constexpr int kSectionalDirs = 5;

struct PointResult {
  double constraint = 0.0;
  double sphere = 0.0;
  double focal_value = 0.0;
  int rank = 0;
  int iterations = 0;
  double normal_orthonormality = 0.0;
  double gram = 0.0;
  double S = 0.0;
  double rho2 = 0.0;
  double H = 0.0;
  double willmore = 0.0;
  WillmoreCertificate cert;
  std::string lemma_error;
  double ricci_quadratic_vs_tensor = 0.0;
  double ricci_sectional_sum = 0.0;
  double sectional_gauss = 0.0;
  double ricci_trace = 0.0;
  double frame_length = 0.0;
  double frame_trace = 0.0;
  EinsteinProbe probe;
  double ricci_eigen_spread = 0.0;
};

PointResult evaluate_point(const CliffordSystem& sys, const FocalPoint& pt, std::uint64_t seed,
                           const VerificationConfig& cfg) {
  PointResult r;
  const FkmPolynomial poly(sys);
  r.constraint = pt.residual_constraints;
  r.sphere = pt.residual_sphere;
  r.focal_value = std::abs(eval_F(poly, pt.x) - 1.0);
  r.rank = tangent_jacobian_rank(sys, pt);
  r.iterations = pt.iterations;
  for (int a = 0; a < sys.size(); ++a)
    for (int b = 0; b < sys.size(); ++b)
      r.normal_orthonormality =
          std::max(r.normal_orthonormality,
                   std::abs((sys[a] * pt.x).dot(sys[b] * pt.x) - (a == b ? 1.0 : 0.0)));

  const AdaptedFrame frame = build_frame(sys, pt);
  r.gram = frame_gram_deviation(frame);
  const ShapeData sd = compute_shape_data(sys, frame);
  r.S = sd.S;
  r.rho2 = sd.rho2;
  r.H = sd.H_vec.cwiseAbs().maxCoeff();
  r.willmore = willmore_residual(sd);

  std::vector<Vector> normals;
  for (int a = 0; a < sys.size(); ++a) normals.push_back(Vector::Unit(sys.size(), a));
  GaussianSource normal_rng(mix_seed(seed, kNormalStream));
  for (int i = 0; i < cfg.n_normals; ++i) normals.push_back(normal_rng.unit_vector(sys.size()));
  try {
    r.cert = certify_willmore(sys, frame, sd, normals,
                              {cfg.tolerances.geom, cfg.tolerances.willmore});
  } catch (const SpectrumError& e) {
    r.lemma_error = e.what();
  } catch (const LemmaViolationError& e) {
    r.lemma_error = e.what();
  }

  const int n = frame.dim();
  GaussianSource ricci_rng(mix_seed(seed, kRicciStream));
  for (int i = 0; i < cfg.ricci_dirs; ++i) {
    const Vector coords = ricci_rng.unit_vector(n);
    const Vector X = frame.tangent * coords;
    const double tensor = coords.dot(sd.ricci * coords);
    r.ricci_quadratic_vs_tensor =
        std::max(r.ricci_quadratic_vs_tensor, std::abs(tensor - ricci_quadratic(sys, frame, X)));
    if (i < kSectionalDirs) {
      r.ricci_sectional_sum = std::max(
          r.ricci_sectional_sum,
          std::abs(ricci_from_sectional(sys, frame, X) - ricci_quadratic(sys, frame, X)));
      const Matrix basis = tangent_completion(frame, X);
      for (Eigen::Index j = 1; j < basis.cols(); ++j)
        r.sectional_gauss = std::max(
            r.sectional_gauss,
            std::abs(sectional_curvature(sys, frame, basis.col(0), basis.col(j)) -
                     sectional_curvature_gauss(sd, frame, basis.col(0), basis.col(j))));
      const FrameIdentityResiduals fi = frame_identity_residuals(sys, frame, X);
      r.frame_length = std::max(r.frame_length, fi.length);
      r.frame_trace = std::max(r.frame_trace, fi.trace);
    }
  }
  r.ricci_trace = std::abs(sd.ricci.trace() - (static_cast<double>(n) * (n - 1) - sd.S));

  r.probe = einstein_probe(sys, frame, sd, std::max(2, cfg.ricci_dirs),
                           mix_seed(seed, kProbeStream));
  Eigen::SelfAdjointEigenSolver<Matrix> es(sd.ricci, Eigen::EigenvaluesOnly);
  r.ricci_eigen_spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
  return r;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::vector<PointResult> evaluate_points(const CliffordSystem& sys,
                                         const std::vector<FocalPoint>& pts,
                                         std::uint64_t seed, const VerificationConfig& cfg) {
  const int n = static_cast<int>(pts.size());
  std::vector<PointResult> results(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());
  auto work = [&](int first, int stride) {
    for (int i = first; i < n; i += stride) {
      try {
        results[static_cast<std::size_t>(i)] =
            evaluate_point(sys, pts[static_cast<std::size_t>(i)],
                           mix_seed(seed, static_cast<std::uint64_t>(i)), cfg);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min(cfg.threads, n));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

void run_configuration(ConfigurationResult& res, const VerificationConfig& cfg,
                       std::uint64_t cfg_seed) {
  const Tolerances& tol = cfg.tolerances;
  const int m = res.entry.m;
  CliffordSystem sys = build_clifford_system(m, res.entry.k);
  if (cfg.fault)
    sys = sys.with_perturbed_entry(cfg.fault->alpha, cfg.fault->row, cfg.fault->col,
                                   cfg.fault->amount);

  // Criterion bookkeeping: any check that fails before a hard error explains it.
  const VerificationRecord relations = verify_clifford_relations(sys);
  json& clifford = res.sections["clifford"];
  clifford["max_deviation"] = relations.max_deviation;
  for (const auto& [key, value] : relations.metrics) clifford[key] = value;
  res.checks["clifford_relations"] = relations.pass;

  const FkmPolynomial poly(sys);
  const VerificationRecord cm =
      verify_cartan_munzner(poly, cfg.pde_samples, mix_seed(cfg_seed, kPdeStream), tol.pde);
  double lap_identity = 0.0;
  {
    GaussianSource rng(mix_seed(cfg_seed, kPdeStream + 100));
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.normal_vector(sys.ambient_dim());
      const double expected = 8.0 * (sys.m2() - sys.m1()) * x.squaredNorm();
      lap_identity = std::max(lap_identity, std::abs(euclidean_laplacian(poly, x) - expected));
    }
  }
  json& pde = res.sections["cartan_munzner"];
  pde["samples"] = cfg.pde_samples;
  pde["gradient_residual"] = cm.metrics.at("gradient_residual");
  pde["laplacian_residual"] = cm.metrics.at("laplacian_residual");
  pde["euclidean_laplacian_identity"] = lap_identity;
  res.checks["cartan_munzner"] = cm.pass && lap_identity < tol.pde;

  const std::vector<FocalPoint> pts =
      sample_focal_points(sys, cfg.n_points, mix_seed(cfg_seed, kSampleStream), cfg.threads);
  const std::vector<PointResult> pr =
      evaluate_points(sys, pts, mix_seed(cfg_seed, kPointStream), cfg);
  if (cfg.export_points)
    for (const FocalPoint& p : pts) res.points.emplace_back(p.x.data(), p.x.data() + p.x.size());

  auto max_of = [&](auto field) {
    double out = 0.0;
    for (const PointResult& p : pr) out = std::max(out, static_cast<double>(field(p)));
    return out;
  };
  auto min_of = [&](auto field) {
    double out = INFINITY;
    for (const PointResult& p : pr) out = std::min(out, static_cast<double>(field(p)));
    return out;
  };

  json& focal = res.sections["focal"];
  focal["points"] = static_cast<int>(pr.size());
  focal["max_constraint_residual"] = max_of([](auto& p) { return p.constraint; });
  focal["max_sphere_residual"] = max_of([](auto& p) { return p.sphere; });
  focal["max_focal_value_error"] = max_of([](auto& p) { return p.focal_value; });
  focal["expected_rank"] = m + 2;
  focal["rank_min"] = static_cast<int>(min_of([](auto& p) { return p.rank; }));
  focal["rank_max"] = static_cast<int>(max_of([](auto& p) { return p.rank; }));
  focal["max_iterations"] = static_cast<int>(max_of([](auto& p) { return p.iterations; }));
  focal["normal_orthonormality"] = max_of([](auto& p) { return p.normal_orthonormality; });
  focal["frame_gram_deviation"] = max_of([](auto& p) { return p.gram; });
  res.checks["focal_certification"] =
      focal["max_constraint_residual"].get<double>() < tol.cert &&
      focal["max_sphere_residual"].get<double>() <= kSphereThreshold &&
      focal["max_focal_value_error"].get<double>() <= kFocalValueThreshold &&
      focal["rank_min"].get<int>() == m + 2 && focal["rank_max"].get<int>() == m + 2;

  const double s_expected = 2.0 * (res.l - m - 1) * (m + 1);
  const double s_min = min_of([](auto& p) { return p.S; });
  const double s_max = max_of([](auto& p) { return p.S; });
  json& sff = res.sections["second_fundamental_form"];
  sff["S_expected"] = s_expected;
  sff["S_min"] = s_min;
  sff["S_max"] = s_max;
  sff["S_max_error"] = std::max(std::abs(s_min - s_expected), std::abs(s_max - s_expected));
  sff["rho2_spread"] = max_of([](auto& p) { return p.rho2; }) - min_of([](auto& p) { return p.rho2; });
  sff["H_max"] = max_of([](auto& p) { return p.H; });
  res.checks["closed_form_S"] = sff["S_max_error"].get<double>() < tol.geom;
  res.checks["minimality"] =
      sff["H_max"].get<double>() < tol.cert && sff["rho2_spread"].get<double>() < tol.geom;

  std::string lemma_error;
  int normals_checked = 0;
  for (const PointResult& p : pr) {
    if (lemma_error.empty() && !p.lemma_error.empty()) lemma_error = p.lemma_error;
    normals_checked += p.cert.normals_checked;
  }
  json& lemma = res.sections["lemma"];
  lemma["multiplicities"] = {m, res.l - m - 1, res.l - m - 1};
  lemma["normals_checked"] = normals_checked;
  lemma["max_cluster_error"] = max_of([](auto& p) { return p.cert.lemma_cluster_error; });
  if (!lemma_error.empty()) lemma["violation"] = lemma_error;
  res.checks["lemma"] = lemma_error.empty() && lemma["max_cluster_error"].get<double>() < tol.geom;

  std::vector<double> residuals;
  for (const PointResult& p : pr) residuals.push_back(p.willmore);
  json& will = res.sections["willmore"];
  will["residual_max"] = max_of([](auto& p) { return p.willmore; });
  will["residual_median"] = median(residuals);
  will["ricci_balance"] = max_of([](auto& p) { return p.cert.residual_balance; });
  will["bridge"] = max_of([](auto& p) { return p.cert.residual_bridge; });
  will["projection_pairwise"] = max_of([](auto& p) { return p.cert.residual_projection; });
  will["projection_aggregate"] = max_of([](auto& p) { return p.cert.residual_aggregate; });
  will["reflection"] = max_of([](auto& p) { return p.cert.residual_reflection; });
  will["case_identities"] = max_of([](auto& p) { return p.cert.residual_cases; });
  if (m == 1) will["note"] = "trivially balanced: no pairs with alpha, beta > 0";
  res.checks["willmore"] = lemma_error.empty() &&
                           will["residual_max"].get<double>() < tol.willmore &&
                           will["ricci_balance"].get<double>() < tol.willmore &&
                           will["bridge"].get<double>() < tol.geom &&
                           will["projection_pairwise"].get<double>() < tol.geom &&
                           will["projection_aggregate"].get<double>() < tol.geom &&
                           will["reflection"].get<double>() < tol.geom &&
                           will["case_identities"].get<double>() < tol.geom;

  json& ricci = res.sections["ricci"];
  ricci["directions_per_point"] = cfg.ricci_dirs;
  ricci["quadratic_vs_tensor"] = max_of([](auto& p) { return p.ricci_quadratic_vs_tensor; });
  ricci["sectional_sum_vs_quadratic"] = max_of([](auto& p) { return p.ricci_sectional_sum; });
  ricci["sectional_direct_vs_gauss"] = max_of([](auto& p) { return p.sectional_gauss; });
  ricci["trace_identity"] = max_of([](auto& p) { return p.ricci_trace; });
  ricci["frame_length_identity"] = max_of([](auto& p) { return p.frame_length; });
  ricci["frame_trace_identity"] = max_of([](auto& p) { return p.frame_trace; });
  res.checks["ricci_cross_check"] =
      ricci["quadratic_vs_tensor"].get<double>() < tol.geom &&
      ricci["sectional_sum_vs_quadratic"].get<double>() < tol.geom &&
      ricci["sectional_direct_vs_gauss"].get<double>() < tol.geom &&
      ricci["trace_identity"].get<double>() < tol.geom &&
      ricci["frame_length_identity"].get<double>() < tol.geom &&
      ricci["frame_trace_identity"].get<double>() < tol.geom;

  const EinsteinProbe& first = pr.front().probe;
  json& ein = res.sections["einstein"];
  ein["min"] = first.min;
  ein["max"] = first.max;
  ein["spread"] = first.spread;
  ein["spread_min_over_points"] = min_of([](auto& p) { return p.probe.spread; });
  ein["ricci_eigen_spread"] = pr.front().ricci_eigen_spread;
  ein["inequality_holds"] = first.inequality_holds;
  ein["dimension_holds"] = first.dimension_holds;
  EinsteinStatus status = first.status;
  for (const PointResult& p : pr)
    if (p.probe.status == EinsteinStatus::kEinsteinSuspected)
      status = EinsteinStatus::kEinsteinSuspected;
  ein["status"] = to_string(status);
  res.checks["einstein_probe"] =
      !first.inequality_holds ||
      (status == EinsteinStatus::kNonEinstein && first.dimension_holds);
}

}  // namespace

std::vector<GridEntry> default_grid() {
  return {{1, 3}, {1, 4}, {2, 2}, {3, 2}, {4, 2}, {5, 1}, {6, 1}};
}

std::string to_string(ConfigStatus status) {
  switch (status) {
    case ConfigStatus::kVerified:
      return "verified";
    case ConfigStatus::kFailed:
      return "failed";
    case ConfigStatus::kInadmissible:
      return "inadmissible";
    case ConfigStatus::kError:
      return "error";
  }
  return "error";
}

int VerificationReport::exit_code() const {
  bool internal = false;
  for (const ConfigurationResult& c : configurations) internal = internal || c.internal_error;
  if (internal) return 3;
  return overall_pass ? 0 : 1;
}

VerificationReport run_suite(const VerificationConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.seed = cfg.seed;
  for (std::size_t i = 0; i < cfg.configurations.size(); ++i) {
    ConfigurationResult res;
    res.entry = cfg.configurations[i];
    const int m = res.entry.m;
    const int k = res.entry.k;
    try {
      res.l = k * delta(m);
    } catch (const Error& e) {
      res.status = ConfigStatus::kError;
      res.error = e.what();
      report.configurations.push_back(std::move(res));
      report.overall_pass = false;
      continue;
    }
    res.m1 = m;
    res.m2 = res.l - m - 1;
    res.focal_dim = 2 * res.l - m - 2;
    if (res.m2 < 1) {
      res.status = ConfigStatus::kInadmissible;
      res.error = "inadmissible: m2=" + std::to_string(res.m2);
      report.configurations.push_back(std::move(res));
      continue;
    }
    try {
      run_configuration(res, cfg, mix_seed(cfg.seed, i));
      bool all = true;
      for (const auto& [name, ok] : res.checks) all = all && ok;
      res.status = all ? ConfigStatus::kVerified : ConfigStatus::kFailed;
    } catch (const std::exception& e) {
      res.status = ConfigStatus::kError;
      res.error = e.what();
      // A hard error after a failed check is a consequence of that failure.
      bool prior_failure = false;
      for (const auto& [name, ok] : res.checks) prior_failure = prior_failure || !ok;
      res.internal_error = !prior_failure;
    }
    if (!res.pass()) report.overall_pass = false;
    report.configurations.push_back(std::move(res));
  }
  if (cfg.include_timing)
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json to_json(const VerificationReport& report, const VerificationConfig& cfg) {
  json root;
  root["schema"] = kReportSchema;
  root["tool_version"] = kToolVersion;
  root["seed"] = report.seed;
  json& settings = root["settings"];
  settings["points"] = cfg.n_points;
  settings["normals"] = cfg.n_normals;
  settings["pde_samples"] = cfg.pde_samples;
  settings["ricci_dirs"] = cfg.ricci_dirs;
  settings["tolerances"] = {{"pde", cfg.tolerances.pde},
                            {"cert", cfg.tolerances.cert},
                            {"geom", cfg.tolerances.geom},
                            {"willmore", cfg.tolerances.willmore}};
  if (cfg.fault)
    settings["fault"] = {{"alpha", cfg.fault->alpha},
                         {"row", cfg.fault->row},
                         {"col", cfg.fault->col},
                         {"amount", cfg.fault->amount}};
  json& configs = root["configurations"];
  configs = json::array();
  for (const ConfigurationResult& c : report.configurations) {
    json block;
    block["m"] = c.entry.m;
    block["k"] = c.entry.k;
    block["l"] = c.l;
    block["m1"] = c.m1;
    block["m2"] = c.m2;
    block["dim_focal"] = c.focal_dim;
    block["status"] = to_string(c.status);
    if (!c.error.empty()) block["error"] = c.error;
    for (const auto& [key, value] : c.sections.items()) block[key] = value;
    json checks = json::object();
    for (const auto& [name, ok] : c.checks) checks[name] = ok;
    block["checks"] = checks;
    if (!c.points.empty()) block["points"] = c.points;
    block["pass"] = c.pass();
    configs.push_back(std::move(block));
  }
  if (report.wall_time_s) root["wall_time_s"] = *report.wall_time_s;
  root["overall_pass"] = report.overall_pass;
  return root;
}

std::string render_text(const VerificationReport& report) {
  std::ostringstream out;
  out << "FKM focal submanifold Willmore verification (seed " << report.seed << ")\n";
  for (const ConfigurationResult& c : report.configurations) {
    out << "\n(m=" << c.entry.m << ", k=" << c.entry.k << ", l=" << c.l << ")  "
        << to_string(c.status);
    if (!c.error.empty()) out << "  [" << c.error << "]";
    out << '\n';
    if (c.status == ConfigStatus::kInadmissible) continue;
    out << "  dim M+ = " << c.focal_dim << ", (m1, m2) = (" << c.m1 << ", " << c.m2 << ")\n";
    for (const auto& [name, ok] : c.checks)
      out << "  " << std::left << std::setw(22) << name << (ok ? "PASS" : "FAIL") << '\n';
    if (c.sections.contains("willmore")) {
      const auto& w = c.sections["willmore"];
      out << "  willmore residual max " << w["residual_max"].get<double>() << ", median "
          << w["residual_median"].get<double>() << '\n';
    }
    if (c.sections.contains("second_fundamental_form")) {
      const auto& s = c.sections["second_fundamental_form"];
      out << "  S expected " << s["S_expected"].get<double>() << ", measured ["
          << s["S_min"].get<double>() << ", " << s["S_max"].get<double>() << "]\n";
    }
    if (c.sections.contains("einstein")) {
      const auto& e = c.sections["einstein"];
      out << "  Ricci range [" << e["min"].get<double>() << ", " << e["max"].get<double>()
          << "], status " << e["status"].get<std::string>() << '\n';
    }
  }
  if (report.wall_time_s) out << "\nwall time " << *report.wall_time_s << " s\n";
  out << "\noverall: " << (report.overall_pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace fkm
