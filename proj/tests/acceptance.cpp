// Acceptance suite: one PASS/FAIL line per criterion over the default grid.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fkm/errors.hpp"
#include "fkm/report.hpp"
#include "fkm/willmore.hpp"
#include "oracles.hpp"

using namespace fkm;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string label(const ConfigurationResult& r) {
  return "(" + std::to_string(r.entry.m) + "," + std::to_string(r.entry.k) + ")";
}

double num(const json& section, const char* key) { return section.at(key).get<double>(); }

VerificationConfig acceptance_config() {
  VerificationConfig cfg;
  cfg.configurations = default_grid();
  cfg.n_points = 20;
  cfg.n_normals = 50;
  cfg.pde_samples = 1000;
  cfg.ricci_dirs = 100;
  cfg.seed = 20240601;
  cfg.threads = 4;
  return cfg;
}

Outcome for_each_config(const VerificationReport& report,
                        const std::function<void(const ConfigurationResult&, Outcome&)>& body) {
  Outcome out;
  for (const ConfigurationResult& r : report.configurations) {
    if (r.status == ConfigStatus::kError || r.status == ConfigStatus::kInadmissible) {
      out.require(false, label(r) + " " + r.error);
      continue;
    }
    body(r, out);
  }
  return out;
}

Outcome criterion_clifford(const VerificationReport& report) {
  Outcome out;
  for (const GridEntry& e : default_grid()) {
    const CliffordSystem sys = build_clifford_system(e.m, e.k);
    const long long dev = oracle::clifford_integer_deviation(sys.matrices());
    out.require(dev == 0, "(" + std::to_string(e.m) + "," + std::to_string(e.k) +
                              ") integer residual " + std::to_string(dev));
  }
  for (const ConfigurationResult& r : report.configurations)
    out.require(r.checks.count("clifford_relations") && r.checks.at("clifford_relations"),
                label(r) + " clifford_relations");
  return out;
}

Outcome criterion_cartan_munzner(const VerificationReport& report) {
  return for_each_config(report, [](const ConfigurationResult& r, Outcome& out) {
    const json& s = r.sections.at("cartan_munzner");
    out.require(s.at("samples").get<int>() >= 1000, label(r) + " samples");
    out.require(num(s, "gradient_residual") < 1e-8, label(r) + " gradient");
    out.require(num(s, "laplacian_residual") < 1e-8, label(r) + " laplacian");
  });
}

Outcome criterion_focal(const VerificationReport& report) {
  return for_each_config(report, [](const ConfigurationResult& r, Outcome& out) {
    const json& s = r.sections.at("focal");
    const int m = r.entry.m;
    out.require(s.at("points").get<int>() == 20, label(r) + " point count");
    out.require(num(s, "max_constraint_residual") < 1e-10, label(r) + " constraints");
    out.require(num(s, "max_focal_value_error") < 1e-9, label(r) + " F value");
    out.require(s.at("rank_min").get<int>() == m + 2 && s.at("rank_max").get<int>() == m + 2,
                label(r) + " rank");
    out.require(r.focal_dim == 2 * r.l - m - 2, label(r) + " dim");
  });
}

Outcome criterion_closed_form_s(const VerificationReport& report) {
  return for_each_config(report, [](const ConfigurationResult& r, Outcome& out) {
    const json& s = r.sections.at("second_fundamental_form");
    const double expected = 2.0 * (r.l - r.entry.m - 1) * (r.entry.m + 1);
    out.require(num(s, "S_expected") == expected, label(r) + " expected S");
    out.require(std::abs(num(s, "S_min") - expected) < 1e-8 &&
                    std::abs(num(s, "S_max") - expected) < 1e-8,
                label(r) + " measured S");
  });
}

Outcome criterion_minimality(const VerificationReport& report) {
  return for_each_config(report, [](const ConfigurationResult& r, Outcome& out) {
    const json& s = r.sections.at("second_fundamental_form");
    out.require(num(s, "H_max") < 1e-10, label(r) + " H");
    out.require(num(s, "rho2_spread") < 1e-8, label(r) + " rho2 spread");
  });
}

Outcome criterion_lemma(const VerificationReport& report) {
  return for_each_config(report, [](const ConfigurationResult& r, Outcome& out) {
    const json& s = r.sections.at("lemma");
    const int m = r.entry.m;
    const int k = r.l - m - 1;
    out.require(!s.contains("violation"), label(r) + " violation");
    out.require(s.at("normals_checked").get<int>() >= 50, label(r) + " normals");
    out.require(num(s, "max_cluster_error") < 1e-8, label(r) + " cluster");
    out.require(s.at("multiplicities") == json::array({m, k, k}), label(r) + " multiplicities");
  });
}

Outcome criterion_willmore(const VerificationReport& report) {
  return for_each_config(report, [](const ConfigurationResult& r, Outcome& out) {
    const json& s = r.sections.at("willmore");
    out.require(num(s, "residual_max") < 1e-7, label(r) + " reduced criterion");
    out.require(num(s, "bridge") < 1e-8, label(r) + " bridge");
    out.require(num(s, "projection_pairwise") < 1e-8, label(r) + " pairwise");
    out.require(num(s, "projection_aggregate") < 1e-8, label(r) + " aggregate");
    out.require(num(s, "case_identities") < 1e-8, label(r) + " case identities");
    out.require(num(s, "reflection") < 1e-8, label(r) + " reflection");
  });
}

Outcome criterion_ricci(const VerificationReport& report) {
  return for_each_config(report, [](const ConfigurationResult& r, Outcome& out) {
    const json& s = r.sections.at("ricci");
    out.require(s.at("directions_per_point").get<int>() >= 100, label(r) + " directions");
    out.require(num(s, "quadratic_vs_tensor") < 1e-8, label(r) + " quadratic vs tensor");
    out.require(num(s, "trace_identity") < 1e-8, label(r) + " trace");
  });
}

Outcome criterion_einstein(const VerificationReport& report) {
  Outcome out;
  {
    const CliffordSystem sys = build_clifford_system(1, 3);
    for (const FocalPoint& pt : sample_focal_points(sys, 5, 11)) {
      const AdaptedFrame frame = build_frame(sys, pt);
      const ShapeData sd = compute_shape_data(sys, frame);
      Eigen::SelfAdjointEigenSolver<Matrix> es(sd.ricci);
      const double spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
      out.require(std::abs(spread - 2.0) < 1e-8, "(1,3) eigen spread " + std::to_string(spread));
      const EinsteinProbe probe = einstein_probe(sys, frame, sd, 100, 11);
      out.require(std::abs(probe.spread - 2.0) < 1e-8, "(1,3) probe spread");
    }
  }
  Outcome per = for_each_config(report, [](const ConfigurationResult& r, Outcome& o) {
    const json& s = r.sections.at("einstein");
    const int m = r.entry.m;
    const bool inequality = 4 * r.l > m * m + 3 * m + 4;
    o.require(s.at("inequality_holds").get<bool>() == inequality, label(r) + " inequality flag");
    if (inequality) {
      o.require(num(s, "spread_min_over_points") > 0.1, label(r) + " spread");
      o.require(r.focal_dim > m * (m + 1) / 2, label(r) + " dimension");
      o.require(s.at("dimension_holds").get<bool>(), label(r) + " dimension flag");
      o.require(s.at("status") == "non_einstein", label(r) + " status");
    } else {
      o.require(s.at("status") == "inconclusive", label(r) + " should be inconclusive");
    }
  });
  out.require(per.pass, per.detail);
  return out;
}

Outcome criterion_fault(const VerificationConfig& base) {
  VerificationConfig cfg = base;
  cfg.fault = FaultInjection{1, 0, 2, 1e-3};
  const VerificationReport report = run_suite(cfg);
  Outcome out;
  const char* guarded[] = {"clifford_relations", "cartan_munzner", "focal_certification",
                           "closed_form_S",      "minimality",     "lemma",
                           "willmore"};
  int caught = 0;
  for (const ConfigurationResult& r : report.configurations) {
    bool failed = r.status == ConfigStatus::kError;
    for (const char* name : guarded)
      if (r.checks.count(name) && !r.checks.at(name)) failed = true;
    if (failed) ++caught;
  }
  out.require(caught == static_cast<int>(report.configurations.size()),
              std::to_string(caught) + " of " + std::to_string(report.configurations.size()) +
                  " corrupted configurations detected");
  out.require(!report.overall_pass, "overall pass despite fault");
  return out;
}

Outcome criterion_determinism(const VerificationConfig& cfg, const VerificationReport& first) {
  Outcome out;
  VerificationConfig serial = cfg;
  serial.threads = 1;
  const std::string a = to_json(first, cfg).dump(2);
  const std::string b = to_json(run_suite(serial), serial).dump(2);
  const std::string c = to_json(run_suite(cfg), cfg).dump(2);
  out.require(a == b, "thread count changed the report");
  out.require(a == c, "repeat run changed the report");
  return out;
}

}  // namespace

int main() {
  const VerificationConfig cfg = acceptance_config();
  const VerificationReport report = run_suite(cfg);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Clifford relations", [&] { return criterion_clifford(report); }},
      {"Cartan-Munzner equations", [&] { return criterion_cartan_munzner(report); }},
      {"Focal certification", [&] { return criterion_focal(report); }},
      {"Closed-form S", [&] { return criterion_closed_form_s(report); }},
      {"Minimality", [&] { return criterion_minimality(report); }},
      {"Principal curvature lemma", [&] { return criterion_lemma(report); }},
      {"Willmore condition", [&] { return criterion_willmore(report); }},
      {"Ricci cross-check", [&] { return criterion_ricci(report); }},
      {"Non-Einstein probe", [&] { return criterion_einstein(report); }},
      {"Fault sensitivity", [&] { return criterion_fault(cfg); }},
      {"Determinism", [&] { return criterion_determinism(cfg, report); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2zu %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.pass ? "" : ": ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
