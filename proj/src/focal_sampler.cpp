#include "fkm/focal_sampler.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <thread>

#include "fkm/errors.hpp"
#include "fkm/fkm_polynomial.hpp"
#include "fkm/random.hpp"

namespace fkm {

namespace {

constexpr double kSingularCondition = 1e12;
constexpr double kRankThreshold = 1e-8;

Vector constraint_map(const CliffordSystem& sys, const Vector& x) {
  Vector c(sys.size() + 1);
  c[0] = x.squaredNorm() - 1.0;
  for (int a = 0; a < sys.size(); ++a) c[a + 1] = x.dot(sys[a] * x);
  return c;
}

/// Rows 2x, (P_a + P_a^T) x. Equals 2 P_a x for symmetric P_a.
Matrix constraint_jacobian(const CliffordSystem& sys, const Vector& x) {
  Matrix jac(sys.size() + 1, x.size());
  jac.row(0) = 2.0 * x.transpose();
  for (int a = 0; a < sys.size(); ++a)
    jac.row(a + 1) = ((sys[a] + sys[a].transpose()) * x).transpose();
  return jac;
}

double condition_of(const Matrix& gram) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return INFINITY;
  return hi / lo;
}

std::optional<FocalPoint> try_project(const CliffordSystem& sys, const Vector& x0) {
  try {
    return project_to_focal(sys, x0);
  } catch (const ConvergenceError&) {
  } catch (const SingularityError&) {
  } catch (const NumericalError&) {
  }
  return std::nullopt;
}

}  // namespace

FocalPoint certify_focal_point(const CliffordSystem& sys, Vector x) {
  if (x.size() != sys.ambient_dim()) throw DomainError("focal point has wrong dimension");
  FocalPoint pt;
  pt.residual_sphere = std::abs(x.squaredNorm() - 1.0);
  double worst = 0.0;
  for (int a = 0; a < sys.size(); ++a) worst = std::max(worst, std::abs(x.dot(sys[a] * x)));
  pt.residual_constraints = worst;
  const FkmPolynomial poly(sys);
  const double f = eval_F(poly, x);
  if (!(pt.residual_constraints <= kConstraintThreshold) ||
      !(pt.residual_sphere <= kSphereThreshold) || !(std::abs(f - 1.0) <= kFocalValueThreshold))
    throw NumericalError("point failed focal certification: constraint residual " +
                         std::to_string(pt.residual_constraints) + ", sphere residual " +
                         std::to_string(pt.residual_sphere) + ", F - 1 = " +
                         std::to_string(f - 1.0));
  pt.x = std::move(x);
  return pt;
}

FocalPoint deterministic_seed(const CliffordSystem& sys) {
  const int l = sys.l();
  // Recover E_i e_1 from P_{1+i}: P_{1+i}(0, e_1) = (E_i e_1, 0).
  std::vector<Vector> span{Vector::Unit(l, 0)};
  for (int a = 2; a < sys.size(); ++a) {
    const Vector col = sys[a].col(l).head(l);
    span.push_back(col);
  }
  Vector u;
  for (int j = 0; j < l; ++j) {
    Vector r = Vector::Unit(l, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& s : span) {
        const double s2 = s.squaredNorm();
        if (s2 > 0.0) r -= (r.dot(s) / s2) * s;
      }
    if (r.norm() > 1e-6) {
      u = r.normalized();
      break;
    }
  }
  if (u.size() == 0) throw NumericalError("no seed direction orthogonal to E_i e_1");
  Vector x = Vector::Zero(2 * l);
  x.head(l) = u / std::sqrt(2.0);
  x[l] = 1.0 / std::sqrt(2.0);
  return certify_focal_point(sys, std::move(x));
}

double normal_equation_condition(const CliffordSystem& sys, const Vector& x) {
  const Matrix jac = constraint_jacobian(sys, x);
  return condition_of(jac * jac.transpose());
}

FocalPoint project_to_focal(const CliffordSystem& sys, const Vector& x0, double tol,
                            int max_iter) {
  if (x0.size() != sys.ambient_dim()) throw DomainError("start vector has wrong dimension");
  if (!(tol > 0.0)) throw DomainError("project_to_focal requires tol > 0");
  if (x0.norm() == 0.0) throw DomainError("project_to_focal requires a nonzero start");
  Vector x = x0;
  double residual = constraint_map(sys, x).cwiseAbs().maxCoeff();
  int iter = 0;
  while (residual >= tol) {
    if (iter >= max_iter)
      throw ConvergenceError("Gauss-Newton projection did not converge in " +
                                 std::to_string(max_iter) + " iterations (residual " +
                                 std::to_string(residual) + ")",
                             residual);
    const Vector c = constraint_map(sys, x);
    const Matrix jac = constraint_jacobian(sys, x);
    const Matrix gram = jac * jac.transpose();
    const double cond = condition_of(gram);
    if (cond > kSingularCondition)
      throw SingularityError("normal equations are singular (condition " + std::to_string(cond) +
                                 "); restart from a different point",
                             cond);
    x -= jac.transpose() * gram.ldlt().solve(c);
    ++iter;
    residual = constraint_map(sys, x).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual))
      throw ConvergenceError("Gauss-Newton projection diverged", residual);
  }
  FocalPoint pt = certify_focal_point(sys, std::move(x));
  pt.iterations = iter;
  return pt;
}

std::vector<FocalPoint> sample_focal_points(const CliffordSystem& sys, int n, std::uint64_t seed,
                                            int threads) {
  if (n < 1) throw DomainError("sample_focal_points requires n >= 1");
  std::vector<std::optional<FocalPoint>> slots(static_cast<std::size_t>(n));

  auto work = [&](int first, int stride) {
    for (int i = first; i < n; i += stride) {
      const std::uint64_t point_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
      for (int attempt = 0; attempt <= kSamplingRetries; ++attempt) {
        const std::uint64_t s =
            attempt == 0 ? point_seed : mix_seed(point_seed, static_cast<std::uint64_t>(attempt));
        GaussianSource rng(s);
        auto pt = try_project(sys, rng.normal_vector(sys.ambient_dim()));
        if (pt) {
          slots[static_cast<std::size_t>(i)] = std::move(pt);
          break;
        }
      }
    }
  };

  const int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
  }

  std::vector<FocalPoint> out;
  int failures = 0;
  for (auto& slot : slots) {
    if (slot)
      out.push_back(std::move(*slot));
    else
      ++failures;
  }
  if (failures > 0)
    throw SamplingError(std::to_string(failures) + " of " + std::to_string(n) +
                            " points failed to project after " +
                            std::to_string(kSamplingRetries) + " retries",
                        failures);
  return out;
}

int tangent_jacobian_rank(const CliffordSystem& sys, const FocalPoint& pt) {
  Matrix rows(sys.size() + 1, sys.ambient_dim());
  rows.row(0) = pt.x.transpose();
  for (int a = 0; a < sys.size(); ++a) rows.row(a + 1) = (sys[a] * pt.x).transpose();
  Eigen::JacobiSVD<Matrix> svd(rows);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > kRankThreshold) ++rank;
  return rank;
}

}  // namespace fkm
