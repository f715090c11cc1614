#include "fkm/fkm_polynomial.hpp"

#include <cmath>
#include <string>

#include "fkm/errors.hpp"
#include "fkm/random.hpp"

namespace fkm {

namespace {

void check_dim(const FkmPolynomial& p, const Vector& x, const char* what) {
  if (x.size() != p.ambient_dim())
    throw DomainError(std::string(what) + ": expected a vector of dimension " +
                      std::to_string(p.ambient_dim()) + ", got " + std::to_string(x.size()));
}

}  // namespace

FkmPolynomial::FkmPolynomial(CliffordSystem sys) : sys_(std::move(sys)) {
  for (const Matrix& m : sys_.matrices()) forms_.push_back(0.5 * (m + m.transpose()));
}

Vector constraint_values(const FkmPolynomial& p, const Vector& x) {
  check_dim(p, x, "constraint_values");
  Vector g(p.num_forms());
  for (int a = 0; a < p.num_forms(); ++a) g[a] = x.dot(p.form(a) * x);
  return g;
}

double eval_F(const FkmPolynomial& p, const Vector& x) {
  check_dim(p, x, "eval_F");
  const double r2 = x.squaredNorm();
  return r2 * r2 - 2.0 * constraint_values(p, x).squaredNorm();
}

Vector euclidean_gradient(const FkmPolynomial& p, const Vector& x) {
  check_dim(p, x, "euclidean_gradient");
  Vector grad = 4.0 * x.squaredNorm() * x;
  for (int a = 0; a < p.num_forms(); ++a) {
    const Vector px = p.form(a) * x;
    grad -= 8.0 * x.dot(px) * px;
  }
  return grad;
}

Vector euclidean_hessian_apply(const FkmPolynomial& p, const Vector& x, const Vector& v) {
  check_dim(p, x, "euclidean_hessian_apply");
  check_dim(p, v, "euclidean_hessian_apply");
  Vector out = 8.0 * x.dot(v) * x + 4.0 * x.squaredNorm() * v;
  for (int a = 0; a < p.num_forms(); ++a) {
    const Vector px = p.form(a) * x;
    out -= 16.0 * px.dot(v) * px + 8.0 * x.dot(px) * (p.form(a) * v);
  }
  return out;
}

double euclidean_laplacian(const FkmPolynomial& p, const Vector& x) {
  check_dim(p, x, "euclidean_laplacian");
  const double r2 = x.squaredNorm();
  const double n = p.ambient_dim();
  double lap = (8.0 + 4.0 * n) * r2;
  for (int a = 0; a < p.num_forms(); ++a) {
    const Vector px = p.form(a) * x;
    lap -= 16.0 * px.squaredNorm() + 8.0 * x.dot(px) * p.form(a).trace();
  }
  return lap;
}

SphericalDerivatives spherical_derivatives(const FkmPolynomial& p, const Vector& x) {
  check_dim(p, x, "spherical_derivatives");
  if (std::abs(x.norm() - 1.0) >= 1e-12)
    throw DomainError("spherical_derivatives requires a unit vector");
  SphericalDerivatives out;
  out.f = eval_F(p, x);
  const Vector grad = euclidean_gradient(p, x);
  out.grad_s = grad - grad.dot(x) * x;
  const double n = p.ambient_dim();
  out.lap_s = euclidean_laplacian(p, x) - 4.0 * (4.0 + n - 2.0) * out.f;
  return out;
}

VerificationRecord verify_cartan_munzner(const FkmPolynomial& p, int n_samples,
                                         std::uint64_t seed, double tol) {
  if (!(tol > 0.0)) throw DomainError("verify_cartan_munzner requires tol > 0");
  VerificationRecord rec;
  rec.name = "cartan_munzner";
  rec.tolerance = tol;
  GaussianSource rng(seed);
  const double l = p.ambient_dim() / 2;
  const double a0 = 8.0 * (p.m2() - p.m1());
  double grad_res = 0.0, lap_res = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const Vector x = rng.unit_vector(p.ambient_dim());
    const SphericalDerivatives d = spherical_derivatives(p, x);
    const double g = std::abs(d.grad_s.squaredNorm() - 16.0 * (1.0 - d.f * d.f));
    const double lap = std::abs(d.lap_s - (a0 - 4.0 * (2.0 * l + 2.0) * d.f));
    grad_res = std::max(grad_res, std::isnan(g) ? INFINITY : g);
    lap_res = std::max(lap_res, std::isnan(lap) ? INFINITY : lap);
  }
  rec.observe(grad_res);
  rec.observe(lap_res);
  rec.metrics = {{"gradient_residual", grad_res}, {"laplacian_residual", lap_res},
                 {"samples", static_cast<double>(n_samples)}};
  rec.finalize();
  return rec;
}

}  // namespace fkm
