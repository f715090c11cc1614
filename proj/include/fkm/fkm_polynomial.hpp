#pragma once

#include <cstdint>
#include <vector>

#include "fkm/clifford.hpp"
#include "fkm/linalg.hpp"
#include "fkm/verification.hpp"

namespace fkm {

/// F(x) = |x|^4 - 2 sum_alpha <P_alpha x, x>^2 on R^{2l}.
///
/// Quadratic forms only see the symmetric part of each P_alpha, so the
/// polynomial keeps (P + P^T) / 2. For a valid system this is P itself; for a
/// corrupted one it keeps every derivative formula exact for the F actually
/// evaluated.
class FkmPolynomial {
 public:
  explicit FkmPolynomial(CliffordSystem sys);

  const CliffordSystem& system() const { return sys_; }
  int ambient_dim() const { return sys_.ambient_dim(); }
  int m1() const { return sys_.m1(); }
  int m2() const { return sys_.m2(); }
  const Matrix& form(int alpha) const { return forms_[static_cast<std::size_t>(alpha)]; }
  int num_forms() const { return static_cast<int>(forms_.size()); }

 private:
  CliffordSystem sys_;
  std::vector<Matrix> forms_;
};

struct SphericalDerivatives {
  double f = 0.0;
  Vector grad_s;
  double lap_s = 0.0;
};

double eval_F(const FkmPolynomial& p, const Vector& x);
/// g_alpha(x) = <P_alpha x, x> for alpha = 0..m.
Vector constraint_values(const FkmPolynomial& p, const Vector& x);
/// 4|x|^2 x - 8 sum_alpha g_alpha(x) P_alpha x.
Vector euclidean_gradient(const FkmPolynomial& p, const Vector& x);
/// Hessian of F at x applied to v.
Vector euclidean_hessian_apply(const FkmPolynomial& p, const Vector& x, const Vector& v);
/// Trace of the Hessian, in closed form.
double euclidean_laplacian(const FkmPolynomial& p, const Vector& x);

/// Gradient and Laplacian of f = F restricted to the unit sphere, from the
/// degree-4 homogeneity of F (see docs/derivations.md):
///   grad_s = grad F - <grad F, x> x,   lap_s = lap F - 4(n + 2) F,   n = 2l.
SphericalDerivatives spherical_derivatives(const FkmPolynomial& p, const Vector& x);

/// Checks |grad f|^2 = 16(1 - f^2) and lap f = 8(m2 - m1) - 4(2l + 2) f at
/// n_samples uniform points of the sphere.
VerificationRecord verify_cartan_munzner(const FkmPolynomial& p, int n_samples,
                                         std::uint64_t seed, double tol);

}  // namespace fkm
