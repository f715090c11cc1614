#pragma once

#include <cstdint>
#include <vector>

#include "fkm/clifford.hpp"
#include "fkm/linalg.hpp"

namespace fkm {

/// Certification thresholds for points of M+.
inline constexpr double kConstraintThreshold = 1e-10;
inline constexpr double kSphereThreshold = 1e-12;
inline constexpr double kFocalValueThreshold = 1e-9;

/// A unit vector x with <P_alpha x, x> = 0 for every alpha, i.e. a point of
/// the focal submanifold M+ = f^{-1}(+1). Only produced by certify_focal_point
/// and the functions below, which refuse to return points failing the
/// thresholds.
struct FocalPoint {
  Vector x;
  double residual_constraints = 0.0;  ///< max_alpha |g_alpha(x)|
  double residual_sphere = 0.0;       ///< | |x|^2 - 1 |
  int iterations = 0;                 ///< Gauss-Newton steps taken
};

/// Computes residuals and throws NumericalError unless x passes every
/// certification threshold (constraints, sphere, F(x) = 1).
FocalPoint certify_focal_point(const CliffordSystem& sys, Vector x);

/// Closed-form point of M+ for the block construction: v = e_1 / sqrt(2) in
/// the second block, u = first standard basis vector orthogonal to
/// e_1, E_1 e_1, ..., E_{m-1} e_1, scaled by 1 / sqrt(2), in the first.
FocalPoint deterministic_seed(const CliffordSystem& sys);

/// Gauss-Newton on c(x) = (|x|^2 - 1, g_0(x), ..., g_m(x)) using the minimum
/// norm step x <- x - J^T (J J^T)^{-1} c(x). Throws ConvergenceError when the
/// iteration budget runs out and SingularityError when cond(J J^T) > 1e12.
FocalPoint project_to_focal(const CliffordSystem& sys, const Vector& x0, double tol = 1e-12,
                            int max_iter = 50);

inline constexpr int kSamplingRetries = 10;

/// n certified points from Gaussian starts. Point i uses sub-seed
/// mix_seed(seed, i); retry r of that point uses mix_seed(mix_seed(seed, i), r).
/// Output order is the point index regardless of `threads`.
std::vector<FocalPoint> sample_focal_points(const CliffordSystem& sys, int n, std::uint64_t seed,
                                            int threads = 1);

/// Rank of the (m+2) x 2l matrix with rows x, P_0 x, ..., P_m x (singular
/// values above 1e-8). Equals m+2 on M+, so dim M+ = 2l - m - 2.
int tangent_jacobian_rank(const CliffordSystem& sys, const FocalPoint& pt);

/// Condition number of J J^T at x (J as in project_to_focal). Tends to 1 on M+.
double normal_equation_condition(const CliffordSystem& sys, const Vector& x);

}  // namespace fkm
