#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fkm/clifford.hpp"
#include "fkm/extrinsic_geometry.hpp"
#include "fkm/linalg.hpp"
#include "fkm/verification.hpp"

namespace fkm {

inline constexpr double kEigenClusterRadius = 1e-6;

/// Eigenspaces of A_xi for the unit normal xi = sum_alpha c_alpha P_alpha x,
/// as orthonormal columns in ambient coordinates.
struct PrincipalDecomposition {
  Vector coeffs;
  Vector xi;
  Matrix T0;   ///< eigenvalue 0, dimension m
  Matrix T1;   ///< eigenvalue +1, dimension l - m - 1
  Matrix Tm1;  ///< eigenvalue -1, dimension l - m - 1
  Matrix A_xi;            ///< shape operator in tangent coordinates
  double cluster_error = 0.0;  ///< max distance of an eigenvalue from its cluster centre
};

/// Throws SpectrumError for an eigenvalue farther than 1e-6 from {0, +1, -1}
/// and LemmaViolationError for multiplicities other than (m, l-m-1, l-m-1).
PrincipalDecomposition principal_decomposition(const CliffordSystem& sys,
                                               const AdaptedFrame& frame, const Vector& coeffs);

/// For a system rotated so that P'_0 x = xi: max of |P'_0 v + v| over the
/// +1 eigenbasis, |P'_0 w - w| over the -1 eigenbasis, and |P'_0 x - xi|.
double reflection_check(const CliffordSystem& rotated, const AdaptedFrame& frame,
                        const PrincipalDecomposition& decomp);

/// max_alpha |sum_ij R_ij h^alpha_ij|.
double willmore_residual(const ShapeData& sd);
/// The vector (sum_ij R_ij h^alpha_ij)_alpha.
Vector willmore_contractions(const ShapeData& sd);

struct RicciBalance {
  double balance = 0.0;  ///< |sum Ricci(v_i) - sum Ricci(w_i)|
  double bridge = 0.0;   ///< |sum_ij R_ij h^xi_ij - sum_i (Ricci(v_i) - Ricci(w_i))|
};
RicciBalance ricci_balance(const CliffordSystem& sys, const AdaptedFrame& frame,
                           const ShapeData& sd, const PrincipalDecomposition& decomp);

struct ProjectionBalance {
  double pairwise = 0.0;   ///< max over alpha<beta of | |y^{T1}|^2 - |y^{T-1}|^2 |, y = P'_a P'_b x
  double aggregate = 0.0;  ///< |sum_{a != b} |y^{T1}|^2 - sum_{a != b} |y^{T-1}|^2|
  double alpha0 = 0.0;     ///< max |y^{T1}|, |y^{T-1}| for a = 0 (those y lie in T0)
  int pairs = 0;
};
ProjectionBalance projection_balance(const CliffordSystem& rotated, const AdaptedFrame& frame,
                                     const PrincipalDecomposition& decomp);

/// Intermediate identities of the two-case balance argument, for a rotated
/// system. Metrics: tangency, orthogonality, p0u (m = 2 only), norm_w,
/// norm_v, t0_membership.
VerificationRecord case_identities(const CliffordSystem& rotated, const AdaptedFrame& frame,
                                   const PrincipalDecomposition& decomp, double tol = 1e-8);

enum class EinsteinStatus { kNonEinstein, kEinsteinSuspected, kInconclusive };
std::string to_string(EinsteinStatus status);

struct EinsteinProbe {
  double min = 0.0;
  double max = 0.0;
  double spread = 0.0;
  bool inequality_holds = false;  ///< 4l > m^2 + 3m + 4
  bool dimension_holds = false;   ///< dim M+ > m(m+1)/2
  EinsteinStatus status = EinsteinStatus::kInconclusive;
};
inline constexpr double kEinsteinSpreadThreshold = 0.1;

/// Ricci(X) over n_dirs random unit tangents and the extremal eigenvectors of
/// the Ricci tensor.
EinsteinProbe einstein_probe(const CliffordSystem& sys, const AdaptedFrame& frame,
                             const ShapeData& sd, int n_dirs, std::uint64_t seed);

struct WillmoreTolerances {
  double geom = 1e-8;
  double willmore = 1e-7;
};

struct WillmoreCertificate {
  double residual_reduced = 0.0;
  double residual_balance = 0.0;
  double residual_bridge = 0.0;
  double residual_projection = 0.0;      ///< pairwise, worst over normals
  double residual_aggregate = 0.0;
  double residual_reflection = 0.0;
  double residual_cases = 0.0;
  double lemma_cluster_error = 0.0;
  int normals_checked = 0;
  bool pass = false;
};

/// Runs every check above for each normal coefficient vector in `normals`
/// (rotating the system so that P'_0 x is that normal).
WillmoreCertificate certify_willmore(const CliffordSystem& sys, const AdaptedFrame& frame,
                                     const ShapeData& sd, const std::vector<Vector>& normals,
                                     const WillmoreTolerances& tol = {});

}  // namespace fkm
