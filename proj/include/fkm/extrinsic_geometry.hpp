#pragma once

#include <vector>

#include "fkm/clifford.hpp"
#include "fkm/focal_sampler.hpp"
#include "fkm/linalg.hpp"

namespace fkm {

/// Orthonormal frame at a point x of M+: tangent columns e_1..e_n
/// (n = 2l - m - 2) and normal columns xi_alpha = P_alpha x.
struct AdaptedFrame {
  FocalPoint pt;
  Matrix tangent;  ///< 2l x n
  Matrix normal;   ///< 2l x (m+1)

  int dim() const { return static_cast<int>(tangent.cols()); }
  int codim() const { return static_cast<int>(normal.cols()); }
};

/// Second fundamental form data in the frame's tangent coordinates.
///
/// A[alpha] is the shape operator for xi_alpha; the components h^alpha_ij of
/// the second fundamental form are the entries of the same matrix.
struct ShapeData {
  std::vector<Matrix> A;
  double S = 0.0;
  double rho2 = 0.0;
  Vector H_vec;
  Matrix ricci;

  double h(int alpha, int i, int j) const { return A[static_cast<std::size_t>(alpha)](i, j); }
};

/// Tangent space as the orthogonal complement of span{x, P_0 x, ..., P_m x},
/// taken from a column-pivoted Householder QR of that span. Throws
/// NumericalError when the Gram matrix of the full frame deviates from the
/// identity by more than 1e-8.
AdaptedFrame build_frame(const CliffordSystem& sys, const FocalPoint& pt);

/// Largest deviation of the Gram matrix of {x, e_i, xi_alpha} from identity.
double frame_gram_deviation(const AdaptedFrame& frame);

/// (A_alpha)_ij = -<P_alpha e_i, e_j>. Fills only ShapeData::A.
ShapeData shape_operators(const CliffordSystem& sys, const AdaptedFrame& frame);

/// S = sum (h^alpha_ij)^2.
double second_fundamental_norm(const ShapeData& sd);
/// H^alpha = trace(A_alpha) / n.
Vector mean_curvature(const ShapeData& sd);
/// Gauss contraction R_ij = (n-1) delta_ij + sum_alpha [tr(A_alpha) A_alpha - A_alpha^2]_ij.
Matrix ricci_tensor(const ShapeData& sd);
Matrix ricci_tensor(const CliffordSystem& sys, const AdaptedFrame& frame);

/// Shape operators plus S, H, rho^2 = S - n|H|^2 and the Ricci tensor.
ShapeData compute_shape_data(const CliffordSystem& sys, const AdaptedFrame& frame);

/// K(X, Y) = 1 + sum_alpha {<P_a X, X><P_a Y, Y> - <P_a X, Y>^2} for an
/// orthonormal tangent pair given in ambient coordinates.
double sectional_curvature(const CliffordSystem& sys, const AdaptedFrame& frame, const Vector& X,
                           const Vector& Y);
/// Same curvature through the Gauss equation with the shape operators.
double sectional_curvature_gauss(const ShapeData& sd, const AdaptedFrame& frame, const Vector& X,
                                 const Vector& Y);

/// Ricci(X) = 2(l - m - 2) + 2 sum_{alpha<beta} <X, P_alpha P_beta x>^2.
double ricci_quadratic(const CliffordSystem& sys, const AdaptedFrame& frame, const Vector& X);
/// Ricci(X) = sum_{i>=2} K(X, e_i) over an orthonormal completion of X.
double ricci_from_sectional(const CliffordSystem& sys, const AdaptedFrame& frame,
                            const Vector& X);

/// Orthonormal tangent basis (ambient columns) whose first column is X.
Matrix tangent_completion(const AdaptedFrame& frame, const Vector& X);

/// Residuals of the two bookkeeping identities behind the Ricci formula, for
/// a unit tangent X and its completion e_2..e_n:
///   length: <P_a X, X>^2 + sum_i <P_a X, e_i>^2 + sum_b <X, P_a P_b x>^2 = 1
///   trace:  <P_a X, X> + sum_i <P_a e_i, e_i> = 0
struct FrameIdentityResiduals {
  double length = 0.0;
  double trace = 0.0;
};
FrameIdentityResiduals frame_identity_residuals(const CliffordSystem& sys,
                                                const AdaptedFrame& frame, const Vector& X);

}  // namespace fkm
