#include "fkm/extrinsic_geometry.hpp"

#include <cmath>
#include <string>

#include "fkm/errors.hpp"

namespace fkm {

namespace {

constexpr double kFrameTolerance = 1e-8;
constexpr double kPairTolerance = 1e-10;
constexpr double kTangencyTolerance = 1e-8;

void check_tangent_unit(const AdaptedFrame& frame, const Vector& X, double tol, const char* what) {
  if (X.size() != frame.tangent.rows())
    throw DomainError(std::string(what) + ": vector has wrong dimension");
  if (std::abs(X.norm() - 1.0) > tol) throw DomainError(std::string(what) + ": X must be unit");
  const double normal_part = (X - frame.tangent * (frame.tangent.transpose() * X)).norm();
  if (normal_part > kTangencyTolerance)
    throw DomainError(std::string(what) + ": X is not tangent (residual " +
                      std::to_string(normal_part) + ")");
}

}  // namespace

AdaptedFrame build_frame(const CliffordSystem& sys, const FocalPoint& pt) {
  const int dim = sys.ambient_dim();
  if (pt.x.size() != dim) throw DomainError("focal point has wrong dimension");
  Matrix span(dim, sys.size() + 1);
  span.col(0) = pt.x;
  for (int a = 0; a < sys.size(); ++a) span.col(a + 1) = sys[a] * pt.x;

  Eigen::ColPivHouseholderQR<Matrix> qr(span);
  const Matrix q = qr.householderQ();
  AdaptedFrame frame;
  frame.pt = pt;
  frame.normal = span.rightCols(sys.size());
  frame.tangent = q.rightCols(dim - sys.size() - 1);

  const double dev = frame_gram_deviation(frame);
  if (!(dev <= kFrameTolerance))
    throw NumericalError("adapted frame is not orthonormal (Gram deviation " +
                         std::to_string(dev) + ")");
  return frame;
}

double frame_gram_deviation(const AdaptedFrame& frame) {
  const Eigen::Index dim = frame.tangent.rows();
  Matrix all(dim, 1 + frame.tangent.cols() + frame.normal.cols());
  all << frame.pt.x, frame.tangent, frame.normal;
  return (all.transpose() * all - Matrix::Identity(all.cols(), all.cols())).cwiseAbs().maxCoeff();
}

ShapeData shape_operators(const CliffordSystem& sys, const AdaptedFrame& frame) {
  ShapeData sd;
  for (int a = 0; a < sys.size(); ++a)
    sd.A.push_back(-(frame.tangent.transpose() * sys[a] * frame.tangent));
  return sd;
}

double second_fundamental_norm(const ShapeData& sd) {
  double s = 0.0;
  for (const Matrix& a : sd.A) s += a.squaredNorm();
  return s;
}

Vector mean_curvature(const ShapeData& sd) {
  Vector h(static_cast<Eigen::Index>(sd.A.size()));
  for (std::size_t a = 0; a < sd.A.size(); ++a)
    h[static_cast<Eigen::Index>(a)] = sd.A[a].trace() / static_cast<double>(sd.A[a].rows());
  return h;
}

Matrix ricci_tensor(const ShapeData& sd) {
  if (sd.A.empty()) throw DomainError("ricci_tensor needs shape operators");
  const Eigen::Index n = sd.A.front().rows();
  Matrix r = static_cast<double>(n - 1) * Matrix::Identity(n, n);
  for (const Matrix& a : sd.A) r += a.trace() * a - a * a;
  return r;
}

Matrix ricci_tensor(const CliffordSystem& sys, const AdaptedFrame& frame) {
  return ricci_tensor(shape_operators(sys, frame));
}

ShapeData compute_shape_data(const CliffordSystem& sys, const AdaptedFrame& frame) {
  ShapeData sd = shape_operators(sys, frame);
  sd.S = second_fundamental_norm(sd);
  sd.H_vec = mean_curvature(sd);
  sd.rho2 = sd.S - frame.dim() * sd.H_vec.squaredNorm();
  sd.ricci = ricci_tensor(sd);
  return sd;
}

double sectional_curvature(const CliffordSystem& sys, const AdaptedFrame& frame, const Vector& X,
                           const Vector& Y) {
  check_tangent_unit(frame, X, kPairTolerance, "sectional_curvature");
  check_tangent_unit(frame, Y, kPairTolerance, "sectional_curvature");
  if (std::abs(X.dot(Y)) > kPairTolerance)
    throw DomainError("sectional_curvature: X and Y must be orthogonal");
  double k = 1.0;
  for (int a = 0; a < sys.size(); ++a) {
    const Vector px = sys[a] * X;
    const double xy = px.dot(Y);
    k += px.dot(X) * Y.dot(sys[a] * Y) - xy * xy;
  }
  return k;
}

double sectional_curvature_gauss(const ShapeData& sd, const AdaptedFrame& frame, const Vector& X,
                                 const Vector& Y) {
  check_tangent_unit(frame, X, kPairTolerance, "sectional_curvature_gauss");
  check_tangent_unit(frame, Y, kPairTolerance, "sectional_curvature_gauss");
  if (std::abs(X.dot(Y)) > kPairTolerance)
    throw DomainError("sectional_curvature_gauss: X and Y must be orthogonal");
  const Vector a = frame.tangent.transpose() * X;
  const Vector b = frame.tangent.transpose() * Y;
  double k = 1.0;
  for (const Matrix& op : sd.A) {
    const double ab = a.dot(op * b);
    k += a.dot(op * a) * b.dot(op * b) - ab * ab;
  }
  return k;
}

double ricci_quadratic(const CliffordSystem& sys, const AdaptedFrame& frame, const Vector& X) {
  check_tangent_unit(frame, X, kTangencyTolerance, "ricci_quadratic");
  if (sys.l() < sys.m() + 2) throw DomainError("ricci_quadratic requires l >= m + 2");
  const Vector& x = frame.pt.x;
  double pairs = 0.0;
  for (int a = 0; a < sys.size(); ++a) {
    const Vector pax = sys[a].transpose() * X;  // <X, P_a P_b x> = (P_a^T X) . (P_b x)
    for (int b = a + 1; b < sys.size(); ++b) {
      const double v = pax.dot(sys[b] * x);
      pairs += v * v;
    }
  }
  return 2.0 * (sys.l() - sys.m() - 2) + 2.0 * pairs;
}

Matrix tangent_completion(const AdaptedFrame& frame, const Vector& X) {
  const Vector a = frame.tangent.transpose() * X;
  const Matrix column = a;
  Eigen::HouseholderQR<Matrix> qr(column);
  Matrix q = qr.householderQ();
  // The first Householder column is +/- a; fix the sign so column 0 is X.
  if (q.col(0).dot(a) < 0.0) q.col(0) = -q.col(0);
  return frame.tangent * q;
}

double ricci_from_sectional(const CliffordSystem& sys, const AdaptedFrame& frame,
                            const Vector& X) {
  const Matrix basis = tangent_completion(frame, X);
  double sum = 0.0;
  for (Eigen::Index i = 1; i < basis.cols(); ++i)
    sum += sectional_curvature(sys, frame, basis.col(0), basis.col(i));
  return sum;
}

FrameIdentityResiduals frame_identity_residuals(const CliffordSystem& sys,
                                                const AdaptedFrame& frame, const Vector& X) {
  check_tangent_unit(frame, X, kTangencyTolerance, "frame_identity_residuals");
  const Matrix basis = tangent_completion(frame, X);
  const Vector& x = frame.pt.x;
  FrameIdentityResiduals res;
  for (int a = 0; a < sys.size(); ++a) {
    const Vector pX = sys[a] * X;
    const double xx = pX.dot(X);
    double tangential = 0.0, diag = 0.0;
    for (Eigen::Index i = 1; i < basis.cols(); ++i) {
      const double c = pX.dot(basis.col(i));
      tangential += c * c;
      diag += basis.col(i).dot(sys[a] * basis.col(i));
    }
    double normal = 0.0;
    for (int b = 0; b < sys.size(); ++b) {
      const double c = X.dot(sys[a] * (sys[b] * x));
      normal += c * c;
    }
    res.length = std::max(res.length, std::abs(xx * xx + tangential + normal - 1.0));
    res.trace = std::max(res.trace, std::abs(xx + diag));
  }
  return res;
}

}  // namespace fkm
