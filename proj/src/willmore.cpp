#include "fkm/willmore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fkm/errors.hpp"
#include "fkm/random.hpp"

namespace fkm {

namespace {

Matrix orthonormalize(const Matrix& cols) {
  if (cols.cols() == 0) return cols;
  Eigen::HouseholderQR<Matrix> qr(cols);
  return qr.householderQ() * Matrix::Identity(cols.rows(), cols.cols());
}

double squared_projection(const Matrix& basis, const Vector& y) {
  return basis.cols() == 0 ? 0.0 : (basis.transpose() * y).squaredNorm();
}

Vector project(const Matrix& basis, const Vector& y) {
  if (basis.cols() == 0) return Vector::Zero(y.size());
  return basis * (basis.transpose() * y);
}

}  // namespace

PrincipalDecomposition principal_decomposition(const CliffordSystem& sys,
                                               const AdaptedFrame& frame, const Vector& coeffs) {
  if (coeffs.size() != sys.size())
    throw DomainError("normal coefficients must have m+1 entries");
  if (std::abs(coeffs.norm() - 1.0) > 1e-12)
    throw DomainError("normal coefficients must form a unit vector");
  PrincipalDecomposition d;
  d.coeffs = coeffs;
  d.xi = frame.normal * coeffs;
  const ShapeData sd = shape_operators(sys, frame);
  const Eigen::Index n = frame.tangent.cols();
  d.A_xi = Matrix::Zero(n, n);
  for (int a = 0; a < sys.size(); ++a) d.A_xi += coeffs[a] * sd.A[static_cast<std::size_t>(a)];

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d.A_xi + d.A_xi.transpose()));
  if (es.info() != Eigen::Success) throw NumericalError("shape operator eigensolver failed");

  constexpr std::array<double, 3> kCentres{0.0, 1.0, -1.0};
  std::array<std::vector<Eigen::Index>, 3> members;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = es.eigenvalues()[i];
    int best = 0;
    for (int c = 1; c < 3; ++c)
      if (std::abs(lambda - kCentres[c]) < std::abs(lambda - kCentres[best])) best = c;
    const double dist = std::abs(lambda - kCentres[static_cast<std::size_t>(best)]);
    if (!(dist <= kEigenClusterRadius))
      throw SpectrumError("shape operator eigenvalue " + std::to_string(lambda) +
                          " is not within " + std::to_string(kEigenClusterRadius) +
                          " of 0, 1 or -1");
    d.cluster_error = std::max(d.cluster_error, dist);
    members[static_cast<std::size_t>(best)].push_back(i);
  }

  const int expect0 = sys.m();
  const int expect1 = sys.l() - sys.m() - 1;
  const auto dims = std::array<int, 3>{static_cast<int>(members[0].size()),
                                       static_cast<int>(members[1].size()),
                                       static_cast<int>(members[2].size())};
  if (dims[0] != expect0 || dims[1] != expect1 || dims[2] != expect1)
    throw LemmaViolationError("principal multiplicities (" + std::to_string(dims[0]) + ", " +
                              std::to_string(dims[1]) + ", " + std::to_string(dims[2]) +
                              "), expected (" + std::to_string(expect0) + ", " +
                              std::to_string(expect1) + ", " + std::to_string(expect1) + ")");

  auto basis_of = [&](const std::vector<Eigen::Index>& idx) {
    Matrix local(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
      local.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(idx[j]);
    return Matrix(frame.tangent * orthonormalize(local));
  };
  d.T0 = basis_of(members[0]);
  d.T1 = basis_of(members[1]);
  d.Tm1 = basis_of(members[2]);
  return d;
}

double reflection_check(const CliffordSystem& rotated, const AdaptedFrame& frame,
                        const PrincipalDecomposition& decomp) {
  const Matrix& p0 = rotated[0];
  double worst = (p0 * frame.pt.x - decomp.xi).norm();
  for (Eigen::Index i = 0; i < decomp.T1.cols(); ++i)
    worst = std::max(worst, (p0 * decomp.T1.col(i) + decomp.T1.col(i)).norm());
  for (Eigen::Index i = 0; i < decomp.Tm1.cols(); ++i)
    worst = std::max(worst, (p0 * decomp.Tm1.col(i) - decomp.Tm1.col(i)).norm());
  return worst;
}

Vector willmore_contractions(const ShapeData& sd) {
  Vector out(static_cast<Eigen::Index>(sd.A.size()));
  for (std::size_t a = 0; a < sd.A.size(); ++a)
    out[static_cast<Eigen::Index>(a)] = sd.ricci.cwiseProduct(sd.A[a]).sum();
  return out;
}

double willmore_residual(const ShapeData& sd) {
  if (sd.ricci.size() == 0) throw DomainError("willmore_residual needs the Ricci tensor");
  return willmore_contractions(sd).cwiseAbs().maxCoeff();
}

RicciBalance ricci_balance(const CliffordSystem& sys, const AdaptedFrame& frame,
                           const ShapeData& sd, const PrincipalDecomposition& decomp) {
  double sum_v = 0.0, sum_w = 0.0;
  for (Eigen::Index i = 0; i < decomp.T1.cols(); ++i)
    sum_v += ricci_quadratic(sys, frame, decomp.T1.col(i));
  for (Eigen::Index i = 0; i < decomp.Tm1.cols(); ++i)
    sum_w += ricci_quadratic(sys, frame, decomp.Tm1.col(i));
  const double contraction = sd.ricci.cwiseProduct(decomp.A_xi).sum();
  RicciBalance out;
  out.balance = std::abs(sum_v - sum_w);
  out.bridge = std::abs(contraction - (sum_v - sum_w));
  return out;
}

ProjectionBalance projection_balance(const CliffordSystem& rotated, const AdaptedFrame& frame,
                                     const PrincipalDecomposition& decomp) {
  ProjectionBalance out;
  const Vector& x = frame.pt.x;
  double total_v = 0.0, total_w = 0.0;
  for (int a = 0; a < rotated.size(); ++a) {
    for (int b = a + 1; b < rotated.size(); ++b) {
      const Vector y = rotated[a] * (rotated[b] * x);
      const double v2 = squared_projection(decomp.T1, y);
      const double w2 = squared_projection(decomp.Tm1, y);
      out.pairwise = std::max(out.pairwise, std::abs(v2 - w2));
      if (a == 0) out.alpha0 = std::max({out.alpha0, std::sqrt(v2), std::sqrt(w2)});
      // P_a P_b x = -P_b P_a x, so the ordered (a != b) sums count each pair twice.
      total_v += 2.0 * v2;
      total_w += 2.0 * w2;
      ++out.pairs;
    }
  }
  out.aggregate = std::abs(total_v - total_w);
  return out;
}

VerificationRecord case_identities(const CliffordSystem& rotated, const AdaptedFrame& frame,
                                   const PrincipalDecomposition& decomp, double tol) {
  VerificationRecord rec;
  rec.name = "case_identities";
  rec.tolerance = tol;
  const Vector& x = frame.pt.x;
  const Matrix& p0 = rotated[0];
  double tangency = 0.0, orthogonality = 0.0, p0u = 0.0, norm_w = 0.0, norm_v = 0.0,
         t0_membership = 0.0;
  for (int a = 0; a < rotated.size(); ++a) {
    for (int b = a + 1; b < rotated.size(); ++b) {
      const Vector y = rotated[a] * (rotated[b] * x);
      tangency = std::max(tangency, std::abs(y.dot(x)));
      for (int c = 0; c < rotated.size(); ++c)
        tangency = std::max(tangency, std::abs(y.dot(rotated[c] * x)));
      if (a == 0) {
        t0_membership = std::max(t0_membership, (y - project(decomp.T0, y)).norm());
        continue;
      }
      const Vector p0y = p0 * y;
      orthogonality = std::max(orthogonality, std::abs(p0y.dot(y)));
      const Vector u = project(decomp.T0, y);
      const double p0u2 = (p0 * u).squaredNorm();
      const double v2 = squared_projection(decomp.T1, y);
      const double w2 = squared_projection(decomp.Tm1, y);
      norm_w = std::max(norm_w, std::abs(2.0 - (u.squaredNorm() + p0u2 + 4.0 * w2)));
      norm_v = std::max(norm_v, std::abs(2.0 - (u.squaredNorm() + p0u2 + 4.0 * v2)));
      if (rotated.m() == 2) p0u = std::max(p0u, std::sqrt(p0u2));
    }
  }
  rec.metrics = {{"tangency", tangency},         {"orthogonality", orthogonality},
                 {"p0u", p0u},                   {"norm_w", norm_w},
                 {"norm_v", norm_v},             {"t0_membership", t0_membership}};
  for (const auto& [key, value] : rec.metrics) rec.observe(value);
  if (rotated.m() == 1) rec.notes.push_back("trivially balanced: no pairs with alpha, beta > 0");
  rec.finalize();
  return rec;
}

std::string to_string(EinsteinStatus status) {
  switch (status) {
    case EinsteinStatus::kNonEinstein:
      return "non_einstein";
    case EinsteinStatus::kEinsteinSuspected:
      return "einstein_suspected";
    case EinsteinStatus::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

EinsteinProbe einstein_probe(const CliffordSystem& sys, const AdaptedFrame& frame,
                             const ShapeData& sd, int n_dirs, std::uint64_t seed) {
  if (n_dirs < 2) throw DomainError("einstein_probe requires n_dirs >= 2");
  if (sd.ricci.size() == 0) throw DomainError("einstein_probe needs the Ricci tensor");
  std::vector<double> values;
  GaussianSource rng(seed);
  for (int i = 0; i < n_dirs; ++i) {
    const Vector X = frame.tangent * rng.unit_vector(frame.tangent.cols());
    values.push_back(ricci_quadratic(sys, frame, X.normalized()));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sd.ricci + sd.ricci.transpose()));
  const Eigen::Index last = es.eigenvalues().size() - 1;
  values.push_back(ricci_quadratic(sys, frame, frame.tangent * es.eigenvectors().col(0)));
  values.push_back(ricci_quadratic(sys, frame, frame.tangent * es.eigenvectors().col(last)));

  EinsteinProbe out;
  out.min = *std::min_element(values.begin(), values.end());
  out.max = *std::max_element(values.begin(), values.end());
  out.spread = out.max - out.min;
  const int m = sys.m();
  out.inequality_holds = 4 * sys.l() > m * m + 3 * m + 4;
  out.dimension_holds = 2 * sys.focal_dim() > m * (m + 1);
  if (!out.inequality_holds)
    out.status = EinsteinStatus::kInconclusive;
  else if (out.spread > kEinsteinSpreadThreshold)
    out.status = EinsteinStatus::kNonEinstein;
  else
    out.status = EinsteinStatus::kEinsteinSuspected;
  return out;
}

WillmoreCertificate certify_willmore(const CliffordSystem& sys, const AdaptedFrame& frame,
                                     const ShapeData& sd, const std::vector<Vector>& normals,
                                     const WillmoreTolerances& tol) {
  WillmoreCertificate cert;
  cert.residual_reduced = willmore_residual(sd);
  for (const Vector& c : normals) {
    const PrincipalDecomposition d = principal_decomposition(sys, frame, c);
    const CliffordSystem rotated = rotate_system(sys, c);
    const RicciBalance rb = ricci_balance(sys, frame, sd, d);
    const ProjectionBalance pb = projection_balance(rotated, frame, d);
    const VerificationRecord cases = case_identities(rotated, frame, d, tol.geom);
    cert.residual_balance = std::max(cert.residual_balance, rb.balance);
    cert.residual_bridge = std::max(cert.residual_bridge, rb.bridge);
    cert.residual_projection = std::max({cert.residual_projection, pb.pairwise, pb.alpha0});
    cert.residual_aggregate = std::max(cert.residual_aggregate, pb.aggregate);
    cert.residual_reflection =
        std::max(cert.residual_reflection, reflection_check(rotated, frame, d));
    cert.residual_cases = std::max(cert.residual_cases, cases.max_deviation);
    cert.lemma_cluster_error = std::max(cert.lemma_cluster_error, d.cluster_error);
    ++cert.normals_checked;
  }
  cert.pass = cert.residual_reduced < tol.willmore && cert.residual_balance < tol.willmore &&
              cert.residual_bridge < tol.geom && cert.residual_projection < tol.geom &&
              cert.residual_aggregate < tol.geom && cert.residual_reflection < tol.geom &&
              cert.residual_cases < tol.geom && cert.lemma_cluster_error < tol.geom;
  return cert;
}

}  // namespace fkm
