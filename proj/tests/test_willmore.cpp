#include <doctest.h>

#include <cmath>

#include "fkm/errors.hpp"
#include "fkm/random.hpp"
#include "fkm/willmore.hpp"

using namespace fkm;

namespace {

struct PointData {
  CliffordSystem sys;
  AdaptedFrame frame;
  ShapeData sd;
};

std::vector<PointData> points_for(int m, int k, int n, std::uint64_t seed = 99) {
  const auto sys = build_clifford_system(m, k);
  std::vector<PointData> out;
  for (const auto& pt : sample_focal_points(sys, n, seed)) {
    AdaptedFrame frame = build_frame(sys, pt);
    ShapeData sd = compute_shape_data(sys, frame);
    out.push_back({sys, std::move(frame), std::move(sd)});
  }
  return out;
}

const std::pair<int, int> kGrid[] = {{1, 3}, {1, 4}, {2, 2}, {3, 2}, {4, 2}, {5, 1}, {6, 1}};

std::array<int, 3> dims(const PrincipalDecomposition& d) {
  return {static_cast<int>(d.T0.cols()), static_cast<int>(d.T1.cols()),
          static_cast<int>(d.Tm1.cols())};
}

}  // namespace

TEST_CASE("principal decomposition multiplicities") {
  {
    const auto p = points_for(1, 3, 1)[0];
    CHECK(dims(principal_decomposition(p.sys, p.frame, Vector::Unit(2, 0))) ==
          std::array<int, 3>{1, 1, 1});
  }
  {
    const auto p = points_for(2, 2, 1)[0];
    CHECK(dims(principal_decomposition(p.sys, p.frame, Vector::Unit(3, 0))) ==
          std::array<int, 3>{2, 1, 1});
  }
}

TEST_CASE("principal curvatures are 0, +1, -1 for 50 random normals (property)") {
  for (auto [m, k] : kGrid) {
    const auto pts = points_for(m, k, 2);
    GaussianSource rng(mix_seed(3, static_cast<std::uint64_t>(m * 10 + k)));
    for (const auto& p : pts) {
      const int l = p.sys.l();
      for (int t = 0; t < 50; ++t) {
        const Vector c = rng.unit_vector(m + 1);
        const PrincipalDecomposition d = principal_decomposition(p.sys, p.frame, c);
        CHECK(d.cluster_error < 1e-8);
        CHECK(dims(d) == std::array<int, 3>{m, l - m - 1, l - m - 1});
        const Matrix a_basis = p.frame.tangent.transpose();
        for (Eigen::Index i = 0; i < d.T1.cols(); ++i) {
          const Vector v = a_basis * d.T1.col(i);
          CHECK((d.A_xi * v - v).norm() < 1e-8);
        }
        for (Eigen::Index i = 0; i < d.Tm1.cols(); ++i) {
          const Vector w = a_basis * d.Tm1.col(i);
          CHECK((d.A_xi * w + w).norm() < 1e-8);
        }
        for (Eigen::Index i = 0; i < d.T0.cols(); ++i) CHECK((d.A_xi * (a_basis * d.T0.col(i))).norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("principal decomposition errors") {
  const auto p = points_for(2, 2, 1)[0];
  CHECK_THROWS_AS(principal_decomposition(p.sys, p.frame, Vector::Ones(3)), DomainError);
  CHECK_THROWS_AS(principal_decomposition(p.sys, p.frame, Vector::Unit(2, 0)), DomainError);
  // A perturbation of 1e-3 moves eigenvalues far outside the 1e-6 clusters.
  Matrix bump = Matrix::Zero(8, 8);
  bump(0, 0) = bump(1, 1) = bump(2, 2) = 1e-3;
  std::vector<Matrix> ps = p.sys.matrices();
  ps[0] += bump;
  CHECK_THROWS_AS(principal_decomposition(CliffordSystem(2, 4, ps), p.frame, Vector::Unit(3, 0)),
                  SpectrumError);
  // With P_0 = I every principal curvature is -1.
  ps = p.sys.matrices();
  ps[0] = Matrix::Identity(8, 8);
  CHECK_THROWS_AS(principal_decomposition(CliffordSystem(2, 4, ps), p.frame, Vector::Unit(3, 0)),
                  LemmaViolationError);
}

TEST_CASE("reflection: P'_0 v = -v on T1 and P'_0 w = w on T-1") {
  for (auto [m, k] : kGrid) {
    const auto pts = points_for(m, k, 2);
    GaussianSource rng(mix_seed(4, static_cast<std::uint64_t>(m)));
    for (const auto& p : pts) {
      const Vector e0 = Vector::Unit(m + 1, 0);
      const auto d0 = principal_decomposition(p.sys, p.frame, e0);
      CHECK(reflection_check(p.sys, p.frame, d0) < 1e-10);
      for (int t = 0; t < 10; ++t) {
        const Vector c = rng.unit_vector(m + 1);
        const auto d = principal_decomposition(p.sys, p.frame, c);
        const auto rotated = rotate_system(p.sys, c);
        CHECK(reflection_check(rotated, p.frame, d) < 1e-8);
        // T1 = E_- of P'_0 intersected with the tangent space, T-1 = E_+ likewise.
        Eigen::SelfAdjointEigenSolver<Matrix> es(rotated[0]);
        const Eigen::Index l = m == 0 ? 0 : p.sys.l();
        const Matrix e_minus = es.eigenvectors().leftCols(l);
        const Matrix e_plus = es.eigenvectors().rightCols(l);
        CHECK(es.eigenvalues()[l - 1] < -0.5);
        for (Eigen::Index i = 0; i < d.T1.cols(); ++i)
          CHECK((e_minus * (e_minus.transpose() * d.T1.col(i)) - d.T1.col(i)).norm() < 1e-8);
        for (Eigen::Index i = 0; i < d.Tm1.cols(); ++i)
          CHECK((e_plus * (e_plus.transpose() * d.Tm1.col(i)) - d.Tm1.col(i)).norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("reduced Willmore criterion holds at every point") {
  for (auto [m, k] : kGrid) {
    for (const auto& p : points_for(m, k, 5)) {
      CAPTURE(m);
      CHECK(willmore_residual(p.sd) < 1e-7);
    }
  }
}

TEST_CASE("Willmore residual is frame independent and rotation covariant") {
  GaussianSource rng(66);
  for (auto [m, k] : {std::pair{2, 2}, {3, 2}, {5, 1}}) {
    for (const auto& p : points_for(m, k, 3)) {
      const int n = p.frame.dim();
      const Matrix q =
          Eigen::HouseholderQR<Matrix>(rng.normal_vector(n * n).reshaped(n, n)).householderQ();
      AdaptedFrame rotated_frame = p.frame;
      rotated_frame.tangent = p.frame.tangent * q;
      const ShapeData sd2 = compute_shape_data(p.sys, rotated_frame);
      CHECK((willmore_contractions(sd2) - willmore_contractions(p.sd)).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(std::abs(willmore_residual(sd2) - willmore_residual(p.sd)) < 1e-9);

      const Vector c = rng.unit_vector(m + 1);
      const CliffordSystem rot = rotate_system(p.sys, c);
      AdaptedFrame frame_rot = p.frame;
      for (int a = 0; a < rot.size(); ++a) frame_rot.normal.col(a) = rot[a] * p.frame.pt.x;
      const ShapeData sd_rot = compute_shape_data(rot, frame_rot);
      const Matrix coeff = orthonormal_completion(c);
      CHECK((willmore_contractions(sd_rot) - coeff * willmore_contractions(p.sd)).cwiseAbs().maxCoeff() <
            1e-9);
      CHECK(std::abs(willmore_residual(sd_rot) - willmore_residual(p.sd)) < 1e-9);
    }
  }
}

TEST_CASE("fault injection makes the Willmore pipeline fail loudly") {
  const auto sys = build_clifford_system(2, 2);
  const auto bad = sys.with_perturbed_entry(1, 0, 4, 1e-3);
  bool detected = false;
  try {
    const auto pts = sample_focal_points(bad, 3, 5);
    for (const auto& pt : pts) {
      const AdaptedFrame frame = build_frame(bad, pt);
      const ShapeData sd = compute_shape_data(bad, frame);
      if (willmore_residual(sd) > 1e-6) detected = true;
    }
  } catch (const Error&) {
    detected = true;
  }
  CHECK(detected);
}

TEST_CASE("Ricci balance and the bridge identity") {
  const std::tuple<int, int, double> cases[] = {{1, 3, 1e-8}, {2, 2, 1e-7}, {3, 2, 1e-7}};
  GaussianSource rng(12);
  for (auto [m, k, tol] : cases) {
    for (const auto& p : points_for(m, k, 3)) {
      for (int t = 0; t <= 10; ++t) {
        const Vector c = t == 0 ? Vector::Unit(m + 1, 0) : rng.unit_vector(m + 1);
        const auto d = principal_decomposition(p.sys, p.frame, c);
        const RicciBalance rb = ricci_balance(p.sys, p.frame, p.sd, d);
        CHECK(rb.balance < tol);
        CHECK(rb.bridge < 1e-8);
      }
    }
  }
}

TEST_CASE("projection balance") {
  SUBCASE("alpha = 0 pairs land in T0") {
    for (auto [m, k] : kGrid) {
      const auto p = points_for(m, k, 1)[0];
      const auto d = principal_decomposition(p.sys, p.frame, Vector::Unit(m + 1, 0));
      const ProjectionBalance pb = projection_balance(p.sys, p.frame, d);
      CHECK(pb.alpha0 < 1e-8);
      CHECK(pb.pairs == m * (m + 1) / 2);
      CHECK(pb.pairwise * pb.pairs >= pb.aggregate / 2.0 - 1e-15);
    }
  }
  SUBCASE("(m=2, l=4): |V|^2 = |W|^2 for the pair (1, 2)") {
    for (const auto& p : points_for(2, 2, 3)) {
      const auto d = principal_decomposition(p.sys, p.frame, Vector::Unit(3, 0));
      const Vector y = p.sys[1] * (p.sys[2] * p.frame.pt.x);
      const double v2 = (d.T1.transpose() * y).squaredNorm();
      const double w2 = (d.Tm1.transpose() * y).squaredNorm();
      CHECK(std::abs(v2 - w2) < 1e-9);
    }
  }
  SUBCASE("(m=4, l=8): every pair balances for random normals") {
    GaussianSource rng(31);
    for (const auto& p : points_for(4, 2, 2)) {
      for (int t = 0; t < 10; ++t) {
        const Vector c = rng.unit_vector(5);
        const auto d = principal_decomposition(p.sys, p.frame, c);
        const ProjectionBalance pb = projection_balance(rotate_system(p.sys, c), p.frame, d);
        CHECK(pb.pairwise < 1e-8);
        CHECK(pb.aggregate < 1e-8);
      }
    }
  }
}

TEST_CASE("case identities") {
  GaussianSource rng(77);
  SUBCASE("(m=2, l=4): P_0 U = 0 and the norm bookkeeping") {
    for (const auto& p : points_for(2, 2, 3)) {
      for (int t = 0; t < 5; ++t) {
        const Vector c = t == 0 ? Vector::Unit(3, 0) : rng.unit_vector(3);
        const auto d = principal_decomposition(p.sys, p.frame, c);
        const auto rec = case_identities(rotate_system(p.sys, c), p.frame, d);
        CHECK(rec.pass);
        CHECK(rec.metrics.at("p0u") < 1e-8);
        CHECK(rec.metrics.at("norm_v") < 1e-8);
        CHECK(rec.metrics.at("norm_w") < 1e-8);
      }
    }
  }
  SUBCASE("(m=3, l=8): tangency, orthogonality, bookkeeping for all pairs") {
    for (const auto& p : points_for(3, 2, 3)) {
      const Vector c = rng.unit_vector(4);
      const auto d = principal_decomposition(p.sys, p.frame, c);
      const auto rec = case_identities(rotate_system(p.sys, c), p.frame, d);
      CHECK(rec.pass);
      CHECK(rec.metrics.at("tangency") < 1e-8);
      CHECK(rec.metrics.at("orthogonality") < 1e-8);
      CHECK(rec.metrics.at("t0_membership") < 1e-8);
    }
  }
  SUBCASE("m=1 is vacuous") {
    const auto p = points_for(1, 3, 1)[0];
    const auto d = principal_decomposition(p.sys, p.frame, Vector::Unit(2, 0));
    const auto rec = case_identities(p.sys, p.frame, d);
    CHECK(rec.pass);
    REQUIRE(rec.notes.size() == 1);
    CHECK(rec.notes[0].find("trivially balanced") != std::string::npos);
  }
}

TEST_CASE("sectional curvature between T1 and T-1 directions") {
  // (m=2, l=8): dim T-1 = 5 exceeds the 3 constraints <P_a X, Y> = 0.
  for (const auto& p : points_for(2, 4, 2)) {
    const auto d = principal_decomposition(p.sys, p.frame, Vector::Unit(3, 0));
    const Vector X = d.T1.col(0);
    Matrix cons(d.Tm1.cols(), p.sys.size());
    for (int a = 0; a < p.sys.size(); ++a) cons.col(a) = d.Tm1.transpose() * (p.sys[a] * X);
    Eigen::FullPivLU<Matrix> lu(cons.transpose());
    const Matrix kernel = lu.kernel();
    REQUIRE(kernel.cols() >= 1);
    const Vector Y = (d.Tm1 * kernel.col(0)).normalized();
    double expected = 1.0;
    for (int a = 0; a < p.sys.size(); ++a) {
      CHECK(std::abs((p.sys[a] * X).dot(Y)) < 1e-10);
      expected += (p.sys[a] * X).dot(X) * (p.sys[a] * Y).dot(Y);
    }
    CHECK(sectional_curvature(p.sys, p.frame, X, Y) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(sectional_curvature_gauss(p.sd, p.frame, X, Y) - expected) < 1e-10);
  }
}

TEST_CASE("einstein probe") {
  SUBCASE("(m=1, l=3): spread 2 from the eigen-analysis of R") {
    for (const auto& p : points_for(1, 3, 3)) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(p.sd.ricci);
      const double eig_spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
      CHECK(std::abs(eig_spread - 2.0) < 1e-8);
      const EinsteinProbe probe = einstein_probe(p.sys, p.frame, p.sd, 20, 1);
      CHECK(std::abs(probe.spread - 2.0) < 1e-8);
      CHECK(probe.inequality_holds);
      CHECK(probe.dimension_holds);
      CHECK(probe.status == EinsteinStatus::kNonEinstein);
    }
  }
  SUBCASE("(m=2, l=4): spread above 0.1") {
    for (const auto& p : points_for(2, 2, 3)) {
      const EinsteinProbe probe = einstein_probe(p.sys, p.frame, p.sd, 20, 2);
      CHECK(probe.inequality_holds);
      CHECK(probe.spread > 0.1);
      CHECK(to_string(probe.status) == "non_einstein");
    }
  }
  SUBCASE("(m=4, l=8): 4l = m^2 + 3m + 4 is inconclusive") {
    const auto p = points_for(4, 2, 1)[0];
    const EinsteinProbe probe = einstein_probe(p.sys, p.frame, p.sd, 20, 3);
    CHECK_FALSE(probe.inequality_holds);
    CHECK(probe.status == EinsteinStatus::kInconclusive);
  }
  const auto p = points_for(1, 3, 1)[0];
  CHECK_THROWS_AS(einstein_probe(p.sys, p.frame, p.sd, 1, 0), DomainError);
}

TEST_CASE("certify_willmore aggregates every check") {
  GaussianSource rng(8);
  for (auto [m, k] : kGrid) {
    const auto p = points_for(m, k, 1)[0];
    std::vector<Vector> normals;
    for (int a = 0; a <= m; ++a) normals.push_back(Vector::Unit(m + 1, a));
    for (int t = 0; t < 10; ++t) normals.push_back(rng.unit_vector(m + 1));
    const WillmoreCertificate cert = certify_willmore(p.sys, p.frame, p.sd, normals);
    CAPTURE(m);
    CHECK(cert.pass);
    CHECK(cert.normals_checked == m + 11);
    CHECK(cert.residual_reduced < 1e-7);
  }
}
