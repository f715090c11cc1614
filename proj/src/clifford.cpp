#include "fkm/clifford.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fkm/errors.hpp"

namespace fkm {

namespace {

constexpr int kMaxGeneratorDim = 256;
constexpr double kCompletionSkip = 1e-6;

std::vector<int> conjugate(const std::vector<int>& a) {
  std::vector<int> out(a.size());
  out[0] = a[0];
  for (std::size_t i = 1; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Left multiplication by e_1..e_count in the Cayley-Dickson algebra of dimension dim.
std::vector<Matrix> left_multiplications(int dim, int count) {
  std::vector<Matrix> out;
  for (int unit = 1; unit <= count; ++unit) {
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(unit)] = 1;
    Matrix L = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
      std::vector<int> b(static_cast<std::size_t>(dim), 0);
      b[static_cast<std::size_t>(j)] = 1;
      const std::vector<int> prod = cayley_dickson_multiply(e, b);
      for (int i = 0; i < dim; ++i) L(i, j) = prod[static_cast<std::size_t>(i)];
    }
    out.push_back(std::move(L));
  }
  return out;
}

/// Eight anticommuting skew generators on R^16: L_i (x) diag(1,-1) for the
/// seven octonion units, and I_8 (x) J.
std::vector<Matrix> sixteen_dim_substrate() {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  Matrix j(2, 2);
  j << 0, -1, 1, 0;
  std::vector<Matrix> out;
  for (const Matrix& L : left_multiplications(8, 7)) out.push_back(kron(L, z));
  out.push_back(kron(Matrix::Identity(8, 8), j));
  return out;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace

AdmissibilityError::AdmissibilityError(int m, int k, int l, int m2)
    : Error("inadmissible Clifford system (m=" + std::to_string(m) + ", k=" + std::to_string(k) +
            ", l=" + std::to_string(l) + "): m2 = l - m - 1 = " + std::to_string(m2) +
            " must be >= 1"),
      m_(m),
      k_(k),
      l_(l),
      m2_(m2) {}

int delta(int m) {
  if (m <= 0) throw DomainError("delta(m) requires m >= 1, got " + std::to_string(m));
  static constexpr int kTable[] = {1, 2, 4, 4, 8, 8, 8, 8};
  if (m <= 8) return kTable[m - 1];
  return 16 * delta(m - 8);
}

std::vector<int> cayley_dickson_multiply(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  if (n != b.size() || n == 0 || (n & (n - 1)) != 0)
    throw DomainError("Cayley-Dickson operands must share a power-of-two dimension");
  if (n == 1) return {a[0] * b[0]};
  const std::size_t h = n / 2;
  const std::vector<int> a1(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(h));
  const std::vector<int> a2(a.begin() + static_cast<std::ptrdiff_t>(h), a.end());
  const std::vector<int> b1(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(h));
  const std::vector<int> b2(b.begin() + static_cast<std::ptrdiff_t>(h), b.end());
  // (a1, a2)(b1, b2) = (a1 b1 - b2* a2, b2 a1 + a2 b1*)
  const std::vector<int> p = cayley_dickson_multiply(a1, b1);
  const std::vector<int> q = cayley_dickson_multiply(conjugate(b2), a2);
  const std::vector<int> r = cayley_dickson_multiply(b2, a1);
  const std::vector<int> s = cayley_dickson_multiply(a2, conjugate(b1));
  std::vector<int> out(n);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = p[i] - q[i];
    out[h + i] = r[i] + s[i];
  }
  return out;
}

SkewGeneratorSet build_skew_generators(int m) {
  const int dim = delta(m);
  if (dim > kMaxGeneratorDim)
    throw NotImplementedError("m=" + std::to_string(m) + " needs delta(m)=" + std::to_string(dim) +
                              "; the periodicity step delta(m+8)=16*delta(m) is only applied "
                              "while delta(m) <= " + std::to_string(kMaxGeneratorDim));
  SkewGeneratorSet set;
  set.count = m - 1;
  set.dim = dim;
  if (m <= 8) {
    set.matrices = left_multiplications(dim, m - 1);
    return set;
  }
  const std::vector<Matrix> g = sixteen_dim_substrate();
  // omega = G_1 ... G_8 is a symmetric involution anticommuting with every G_i.
  Matrix omega = Matrix::Identity(16, 16);
  for (const Matrix& gi : g) omega = omega * gi;
  const SkewGeneratorSet base = build_skew_generators(m - 8);
  const Matrix id = Matrix::Identity(base.dim, base.dim);
  for (const Matrix& gi : g) set.matrices.push_back(kron(gi, id));
  for (const Matrix& e : base.matrices) set.matrices.push_back(kron(omega, e));
  return set;
}

CliffordSystem::CliffordSystem(int m, int l, std::vector<Matrix> matrices)
    : m_(m), l_(l), matrices_(std::move(matrices)) {
  if (m < 1) throw DomainError("Clifford system requires m >= 1");
  if (l < 1) throw DomainError("Clifford system requires l >= 1");
  if (l - m - 1 < 1) throw AdmissibilityError(m, l % delta(m) == 0 ? l / delta(m) : 0, l, l - m - 1);
  if (static_cast<int>(matrices_.size()) != m + 1)
    throw DomainError("Clifford system with m=" + std::to_string(m) + " needs " +
                      std::to_string(m + 1) + " matrices, got " + std::to_string(matrices_.size()));
  for (const Matrix& p : matrices_)
    if (p.rows() != 2 * l || p.cols() != 2 * l)
      throw DomainError("Clifford matrices must be " + std::to_string(2 * l) + "x" +
                        std::to_string(2 * l));
}

CliffordSystem CliffordSystem::with_perturbed_entry(int alpha, int row, int col,
                                                    double amount) const {
  if (alpha < 0 || alpha > m_ || row < 0 || col < 0 || row >= 2 * l_ || col >= 2 * l_)
    throw DomainError("perturbation index out of range");
  std::vector<Matrix> copy = matrices_;
  copy[static_cast<std::size_t>(alpha)](row, col) += amount;
  return CliffordSystem(m_, l_, std::move(copy));
}

CliffordSystem build_clifford_system(int m, int k) {
  if (k < 1) throw DomainError("build_clifford_system requires k >= 1");
  const int d = delta(m);
  const int l = k * d;
  if (l - m - 1 < 1) throw AdmissibilityError(m, k, l, l - m - 1);
  const SkewGeneratorSet base = build_skew_generators(m);
  const Matrix id_l = Matrix::Identity(l, l);
  const Matrix id_k = Matrix::Identity(k, k);

  std::vector<Matrix> ps;
  Matrix p0 = Matrix::Zero(2 * l, 2 * l);
  p0.topLeftCorner(l, l) = id_l;
  p0.bottomRightCorner(l, l) = -id_l;
  ps.push_back(std::move(p0));

  Matrix p1 = Matrix::Zero(2 * l, 2 * l);
  p1.topRightCorner(l, l) = id_l;
  p1.bottomLeftCorner(l, l) = id_l;
  ps.push_back(std::move(p1));

  for (const Matrix& e_base : base.matrices) {
    const Matrix e = kron(id_k, e_base);
    Matrix p = Matrix::Zero(2 * l, 2 * l);
    p.topRightCorner(l, l) = e;
    p.bottomLeftCorner(l, l) = -e;
    ps.push_back(std::move(p));
  }
  return CliffordSystem(m, l, std::move(ps));
}

VerificationRecord verify_clifford_relations(const CliffordSystem& sys, double tolerance) {
  VerificationRecord rec;
  rec.name = "clifford_relations";
  rec.tolerance = tolerance;
  const int n = sys.ambient_dim();
  const Matrix id = Matrix::Identity(n, n);
  double sym = 0.0, anti = 0.0, invol = 0.0, trace = 0.0;
  for (int a = 0; a < sys.size(); ++a) {
    const Matrix& pa = sys[a];
    sym = std::max(sym, max_abs(pa - pa.transpose()));
    invol = std::max(invol, max_abs(pa * pa - id));
    trace = std::max(trace, std::abs(pa.trace()));
    for (int b = a; b < sys.size(); ++b) {
      const Matrix& pb = sys[b];
      const Matrix target = (a == b ? 2.0 : 0.0) * id;
      anti = std::max(anti, max_abs(pa * pb + pb * pa - target));
    }
  }
  rec.observe(sym);
  rec.observe(anti);
  rec.observe(invol);
  rec.observe(trace);
  rec.metrics = {{"symmetry", sym}, {"anticommutation", anti}, {"involution", invol}, {"trace", trace}};
  rec.finalize();
  return rec;
}

Matrix orthonormal_completion(const Vector& c) {
  const Eigen::Index n = c.size();
  if (n < 1) throw DomainError("rotation vector must be non-empty");
  if (std::abs(c.norm() - 1.0) > 1e-12) throw DomainError("rotation vector must be a unit vector");
  std::vector<Vector> basis{c};
  for (Eigen::Index j = 0; j < n && static_cast<Eigen::Index>(basis.size()) < n; ++j) {
    Vector r = Vector::Unit(n, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& b : basis) r -= r.dot(b) * b;
    const double norm = r.norm();
    if (norm < kCompletionSkip) continue;
    basis.push_back(r / norm);
  }
  if (static_cast<Eigen::Index>(basis.size()) != n)
    throw NumericalError("orthonormal completion did not reach full rank");
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out.row(i) = basis[static_cast<std::size_t>(i)].transpose();
  return out;
}

CliffordSystem rotate_system(const CliffordSystem& sys, const Vector& c) {
  if (c.size() != sys.size())
    throw DomainError("rotation vector must have m+1 = " + std::to_string(sys.size()) + " entries");
  const Matrix coeff = orthonormal_completion(c);
  const int n = sys.ambient_dim();
  std::vector<Matrix> rotated;
  for (int b = 0; b < sys.size(); ++b) {
    Matrix p = Matrix::Zero(n, n);
    for (int a = 0; a < sys.size(); ++a)
      if (coeff(b, a) != 0.0) p += coeff(b, a) * sys[a];
    rotated.push_back(std::move(p));
  }
  return CliffordSystem(sys.m(), sys.l(), std::move(rotated));
}

void write_matrix_dump(std::ostream& out, const CliffordSystem& sys) {
  const int n = sys.ambient_dim();
  out << n << ' ' << sys.m() << '\n';
  for (int a = 0; a < sys.size(); ++a) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = sys[a](i, j);
        if (v != std::round(v))
          throw DomainError("matrix dump requires integer entries (P_" + std::to_string(a) + ")");
        if (j) out << ' ';
        out << static_cast<long long>(std::llround(v));
      }
      out << '\n';
    }
  }
}

CliffordSystem read_matrix_dump(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m) || n <= 0 || n % 2 != 0 || m < 1)
    throw ParseError("matrix dump header must be \"2l m\" with even 2l > 0 and m >= 1");
  std::vector<Matrix> ps;
  for (int a = 0; a <= m; ++a) {
    Matrix p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long long v = 0;
        if (!(in >> v)) throw ParseError("matrix dump truncated in block " + std::to_string(a));
        p(i, j) = static_cast<double>(v);
      }
    ps.push_back(std::move(p));
  }
  return CliffordSystem(m, n / 2, std::move(ps));
}

}  // namespace fkm
