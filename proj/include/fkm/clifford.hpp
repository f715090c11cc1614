#pragma once

#include <iosfwd>
#include <vector>

#include "fkm/linalg.hpp"
#include "fkm/verification.hpp"

namespace fkm {

/// Dimension of the smallest real space carrying m-1 anticommuting skew
/// complex structures: 1, 2, 4, 4, 8, 8, 8, 8 for m = 1..8 and
/// delta(m + 8) = 16 * delta(m).
int delta(int m);

/// Anticommuting orthogonal skew matrices E_1..E_{m-1} on R^{delta(m)}
/// with E_i E_j + E_j E_i = -2 delta_ij I. Entries are in {-1, 0, +1}.
struct SkewGeneratorSet {
  int count = 0;
  int dim = 0;
  std::vector<Matrix> matrices;
};

/// Left multiplication by the imaginary units e_1..e_{m-1} of the
/// Cayley-Dickson algebra of dimension delta(m) (complex numbers, quaternions,
/// octonions) for m <= 8. For m >= 9 the generators for m - 8 are tensored
/// with a fixed 16-dimensional set of eight generators.
///
/// Cayley-Dickson product used at every level: (a, b)(c, d) = (ac - d*b, da + bc*),
/// conjugation (a, b)* = (a*, -b). Units are indexed so that e_{h+i} = (0, e_i)
/// where h is half the algebra dimension.
SkewGeneratorSet build_skew_generators(int m);

/// Integer multiplication in the Cayley-Dickson algebra of dimension a.size()
/// (a power of two). Exposed for tests.
std::vector<int> cayley_dickson_multiply(const std::vector<int>& a, const std::vector<int>& b);

/// Symmetric Clifford system P_0..P_m on R^{2l}.
///
/// The constructor checks shapes and admissibility (l - m - 1 >= 1) only; the
/// algebraic relations are checked by verify_clifford_relations so that faulty
/// systems can be represented and diagnosed.
class CliffordSystem {
 public:
  CliffordSystem(int m, int l, std::vector<Matrix> matrices);

  int m() const { return m_; }
  int l() const { return l_; }
  int ambient_dim() const { return 2 * l_; }
  int m1() const { return m_; }
  int m2() const { return l_ - m_ - 1; }
  /// Dimension of the focal submanifold M+, 2l - m - 2.
  int focal_dim() const { return 2 * l_ - m_ - 2; }
  int size() const { return m_ + 1; }

  const Matrix& operator[](int alpha) const { return matrices_[static_cast<std::size_t>(alpha)]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

  /// Copy with entry (row, col) of P_alpha shifted by `amount` (fault injection).
  CliffordSystem with_perturbed_entry(int alpha, int row, int col, double amount) const;

 private:
  int m_;
  int l_;
  std::vector<Matrix> matrices_;
};

/// Block construction on R^l (+) R^l with l = k * delta(m):
/// P_0(u, v) = (u, -v), P_1(u, v) = (v, u), P_{1+i}(u, v) = (E_i v, -E_i u).
CliffordSystem build_clifford_system(int m, int k);

/// Symmetry, anticommutation, involution and trace checks. With tolerance 0
/// (the default, for integer systems) the record passes only on an exact zero.
VerificationRecord verify_clifford_relations(const CliffordSystem& sys, double tolerance = 0.0);

/// Orthogonal (m+1)x(m+1) matrix whose first row is c; remaining rows come
/// from Gram-Schmidt on the standard basis, skipping vectors whose residual
/// norm is below 1e-6.
Matrix orthonormal_completion(const Vector& c);

/// P'_beta = sum_alpha C(beta, alpha) P_alpha with C = orthonormal_completion(c),
/// so P'_0 = sum_alpha c_alpha P_alpha.
CliffordSystem rotate_system(const CliffordSystem& sys, const Vector& c);

/// Text dump: first line "2l m", then m+1 blocks of 2l rows of 2l integers.
/// Throws DomainError if an entry is not an integer.
void write_matrix_dump(std::ostream& out, const CliffordSystem& sys);
CliffordSystem read_matrix_dump(std::istream& in);

}  // namespace fkm
