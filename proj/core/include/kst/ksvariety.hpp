#pragma once

#include "kst/decomposition.hpp"

#include <vector>

namespace kst {

// ===========================================================================
// The Killing-Stackel variety
// ===========================================================================

/// 3x3 matrix whose symmetric part is diagonal and trace free,
///
///     M = [[ D1, -t3,  t2],
///          [ t3,  D2, -t1],
///          [-t2,  t1,  D3]],      D1 + D2 + D3 = 0.
///
/// The det M = 0 locus parametrises integrable diagonal curvature tensors.
class KSMatrix {
 public:
  KSMatrix() : delta_(Vec3::Zero()), t_(Vec3::Zero()) {}
  KSMatrix(const Vec3& delta, const Vec3& t);

  /// Validates the shape (diagonal trace-free symmetric part) to `tol`.
  static KSMatrix from_matrix(const Mat3& m, double tol = 1e-10);

  const Vec3& delta() const { return delta_; }
  const Vec3& t() const { return t_; }

  Mat3 matrix() const;
  double det() const { return matrix().determinant(); }
  double scale() const;  // max-abs of (delta, t)

  /// The coefficient vector (D1,D2,D3,t1,t2,t3).
  Vec6 coefficients() const;

 private:
  Vec3 delta_;
  Vec3 t_;
};

/// Point of P^2: nonzero 3-vector, canonically normalised (max-abs entry 1,
/// first significant entry positive).
struct ProjVec3 {
  Vec3 n;

  static ProjVec3 of(const Vec3& v);
  bool parallel_to(const Vec3& other, double tol = 1e-9) const;
};

/// Projective line of KS-matrices annihilating a common kernel vector.  In
/// the degenerate case (kernel at a (+-1,+-1,+-1) direction, where the two
/// embeddings coincide) `base` is the skew-symmetric point and `second` the
/// independent pencil generator through the query point.
struct StaeckelLine {
  KSMatrix base;    // the iota point
  KSMatrix second;  // the nu point, or the completion in the degenerate case
  ProjVec3 kernel;
  bool degenerate = false;
};

// ===========================================================================
// Operations
// ===========================================================================

/// KS-matrix of a diagonal tensor: Delta_a = w_b - w_g (cyclic), t copied,
/// s discarded.
KSMatrix ks_matrix(const DiagonalACT& d);

/// Inverse of ks_matrix, carrying the given scalar part.
DiagonalACT diagonal_from_ks(const KSMatrix& m, double s);

/// The ten singular points: six rank-one V points and four skew-symmetric
/// C points, in the order V+1, V-1, V+2, V-2, V+3, V-3, C0, C1, C2, C3.
const std::array<KSMatrix, 10>& singular_points();

/// Max-abs of the determinant gradient tr(A Adj M) over a basis of the
/// 5-dimensional slice, evaluated on the scale-normalised matrix.
double singularity_gradient(const KSMatrix& m);

bool is_singular(const KSMatrix& m, const ToleranceConfig& tol = {});

/// Kernel direction of a rank-two variety point, read off the adjugate.
/// Throws RankOne at the six rank-one points and NotOnVariety when
/// |det| exceeds tolerance.
ProjVec3 kernel_map(const KSMatrix& m, const ToleranceConfig& tol = {});

/// The two embeddings P^2 -> variety: iota(n) is skew-symmetric, nu(n) the
/// projected Veronese image; both annihilate n and have zero trace and
/// determinant.
KSMatrix iota(const Vec3& n);
KSMatrix nu(const Vec3& n);

/// Basis of the space of KS-matrices annihilating n: three matrices when
/// |n1| = |n2| = |n3| (an isokernel plane), two otherwise.
std::vector<KSMatrix> isokernel_space(const Vec3& n,
                                      const ToleranceConfig& tol = {});

/// The projective line through iota(kernel) and nu(kernel) containing m.
/// Throws SingularPoint at the ten singular points.
StaeckelLine staeckel_line(const KSMatrix& m, const ToleranceConfig& tol = {});

// ===========================================================================
// Octahedral S4 action
// ===========================================================================

/// Rotation of the octahedron: signed permutation with determinant +1.
/// Conjugation acts exactly by entry moves: Delta_a -> Delta_{perm[a]},
/// t_a -> sign[a] * t_{perm[a]}.
struct OctahedralElement {
  std::array<int, 3> perm = {0, 1, 2};
  std::array<int, 3> sign = {1, 1, 1};  // det(perm) * sign[0]*sign[1]*sign[2] = +1

  Mat3 matrix() const;
};

const std::array<OctahedralElement, 24>& octahedral_group();

KSMatrix s4_act(const KSMatrix& m, const OctahedralElement& sigma);

/// Lexicographic minimum over the 24-orbit of the scale-normalised
/// coefficient vector; constant on orbits by construction.
KSMatrix canonical_form(const KSMatrix& m);

}  // namespace kst
