#pragma once

#include "kst/lambda2.hpp"

namespace kst {

// ===========================================================================
// Block and Ricci decompositions
// ===========================================================================

/// Block form of a curvature operator in the self-dual / anti-self-dual
/// frames: [[W+ + s/12, T-+],[T+-, W- + s/12]] with T-+ = (T+-)^t.
/// Both W traces vanish: their sum by trace-freeness of the Weyl part,
/// their difference by the Bianchi identity.
struct HodgeBlocks {
  Mat3 w_plus;
  Mat3 w_minus;
  Mat3 t_pm;  // block mapping Lambda^2_+ -> Lambda^2_-
  double s = 0.0;
};

/// R = W + (1/2) T ^^ g + (s/24) g ^^ g with W totally trace free and T the
/// trace-free Ricci tensor.
struct RicciParts {
  AlgCurvTensor weyl;
  Sym4 ricci;
  double s = 0.0;
};

/// Diagonal curvature operator, parametrised by
///   R_{0a0a} = w_a + t_a + s/12,   R_{bgbg} = w_a - t_a + s/12
/// for cyclic (a,b,g).  w is projected onto sum(w) = 0 on construction.
class DiagonalACT {
 public:
  DiagonalACT(const Vec3& w, const Vec3& t, double s);

  const Vec3& w() const { return w_; }
  const Vec3& t() const { return t_; }
  double s() const { return s_; }

  AlgCurvTensor to_act() const;

  /// The six diagonal entries (basis order 01,02,03,23,31,12).
  Vec6 diagonal() const;

  double scale() const;  // max-abs of (w, t)

 private:
  Vec3 w_;
  Vec3 t_;
  double s_;
};

/// Image (U+, U-) of an isometry under the double cover
/// SO(4) -> SO(3) x SO(3); the cover is onto, so any pair of rotations is a
/// valid isometry action.
struct RotationPair {
  Mat3 u_plus = Mat3::Identity();
  Mat3 u_minus = Mat3::Identity();

  static RotationPair identity() { return {}; }
};

// ===========================================================================
// Operations
// ===========================================================================

HodgeBlocks hodge_blocks(const AlgCurvTensor& r);

/// Inverse of hodge_blocks.  Throws BianchiViolation when tr W+ != tr W-
/// beyond tolerance (and rejects unequal nonzero trace sums likewise).
AlgCurvTensor blocks_to_act(const HodgeBlocks& b, double tol = 1e-10);

RicciParts ricci_decompose(const AlgCurvTensor& r);

/// Isometry action: W+ -> U+^t W+ U+, W- -> U-^t W- U-, T -> U-^t T U+.
AlgCurvTensor so_action(const AlgCurvTensor& r, const RotationPair& u);

/// Orientation-reversing action: swaps W+ and W-, transposes T.  Involution.
AlgCurvTensor orientation_reverse(const AlgCurvTensor& r);

/// Max-abs of T W+ - W- T; zero iff the tensor is aligned ([W,T] = 0).
double alignment_residual(const AlgCurvTensor& r);
bool is_aligned(const AlgCurvTensor& r, const ToleranceConfig& tol = {});

/// Aligned and W+ has the same characteristic polynomial as W-
/// (equivalently tr W+^k = tr W-^k for k = 1,2,3).
bool is_diagonalisable(const AlgCurvTensor& r, const ToleranceConfig& tol = {});

struct Diagonalisation {
  DiagonalACT diagonal;
  RotationPair rotation;  // so_action(r, rotation) is diagonal
};

/// Rotate a diagonalisable tensor to diagonal form.  Eigenspaces of equal
/// eigenvalue are matched between W+ and W- and the restriction of T is
/// brought to diagonal form by a singular value decomposition; determinants
/// are fixed to +1 by column sign flips.  Throws NotDiagonalisable.
Diagonalisation diagonalise(const AlgCurvTensor& r,
                            const ToleranceConfig& tol = {});

// ===========================================================================
// Residual S4 action on diagonal tensors
// ===========================================================================

/// Stabiliser element of the diagonal slice: S3 permutes (w, t) jointly,
/// the Klein group flips an even number of signs in t.
struct S4Element {
  std::array<int, 3> perm = {0, 1, 2};  // new slot a takes old slot perm[a]
  std::array<int, 3> sign = {1, 1, 1};  // even number of -1 entries
};

const std::array<S4Element, 24>& s4_elements();

DiagonalACT s4_residual_action(const DiagonalACT& d, const S4Element& sigma);

}  // namespace kst
