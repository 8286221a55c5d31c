#pragma once

#include "kst/common.hpp"

namespace kst {

// ===========================================================================
// The bivector basis of Lambda^2 R^4 and its index tables
// ===========================================================================
//
// Everything in this library is expressed in the fixed ordered basis
//
//     B = (e0^e1, e0^e2, e0^e3, e2^e3, e3^e1, e1^e2)
//
// with inner product normalised so that <ei^ej, ei^ej> = 1.  In this order
// the Hodge star is the block permutation [[0,I3],[I3,0]] and the self/anti-
// self-dual frames are eta_{+-a} = (B_a +- B_{3+a})/sqrt(2) for a = 1,2,3.
// A curvature operator stored as a 6x6 matrix M then has entries that are
// literally the tensor components, M[(ij)][(kl)] = R_{ijkl}.  This basis
// order is the wire format (see json_io.hpp).

namespace lambda2 {

/// Vertex pairs of the basis bivectors, in basis order.
inline constexpr int kBasisPairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                          {2, 3}, {3, 1}, {1, 2}};

/// pair_index(a,b): basis slot of e_a^e_b; pair_sign(a,b) = +-1 depending on
/// the orientation of (a,b) relative to the basis pair.  a != b required.
int pair_index(int a, int b);
double pair_sign(int a, int b);

/// Hodge star as a 6x6 matrix in basis B (an exact involution).
const Mat6& star();

}  // namespace lambda2

// ===========================================================================
// Rank-4 component storage
// ===========================================================================

/// Dense rank-4 tensor on R^4, R(a1,b1,a2,b2).  No symmetries assumed; used
/// for raw component input and for deliberately corrupted test tensors.
struct Rank4 {
  std::array<double, 256> v{};

  double& operator()(int a, int b, int c, int d) {
    return v[static_cast<size_t>(((a * 4 + b) * 4 + c) * 4 + d)];
  }
  double operator()(int a, int b, int c, int d) const {
    return v[static_cast<size_t>(((a * 4 + b) * 4 + c) * 4 + d)];
  }
};

// ===========================================================================
// Algebraic curvature tensors
// ===========================================================================

/// A symmetric endomorphism of Lambda^2 R^4 with the curvature symmetries:
/// pair symmetry (M = M^t) and the Bianchi identity (tr(star * M) = 0).
/// The antisymmetries within index pairs are automatic from the basis
/// indexing.  Instances are immutable and validated on construction.
class AlgCurvTensor {
 public:
  /// Validates all symmetries of the rank-4 component array to `tol`
  /// (absolute) and packs it into the 6x6 form.  Throws SymmetryViolation.
  static AlgCurvTensor from_components(const Rank4& r, double tol = 1e-12);

  /// Validates pair symmetry and Bianchi of a 6x6 matrix.
  static AlgCurvTensor from_matrix(const Mat6& m, double tol = 1e-12);

  /// (1/2) g to-wedge g, the curvature tensor of the round metric: identity.
  static AlgCurvTensor metric();

  /// Zero tensor.
  static AlgCurvTensor zero();

  const Mat6& matrix() const { return m_; }

  /// Tensor component R_{a1 b1 a2 b2}; zero when a1 == b1 or a2 == b2.
  double component(int a1, int b1, int a2, int b2) const;

  /// Unpack to the full rank-4 array (all symmetries hold exactly).
  Rank4 components() const;

  double operator_norm() const;

  AlgCurvTensor operator+(const AlgCurvTensor& o) const;
  AlgCurvTensor operator-(const AlgCurvTensor& o) const;
  AlgCurvTensor operator*(double c) const;

 private:
  explicit AlgCurvTensor(const Mat6& m) : m_(m) {}
  Mat6 m_;
};

inline AlgCurvTensor operator*(double c, const AlgCurvTensor& r) { return r * c; }

// ===========================================================================
// Operations
// ===========================================================================

/// Kulkarni-Nomizu product of symmetric tensors,
/// (h ^^ k)_{a1b1a2b2} = h_{a1a2} k_{b1b2} - h_{a1b2} k_{b1a2}
///                     - h_{b1a2} k_{a1b2} + h_{b1b2} k_{a1a2}.
/// Bilinear, symmetric in (h,k); g ^^ g = 2 * identity.
AlgCurvTensor kulkarni_nomizu(const Sym4& h, const Sym4& k);

/// star * R * star.  Leaves the Weyl and scalar parts fixed and flips the
/// sign of the trace-free Ricci part.
AlgCurvTensor hodge_conjugate(const AlgCurvTensor& r);

/// Adjugate (transpose of the cofactor matrix) by cofactor expansion.
/// Works for singular input; rank <= n-2 gives the zero matrix.
Mat3 adjugate3(const Mat3& m);
Mat4 adjugate4(const Mat4& m);

/// Ricci contraction r(E)_{ik} = E^{ij}_{kj} of an endomorphism of
/// Lambda^2 R^4 given as a 6x6 matrix.
Mat4 ricci_contraction(const End6& e);

/// Unpack an arbitrary endomorphism (no curvature symmetries) to rank-4
/// components, using only the pair antisymmetries implied by the basis.
Rank4 end6_components(const End6& e);

}  // namespace kst
