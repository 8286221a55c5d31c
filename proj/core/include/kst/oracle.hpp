#pragma once

#include "kst/lambda2.hpp"

namespace kst {

// ===========================================================================
// Numerical differential geometry on the embedded 3-sphere
// ===========================================================================
//
// Killing tensor fields are evaluated through the ambient degree-2
// homogeneous formula K_x(v,w) = R_{a1 b1 a2 b2} x^{a1} x^{a2} v^{b1} w^{b2};
// the sphere connection is the tangentially projected flat derivative.
// Everything here is independent of the algebraic verdict machinery and
// serves as its ground truth.

/// Orthonormal frame (x; e1, e2, e3) with the e_i spanning the tangent
/// space at x.
struct TangentFrame {
  Vec4 x;
  Vec4 e1, e2, e3;

  /// Validates that (x, e1, e2, e3) has identity Gram matrix to `tol`.
  static TangentFrame of(const Vec4& x, const Vec4& e1, const Vec4& e2,
                         const Vec4& e3, double tol = 1e-12);

  /// Completes x (normalised) to a frame deterministically.
  static TangentFrame at(const Vec4& x);

  Vec4 tangent(int i) const { return i == 0 ? e1 : (i == 1 ? e2 : e3); }
};

/// Residuals of the Killing equation and of the three Nijenhuis
/// integrability conditions, each normalised by its homogeneity in the
/// tensor.
struct TorsionResidual {
  double killing_eq = 0.0;
  std::array<double, 3> tns = {0.0, 0.0, 0.0};
};

/// Ambient matrix K(y)_{bd} = sum_{a,c} R_{a b c d} y^a y^c (annihilates y).
Mat4 ambient_killing_matrix(const Rank4& r, const Vec4& y);
Mat4 ambient_killing_matrix(const AlgCurvTensor& r, const Vec4& y);

/// K_x(v, w) with v, w projected to the tangent space at x.
double killing_eval(const AlgCurvTensor& r, const Vec4& x, const Vec4& v,
                    const Vec4& w);

/// Matrix of the Killing tensor in the frame; symmetric 3x3.
Mat3 killing_endomorphism(const AlgCurvTensor& r, const TangentFrame& f);

/// Max deviation of K(gamma', gamma') from its initial value along the
/// great circle through x in direction v (closed-form evaluation at
/// n_samples parameter values).  Zero for every curvature tensor with the
/// full symmetries; order one once the symmetries are broken.
double geodesic_conservation(const AlgCurvTensor& r, const Vec4& x,
                             const Vec4& v, int n_samples = 100);
double geodesic_conservation(const Rank4& r, const Vec4& x, const Vec4& v,
                             int n_samples = 100);

/// Frobenius norm of the commutator of the two endomorphism matrices at the
/// frame point, normalised by the product of operator norms.
double numeric_commutator(const AlgCurvTensor& r1, const AlgCurvTensor& r2,
                          const TangentFrame& f);

/// Finite-difference residuals: the completely symmetrised covariant
/// derivative of K (the Killing equation) and the three antisymmetrised
/// Nijenhuis conditions built from K and its first derivatives.  Central
/// differences with one Richardson extrapolation step.
TorsionResidual nijenhuis_residual(const AlgCurvTensor& r,
                                   const TangentFrame& f, double step = 1e-5);

}  // namespace kst
