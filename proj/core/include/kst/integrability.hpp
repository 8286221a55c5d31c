#pragma once

#include "kst/decomposition.hpp"

#include <optional>

namespace kst {

enum class Method { BruteForce, Invariants, DiagonalDet };

/// Isometry invariants of Prop-style integrability tests:
///   c1 = tr([W,T]^2)          (<= 0; zero iff aligned)
///   c2 = tr(star W^2), c3 = tr(star W^3)
///   c4 = smallest singular value of the column-normalised 36x3 system
///        (vec I, vec W, vec(W^2 - T^2))
/// W and T are the Weyl and Ricci parts as endomorphisms of Lambda^2 R^4.
struct InvariantValues {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
};

struct IntegrabilityReport {
  bool verdict = false;
  double aic1_residual = 0.0;
  double aic2_residual = 0.0;
  InvariantValues invariants;
  Method method = Method::Invariants;
};

/// First algebraic integrability condition, via the Ricci contraction of
/// R * star * R plus the trace obstruction |tr W+^2 - tr W-^2|.  Scale-free
/// (normalised by the squared operator norm).  Zero iff [W,T] = 0 and
/// tr(star W^2) = 0.
double aic1_residual(const AlgCurvTensor& r);

/// Second algebraic integrability condition by exhaustive symmetrisation:
/// antisymmetrise (a2,b2,c2,d2) and symmetrise (a1,b1,c1,d1) of
/// g_{ij} g_{kl} R^i_{b1 a2 b2} R^j_{a1}{}^k{}_{c1} R^l_{d1 c2 d2},
/// max-abs over all free indices, normalised by the cubed operator norm.
double aic2_residual(const AlgCurvTensor& r);

InvariantValues invariants(const AlgCurvTensor& r);

/// Determinant of the Killing-Stackel matrix of a diagonal tensor, in the
/// quadric form
///   (w1-w2) t3^2 + (w2-w3) t1^2 + (w3-w1) t2^2 + (w1-w2)(w2-w3)(w3-w1).
double ks_determinant(const DiagonalACT& d);

/// Determinant test: integrable iff the KS determinant vanishes.  The
/// verdict never depends on the scalar part s.
bool diagonal_is_integrable(const DiagonalACT& d,
                            const ToleranceConfig& tol = {});

/// Full dispatch: determinant test after diagonalisation when the tensor is
/// diagonalisable, invariants otherwise; `force` selects a single method.
/// All residual fields are populated regardless of the dispatch.
IntegrabilityReport is_integrable(const AlgCurvTensor& r,
                                  const ToleranceConfig& tol = {},
                                  std::optional<Method> force = std::nullopt);

}  // namespace kst
