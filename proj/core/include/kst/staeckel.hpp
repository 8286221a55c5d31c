#pragma once

#include "kst/integrability.hpp"
#include "kst/ksvariety.hpp"

namespace kst {

// ===========================================================================
// Commutation of Killing tensors
// ===========================================================================

/// Determinant form of the commutation condition for diagonal tensors:
/// det [[1, R_ijij, R'_ijij], ...] over the three index pairs of each triple
/// {i,j,k} of {0,1,2,3}; all four determinants must vanish.
bool commute_diagonal(const DiagonalACT& d1, const DiagonalACT& d2,
                      const ToleranceConfig& tol = {});

/// Algebraic counterpart of the commutator for general tensors:
/// antisymmetrise (a2,c2) and symmetrise (b1,b2,d1,d2) of
/// g_{ij} R^i_{b1 a2 b2} R'^j_{d1 c2 d2}; residual is the max-abs over free
/// indices, normalised by the product of operator norms.  Zero iff the two
/// Killing tensors commute as endomorphisms everywhere on the sphere.
double commute_general(const AlgCurvTensor& r1, const AlgCurvTensor& r2);

// ===========================================================================
// Stackel systems
// ===========================================================================

/// Three mutually commuting integrable generators (the metric first),
/// spanning the preimage of a Stackel line.
struct StaeckelSystem {
  std::array<DiagonalACT, 3> generators;
  StaeckelLine line;
};

/// Assemble the Stackel system through a nonsingular variety point.
/// Throws SingularPoint.
StaeckelSystem staeckel_system(const KSMatrix& m, double s_default = 0.0,
                               const ToleranceConfig& tol = {});

// ===========================================================================
// Special Killing tensors
// ===========================================================================

/// Curvature tensor h ^^ g of the special Killing tensor attached to the
/// ambient symmetric tensor h; its KS-matrix is antisymmetric with
/// t_a = h_0 + h_a - Tr(h)/2 (the trace term drops for trace-free h).
AlgCurvTensor special_killing(const Sym4& h);

/// Recover the ambient tensor of a special Killing tensor:
/// L_hat = h - (Tr h / 2) g for the h with K = h ^^ g, determined up to
/// multiples of g (returned with the Ricci normalisation h = T/2).
/// Throws NotSpecial when the Weyl part does not vanish.
Sym4 l_hat_of(const AlgCurvTensor& k, const ToleranceConfig& tol = {});

// ===========================================================================
// Benenti systems
// ===========================================================================

/// Quadratic pencil R(lambda) = star((h - lambda g)^^(h - lambda g))star
/// = R2 lambda^2 + R1 lambda + R0 with R2 = g^^g, R0 = star(h^^h)star and
/// R1 = 2 h^^g - Tr(h) g^^g (just 2 h^^g for trace-free h).  Every
/// evaluation is integrable and all evaluations commute.
struct BenentiFamily {
  Sym4 h;
  AlgCurvTensor r0;
  AlgCurvTensor r1;
  AlgCurvTensor r2;
};

BenentiFamily benenti_family(const Sym4& h);

/// Regular for every lambda, including eigenvalues of h.
AlgCurvTensor benenti_eval(const BenentiFamily& f, double lambda);

/// Adjugate-quotient form Adj(h - lambda g) ^^ Adj(h - lambda g) /
/// det(h - lambda g).  Test oracle: agrees with benenti_eval wherever it is
/// defined, i.e. det(h - lambda g) != 0.
AlgCurvTensor benenti_adjugate_form(const Sym4& h, double lambda);

/// True iff the three pencil coefficients span a Stackel system, i.e. the
/// trace-free shift of h has no triple eigenvalue.
bool spans_staeckel(const BenentiFamily& f, const ToleranceConfig& tol = {});

// ===========================================================================
// Extensions from lower-dimensional spheres
// ===========================================================================

/// Diagonal tensor extending (by zero) the 2-sphere Killing tensor with
/// Ricci eigenvalues t_s2; its KS-matrix is exactly
/// t1 V+1 + t2 V+2 + t3 V+3 in the isokernel plane of (1,1,1).
DiagonalACT extend_from_s2(const Vec3& t_s2);

/// Diagonal tensor extending the pair of circle metrics with weights (a,b);
/// its KS-matrix is exactly a V-1 + b V+1.
DiagonalACT extend_from_s1s1(double a, double b);

}  // namespace kst
