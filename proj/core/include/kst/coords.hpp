#pragma once

#include "kst/ksvariety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kst {

// ===========================================================================
// Spectra and sphere points
// ===========================================================================

/// Ordered eigenvalues of the ambient tensor with their multiplicity
/// grouping (grouping tolerance relative to the spectral spread).
class Spectrum {
 public:
  static Spectrum of(const Vec4& lambda, double group_tol = 1e-8);

  const Vec4& lambda() const { return lambda_; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

 private:
  Vec4 lambda_ = Vec4::Zero();
  std::vector<std::vector<int>> groups_;
};

struct SpherePoint {
  Vec4 x;

  /// Normalises and rejects near-zero input.
  static SpherePoint of(const Vec4& x);
};

// ===========================================================================
// Eigenvalue charts
// ===========================================================================

struct EigenTriple {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;  // ascending
  bool boundary = false;  // some coordinate of x vanished (pole removed)
};

/// Eigenvalues of the restriction of diag(Lambda) to the tangent space at x:
/// the zeroes of q(lambda) = sum_k x_k^2 / (Lambda_k - lambda) between
/// consecutive active poles, plus one constant eigenvalue for each repeated
/// or inactive direction.  Interlaces the spectrum.
EigenTriple eigenvalues_at(const Spectrum& spec, const SpherePoint& x);

/// Chart-interior version: all Lambda simple, all x_k nonzero; strict
/// interlacing.  Throws DegenerateChartPoint on the coordinate hyperplanes
/// and AllEqual when there is no chart at all.
EigenTriple elliptic_coords(const Spectrum& spec, const SpherePoint& x);

/// Residual |q(lambda)| of a root candidate (diagnostic, used in tests).
double chart_residual(const Spectrum& spec, const SpherePoint& x, double lambda);

// ===========================================================================
// Classification
// ===========================================================================

enum class SeparationType {
  Elliptic,      // (0123)
  OblateLame,    // (01(23))
  ProlateLame,   // (0(12)3)
  Cylindrical,   // ((01)(23))
  LameSubgroup,  // (0(123))
  Spherical,     // (0(1(23)))
};

struct SpectrumClass {
  std::optional<SeparationType> type;
  bool needs_line_data = false;  // (1,3)-multiplicity: needs the S2 tensor
};

/// Multiplicity-pattern classification, invariant under affine
/// reparametrisation and order reversal.  Throws AllEqual for a quadruple
/// eigenvalue.
SpectrumClass classify_spectrum(const Spectrum& spec);

/// Full classification of a Stackel line.  Non-degenerate lines are decided
/// by the spectrum attached to their kernel direction; degenerate lines by
/// the multiplicities of the 2-sphere Ricci eigenvalues (taken from
/// s2_ricci when given, else from the line's second generator).
SeparationType classify_line(const StaeckelLine& line,
                             std::optional<Vec3> s2_ricci = std::nullopt,
                             const ToleranceConfig& tol = {});

/// Ambient spectrum attached to a kernel direction n:
/// Lambda_0 = (n1+n2+n3)/2, Lambda_a = (n_a - n_b - n_g)/2.
Vec4 spectrum_of_direction(const Vec3& n);

struct S2Eigenvalues {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool boundary = false;
};

/// Roots of lambda^2 + T(y,y) lambda + (Adj T)(y,y) = 0 for the trace-free
/// shift of diag(t); interlaces t.  Chart boundaries (y on a coordinate
/// axis) are flagged, not rejected.
S2Eigenvalues s2_eigenvalues(const Vec3& t, const Vec3& y);

enum class Stratum { Interior, Edge, Vertex };

std::string bracket_label(SeparationType type);
std::string type_name(SeparationType type);

/// Position in the classification pentagon: full bracketings sit at
/// vertices, single brackets on edges, the generic type inside.
Stratum stratum(SeparationType type);

}  // namespace kst
