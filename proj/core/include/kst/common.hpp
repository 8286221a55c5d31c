#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>

namespace kst {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Symmetric 4x4 tensor (ambient metric g is the identity).  Symmetry is a
/// convention of this alias; use symmetrized() when the source is untrusted.
using Sym4 = Mat4;

/// Arbitrary endomorphism of Lambda^2 R^4, no curvature symmetries assumed.
using End6 = Mat6;

inline Mat4 symmetrized(const Mat4& a) { return 0.5 * (a + a.transpose()); }

/// Numerical tolerances threaded through all verdict functions.  Equality
/// tests scale eq_tol by the size of the operands; group_tol controls
/// eigenvalue clustering (relative to the spectral spread).
struct ToleranceConfig {
  double eq_tol = 1e-10;
  double group_tol = 1e-8;
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class SymmetryViolation : public Error {
 public:
  enum class Kind { Antisymmetry, PairSymmetry, Bianchi };

  SymmetryViolation(Kind kind, double residual)
      : Error(describe(kind, residual)), kind_(kind), residual_(residual) {}

  Kind kind() const { return kind_; }
  double residual() const { return residual_; }

 private:
  static std::string describe(Kind kind, double residual);
  Kind kind_;
  double residual_;
};

class BianchiViolation : public Error {
 public:
  explicit BianchiViolation(double residual)
      : Error("hodge blocks violate tr W+ = tr W- (residual " +
              std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class NotDiagonalisable : public Error {
 public:
  explicit NotDiagonalisable(double residual)
      : Error("tensor is not diagonalisable (residual " +
              std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class RankOne : public Error {
 public:
  RankOne() : Error("kernel map undefined at a rank-one point") {}
};

class NotOnVariety : public Error {
 public:
  explicit NotOnVariety(double det)
      : Error("matrix is not on the det = 0 variety (det " +
              std::to_string(det) + ")") {}
};

class SingularPoint : public Error {
 public:
  SingularPoint() : Error("operation undefined at a singular variety point") {}
};

class NotSpecial : public Error {
 public:
  explicit NotSpecial(double weyl_norm)
      : Error("tensor has a non-vanishing Weyl part (norm " +
              std::to_string(weyl_norm) + ")") {}
};

class DegenerateChartPoint : public Error {
 public:
  DegenerateChartPoint() : Error("point lies on a coordinate hyperplane") {}
};

class InvalidLine : public Error {
 public:
  explicit InvalidLine(const std::string& why) : Error(why) {}
};

class AllEqual : public Error {
 public:
  AllEqual() : Error("all eigenvalues coincide: tensor is a metric multiple") {}
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& why) : Error(why) {}
};

}  // namespace kst
