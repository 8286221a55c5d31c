#include "kst/lambda2.hpp"

#include <cmath>

namespace kst {

namespace lambda2 {

namespace {

struct PairTables {
  int index[4][4];
  double sign[4][4];

  PairTables() {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        index[a][b] = -1;
        sign[a][b] = 0.0;
      }
    for (int i = 0; i < 6; ++i) {
      const int a = kBasisPairs[i][0];
      const int b = kBasisPairs[i][1];
      index[a][b] = i;
      sign[a][b] = 1.0;
      index[b][a] = i;
      sign[b][a] = -1.0;
    }
  }
};

const PairTables& tables() {
  static const PairTables t;
  return t;
}

}  // namespace

int pair_index(int a, int b) { return tables().index[a][b]; }
double pair_sign(int a, int b) { return tables().sign[a][b]; }

const Mat6& star() {
  static const Mat6 s = [] {
    Mat6 m = Mat6::Zero();
    for (int a = 0; a < 3; ++a) {
      m(a, a + 3) = 1.0;
      m(a + 3, a) = 1.0;
    }
    return m;
  }();
  return s;
}

}  // namespace lambda2

// ---------------------------------------------------------------------------
// AlgCurvTensor
// ---------------------------------------------------------------------------

std::string SymmetryViolation::describe(Kind kind, double residual) {
  const char* name = kind == Kind::Antisymmetry ? "antisymmetry"
                     : kind == Kind::PairSymmetry ? "pair symmetry"
                                                  : "Bianchi identity";
  return std::string("curvature ") + name + " violated (max residual " +
         std::to_string(residual) + ")";
}

AlgCurvTensor AlgCurvTensor::from_components(const Rank4& r, double tol) {
  double anti = 0.0, pair = 0.0, bianchi = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const double x = r(a, b, c, d);
          anti = std::max(anti, std::abs(r(b, a, c, d) + x));
          anti = std::max(anti, std::abs(r(a, b, d, c) + x));
          pair = std::max(pair, std::abs(r(c, d, a, b) - x));
          bianchi = std::max(
              bianchi, std::abs(x + r(a, c, d, b) + r(a, d, b, c)));
        }
  if (anti > tol)
    throw SymmetryViolation(SymmetryViolation::Kind::Antisymmetry, anti);
  if (pair > tol)
    throw SymmetryViolation(SymmetryViolation::Kind::PairSymmetry, pair);
  if (bianchi > tol)
    throw SymmetryViolation(SymmetryViolation::Kind::Bianchi, bianchi);

  Mat6 m;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      m(i, j) = r(lambda2::kBasisPairs[i][0], lambda2::kBasisPairs[i][1],
                  lambda2::kBasisPairs[j][0], lambda2::kBasisPairs[j][1]);
  m = 0.5 * (m + m.transpose().eval());
  return AlgCurvTensor(m);
}

AlgCurvTensor AlgCurvTensor::from_matrix(const Mat6& m, double tol) {
  const double pair = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (pair > tol)
    throw SymmetryViolation(SymmetryViolation::Kind::PairSymmetry, pair);
  const double bianchi = std::abs((lambda2::star() * m).trace());
  if (bianchi > tol)
    throw SymmetryViolation(SymmetryViolation::Kind::Bianchi, bianchi);
  return AlgCurvTensor(0.5 * (m + m.transpose().eval()));
}

AlgCurvTensor AlgCurvTensor::metric() { return AlgCurvTensor(Mat6::Identity()); }

AlgCurvTensor AlgCurvTensor::zero() { return AlgCurvTensor(Mat6::Zero()); }

double AlgCurvTensor::component(int a1, int b1, int a2, int b2) const {
  if (a1 == b1 || a2 == b2) return 0.0;
  return lambda2::pair_sign(a1, b1) * lambda2::pair_sign(a2, b2) *
         m_(lambda2::pair_index(a1, b1), lambda2::pair_index(a2, b2));
}

Rank4 AlgCurvTensor::components() const {
  Rank4 r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          if (c == d) continue;
          r(a, b, c, d) = component(a, b, c, d);
        }
    }
  return r;
}

double AlgCurvTensor::operator_norm() const {
  Eigen::SelfAdjointEigenSolver<Mat6> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

AlgCurvTensor AlgCurvTensor::operator+(const AlgCurvTensor& o) const {
  return AlgCurvTensor(m_ + o.m_);
}
AlgCurvTensor AlgCurvTensor::operator-(const AlgCurvTensor& o) const {
  return AlgCurvTensor(m_ - o.m_);
}
AlgCurvTensor AlgCurvTensor::operator*(double c) const {
  return AlgCurvTensor(m_ * c);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

AlgCurvTensor kulkarni_nomizu(const Sym4& h, const Sym4& k) {
  Mat6 m;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const int a1 = lambda2::kBasisPairs[i][0], b1 = lambda2::kBasisPairs[i][1];
      const int a2 = lambda2::kBasisPairs[j][0], b2 = lambda2::kBasisPairs[j][1];
      m(i, j) = h(a1, a2) * k(b1, b2) - h(a1, b2) * k(b1, a2) -
                h(b1, a2) * k(a1, b2) + h(b1, b2) * k(a1, a2);
    }
  return AlgCurvTensor::from_matrix(m, 1e-9 * (1.0 + m.cwiseAbs().maxCoeff()));
}

AlgCurvTensor hodge_conjugate(const AlgCurvTensor& r) {
  const Mat6& s = lambda2::star();
  return AlgCurvTensor::from_matrix(s * r.matrix() * s);
}

namespace {

// Cofactor expansion; exact polynomial in the entries, so rank <= n-2
// inputs yield exactly zero.
template <int N>
Eigen::Matrix<double, N, N> adjugate_impl(const Eigen::Matrix<double, N, N>& m) {
  Eigen::Matrix<double, N, N> adj;
  Eigen::Matrix<double, N - 1, N - 1> minor;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int mr = 0;
      for (int r = 0; r < N; ++r) {
        if (r == i) continue;
        int mc = 0;
        for (int c = 0; c < N; ++c) {
          if (c == j) continue;
          minor(mr, mc) = m(r, c);
          ++mc;
        }
        ++mr;
      }
      const double cof = ((i + j) % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
      adj(j, i) = cof;  // transpose of the cofactor matrix
    }
  return adj;
}

}  // namespace

Mat3 adjugate3(const Mat3& m) { return adjugate_impl<3>(m); }
Mat4 adjugate4(const Mat4& m) { return adjugate_impl<4>(m); }

Rank4 end6_components(const End6& e) {
  Rank4 r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          if (c == d) continue;
          r(a, b, c, d) = lambda2::pair_sign(a, b) * lambda2::pair_sign(c, d) *
                          e(lambda2::pair_index(a, b), lambda2::pair_index(c, d));
        }
    }
  return r;
}

Mat4 ricci_contraction(const End6& e) {
  const Rank4 r = end6_components(e);
  Mat4 out = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      double acc = 0.0;
      for (int j = 0; j < 4; ++j) acc += r(i, j, k, j);
      out(i, k) = acc;
    }
  return out;
}

}  // namespace kst
