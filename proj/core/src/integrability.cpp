#include "kst/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kst {

namespace {

// All 24 permutations of {0,1,2,3} with parities, frozen once.
struct PermTable {
  int perm[24][4];
  double sign[24];

  PermTable() {
    int idx[4] = {0, 1, 2, 3};
    int k = 0;
    // Heap-free enumeration: lexicographic with parity by inversion count.
    do {
      int inv = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (idx[i] > idx[j]) ++inv;
      for (int i = 0; i < 4; ++i) perm[k][i] = idx[i];
      sign[k] = (inv % 2 == 0) ? 1.0 : -1.0;
      ++k;
    } while (std::next_permutation(idx, idx + 4));
  }
};

const PermTable& perms4() {
  static const PermTable t;
  return t;
}

double op_norm_scale(const AlgCurvTensor& r) {
  return std::max(r.operator_norm(), 1e-300);
}

}  // namespace

// ---------------------------------------------------------------------------
// AIC I
// ---------------------------------------------------------------------------

double aic1_residual(const AlgCurvTensor& r) {
  const Mat6& m = r.matrix();
  const Mat6 e = m * lambda2::star() * m;
  const double contraction = ricci_contraction(e).cwiseAbs().maxCoeff();

  const HodgeBlocks b = hodge_blocks(r);
  const double trace_gap =
      std::abs((b.w_plus * b.w_plus).trace() - (b.w_minus * b.w_minus).trace());

  const double s2 = op_norm_scale(r) * op_norm_scale(r);
  return (contraction + trace_gap) / s2;
}

// ---------------------------------------------------------------------------
// AIC II (brute force)
// ---------------------------------------------------------------------------

double aic2_residual(const AlgCurvTensor& r) {
  const Rank4 c = r.components();

  // Base contraction C[a1,b1,c1,d1 | a2,b2,c2,d2] =
  //   sum_{i,k} R_{i b1 a2 b2} R_{i a1 k c1} R_{k d1 c2 d2}.
  std::vector<double> base(65536);
  for (int a1 = 0; a1 < 4; ++a1)
    for (int b1 = 0; b1 < 4; ++b1)
      for (int c1 = 0; c1 < 4; ++c1)
        for (int d1 = 0; d1 < 4; ++d1)
          for (int a2 = 0; a2 < 4; ++a2)
            for (int b2 = 0; b2 < 4; ++b2)
              for (int c2 = 0; c2 < 4; ++c2)
                for (int d2 = 0; d2 < 4; ++d2) {
                  double acc = 0.0;
                  for (int i = 0; i < 4; ++i) {
                    const double left = c(i, b1, a2, b2);
                    if (left == 0.0) continue;
                    for (int k = 0; k < 4; ++k)
                      acc += left * c(i, a1, k, c1) * c(k, d1, c2, d2);
                  }
                  base[static_cast<size_t>(
                      ((((((a1 * 4 + b1) * 4 + c1) * 4 + d1) * 4 + a2) * 4 +
                        b2) * 4 + c2) * 4 + d2)] = acc;
                }

  const PermTable& pt = perms4();
  constexpr int s1 = 4 * 4 * 4 * 4;  // stride of the first index group

  double worst = 0.0;
  int idx[8];
  for (idx[0] = 0; idx[0] < 4; ++idx[0])
    for (idx[1] = 0; idx[1] < 4; ++idx[1])
      for (idx[2] = 0; idx[2] < 4; ++idx[2])
        for (idx[3] = 0; idx[3] < 4; ++idx[3])
          for (idx[4] = 0; idx[4] < 4; ++idx[4])
            for (idx[5] = 0; idx[5] < 4; ++idx[5])
              for (idx[6] = 0; idx[6] < 4; ++idx[6])
                for (idx[7] = 0; idx[7] < 4; ++idx[7]) {
                  int off1[24], off2[24];
                  for (int p = 0; p < 24; ++p) {
                    off1[p] = ((idx[pt.perm[p][0]] * 4 + idx[pt.perm[p][1]]) * 4 +
                               idx[pt.perm[p][2]]) * 4 + idx[pt.perm[p][3]];
                    off2[p] = ((idx[4 + pt.perm[p][0]] * 4 +
                                idx[4 + pt.perm[p][1]]) * 4 +
                               idx[4 + pt.perm[p][2]]) * 4 +
                              idx[4 + pt.perm[p][3]];
                  }
                  double acc = 0.0;
                  for (int q = 0; q < 24; ++q) {
                    const int o2 = off2[q];
                    double inner = 0.0;
                    for (int p = 0; p < 24; ++p)
                      inner += base[static_cast<size_t>(off1[p] * s1 + o2)];
                    acc += pt.sign[q] * inner;
                  }
                  worst = std::max(worst, std::abs(acc));
                }

  const double s = op_norm_scale(r);
  return worst / (s * s * s);
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

InvariantValues invariants(const AlgCurvTensor& r) {
  const RicciParts parts = ricci_decompose(r);
  const Mat6 w = parts.weyl.matrix();
  const Mat6 t = (0.5 * kulkarni_nomizu(parts.ricci, Mat4::Identity())).matrix();

  InvariantValues out;
  const Mat6 comm = w * t - t * w;
  out.c1 = (comm * comm).trace();
  out.c2 = (lambda2::star() * w * w).trace();
  out.c3 = (lambda2::star() * w * w * w).trace();

  // Linear dependence of (I, W, W^2 - T^2) via the smallest singular value
  // of the column-normalised 36x3 system.  A vanishing column already means
  // dependence.
  Eigen::Matrix<double, 36, 3> cols;
  const Mat6 id = Mat6::Identity();
  const Mat6 w2t2 = w * w - t * t;
  cols.col(0) = Eigen::Map<const Eigen::Matrix<double, 36, 1>>(id.data());
  cols.col(1) = Eigen::Map<const Eigen::Matrix<double, 36, 1>>(w.data());
  cols.col(2) = Eigen::Map<const Eigen::Matrix<double, 36, 1>>(w2t2.data());
  const double floor = 1e-14 * std::max(1.0, cols.cwiseAbs().maxCoeff());
  for (int j = 0; j < 3; ++j) {
    const double n = cols.col(j).norm();
    if (n < floor) {
      out.c4 = 0.0;
      return out;
    }
    cols.col(j) /= n;
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 36, 3>> svd(cols);
  out.c4 = svd.singularValues()(2);
  return out;
}

// ---------------------------------------------------------------------------
// Determinant test and dispatch
// ---------------------------------------------------------------------------

double ks_determinant(const DiagonalACT& d) {
  const Vec3& w = d.w();
  const Vec3& t = d.t();
  return (w[0] - w[1]) * t[2] * t[2] + (w[1] - w[2]) * t[0] * t[0] +
         (w[2] - w[0]) * t[1] * t[1] +
         (w[0] - w[1]) * (w[1] - w[2]) * (w[2] - w[0]);
}

bool diagonal_is_integrable(const DiagonalACT& d, const ToleranceConfig& tol) {
  const double s = std::max(d.scale(), 1e-300);
  return std::abs(ks_determinant(d)) <= tol.eq_tol * s * s * s;
}

IntegrabilityReport is_integrable(const AlgCurvTensor& r,
                                  const ToleranceConfig& tol,
                                  std::optional<Method> force) {
  IntegrabilityReport rep;
  rep.aic1_residual = aic1_residual(r);
  rep.aic2_residual = aic2_residual(r);
  rep.invariants = invariants(r);

  const bool diag = is_diagonalisable(r, tol);
  rep.method = force.value_or(diag ? Method::DiagonalDet : Method::Invariants);

  switch (rep.method) {
    case Method::BruteForce:
      rep.verdict = rep.aic1_residual <= tol.eq_tol &&
                    rep.aic2_residual <= tol.eq_tol;
      break;
    case Method::DiagonalDet: {
      if (!diag) {
        rep.verdict = false;  // integrability implies diagonalisability
        break;
      }
      rep.verdict = diagonal_is_integrable(diagonalise(r, tol).diagonal, tol);
      break;
    }
    case Method::Invariants: {
      const double s = op_norm_scale(r);
      const double s2 = s * s;
      const InvariantValues& c = rep.invariants;
      rep.verdict = std::abs(c.c1) <= tol.eq_tol * s2 * s2 &&
                    std::abs(c.c2) <= tol.eq_tol * s2 &&
                    std::abs(c.c3) <= tol.eq_tol * s2 * s &&
                    c.c4 <= tol.eq_tol;
      break;
    }
  }
  return rep;
}

}  // namespace kst
