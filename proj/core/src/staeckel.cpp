#include "kst/staeckel.hpp"

#include <algorithm>
#include <cmath>

namespace kst {

// ---------------------------------------------------------------------------
// Commutation
// ---------------------------------------------------------------------------

bool commute_diagonal(const DiagonalACT& d1, const DiagonalACT& d2,
                      const ToleranceConfig& tol) {
  // Diagonal entries indexed by pair: (01,02,03,23,31,12).
  const Vec6 a = d1.diagonal();
  const Vec6 b = d2.diagonal();
  auto slot = [](int i, int j) { return lambda2::pair_index(i, j); };

  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff()) *
                       std::max(1.0, b.cwiseAbs().maxCoeff());
  const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& tr : triples) {
    const int ij = slot(tr[0], tr[1]);
    const int jk = slot(tr[1], tr[2]);
    const int ki = slot(tr[2], tr[0]);
    Mat3 m;
    m << 1.0, a[ij], b[ij],
         1.0, a[jk], b[jk],
         1.0, a[ki], b[ki];
    if (std::abs(m.determinant()) > tol.eq_tol * scale) return false;
  }
  return true;
}

double commute_general(const AlgCurvTensor& r1, const AlgCurvTensor& r2) {
  const Rank4 r = r1.components();
  const Rank4 q = r2.components();

  // Base contraction D[b1,a2,b2,d1,c2,d2] = sum_i R_{i b1 a2 b2} R'_{i d1 c2 d2}.
  std::array<double, 4096> base{};
  for (int b1 = 0; b1 < 4; ++b1)
    for (int a2 = 0; a2 < 4; ++a2)
      for (int b2 = 0; b2 < 4; ++b2)
        for (int d1 = 0; d1 < 4; ++d1)
          for (int c2 = 0; c2 < 4; ++c2)
            for (int d2 = 0; d2 < 4; ++d2) {
              double acc = 0.0;
              for (int i = 0; i < 4; ++i)
                acc += r(i, b1, a2, b2) * q(i, d1, c2, d2);
              base[static_cast<size_t>(
                  ((((b1 * 4 + a2) * 4 + b2) * 4 + d1) * 4 + c2) * 4 + d2)] =
                  acc;
            }

  static const int perms[24][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
      {0, 3, 2, 1}, {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0},
      {1, 3, 0, 2}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3},
      {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0}, {3, 0, 1, 2}, {3, 0, 2, 1},
      {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};

  // Symmetrise (b1,b2,d1,d2), antisymmetrise (a2,c2).
  auto at = [&](int b1, int a2, int b2, int d1, int c2, int d2) {
    return base[static_cast<size_t>(
        ((((b1 * 4 + a2) * 4 + b2) * 4 + d1) * 4 + c2) * 4 + d2)];
  };
  double worst = 0.0;
  for (int b1 = 0; b1 < 4; ++b1)
    for (int a2 = 0; a2 < 4; ++a2)
      for (int b2 = 0; b2 < 4; ++b2)
        for (int d1 = 0; d1 < 4; ++d1)
          for (int c2 = 0; c2 < 4; ++c2)
            for (int d2 = 0; d2 < 4; ++d2) {
              const int sym[4] = {b1, b2, d1, d2};
              double acc = 0.0;
              for (const auto& p : perms) {
                const int u0 = sym[p[0]], u1 = sym[p[1]], u2 = sym[p[2]],
                          u3 = sym[p[3]];
                acc += at(u0, a2, u1, u2, c2, u3) - at(u0, c2, u1, u2, a2, u3);
              }
              worst = std::max(worst, std::abs(acc));
            }

  const double s1 = std::max(r1.operator_norm(), 1e-300);
  const double s2 = std::max(r2.operator_norm(), 1e-300);
  return worst / (s1 * s2);
}

// ---------------------------------------------------------------------------
// Stackel systems
// ---------------------------------------------------------------------------

StaeckelSystem staeckel_system(const KSMatrix& m, double s_default,
                               const ToleranceConfig& tol) {
  const StaeckelLine line = staeckel_line(m, tol);
  StaeckelSystem sys{{DiagonalACT(Vec3::Zero(), Vec3::Zero(), 12.0),
                      diagonal_from_ks(line.base, s_default),
                      diagonal_from_ks(line.second, s_default)},
                     line};
  return sys;
}

// ---------------------------------------------------------------------------
// Special Killing tensors
// ---------------------------------------------------------------------------

AlgCurvTensor special_killing(const Sym4& h) {
  return kulkarni_nomizu(symmetrized(h), Mat4::Identity());
}

Sym4 l_hat_of(const AlgCurvTensor& k, const ToleranceConfig& tol) {
  const RicciParts parts = ricci_decompose(k);
  const double weyl_norm = parts.weyl.matrix().cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, k.matrix().cwiseAbs().maxCoeff());
  if (weyl_norm > tol.eq_tol * scale) throw NotSpecial(weyl_norm);
  // k = h ^^ g has trace-free Ricci T = 2h - (Tr h / 2) g, so T/2 is the
  // trace-free representative of L_hat = h - (Tr h / 2) g.
  return 0.5 * parts.ricci;
}

// ---------------------------------------------------------------------------
// Benenti systems
// ---------------------------------------------------------------------------

BenentiFamily benenti_family(const Sym4& h_in) {
  // The pencil is star((h - lambda g) ^^ (h - lambda g)) star; the linear
  // coefficient is -2 star(h ^^ g) star = 2 h ^^ g - Tr(h) g ^^ g, which
  // reduces to 2 h ^^ g for trace-free h.
  const Sym4 h = symmetrized(h_in);
  const Sym4 g = Mat4::Identity();
  const AlgCurvTensor gg = kulkarni_nomizu(g, g);
  return BenentiFamily{h, hodge_conjugate(kulkarni_nomizu(h, h)),
                       2.0 * kulkarni_nomizu(h, g) - gg * h.trace(), gg};
}

AlgCurvTensor benenti_eval(const BenentiFamily& f, double lambda) {
  return f.r2 * (lambda * lambda) + f.r1 * lambda + f.r0;
}

AlgCurvTensor benenti_adjugate_form(const Sym4& h, double lambda) {
  const Sym4 shifted = symmetrized(h) - lambda * Mat4::Identity();
  const double det = shifted.determinant();
  if (det == 0.0)
    throw InvalidInput("adjugate form undefined at an eigenvalue of h");
  const Sym4 adj = adjugate4(shifted);
  return kulkarni_nomizu(adj, adj) * (1.0 / det);
}

bool spans_staeckel(const BenentiFamily& f, const ToleranceConfig& tol) {
  Sym4 shifted = f.h;
  shifted -= (f.h.trace() / 4.0) * Mat4::Identity();
  Eigen::SelfAdjointEigenSolver<Mat4> es(shifted, Eigen::EigenvaluesOnly);
  const Vec4 ev = es.eigenvalues();
  const double spread = std::max(ev[3] - ev[0], 1e-300);
  // A triple eigenvalue shows as two consecutive gaps below tolerance.
  for (int i = 0; i + 2 < 4; ++i) {
    if (ev[i + 1] - ev[i] <= tol.group_tol * spread &&
        ev[i + 2] - ev[i + 1] <= tol.group_tol * spread)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Extensions
// ---------------------------------------------------------------------------

DiagonalACT extend_from_s2(const Vec3& t_s2) {
  const double tau = t_s2.sum();
  const Vec3 w = Vec3::Constant(tau / 3.0) - t_s2;
  return DiagonalACT(w, t_s2, -4.0 * tau);
}

DiagonalACT extend_from_s1s1(double a, double b) {
  const double sum = a + b;
  const Vec3 w(-2.0 * sum / 3.0, sum / 3.0, sum / 3.0);
  const Vec3 t(b - a, 0.0, 0.0);
  return DiagonalACT(w, t, -4.0 * sum);
}

}  // namespace kst
