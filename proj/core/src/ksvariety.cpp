#include "kst/ksvariety.hpp"

#include <algorithm>
#include <cmath>

namespace kst {

// ---------------------------------------------------------------------------
// KSMatrix
// ---------------------------------------------------------------------------

KSMatrix::KSMatrix(const Vec3& delta, const Vec3& t) : delta_(delta), t_(t) {
  const double mean = delta_.sum() / 3.0;
  delta_.array() -= mean;  // trace free by construction
}

KSMatrix KSMatrix::from_matrix(const Mat3& m, double tol) {
  const Mat3 sym = 0.5 * (m + m.transpose());
  Mat3 off = sym;
  off.diagonal().setZero();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (off.cwiseAbs().maxCoeff() > tol * scale)
    throw InvalidInput("symmetric part is not diagonal");
  if (std::abs(sym.trace()) > tol * scale)
    throw InvalidInput("symmetric part is not trace free");
  const Mat3 asym = 0.5 * (m - m.transpose());
  return KSMatrix(sym.diagonal(), Vec3(asym(2, 1), asym(0, 2), asym(1, 0)));
}

Mat3 KSMatrix::matrix() const {
  Mat3 m;
  m << delta_[0], -t_[2], t_[1],
       t_[2], delta_[1], -t_[0],
       -t_[1], t_[0], delta_[2];
  return m;
}

double KSMatrix::scale() const {
  return std::max(delta_.cwiseAbs().maxCoeff(), t_.cwiseAbs().maxCoeff());
}

Vec6 KSMatrix::coefficients() const {
  Vec6 v;
  v << delta_[0], delta_[1], delta_[2], t_[0], t_[1], t_[2];
  return v;
}

// ---------------------------------------------------------------------------
// ProjVec3
// ---------------------------------------------------------------------------

ProjVec3 ProjVec3::of(const Vec3& v) {
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) throw InvalidInput("projective point must be nonzero");
  Vec3 n = v / m;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(n[i]) > 1e-10) {
      if (n[i] < 0.0) n = -n;
      break;
    }
  }
  return ProjVec3{n};
}

bool ProjVec3::parallel_to(const Vec3& other, double tol) const {
  const double m = other.cwiseAbs().maxCoeff();
  if (m == 0.0) return false;
  return n.cross(other / m).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

KSMatrix ks_matrix(const DiagonalACT& d) {
  const Vec3& w = d.w();
  return KSMatrix(Vec3(w[1] - w[2], w[2] - w[0], w[0] - w[1]), d.t());
}

DiagonalACT diagonal_from_ks(const KSMatrix& m, double s) {
  const Vec3& dl = m.delta();
  // Solve Delta_a = w_b - w_g together with sum(w) = 0.
  const Vec3 w((dl[2] - dl[1]) / 3.0, (dl[0] - dl[2]) / 3.0,
               (dl[1] - dl[0]) / 3.0);
  return DiagonalACT(w, m.t(), s);
}

// ---------------------------------------------------------------------------
// Singular points
// ---------------------------------------------------------------------------

const std::array<KSMatrix, 10>& singular_points() {
  static const std::array<KSMatrix, 10> pts = [] {
    // Written out from the printed matrices rather than generated.
    std::array<KSMatrix, 10> out;
    Mat3 m;
    m << 0, 0, 0, 0, 1, -1, 0, 1, -1;
    out[0] = KSMatrix::from_matrix(m);  // V+1
    m << 0, 0, 0, 0, 1, 1, 0, -1, -1;
    out[1] = KSMatrix::from_matrix(m);  // V-1
    m << -1, 0, 1, 0, 0, 0, -1, 0, 1;
    out[2] = KSMatrix::from_matrix(m);  // V+2
    m << -1, 0, -1, 0, 0, 0, 1, 0, 1;
    out[3] = KSMatrix::from_matrix(m);  // V-2
    m << 1, -1, 0, 1, -1, 0, 0, 0, 0;
    out[4] = KSMatrix::from_matrix(m);  // V+3
    m << 1, 1, 0, -1, -1, 0, 0, 0, 0;
    out[5] = KSMatrix::from_matrix(m);  // V-3

    auto add = [&](const KSMatrix& a, const KSMatrix& b, const KSMatrix& c) {
      return KSMatrix(a.delta() + b.delta() + c.delta(), a.t() + b.t() + c.t());
    };
    out[6] = add(out[0], out[2], out[4]);  // C0 = V+1 + V+2 + V+3
    out[7] = add(out[1], out[2], out[4]);  // C1 = V-1 + V+2 + V+3
    out[8] = add(out[3], out[4], out[0]);  // C2 = V-2 + V+3 + V+1
    out[9] = add(out[5], out[0], out[2]);  // C3 = V-3 + V+1 + V+2
    return out;
  }();
  return pts;
}

double singularity_gradient(const KSMatrix& m) {
  const double scale = std::max(m.scale(), 1e-300);
  const Mat3 adj = adjugate3(m.matrix() / scale);
  // Gradient of det against the slice basis: two trace-free diagonal
  // directions and the three antisymmetric ones.
  double worst = 0.0;
  worst = std::max(worst, std::abs(adj(0, 0) - adj(1, 1)));
  worst = std::max(worst, std::abs(adj(1, 1) - adj(2, 2)));
  worst = std::max(worst, std::abs(adj(1, 2) - adj(2, 1)));
  worst = std::max(worst, std::abs(adj(2, 0) - adj(0, 2)));
  worst = std::max(worst, std::abs(adj(0, 1) - adj(1, 0)));
  return worst;
}

bool is_singular(const KSMatrix& m, const ToleranceConfig& tol) {
  return singularity_gradient(m) <= tol.eq_tol;
}

// ---------------------------------------------------------------------------
// Kernel map and embeddings
// ---------------------------------------------------------------------------

ProjVec3 kernel_map(const KSMatrix& m, const ToleranceConfig& tol) {
  const double scale = std::max(m.scale(), 1e-300);
  const Mat3 normalised = m.matrix() / scale;
  if (std::abs(normalised.determinant()) > tol.eq_tol)
    throw NotOnVariety(m.det());
  const Mat3 adj = adjugate3(normalised);
  int best = 0;
  double best_norm = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double n = adj.col(j).norm();
    if (n > best_norm) {
      best_norm = n;
      best = j;
    }
  }
  if (best_norm <= tol.eq_tol) throw RankOne();
  return ProjVec3::of(adj.col(best));
}

KSMatrix iota(const Vec3& n) { return KSMatrix(Vec3::Zero(), n); }

KSMatrix nu(const Vec3& n) {
  const Vec3 delta(n[1] * n[1] - n[2] * n[2], n[2] * n[2] - n[0] * n[0],
                   n[0] * n[0] - n[1] * n[1]);
  const Vec3 t(n[1] * n[2], n[2] * n[0], n[0] * n[1]);
  return KSMatrix(delta, t);
}

std::vector<KSMatrix> isokernel_space(const Vec3& n,
                                      const ToleranceConfig& tol) {
  const ProjVec3 dir = ProjVec3::of(n);
  // Coordinates on the slice: (D1, D2, t1, t2, t3) with D3 = -D1-D2.
  // Column k of the system is E_k * n for the k-th basis slice matrix;
  // the null space is the isokernel space.
  const std::array<KSMatrix, 5> slice_basis = {
      KSMatrix(Vec3(1, 0, -1), Vec3::Zero()),
      KSMatrix(Vec3(0, 1, -1), Vec3::Zero()),
      KSMatrix(Vec3::Zero(), Vec3(1, 0, 0)),
      KSMatrix(Vec3::Zero(), Vec3(0, 1, 0)),
      KSMatrix(Vec3::Zero(), Vec3(0, 0, 1)),
  };
  Eigen::Matrix<double, 3, 5> a;
  for (int k = 0; k < 5; ++k) a.col(k) = slice_basis[k].matrix() * dir.n;

  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 5>> svd(
      a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol.group_tol * std::max(sv(0), 1e-300);
  int rank = 0;
  for (int i = 0; i < 3; ++i)
    if (sv(i) > cut) ++rank;

  std::vector<KSMatrix> basis;
  const auto& v5 = svd.matrixV();
  for (int j = rank; j < 5; ++j) {
    const auto col = v5.col(j);
    const Vec3 delta(col(0), col(1), -col(0) - col(1));
    const Vec3 t(col(2), col(3), col(4));
    basis.emplace_back(delta, t);
  }
  return basis;
}

StaeckelLine staeckel_line(const KSMatrix& m, const ToleranceConfig& tol) {
  if (is_singular(m, tol)) throw SingularPoint();
  const ProjVec3 n = kernel_map(m, tol);
  const KSMatrix i_pt = iota(n.n);
  const KSMatrix n_pt = nu(n.n);

  StaeckelLine line;
  line.kernel = n;
  const double gap =
      (n_pt.coefficients() / std::max(n_pt.scale(), 1e-300) -
       i_pt.coefficients() / std::max(i_pt.scale(), 1e-300))
          .cwiseAbs()
          .maxCoeff();
  if (gap > 1e-8) {
    line.base = i_pt;
    line.second = n_pt;
    line.degenerate = false;
    return line;
  }
  // Kernel sits at a (+-1,+-1,+-1) direction: the line degenerates inside an
  // isokernel plane.  Use m itself as the second, independent generator.
  line.base = i_pt;
  line.second = m;
  line.degenerate = true;
  return line;
}

// ---------------------------------------------------------------------------
// Octahedral group
// ---------------------------------------------------------------------------

Mat3 OctahedralElement::matrix() const {
  Mat3 m = Mat3::Zero();
  for (int i = 0; i < 3; ++i) m(perm[i], i) = static_cast<double>(sign[i]);
  return m;
}

const std::array<OctahedralElement, 24>& octahedral_group() {
  static const std::array<OctahedralElement, 24> group = [] {
    std::array<OctahedralElement, 24> out;
    const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    int k = 0;
    for (const auto& p : perms) {
      const int parity =
          (p[0] == 0 && p[1] == 1) || (p[0] == 1 && p[1] == 2) ||
                  (p[0] == 2 && p[1] == 0)
              ? 1
              : -1;
      for (int s0 = -1; s0 <= 1; s0 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2)
          for (int s2 = -1; s2 <= 1; s2 += 2) {
            if (parity * s0 * s1 * s2 != 1) continue;  // det +1 only
            out[k++] = OctahedralElement{p, {s0, s1, s2}};
          }
    }
    return out;
  }();
  return group;
}

KSMatrix s4_act(const KSMatrix& m, const OctahedralElement& sigma) {
  // sigma^t M sigma by exact entry moves (no arithmetic).
  Vec3 delta, t;
  for (int i = 0; i < 3; ++i) {
    delta[i] = m.delta()[sigma.perm[i]];
    t[i] = sigma.sign[i] * m.t()[sigma.perm[i]];
  }
  return KSMatrix(delta, t);
}

namespace {

Vec6 normalised_coefficients(const KSMatrix& m) {
  Vec6 v = m.coefficients();
  const double mx = v.cwiseAbs().maxCoeff();
  if (mx == 0.0) return v;
  v /= mx;
  for (int i = 0; i < 6; ++i) {
    if (std::abs(v[i]) > 1e-10) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

// Tolerant lexicographic order: near-ties (at the normalised noise floor)
// fall through to the next component, so the orbit minimum is stable under
// small perturbations of the input representative.
bool lex_less(const Vec6& a, const Vec6& b) {
  for (int i = 0; i < 6; ++i) {
    if (a[i] < b[i] - 1e-9) return true;
    if (a[i] > b[i] + 1e-9) return false;
  }
  return false;
}

}  // namespace

KSMatrix canonical_form(const KSMatrix& m) {
  bool have = false;
  Vec6 best = Vec6::Zero();
  for (const auto& sigma : octahedral_group()) {
    const Vec6 cand = normalised_coefficients(s4_act(m, sigma));
    if (!have || lex_less(cand, best)) {
      best = cand;
      have = true;
    }
  }
  return KSMatrix(best.head<3>(), best.tail<3>());
}

}  // namespace kst
