#include "kst/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kst {

namespace {

double act_scale(const AlgCurvTensor& r) {
  return std::max(1e-300, r.matrix().cwiseAbs().maxCoeff());
}

}  // namespace

// ---------------------------------------------------------------------------
// Block decomposition
// ---------------------------------------------------------------------------

HodgeBlocks hodge_blocks(const AlgCurvTensor& r) {
  const Mat6& m = r.matrix();
  const Mat3 a = m.topLeftCorner<3, 3>();
  const Mat3 b = m.topRightCorner<3, 3>();
  const Mat3 c = m.bottomLeftCorner<3, 3>();
  const Mat3 d = m.bottomRightCorner<3, 3>();

  HodgeBlocks out;
  out.s = 2.0 * m.trace();
  // Conjugation by the (involutive) eta change of basis, written out on the
  // 3x3 blocks.
  out.w_plus = 0.5 * (a + b + c + d) - (out.s / 12.0) * Mat3::Identity();
  out.w_minus = 0.5 * (a - b - c + d) - (out.s / 12.0) * Mat3::Identity();
  out.t_pm = 0.5 * (a + b - c - d);
  return out;
}

AlgCurvTensor blocks_to_act(const HodgeBlocks& blk, double tol) {
  const double scale =
      1.0 + std::max({blk.w_plus.cwiseAbs().maxCoeff(),
                      blk.w_minus.cwiseAbs().maxCoeff(),
                      blk.t_pm.cwiseAbs().maxCoeff(), std::abs(blk.s)});
  const double diff = std::abs(blk.w_plus.trace() - blk.w_minus.trace());
  if (diff > tol * scale) throw BianchiViolation(diff);
  const double sum = std::abs(blk.w_plus.trace() + blk.w_minus.trace());
  if (sum > tol * scale) throw BianchiViolation(sum);

  const Mat3 x = blk.w_plus + (blk.s / 12.0) * Mat3::Identity();
  const Mat3 y = blk.w_minus + (blk.s / 12.0) * Mat3::Identity();
  const Mat3 t = blk.t_pm;
  const Mat3 tt = t.transpose();

  Mat6 m;
  m.topLeftCorner<3, 3>() = 0.5 * (x + y + t + tt);
  m.topRightCorner<3, 3>() = 0.5 * (x - y + t - tt);
  m.bottomLeftCorner<3, 3>() = 0.5 * (x - y - t + tt);
  m.bottomRightCorner<3, 3>() = 0.5 * (x + y - t - tt);
  return AlgCurvTensor::from_matrix(m, 1e-9 * scale);
}

RicciParts ricci_decompose(const AlgCurvTensor& r) {
  RicciParts out{AlgCurvTensor::zero(), Sym4::Zero(), 0.0};
  out.s = 2.0 * r.matrix().trace();
  out.ricci = ricci_contraction(r.matrix()) -
              (out.s / 4.0) * Mat4::Identity();
  const AlgCurvTensor t_part = 0.5 * kulkarni_nomizu(out.ricci, Mat4::Identity());
  const AlgCurvTensor s_part =
      (out.s / 24.0) * kulkarni_nomizu(Mat4::Identity(), Mat4::Identity());
  out.weyl = r - t_part - s_part;
  return out;
}

// ---------------------------------------------------------------------------
// Group actions
// ---------------------------------------------------------------------------

AlgCurvTensor so_action(const AlgCurvTensor& r, const RotationPair& u) {
  HodgeBlocks b = hodge_blocks(r);
  b.w_plus = (u.u_plus.transpose() * b.w_plus * u.u_plus).eval();
  b.w_minus = (u.u_minus.transpose() * b.w_minus * u.u_minus).eval();
  b.t_pm = (u.u_minus.transpose() * b.t_pm * u.u_plus).eval();
  return blocks_to_act(b, 1e-8);
}

AlgCurvTensor orientation_reverse(const AlgCurvTensor& r) {
  HodgeBlocks b = hodge_blocks(r);
  std::swap(b.w_plus, b.w_minus);
  b.t_pm = b.t_pm.transpose().eval();
  return blocks_to_act(b, 1e-8);
}

// ---------------------------------------------------------------------------
// Alignment and diagonalisation
// ---------------------------------------------------------------------------

double alignment_residual(const AlgCurvTensor& r) {
  const HodgeBlocks b = hodge_blocks(r);
  return (b.t_pm * b.w_plus - b.w_minus * b.t_pm).cwiseAbs().maxCoeff();
}

bool is_aligned(const AlgCurvTensor& r, const ToleranceConfig& tol) {
  const double scale = act_scale(r);
  return alignment_residual(r) <= tol.eq_tol * scale * scale;
}

bool is_diagonalisable(const AlgCurvTensor& r, const ToleranceConfig& tol) {
  if (!is_aligned(r, tol)) return false;
  const HodgeBlocks b = hodge_blocks(r);
  const double scale = act_scale(r);
  Mat3 pp = Mat3::Identity(), pm = Mat3::Identity();
  double s = 1.0;
  for (int k = 1; k <= 3; ++k) {
    pp = (pp * b.w_plus).eval();
    pm = (pm * b.w_minus).eval();
    s *= scale;
    if (std::abs(pp.trace() - pm.trace()) > tol.eq_tol * 3.0 * s) return false;
  }
  return true;
}

namespace {

// Contiguous groups of equal eigenvalues (input ascending).
std::vector<std::pair<int, int>> eigen_groups(const Vec3& ev, double tol) {
  std::vector<std::pair<int, int>> groups;
  int start = 0;
  for (int i = 1; i < 3; ++i) {
    if (ev[i] - ev[start] > tol) {
      groups.emplace_back(start, i);
      start = i;
    }
  }
  groups.emplace_back(start, 3);
  return groups;
}

}  // namespace

Diagonalisation diagonalise(const AlgCurvTensor& r, const ToleranceConfig& tol) {
  if (!is_diagonalisable(r, tol)) throw NotDiagonalisable(alignment_residual(r));

  const double scale = act_scale(r);

  // Already diagonal: report the parameters as they stand.
  {
    Mat6 off = r.matrix();
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, scale)) {
      const Vec6 d = r.matrix().diagonal();
      const double s = 2.0 * d.sum();
      Vec3 w, t;
      for (int a = 0; a < 3; ++a) {
        t[a] = 0.5 * (d[a] - d[a + 3]);
        w[a] = 0.5 * (d[a] + d[a + 3]) - s / 12.0;
      }
      return Diagonalisation{DiagonalACT(w, t, s), RotationPair::identity()};
    }
  }

  const HodgeBlocks b = hodge_blocks(r);
  Eigen::SelfAdjointEigenSolver<Mat3> es_p(b.w_plus);
  Eigen::SelfAdjointEigenSolver<Mat3> es_m(b.w_minus);
  Mat3 v_plus = es_p.eigenvectors();
  Mat3 v_minus = es_m.eigenvectors();
  const Vec3 ev = es_p.eigenvalues();  // ascending; equals the W- spectrum

  // Grouping scale covers the W = 0 case, where the whole spectrum is one
  // degenerate group at the tensor's noise floor.
  const double group_tol = tol.group_tol * std::max(scale, 1e-300);

  // Within each eigenspace W is a multiple of the identity; a singular value
  // decomposition of the restriction of T diagonalises the block without
  // disturbing W.
  Mat3 t_rot = v_minus.transpose() * b.t_pm * v_plus;
  for (const auto& [lo, hi] : eigen_groups(ev, group_tol)) {
    const int n = hi - lo;
    if (n == 1) {
      if (t_rot(lo, lo) < 0.0) v_plus.col(lo) *= -1.0;
      continue;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        t_rot.block(lo, lo, n, n),
        Eigen::ComputeFullU | Eigen::ComputeFullV);
    v_plus.block(0, lo, 3, n) = (v_plus.block(0, lo, 3, n) * svd.matrixV()).eval();
    v_minus.block(0, lo, 3, n) = (v_minus.block(0, lo, 3, n) * svd.matrixU()).eval();
  }
  if (v_plus.determinant() < 0.0) v_plus.col(2) *= -1.0;
  if (v_minus.determinant() < 0.0) v_minus.col(2) *= -1.0;

  const RotationPair rot{v_plus, v_minus};
  const AlgCurvTensor rotated = so_action(r, rot);

  // Read the parameters off the rotated tensor and confirm diagonality.
  const Mat6& m = rotated.matrix();
  Mat6 offdiag = m;
  offdiag.diagonal().setZero();
  const double offres = offdiag.cwiseAbs().maxCoeff();
  if (offres > 1e-10 * std::max(1.0, scale)) throw NotDiagonalisable(offres);

  const double s = 2.0 * m.trace();
  Vec3 w, t;
  for (int a = 0; a < 3; ++a) {
    t[a] = 0.5 * (m(a, a) - m(a + 3, a + 3));
    w[a] = 0.5 * (m(a, a) + m(a + 3, a + 3)) - s / 12.0;
  }
  return Diagonalisation{DiagonalACT(w, t, s), rot};
}

// ---------------------------------------------------------------------------
// DiagonalACT
// ---------------------------------------------------------------------------

DiagonalACT::DiagonalACT(const Vec3& w, const Vec3& t, double s)
    : w_(w), t_(t), s_(s) {
  const double mean = w_.sum() / 3.0;
  w_.array() -= mean;  // sum(w) = 0 is structural
}

AlgCurvTensor DiagonalACT::to_act() const {
  Mat6 m = Mat6::Zero();
  m.diagonal() = diagonal();
  return AlgCurvTensor::from_matrix(m, 1e-9 * (1.0 + scale() + std::abs(s_)));
}

Vec6 DiagonalACT::diagonal() const {
  Vec6 d;
  for (int a = 0; a < 3; ++a) {
    d[a] = w_[a] + t_[a] + s_ / 12.0;
    d[a + 3] = w_[a] - t_[a] + s_ / 12.0;
  }
  return d;
}

double DiagonalACT::scale() const {
  return std::max(w_.cwiseAbs().maxCoeff(), t_.cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------------------
// Residual S4 action
// ---------------------------------------------------------------------------

const std::array<S4Element, 24>& s4_elements() {
  static const std::array<S4Element, 24> elements = [] {
    std::array<S4Element, 24> out;
    const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    const std::array<std::array<int, 3>, 4> flips = {
        {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
    int k = 0;
    for (const auto& p : perms)
      for (const auto& f : flips) out[k++] = S4Element{p, f};
    return out;
  }();
  return elements;
}

DiagonalACT s4_residual_action(const DiagonalACT& d, const S4Element& sigma) {
  Vec3 w, t;
  for (int a = 0; a < 3; ++a) {
    w[a] = d.w()[sigma.perm[a]];
    t[a] = sigma.sign[a] * d.t()[sigma.perm[a]];
  }
  return DiagonalACT(w, t, d.s());
}

}  // namespace kst
