#include "kst/generate.hpp"

#include "kst/integrability.hpp"

#include <cmath>

namespace kst {

double Rng::uniform(double lo, double hi) {
  // 53-bit mantissa from the raw engine; avoids distribution divergence
  // across standard library implementations.
  const uint64_t bits = engine_() >> 11;
  const double u = static_cast<double>(bits) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = uniform(-1.0, 1.0);
    v = uniform(-1.0, 1.0);
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

int Rng::uniform_int(int lo, int hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

DiagonalACT random_diagonal(Rng& rng, bool on_quadric, double margin) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vec3 w(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    w.array() -= w.sum() / 3.0;
    Vec3 t(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double s = rng.uniform(-6, 6);

    if (on_quadric) {
      // Solve (w1-w2) t3^2 = -[(w2-w3) t1^2 + (w3-w1) t2^2 + prod].
      const double denom = w[0] - w[1];
      if (std::abs(denom) < 1e-3) continue;
      const double rhs = -((w[1] - w[2]) * t[0] * t[0] +
                           (w[2] - w[0]) * t[1] * t[1] +
                           (w[0] - w[1]) * (w[1] - w[2]) * (w[2] - w[0]));
      const double t3sq = rhs / denom;
      if (t3sq < 0.0) continue;
      t[2] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::sqrt(t3sq);
      return DiagonalACT(w, t, s);
    }

    const DiagonalACT d(w, t, s);
    if (margin > 0.0) {
      const double sc = std::max(d.scale(), 1e-300);
      if (std::abs(ks_determinant(d)) < margin * sc * sc * sc) continue;
    }
    return d;
  }
  throw Error("diagonal sampler failed to converge");
}

AlgCurvTensor random_act(Rng& rng) {
  Mat6 m;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) m(i, j) = m(j, i) = rng.gaussian();
  m -= ((lambda2::star() * m).trace() / 6.0) * lambda2::star();
  return AlgCurvTensor::from_matrix(m, 1e-9);
}

Mat3 random_rotation(Rng& rng) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Mat3> qr(a);
  Mat3 q = qr.householderQ();
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

RotationPair random_rotation_pair(Rng& rng) {
  return RotationPair{random_rotation(rng), random_rotation(rng)};
}

Sym4 random_sym4(Rng& rng) {
  Mat4 h;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) h(i, j) = h(j, i) = rng.gaussian();
  return h;
}

TangentFrame random_frame(Rng& rng, double min_coord) {
  Vec4 x;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (int i = 0; i < 4; ++i) x[i] = rng.gaussian();
    const double n = x.norm();
    if (n < 1e-6) continue;
    x /= n;
    if (x.cwiseAbs().minCoeff() <= min_coord) continue;

    std::array<Vec4, 3> es;
    int have = 0;
    for (int tries = 0; tries < 32 && have < 3; ++tries) {
      Vec4 v;
      for (int i = 0; i < 4; ++i) v[i] = rng.gaussian();
      v -= x.dot(v) * x;
      for (int j = 0; j < have; ++j)
        v -= es[static_cast<size_t>(j)].dot(v) * es[static_cast<size_t>(j)];
      const double vn = v.norm();
      if (vn < 1e-6) continue;
      es[static_cast<size_t>(have++)] = v / vn;
    }
    if (have == 3) return TangentFrame{x, es[0], es[1], es[2]};
  }
  throw Error("frame sampler failed to converge");
}

KSMatrix random_variety_point(Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const DiagonalACT d = random_diagonal(rng, /*on_quadric=*/true);
    const KSMatrix m = ks_matrix(d);
    if (singularity_gradient(m) < 1e-3) continue;
    const double sc = std::max(m.scale(), 1e-300);
    if (adjugate3(m.matrix() / sc).cwiseAbs().maxCoeff() < 1e-3) continue;
    return m;
  }
  throw Error("variety sampler failed to converge");
}

}  // namespace kst
