#include "kst/oracle.hpp"

#include <cmath>

namespace kst {

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

TangentFrame TangentFrame::of(const Vec4& x, const Vec4& e1, const Vec4& e2,
                              const Vec4& e3, double tol) {
  Eigen::Matrix4d basis;
  basis.col(0) = x;
  basis.col(1) = e1;
  basis.col(2) = e2;
  basis.col(3) = e3;
  const double gram_res =
      (basis.transpose() * basis - Mat4::Identity()).cwiseAbs().maxCoeff();
  if (gram_res > tol)
    throw InvalidInput("frame is not orthonormal (residual " +
                       std::to_string(gram_res) + ")");
  return TangentFrame{x, e1, e2, e3};
}

TangentFrame TangentFrame::at(const Vec4& x_in) {
  const double n = x_in.norm();
  if (n < 1e-12) throw InvalidInput("frame base point must be nonzero");
  const Vec4 x = x_in / n;
  // Gram-Schmidt against the least-aligned coordinate axes.
  std::array<int, 4> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(x[a]) < std::abs(x[b]); });
  std::array<Vec4, 3> es;
  int have = 0;
  for (int k = 0; k < 4 && have < 3; ++k) {
    Vec4 v = Vec4::Unit(order[static_cast<size_t>(k)]);
    v -= x.dot(v) * x;
    for (int j = 0; j < have; ++j) v -= es[static_cast<size_t>(j)].dot(v) * es[static_cast<size_t>(j)];
    const double vn = v.norm();
    if (vn < 1e-8) continue;
    es[static_cast<size_t>(have++)] = v / vn;
  }
  return TangentFrame{x, es[0], es[1], es[2]};
}

// ---------------------------------------------------------------------------
// Pointwise evaluation
// ---------------------------------------------------------------------------

Mat4 ambient_killing_matrix(const Rank4& r, const Vec4& y) {
  Mat4 k = Mat4::Zero();
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double acc = 0.0;
      for (int a = 0; a < 4; ++a) {
        if (y[a] == 0.0) continue;
        for (int c = 0; c < 4; ++c) acc += r(a, b, c, d) * y[a] * y[c];
      }
      k(b, d) = acc;
    }
  return k;
}

Mat4 ambient_killing_matrix(const AlgCurvTensor& r, const Vec4& y) {
  return ambient_killing_matrix(r.components(), y);
}

double killing_eval(const AlgCurvTensor& r, const Vec4& x_in, const Vec4& v_in,
                    const Vec4& w_in) {
  const Vec4 x = x_in / x_in.norm();
  const Vec4 v = v_in - x.dot(v_in) * x;
  const Vec4 w = w_in - x.dot(w_in) * x;
  return v.dot(ambient_killing_matrix(r, x) * w);
}

Mat3 killing_endomorphism(const AlgCurvTensor& r, const TangentFrame& f) {
  const Mat4 k = ambient_killing_matrix(r, f.x);
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = f.tangent(i).dot(k * f.tangent(j));
  return 0.5 * (out + out.transpose().eval());
}

// ---------------------------------------------------------------------------
// Conservation along geodesics
// ---------------------------------------------------------------------------

namespace {

double conservation_impl(const Rank4& r, const Vec4& x_in, const Vec4& v_in,
                         int n_samples) {
  const Vec4 x = x_in / x_in.norm();
  Vec4 v = v_in - x.dot(v_in) * x;
  v /= v.norm();

  const double ref = v.dot(ambient_killing_matrix(r, x) * v);
  double worst = 0.0;
  for (int i = 1; i <= n_samples; ++i) {
    const double t = (2.0 * M_PI * i) / (n_samples + 1);
    const Vec4 gamma = x * std::cos(t) + v * std::sin(t);
    const Vec4 dgamma = -x * std::sin(t) + v * std::cos(t);
    const double val = dgamma.dot(ambient_killing_matrix(r, gamma) * dgamma);
    worst = std::max(worst, std::abs(val - ref));
  }
  return worst;
}

}  // namespace

double geodesic_conservation(const AlgCurvTensor& r, const Vec4& x,
                             const Vec4& v, int n_samples) {
  return conservation_impl(r.components(), x, v, n_samples);
}

double geodesic_conservation(const Rank4& r, const Vec4& x, const Vec4& v,
                             int n_samples) {
  return conservation_impl(r, x, v, n_samples);
}

// ---------------------------------------------------------------------------
// Commutator
// ---------------------------------------------------------------------------

double numeric_commutator(const AlgCurvTensor& r1, const AlgCurvTensor& r2,
                          const TangentFrame& f) {
  const Mat3 k1 = killing_endomorphism(r1, f);
  const Mat3 k2 = killing_endomorphism(r2, f);
  const double s1 = std::max(r1.operator_norm(), 1e-300);
  const double s2 = std::max(r2.operator_norm(), 1e-300);
  return (k1 * k2 - k2 * k1).norm() / (s1 * s2);
}

// ---------------------------------------------------------------------------
// Nijenhuis residuals
// ---------------------------------------------------------------------------

namespace {

using Grad3 = std::array<Mat3, 3>;  // nabla_c K in frame components

// d/dt at t=0 of K(gamma_c(t))(P e_a, P e_b) along the great circle in
// direction e_c; the projected constant extensions of the frame vectors are
// parallel at the base point, so this is the covariant derivative.
Mat3 frame_derivative(const Rank4& r, const TangentFrame& f, int c, double h) {
  const Vec4 dir = f.tangent(c);
  auto sample = [&](double t) {
    const Vec4 gamma = f.x * std::cos(t) + dir * std::sin(t);
    const Mat4 k = ambient_killing_matrix(r, gamma);
    Mat3 out;
    for (int a = 0; a < 3; ++a) {
      const Vec4 ea = f.tangent(a) - gamma.dot(f.tangent(a)) * gamma;
      for (int b = 0; b < 3; ++b) {
        const Vec4 eb = f.tangent(b) - gamma.dot(f.tangent(b)) * gamma;
        out(a, b) = ea.dot(k * eb);
      }
    }
    return out;
  };
  return (sample(h) - sample(-h)) / (2.0 * h);
}

Grad3 covariant_gradient(const Rank4& r, const TangentFrame& f, double h) {
  Grad3 g;
  for (int c = 0; c < 3; ++c) {
    const Mat3 d1 = frame_derivative(r, f, c, h);
    const Mat3 d2 = frame_derivative(r, f, c, h / 2.0);
    g[static_cast<size_t>(c)] = (4.0 * d2 - d1) / 3.0;  // Richardson
  }
  return g;
}

double antisym3_max(const std::array<std::array<std::array<double, 3>, 3>, 3>& t) {
  // Complete antisymmetrisation of a 3-tensor on a 3-space has a single
  // independent component.
  double acc = 0.0;
  static const int eps[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
  for (const auto& e : eps)
    acc += e[3] * t[static_cast<size_t>(e[0])][static_cast<size_t>(e[1])]
            [static_cast<size_t>(e[2])];
  return std::abs(acc);
}

}  // namespace

TorsionResidual nijenhuis_residual(const AlgCurvTensor& r,
                                   const TangentFrame& f, double step) {
  const Rank4 comp = r.components();
  const Mat3 k = killing_endomorphism(r, f);
  const Grad3 dk = covariant_gradient(comp, f, step);

  const double scale = std::max(r.operator_norm(), 1e-300);

  TorsionResidual out;

  // Killing equation: complete symmetrisation of nabla_c K_ab.
  double keq = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b)
      for (int c = b; c < 3; ++c) {
        const double sym = dk[static_cast<size_t>(c)](a, b) +
                           dk[static_cast<size_t>(a)](b, c) +
                           dk[static_cast<size_t>(b)](c, a);
        keq = std::max(keq, std::abs(sym));
      }
  out.killing_eq = keq / scale;

  // Nijenhuis torsion N^a_{bg} (overall factor irrelevant).
  std::array<std::array<std::array<double, 3>, 3>, 3> n{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) {
        double acc = 0.0;
        for (int d = 0; d < 3; ++d) {
          acc += k(a, d) * (dk[static_cast<size_t>(g)](d, b) -
                            dk[static_cast<size_t>(b)](d, g));
          acc += dk[static_cast<size_t>(d)](a, g) * k(d, b) -
                 dk[static_cast<size_t>(d)](a, b) * k(d, g);
        }
        n[static_cast<size_t>(a)][static_cast<size_t>(b)]
         [static_cast<size_t>(g)] = acc;
      }

  // The three integrability conditions: antisymmetrise N^d_{bg} X_{ad} over
  // (a,b,g) for X = g, K, K^2.
  const Mat3 k2 = k * k;
  std::array<std::array<std::array<double, 3>, 3>, 3> t1{}, t2{}, t3{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) {
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (int d = 0; d < 3; ++d) {
          const double nd = n[static_cast<size_t>(d)][static_cast<size_t>(b)]
                             [static_cast<size_t>(g)];
          s1 += nd * (d == a ? 1.0 : 0.0);
          s2 += nd * k(a, d);
          s3 += nd * k2(a, d);
        }
        t1[static_cast<size_t>(a)][static_cast<size_t>(b)]
          [static_cast<size_t>(g)] = s1;
        t2[static_cast<size_t>(a)][static_cast<size_t>(b)]
          [static_cast<size_t>(g)] = s2;
        t3[static_cast<size_t>(a)][static_cast<size_t>(b)]
          [static_cast<size_t>(g)] = s3;
      }

  const double s2 = scale * scale;
  out.tns[0] = antisym3_max(t1) / s2;
  out.tns[1] = antisym3_max(t2) / (s2 * scale);
  out.tns[2] = antisym3_max(t3) / (s2 * s2);
  return out;
}

}  // namespace kst
