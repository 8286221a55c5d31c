#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kst/generate.hpp"
#include "kst/lambda2.hpp"

#include <cmath>

using namespace kst;

namespace {

// Metric curvature components: R_ijij = 1, R_ijji = -1 for i != j.
Rank4 metric_components() {
  Rank4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      r(i, j, i, j) = 1.0;
      r(i, j, j, i) = -1.0;
    }
  return r;
}

// Fill an array with all symmetry images of R_{0 a b g} = w_a (cyclic),
// i.e. the anti-self-dual-free Weyl family used to break Bianchi.
Rank4 pure_w0123_components(double w1, double w2, double w3) {
  Rank4 r;
  auto put = [&](int a, int b, int c, int d, double v) {
    r(a, b, c, d) = v;
    r(b, a, c, d) = -v;
    r(a, b, d, c) = -v;
    r(b, a, d, c) = v;
    r(c, d, a, b) = v;
    r(d, c, a, b) = -v;
    r(c, d, b, a) = -v;
    r(d, c, b, a) = v;
  };
  put(0, 1, 2, 3, w1);
  put(0, 2, 3, 1, w2);
  put(0, 3, 1, 2, w3);
  return r;
}

}  // namespace

TEST_CASE("star is the block permutation and squares to the identity") {
  const Mat6& s = lambda2::star();
  CHECK((s * s - Mat6::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s(0, 3) == 1.0);
  CHECK(s(3, 0) == 1.0);
  CHECK(s(0, 0) == 0.0);
}

TEST_CASE("metric components give the 6x6 identity") {
  const AlgCurvTensor r = AlgCurvTensor::from_components(metric_components());
  CHECK((r.matrix() - Mat6::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("pure R_{0123} family violates Bianchi unless the trace vanishes") {
  // tr(star M) = 2(R_0123 + R_0231 + R_0312) by direct contraction.
  CHECK_THROWS_AS(AlgCurvTensor::from_components(pure_w0123_components(1, 1, 1)),
                  SymmetryViolation);
  try {
    AlgCurvTensor::from_components(pure_w0123_components(1, 1, 1));
  } catch (const SymmetryViolation& e) {
    CHECK(e.kind() == SymmetryViolation::Kind::Bianchi);
    // Cyclic sum R_0123 + R_0231 + R_0312 = w1 + w2 + w3; the 6x6 trace form
    // tr(star M) carries an extra factor 2.
    CHECK(e.residual() == doctest::Approx(3.0));
  }
  // Balanced weights satisfy it.
  CHECK_NOTHROW(AlgCurvTensor::from_components(pure_w0123_components(1, 1, -2)));
}

TEST_CASE("pair symmetry violations are reported") {
  Rank4 r = metric_components();
  r(0, 1, 2, 3) += 0.5;  // breaks antisymmetry images too, but pair first
  CHECK_THROWS_AS(AlgCurvTensor::from_components(r), SymmetryViolation);
}

TEST_CASE("component round trip is exact") {
  Rng rng(20240811);
  for (int trial = 0; trial < 1000; ++trial) {
    const AlgCurvTensor r = random_act(rng);
    const AlgCurvTensor back = AlgCurvTensor::from_components(r.components());
    CHECK((r.matrix() - back.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("kulkarni-nomizu: g wedge g is twice the identity") {
  const AlgCurvTensor gg = kulkarni_nomizu(Mat4::Identity(), Mat4::Identity());
  CHECK((gg.matrix() - 2.0 * Mat6::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kulkarni-nomizu: diagonal h against g gives h_i + h_j") {
  const Sym4 h = Vec4(1, 2, 3, 4).asDiagonal();
  const AlgCurvTensor r = kulkarni_nomizu(h, Mat4::Identity());
  const Vec6 expect = (Vec6() << 3, 4, 5, 7, 6, 5).finished();
  CHECK((r.matrix().diagonal() - expect).cwiseAbs().maxCoeff() < 1e-15);
  Mat6 off = r.matrix();
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kulkarni-nomizu: h wedge h gives 2 h_i h_j") {
  const Sym4 h = Vec4(1, 2, 3, 4).asDiagonal();
  const AlgCurvTensor r = kulkarni_nomizu(h, h);
  const Vec6 expect = (Vec6() << 4, 6, 8, 24, 16, 12).finished();
  CHECK((r.matrix().diagonal() - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kulkarni-nomizu is symmetric and bilinear") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Sym4 h = random_sym4(rng);
    const Sym4 k = random_sym4(rng);
    const Sym4 l = random_sym4(rng);
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    CHECK((kulkarni_nomizu(h, k).matrix() - kulkarni_nomizu(k, h).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    const Mat6 lhs = kulkarni_nomizu(a * h + b * l, k).matrix();
    const Mat6 rhs =
        a * kulkarni_nomizu(h, k).matrix() + b * kulkarni_nomizu(l, k).matrix();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hodge conjugation fixes the metric and swaps complementary pairs") {
  const AlgCurvTensor metric = AlgCurvTensor::metric();
  CHECK((hodge_conjugate(metric).matrix() - metric.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  const Sym4 h = Vec4(1, 2, 3, 4).asDiagonal();
  const AlgCurvTensor hh = kulkarni_nomizu(h, h);
  const AlgCurvTensor conj = hodge_conjugate(hh);
  CHECK(conj.component(0, 1, 0, 1) == doctest::Approx(24.0));
  CHECK(conj.component(2, 3, 2, 3) == doctest::Approx(4.0));
  const Vec6 expect = (Vec6() << 24, 16, 12, 4, 6, 8).finished();
  CHECK((conj.matrix().diagonal() - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("adjugate of diagonal and rank-deficient matrices") {
  const Mat4 h = Vec4(1, 2, 3, 4).asDiagonal();
  const Mat4 adj = adjugate4(h);
  CHECK((adj - Mat4(Vec4(24, 12, 8, 6).asDiagonal())).cwiseAbs().maxCoeff() <
        1e-12);

  // Rank-one 3x3 (a V-type vertex) has zero adjugate.
  Mat3 v1;
  v1 << 0, 0, 0, 0, 1, -1, 0, 1, -1;
  CHECK(adjugate3(v1).cwiseAbs().maxCoeff() == 0.0);

  // Cofactor-expansion oracle for a slice matrix.
  Mat3 m;
  m << 1, 0, 0, 0, -2, 0, 0, 0, 1;
  const Mat3 adj3 = adjugate3(m);
  CHECK((adj3 - Mat3(Vec3(-2, 1, -2).asDiagonal())).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("adjugate identities on random matrices") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Mat3 a, b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = rng.uniform(-2, 2);
        b(i, j) = rng.uniform(-2, 2);
      }
    if (std::abs(a.determinant()) < 0.05 || std::abs(b.determinant()) < 0.05)
      continue;
    const Mat3 lhs = adjugate3(a * b);
    const Mat3 rhs = adjugate3(b) * adjugate3(a);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <
          1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    // (Adj M) M = det(M) I
    const Mat3 prod = adjugate3(a) * a - a.determinant() * Mat3::Identity();
    CHECK(prod.cwiseAbs().maxCoeff() < 1e-10 * std::abs(a.determinant()) + 1e-12);
  }
  Rng rng4(100);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat4 a = random_sym4(rng4);
    const Mat4 prod = adjugate4(a) * a - a.determinant() * Mat4::Identity();
    CHECK(prod.cwiseAbs().maxCoeff() <
          1e-10 * std::max(1.0, std::abs(a.determinant())) + 1e-10);
  }
}

TEST_CASE("ricci contraction of reference endomorphisms") {
  // Independent index-loop oracle.
  auto oracle = [](const End6& e) {
    const Rank4 r = end6_components(e);
    Mat4 out = Mat4::Zero();
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) out(i, k) += r(i, j, k, j);
    return out;
  };

  const Mat4 id_res = ricci_contraction(Mat6::Identity());
  CHECK((id_res - 3.0 * Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((id_res - oracle(Mat6::Identity())).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(ricci_contraction(lambda2::star()).cwiseAbs().maxCoeff() < 1e-15);

  // The metric passes AIC-I: M star M = star for M = identity.
  const Mat6 e = AlgCurvTensor::metric().matrix() * lambda2::star() *
                 AlgCurvTensor::metric().matrix();
  CHECK(ricci_contraction(e).cwiseAbs().maxCoeff() < 1e-15);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Mat6 m;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = rng.uniform(-1, 1);
    CHECK((ricci_contraction(m) - oracle(m)).cwiseAbs().maxCoeff() < 1e-14);
  }
}
