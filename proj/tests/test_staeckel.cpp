#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kst/generate.hpp"
#include "kst/oracle.hpp"
#include "kst/staeckel.hpp"

#include <cmath>

using namespace kst;

TEST_CASE("the metric commutes with everything") {
  Rng rng(41);
  const DiagonalACT metric(Vec3::Zero(), Vec3::Zero(), 12.0);
  for (int trial = 0; trial < 100; ++trial) {
    const DiagonalACT d = random_diagonal(rng, false);
    CHECK(commute_diagonal(d, metric));
    CHECK(commute_diagonal(metric, d));
  }
}

TEST_CASE("iota/nu pair of (1,2,3) commutes, permuted copies do not") {
  // iota point: w = 0, t = n; nu point: w = n^2 (projected), t = (n2n3,...).
  const DiagonalACT d1(Vec3::Zero(), Vec3(1, 2, 3), 0.0);
  const DiagonalACT d2 = diagonal_from_ks(nu(Vec3(1, 2, 3)), 0.0);
  CHECK((d2.t() - Vec3(6, 3, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(commute_diagonal(d1, d2));
  CHECK(commute_general(d1.to_act(), d2.to_act()) < 1e-12);

  const DiagonalACT e1(Vec3(1, 0, -1), Vec3(1, 0, 1), 0.0);
  const DiagonalACT e2(Vec3(0, 1, -1), Vec3(0, 1, 1), 0.0);
  CHECK_FALSE(commute_diagonal(e1, e2));
  CHECK(commute_general(e1.to_act(), e2.to_act()) > 1e-3);
}

TEST_CASE("commute_general vanishes for (R, R) and (R, metric)") {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const AlgCurvTensor r = random_act(rng);
    CHECK(commute_general(r, r) < 1e-12);
    CHECK(commute_general(r, AlgCurvTensor::metric()) < 1e-12);
    CHECK(commute_general(AlgCurvTensor::metric(), r) < 1e-12);
  }
}

TEST_CASE("commute_diagonal agrees with commute_general and the pointwise oracle") {
  Rng rng(43);
  int commuting = 0, non_commuting = 0;
  for (int trial = 0; trial < 200; ++trial) {
    DiagonalACT d1 = random_diagonal(rng, false);
    DiagonalACT d2 = random_diagonal(rng, false);
    if (trial % 2 == 0) {
      // Manufacture a commuting pair from a common Stackel line.
      const KSMatrix m = random_variety_point(rng);
      const StaeckelLine line = staeckel_line(m);
      d1 = diagonal_from_ks(line.base, rng.uniform(-2, 2));
      d2 = diagonal_from_ks(line.second, rng.uniform(-2, 2));
    }
    const bool det_verdict = commute_diagonal(d1, d2);
    const double general = commute_general(d1.to_act(), d2.to_act());
    CHECK(det_verdict == (general < 1e-10));

    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const TangentFrame f = random_frame(rng);
      worst = std::max(worst,
                       numeric_commutator(d1.to_act(), d2.to_act(), f));
    }
    CHECK(det_verdict == (worst < 1e-10));
    (det_verdict ? commuting : non_commuting) += 1;
  }
  CHECK(commuting >= 100);
  CHECK(non_commuting >= 50);
}

TEST_CASE("staeckel_system: three commuting integrable generators") {
  Rng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const KSMatrix m = random_variety_point(rng);
    const StaeckelSystem sys = staeckel_system(m, 0.0);

    for (int i = 0; i < 3; ++i) {
      CHECK(diagonal_is_integrable(sys.generators[static_cast<size_t>(i)]));
      for (int j = i + 1; j < 3; ++j)
        CHECK(commute_diagonal(sys.generators[static_cast<size_t>(i)],
                               sys.generators[static_cast<size_t>(j)]));
    }

    // Linear independence of the vectorised 6x6 triple.
    Eigen::Matrix<double, 36, 3> cols;
    for (int i = 0; i < 3; ++i) {
      const Mat6 mat = sys.generators[static_cast<size_t>(i)].to_act().matrix();
      cols.col(i) = Eigen::Map<const Eigen::Matrix<double, 36, 1>>(mat.data());
      cols.col(i) /= cols.col(i).norm();
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 36, 3>> svd(cols);
    CHECK(svd.singularValues()(2) > 1e-9);

    // The source point's tensor lies in the span of the generators.
    Eigen::Matrix<double, 36, 4> ext;
    ext.leftCols<3>() = cols;
    const Mat6 src = diagonal_from_ks(m, 0.0).to_act().matrix();
    ext.col(3) = Eigen::Map<const Eigen::Matrix<double, 36, 1>>(src.data());
    ext.col(3) /= ext.col(3).norm();
    Eigen::JacobiSVD<Eigen::Matrix<double, 36, 4>> svd4(ext);
    CHECK(svd4.singularValues()(3) < 1e-9);
  }
  CHECK_THROWS_AS(staeckel_system(singular_points()[0], 0.0), SingularPoint);
}

TEST_CASE("degenerate systems: extensions annihilating (1,1,1)") {
  // A point in the (1,1,1) isokernel plane away from the centre.
  const KSMatrix vt(Vec3(3 - 2, 1 - 3, 2 - 1), Vec3(1, 2, 3));
  const StaeckelSystem sys = staeckel_system(vt, 0.0);
  CHECK(sys.line.degenerate);
  for (const auto& gen : sys.generators) {
    const KSMatrix km = ks_matrix(gen);
    CHECK((km.matrix() * Vec3(1, 1, 1)).cwiseAbs().maxCoeff() <
          1e-9 * std::max(1.0, km.scale()));
  }
}

TEST_CASE("special Killing tensors") {
  const Sym4 g = Mat4::Identity();
  // h = g gives twice the metric tensor, zero KS-matrix.
  const AlgCurvTensor twice_metric = special_killing(g);
  CHECK((twice_metric.matrix() - 2.0 * Mat6::Identity()).cwiseAbs().maxCoeff() <
        1e-14);

  // Trace-free h: KS-matrix is antisymmetric with t_a = h0 + h_a.
  const Sym4 ht = Vec4(-1.5, -0.5, 0.5, 1.5).asDiagonal();
  const KSMatrix kt = ks_matrix(diagonalise(special_killing(ht)).diagonal);
  CHECK(kt.delta().cwiseAbs().maxCoeff() < 1e-12);
  CHECK((kt.t() - Vec3(-2, -1, 0)).cwiseAbs().maxCoeff() < 1e-12);

  // General h carries the -Tr(h)/2 correction: diag(1,2,3,4) gives the same
  // projective point as its trace-free shift.
  const Sym4 h = Vec4(1, 2, 3, 4).asDiagonal();
  const KSMatrix kh = ks_matrix(diagonalise(special_killing(h)).diagonal);
  CHECK(kh.delta().cwiseAbs().maxCoeff() < 1e-12);
  CHECK((kh.t() - Vec3(-2, -1, 0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(kh.det()) < 1e-12);

  // Round trip modulo multiples of g.
  Rng rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const Sym4 hr = random_sym4(rng);
    const Sym4 back = l_hat_of(special_killing(hr));
    const Sym4 hr_tf = hr - (hr.trace() / 4.0) * Mat4::Identity();
    const Sym4 back_tf = back - (back.trace() / 4.0) * Mat4::Identity();
    CHECK((back_tf - hr_tf).cwiseAbs().maxCoeff() < 1e-10);
  }

  CHECK_THROWS_AS(l_hat_of(kulkarni_nomizu(h, h)), NotSpecial);
}

TEST_CASE("benenti evaluation: closed forms") {
  const Sym4 h = Vec4(1, 2, 3, 4).asDiagonal();
  const BenentiFamily f = benenti_family(h);

  const AlgCurvTensor at0 = benenti_eval(f, 0.0);
  const Vec6 expect0 = (Vec6() << 24, 16, 12, 4, 6, 8).finished();
  CHECK((at0.matrix().diagonal() - expect0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((at0.matrix() - hodge_conjugate(kulkarni_nomizu(h, h)).matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // h = g: the pencil is (1 - lambda)^2 g^^g.
  const BenentiFamily fg = benenti_family(Mat4::Identity());
  for (double lam : {-2.0, 0.0, 0.5, 3.0}) {
    const Mat6 expect = 2.0 * (1.0 - lam) * (1.0 - lam) * Mat6::Identity();
    CHECK((benenti_eval(fg, lam).matrix() - expect).cwiseAbs().maxCoeff() <
          1e-12);
  }

  // Leading coefficient is the metric tensor; the linear one is twice the
  // special Killing tensor up to a scalar part, so its KS point is the
  // iota point of h.
  CHECK((f.r2.matrix() - 2.0 * Mat6::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  const Mat6 r1_expect = 2.0 * special_killing(h).matrix() -
                         h.trace() * 2.0 * Mat6::Identity();
  CHECK((f.r1.matrix() - r1_expect).cwiseAbs().maxCoeff() < 1e-12);
  const KSMatrix k1 = ks_matrix(diagonalise(f.r1).diagonal);
  CHECK(k1.delta().cwiseAbs().maxCoeff() < 1e-12);
  CHECK((k1.t() - 2.0 * Vec3(-2, -1, 0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("polynomial and adjugate forms agree") {
  Rng rng(46);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Sym4 h = random_sym4(rng);
    if (std::abs(h.determinant()) < 1e-3) continue;
    const BenentiFamily f = benenti_family(h);
    for (int k = 0; k < 10; ++k) {
      const double lam = rng.uniform(-3, 3);
      const Sym4 shifted = h - lam * Mat4::Identity();
      if (std::abs(shifted.determinant()) < 1e-3) continue;
      const Mat6 poly = benenti_eval(f, lam).matrix();
      const Mat6 adj = benenti_adjugate_form(h, lam).matrix();
      const double scale = std::max(1.0, adj.cwiseAbs().maxCoeff());
      CHECK((poly - adj).cwiseAbs().maxCoeff() < 1e-9 * scale);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("benenti evaluations are integrable and mutually commute") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const BenentiFamily f = benenti_family(random_sym4(rng));
    const AlgCurvTensor a = benenti_eval(f, rng.uniform(-2, 2));
    const AlgCurvTensor b = benenti_eval(f, rng.uniform(-2, 2));
    CHECK(is_integrable(a).verdict);
    CHECK(commute_general(a, b) < 1e-10);
  }
}

TEST_CASE("spans_staeckel is the no-triple-eigenvalue test") {
  CHECK(spans_staeckel(benenti_family(Vec4(1, 2, 3, 4).asDiagonal())));
  CHECK_FALSE(spans_staeckel(benenti_family(Vec4(0, 1, 1, 1).asDiagonal())));
  CHECK(spans_staeckel(benenti_family(Vec4(0, 0, 1, 1).asDiagonal())));
}

TEST_CASE("extensions from the 2-sphere") {
  // Barycentric (1,1,1) is the centre C0.
  const KSMatrix c = ks_matrix(extend_from_s2(Vec3(1, 1, 1)));
  Mat3 c0;
  c0 << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  CHECK((c.matrix() - c0).cwiseAbs().maxCoeff() < 1e-13);

  // Barycentric (1,0,0) is the vertex V+1.
  const KSMatrix v = ks_matrix(extend_from_s2(Vec3(1, 0, 0)));
  CHECK((v.matrix() - singular_points()[0].matrix()).cwiseAbs().maxCoeff() <
        1e-13);

  // General extension annihilates (1,1,1) and satisfies w_a + s/12 = -t_a.
  Rng rng(48);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 t(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    const DiagonalACT d = extend_from_s2(t);
    CHECK((d.w() + Vec3::Constant(d.s() / 12.0) + d.t()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((ks_matrix(d).matrix() * Vec3(1, 1, 1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(diagonal_is_integrable(d));
  }
}

TEST_CASE("extensions from a pair of circles") {
  const KSMatrix vm1 = ks_matrix(extend_from_s1s1(1.0, 0.0));
  CHECK((vm1.matrix() - singular_points()[1].matrix()).cwiseAbs().maxCoeff() <
        1e-13);
  const KSMatrix vp1 = ks_matrix(extend_from_s1s1(0.0, 1.0));
  CHECK((vp1.matrix() - singular_points()[0].matrix()).cwiseAbs().maxCoeff() <
        1e-13);

  Rng rng(49);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    const DiagonalACT d = extend_from_s1s1(a, b);
    const Mat3 expect = a * singular_points()[1].matrix() +
                        b * singular_points()[0].matrix();
    CHECK((ks_matrix(d).matrix() - expect).cwiseAbs().maxCoeff() < 1e-12);
    // Extension conditions: w2 + s/12 = t2 = w3 + s/12 = t3 = 0.
    CHECK(std::abs(d.w()[1] + d.s() / 12.0) < 1e-12);
    CHECK(std::abs(d.w()[2] + d.s() / 12.0) < 1e-12);
    CHECK(std::abs(d.t()[1]) < 1e-12);
    CHECK(std::abs(d.t()[2]) < 1e-12);
    CHECK(diagonal_is_integrable(d));
  }
}
