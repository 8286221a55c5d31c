#pragma once

#include "kst/decomposition.hpp"
#include "kst/ksvariety.hpp"
#include "kst/oracle.hpp"

#include <random>

namespace kst {

/// Deterministic generator for test corpora; identical seeds give identical
/// streams on every platform (distributions are hand-rolled on top of the
/// raw engine).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double gaussian();
  int uniform_int(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform diagonal parameters in [-1,1] (w projected to sum zero).  With
/// `on_quadric`, t3 is solved from the determinant condition (rejection on
/// sign); otherwise samples within `margin` of the variety are rejected so
/// that labeled corpora stay decisively off it.
DiagonalACT random_diagonal(Rng& rng, bool on_quadric, double margin = 0.0);

/// Random valid curvature operator: symmetrised Gaussian 6x6 with the
/// Bianchi trace projected out.
AlgCurvTensor random_act(Rng& rng);

/// Independent pair of Gaussian-QR rotations.
RotationPair random_rotation_pair(Rng& rng);

Mat3 random_rotation(Rng& rng);

/// Gaussian symmetric 4x4.
Sym4 random_sym4(Rng& rng);

/// Frame at a generic point (every coordinate bounded away from zero).
TangentFrame random_frame(Rng& rng, double min_coord = 0.05);

/// Nonsingular rank-two variety point (solved from the quadric, rejected
/// near the singular locus).
KSMatrix random_variety_point(Rng& rng);

}  // namespace kst
