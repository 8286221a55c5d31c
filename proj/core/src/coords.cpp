#include "kst/coords.hpp"

#include <algorithm>
#include <cmath>

namespace kst {

namespace {

constexpr double kWeightCut = 1e-14;  // pole weight below which x_k = 0

}  // namespace

// ---------------------------------------------------------------------------
// Spectrum / SpherePoint
// ---------------------------------------------------------------------------

Spectrum Spectrum::of(const Vec4& lambda, double group_tol) {
  Spectrum s;
  Vec4 sorted = lambda;
  std::sort(sorted.data(), sorted.data() + 4);
  s.lambda_ = sorted;
  const double spread = std::max(sorted[3] - sorted[0], 0.0);
  const double tol = group_tol * std::max(spread, 1e-300);
  std::vector<int> group{0};
  for (int k = 1; k < 4; ++k) {
    if (sorted[k] - sorted[group.front()] > tol) {
      s.groups_.push_back(group);
      group.clear();
    }
    group.push_back(k);
  }
  s.groups_.push_back(group);
  return s;
}

SpherePoint SpherePoint::of(const Vec4& x) {
  const double n = x.norm();
  if (n < 1e-12) throw InvalidInput("sphere point must be nonzero");
  return SpherePoint{x / n};
}

// ---------------------------------------------------------------------------
// Eigenvalue chart
// ---------------------------------------------------------------------------

namespace {

struct Pole {
  double lambda;
  double weight;
};

double q_of(const std::vector<Pole>& poles, double lam) {
  double acc = 0.0;
  for (const auto& p : poles) acc += p.weight / (p.lambda - lam);
  return acc;
}

// One root of q in (lo, hi): q -> -inf at lo+, +inf at hi-, monotone
// increasing in between.  Bisection with a Newton polish.
double root_between(const std::vector<Pole>& poles, double lo, double hi) {
  double a = lo, b = hi;
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a));
       ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    (q_of(poles, mid) < 0.0 ? a : b) = mid;
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 4; ++it) {
    double f = 0.0, df = 0.0;
    for (const auto& p : poles) {
      const double d = p.lambda - x;
      f += p.weight / d;
      df += p.weight / (d * d);
    }
    if (df <= 0.0) break;
    const double next = x - f / df;
    if (next <= a || next >= b) break;
    x = next;
  }
  return x;
}

}  // namespace

EigenTriple eigenvalues_at(const Spectrum& spec, const SpherePoint& x) {
  std::vector<Pole> poles;
  std::vector<double> constants;
  bool boundary = false;
  for (const auto& group : spec.groups()) {
    double weight = 0.0;
    for (int k : group) weight += x.x[k] * x.x[k];
    const double lam = spec.lambda()[group.front()];
    if (weight <= kWeightCut) {
      boundary = true;
      for (size_t c = 0; c < group.size(); ++c) constants.push_back(lam);
    } else {
      poles.push_back({lam, weight});
      for (size_t c = 0; c + 1 < group.size(); ++c) constants.push_back(lam);
    }
  }
  for (int k = 0; k < 4; ++k)
    if (x.x[k] * x.x[k] <= kWeightCut) boundary = true;

  std::vector<double> values = constants;
  for (size_t i = 0; i + 1 < poles.size(); ++i)
    values.push_back(root_between(poles, poles[i].lambda, poles[i + 1].lambda));
  std::sort(values.begin(), values.end());

  EigenTriple out;
  out.lambda1 = values[0];
  out.lambda2 = values[1];
  out.lambda3 = values[2];
  out.boundary = boundary;
  return out;
}

EigenTriple elliptic_coords(const Spectrum& spec, const SpherePoint& x) {
  if (spec.groups().size() == 1) throw AllEqual();
  if (spec.groups().size() != 4)
    throw InvalidInput("elliptic chart requires a simple spectrum");
  for (int k = 0; k < 4; ++k)
    if (x.x[k] * x.x[k] <= kWeightCut) throw DegenerateChartPoint();
  return eigenvalues_at(spec, x);
}

double chart_residual(const Spectrum& spec, const SpherePoint& x,
                      double lambda) {
  double acc = 0.0;
  for (int k = 0; k < 4; ++k)
    acc += x.x[k] * x.x[k] / (spec.lambda()[k] - lambda);
  return std::abs(acc);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

SpectrumClass classify_spectrum(const Spectrum& spec) {
  std::vector<int> m;
  for (const auto& g : spec.groups()) m.push_back(static_cast<int>(g.size()));

  SpectrumClass out;
  switch (m.size()) {
    case 4:
      out.type = SeparationType::Elliptic;
      return out;
    case 3:
      // A double at either end is reversal-equivalent to (01(23)).
      out.type = (m[1] == 2) ? SeparationType::ProlateLame
                             : SeparationType::OblateLame;
      return out;
    case 2:
      if (m[0] == 2) {
        out.type = SeparationType::Cylindrical;
        return out;
      }
      out.needs_line_data = true;  // (0(123)) vs (0(1(23)))
      return out;
    default:
      throw AllEqual();
  }
}

Vec4 spectrum_of_direction(const Vec3& n) {
  Vec4 lambda;
  lambda[0] = (n[0] + n[1] + n[2]) / 2.0;
  lambda[1] = (n[0] - n[1] - n[2]) / 2.0;
  lambda[2] = (n[1] - n[2] - n[0]) / 2.0;
  lambda[3] = (n[2] - n[0] - n[1]) / 2.0;
  return lambda;
}

SeparationType classify_line(const StaeckelLine& line,
                             std::optional<Vec3> s2_ricci,
                             const ToleranceConfig& tol) {
  if (!line.degenerate) {
    const Spectrum spec =
        Spectrum::of(spectrum_of_direction(line.kernel.n), tol.group_tol);
    const SpectrumClass cls = classify_spectrum(spec);
    if (!cls.type) throw InvalidLine("non-degenerate line with triple spectrum");
    return *cls.type;
  }

  Vec3 bary;
  if (s2_ricci) {
    bary = *s2_ricci;
  } else {
    // Barycentric coordinates of the second generator in its isokernel
    // plane: the antisymmetric parameters, sign-adjusted by the kernel.
    const Vec3& n = line.kernel.n;
    for (int i = 0; i < 3; ++i)
      bary[i] = (n[i] < 0.0 ? -1.0 : 1.0) * line.second.t()[i];
  }

  Vec3 s = bary;
  std::sort(s.data(), s.data() + 3);
  const double spread = std::max(s[2] - s[0], 1e-300);
  const bool eq01 = s[1] - s[0] <= tol.group_tol * spread;
  const bool eq12 = s[2] - s[1] <= tol.group_tol * spread;
  if (eq01 && eq12)
    throw InvalidLine("degenerate line through the metric extension");
  if (eq01 || eq12) return SeparationType::Spherical;
  return SeparationType::LameSubgroup;
}

S2Eigenvalues s2_eigenvalues(const Vec3& t_in, const Vec3& y_in) {
  Vec3 t = t_in;
  t.array() -= t.sum() / 3.0;
  const double yn = y_in.norm();
  if (yn < 1e-12) throw InvalidInput("circle point must be nonzero");
  const Vec3 y = y_in / yn;

  const double b = t[0] * y[0] * y[0] + t[1] * y[1] * y[1] + t[2] * y[2] * y[2];
  const double c = t[1] * t[2] * y[0] * y[0] + t[2] * t[0] * y[1] * y[1] +
                   t[0] * t[1] * y[2] * y[2];
  const double disc = std::max(b * b - 4.0 * c, 0.0);
  const double root = std::sqrt(disc);

  S2Eigenvalues out;
  out.lambda1 = 0.5 * (-b - root);
  out.lambda2 = 0.5 * (-b + root);
  for (int k = 0; k < 3; ++k)
    if (y[k] * y[k] <= kWeightCut) out.boundary = true;
  return out;
}

std::string bracket_label(SeparationType type) {
  switch (type) {
    case SeparationType::Elliptic: return "(0123)";
    case SeparationType::OblateLame: return "(01(23))";
    case SeparationType::ProlateLame: return "(0(12)3)";
    case SeparationType::Cylindrical: return "((01)(23))";
    case SeparationType::LameSubgroup: return "(0(123))";
    case SeparationType::Spherical: return "(0(1(23)))";
  }
  return {};
}

std::string type_name(SeparationType type) {
  switch (type) {
    case SeparationType::Elliptic: return "elliptic";
    case SeparationType::OblateLame: return "oblate Lame rotational";
    case SeparationType::ProlateLame: return "prolate Lame rotational";
    case SeparationType::Cylindrical: return "cylindrical";
    case SeparationType::LameSubgroup: return "Lame subgroup reduction";
    case SeparationType::Spherical: return "spherical";
  }
  return {};
}

Stratum stratum(SeparationType type) {
  switch (type) {
    case SeparationType::Elliptic:
      return Stratum::Interior;
    case SeparationType::Cylindrical:
    case SeparationType::Spherical:
      return Stratum::Vertex;
    default:
      return Stratum::Edge;
  }
}

}  // namespace kst
