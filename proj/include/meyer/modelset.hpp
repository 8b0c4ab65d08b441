#pragma once

// Generators for lattices and cut-and-project model sets. Internal space is
// the first m coordinates of R^{m+n}, physical space the last n.

#include <cstdint>
#include <optional>

#include "meyer/convex.hpp"
#include "meyer/pointset.hpp"

namespace meyer {

/// Axis-aligned window box in internal space. Each side may be open or
/// closed; the default is half-open [lo, hi).
struct WindowBox {
  Vector<double> lo;
  Vector<double> hi;
  bool closed_lo = true;
  bool closed_hi = false;

  Eigen::Index dimension() const { return lo.size(); }
  bool contains(const Vector<double>& w) const;
  double volume() const;
  double circumradius() const;
};

struct CutAndProjectScheme {
  /// (m+n) x (m+n); columns span the lattice.
  Matrix<double> basis;
  Eigen::Index internal_dim = 0;
  WindowBox window;
  /// Exact basis, when the scheme was built from exact data.
  std::optional<MatrixXr> exact_basis;

  Eigen::Index total_dim() const { return basis.rows(); }
  Eigen::Index physical_dim() const { return basis.rows() - internal_dim; }
  /// Throws unless the basis is nonsingular and the window is a bounded box
  /// with nonempty interior in dimension m.
  void validate() const;
  double covolume() const;
};

/// Lattice points B z inside the closed ball B(0, R), exactly enumerated.
/// The sample carries its periodic structure.
PointSample lattice_sample(const MatrixXr& basis, double radius);
PointSample lattice_sample(const Matrix<double>& basis, double radius);

/// { p2(l) : l in the lattice, p1(l) in W, |p2(l)| <= R }. Throws if two
/// lattice vectors project to the same physical point.
PointSample generate(const CutAndProjectScheme& scheme, double radius);

/// The cut-and-project scheme whose model set is E_alpha^eps: lattice
/// spanned by the columns of [[-I, alpha], [0, 1]], window the open box
/// (-eps, eps)^n.
CutAndProjectScheme e_alpha_epsilon_scheme(const Vector<double>& alpha, double eps);

/// { y in Z : |y| <= Y, dist(y alpha_i, Z) < eps for all i }, evaluated
/// directly. Requires 0 < eps < 1/2.
PointSample e_alpha_epsilon(const Vector<double>& alpha, double eps, std::int64_t range);

/// Vol(W) / Covol(Lambda).
double expected_density(const CutAndProjectScheme& scheme);

/// Integer lattice points jittered by i.i.d. uniform noise in
/// [-amplitude, amplitude] per coordinate. Points drawn with a fixed
/// mt19937_64 stream (53-bit mantissa mapping); deterministic per seed.
PointSample jittered_lattice(Eigen::Index dimension, double amplitude, double radius, std::uint64_t seed);

/// Points (x, y) in Z^2 with y in E_alpha^eps, as a cut-and-project set in
/// R^{1+2}. A two-dimensional weakly almost periodic set of density 2 eps.
CutAndProjectScheme e_alpha_strip_scheme(double alpha, double eps);

}  // namespace meyer
