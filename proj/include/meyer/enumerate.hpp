#pragma once

// Exact enumeration of lattice points {B z : z integer} inside bounded
// regions. The search descends one coefficient at a time; the range of each
// coefficient is bounded through a left inverse of the columns still free,
// so only O(#hits) partial vectors are visited for thin regions such as
// model-set strips.

#include <functional>

#include "meyer/convex.hpp"

namespace meyer {

/// Calls `visit(z, Bz)` for every integer z whose image B z lies in the
/// axis-aligned box [lo, hi] (up to a small outward slack: callers apply
/// their exact test on the visited candidates). Visit order is
/// lexicographic in z, most significant coordinate last.
void enumerate_box_preimage(const Matrix<double>& basis, const Vector<double>& lo, const Vector<double>& hi,
                            const std::function<void(const VectorXl&, const Vector<double>&)>& visit);

/// All lattice points B z inside `body`, membership decided in Scalar.
/// Returned in lexicographic order of coordinates.
template <typename Scalar>
std::vector<Vector<Scalar>> lattice_points_in(const Matrix<Scalar>& basis, const ConvexBody<Scalar>& body) {
  const Eigen::Index n = body.dimension();
  if (basis.rows() != n || basis.cols() != n) throw InputError("basis dimension does not match body");
  const double reach = body.circumradius() * (1.0 + 1e-9) + 1e-9;
  Matrix<double> b(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) b(r, c) = to_double(basis(r, c));
  const Vector<double> lo = Vector<double>::Constant(n, -reach);
  const Vector<double> hi = Vector<double>::Constant(n, reach);
  std::vector<Vector<Scalar>> out;
  enumerate_box_preimage(b, lo, hi, [&](const VectorXl& z, const Vector<double>&) {
    Vector<Scalar> x = apply<Scalar>(basis, z);
    if (body.contains(x)) out.push_back(std::move(x));
  });
  std::sort(out.begin(), out.end(), [](const Vector<Scalar>& a, const Vector<Scalar>& c) { return lex_less(a, c); });
  return out;
}

/// Integer points of `body` (the identity lattice).
template <typename Scalar>
std::vector<Vector<Scalar>> integer_points_in(const ConvexBody<Scalar>& body) {
  return lattice_points_in<Scalar>(Matrix<Scalar>::Identity(body.dimension(), body.dimension()), body);
}

}  // namespace meyer
