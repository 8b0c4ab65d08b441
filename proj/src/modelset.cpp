#include "meyer/modelset.hpp"

#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "meyer/enumerate.hpp"

namespace meyer {

bool WindowBox::contains(const Vector<double>& w) const {
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (closed_lo ? w[i] < lo[i] : w[i] <= lo[i]) return false;
    if (closed_hi ? w[i] > hi[i] : w[i] >= hi[i]) return false;
  }
  return true;
}

double WindowBox::volume() const { return (hi - lo).prod(); }

double WindowBox::circumradius() const { return lo.cwiseAbs().cwiseMax(hi.cwiseAbs()).norm(); }

void CutAndProjectScheme::validate() const {
  if (basis.rows() != basis.cols()) throw InputError("scheme basis must be square");
  if (internal_dim < 0 || internal_dim >= basis.rows()) throw InputError("internal dimension out of range");
  if (window.dimension() != internal_dim || window.hi.size() != internal_dim) {
    throw InputError("window dimension must equal the internal dimension");
  }
  for (Eigen::Index i = 0; i < internal_dim; ++i) {
    if (!(window.hi[i] > window.lo[i])) throw InputError("window has empty interior");
    if (!std::isfinite(window.lo[i]) || !std::isfinite(window.hi[i])) throw InputError("window must be bounded");
  }
  if (std::abs(basis.determinant()) < 1e-300) throw InputError("scheme basis is singular");
}

double CutAndProjectScheme::covolume() const { return std::abs(basis.determinant()); }

namespace {

Matrix<double> to_double_matrix(const MatrixXr& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
  return out;
}

MatrixXr to_rational_matrix(const Matrix<double>& m) {
  MatrixXr out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

PointSample sorted_sample(std::vector<Vector<double>> pts, Eigen::Index dim, double radius, std::string label) {
  std::sort(pts.begin(), pts.end(), [](const Vector<double>& a, const Vector<double>& b) { return lex_less(a, b); });
  Matrix<double> m(dim, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
  return PointSample(std::move(m), radius, std::move(label));
}

}  // namespace

PointSample lattice_sample(const MatrixXr& basis, double radius) {
  if (basis.rows() != basis.cols() || basis.rows() < 1) throw InputError("lattice basis must be square");
  if (determinant<Rational>(basis) == 0) throw InputError("lattice basis is singular");
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  const Eigen::Index n = basis.rows();
  const Matrix<double> b = to_double_matrix(basis);
  const Vector<double> reach = Vector<double>::Constant(n, radius * (1.0 + 1e-12) + 1e-9);
  const double r2 = radius * radius;
  std::vector<Vector<double>> pts;
  enumerate_box_preimage(b, -reach, reach, [&](const VectorXl& z, const Vector<double>&) {
    // Exact membership: |B z|^2 <= R^2 decided in rationals when the double
    // test is too close to call.
    const Vector<double> x = b * z.cast<double>();
    const double s = x.squaredNorm();
    bool inside = s <= r2 * (1.0 - 1e-12);
    if (!inside && s <= r2 * (1.0 + 1e-12) + 1e-12) {
      inside = squared_norm<Rational>(apply<Rational>(basis, z)) <= Rational(radius) * Rational(radius);
    }
    if (inside) {
      Vector<double> exact(n);
      const VectorXr xr = apply<Rational>(basis, z);
      for (Eigen::Index i = 0; i < n; ++i) exact[i] = to_double(xr[i]);
      pts.push_back(std::move(exact));
    }
  });
  std::ostringstream label;
  label << "lattice(n=" << n << ",R=" << radius << ")";
  PeriodicStructure periodic{basis, {VectorXr::Zero(n)}};
  return sorted_sample(std::move(pts), n, radius, label.str()).with_periodic(std::move(periodic));
}

PointSample lattice_sample(const Matrix<double>& basis, double radius) {
  return lattice_sample(to_rational_matrix(basis), radius);
}

PointSample generate(const CutAndProjectScheme& scheme, double radius) {
  scheme.validate();
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  const Eigen::Index m = scheme.internal_dim;
  const Eigen::Index n = scheme.physical_dim();
  const Eigen::Index d = scheme.total_dim();
  Vector<double> lo(d), hi(d);
  lo.head(m) = scheme.window.lo;
  hi.head(m) = scheme.window.hi;
  lo.tail(n).setConstant(-radius * (1.0 + 1e-12) - 1e-9);
  hi.tail(n).setConstant(radius * (1.0 + 1e-12) + 1e-9);

  std::vector<Vector<double>> pts;
  std::vector<VectorXl> coeffs;
  enumerate_box_preimage(scheme.basis, lo, hi, [&](const VectorXl& z, const Vector<double>&) {
    Vector<double> lambda;
    if (scheme.exact_basis) {
      const VectorXr exact = apply<Rational>(*scheme.exact_basis, z);
      lambda.resize(d);
      for (Eigen::Index i = 0; i < d; ++i) lambda[i] = to_double(exact[i]);
    } else {
      lambda = scheme.basis * z.cast<double>();
    }
    if (!scheme.window.contains(lambda.head(m))) return;
    if (lambda.tail(n).norm() > radius) return;
    pts.push_back(lambda.tail(n));
    coeffs.push_back(z);
  });

  // Collisions in physical space mean p2 is not injective on the lattice.
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (pts[order[i]] == pts[order[i - 1]]) {
      std::ostringstream msg;
      msg << "physical projection is not injective: lattice coefficients (" << coeffs[order[i - 1]].transpose()
          << ") and (" << coeffs[order[i]].transpose() << ") project to the same point";
      throw InputError(msg.str());
    }
  }
  std::ostringstream label;
  label << "model set(m=" << m << ",n=" << n << ",R=" << radius << ")";
  return sorted_sample(std::move(pts), n, radius, label.str());
}

CutAndProjectScheme e_alpha_epsilon_scheme(const Vector<double>& alpha, double eps) {
  const Eigen::Index n = alpha.size();
  if (n < 1) throw InputError("alpha must be nonempty");
  if (!(eps > 0.0 && eps < 0.5)) throw InputError("eps must lie in (0, 1/2)");
  CutAndProjectScheme scheme;
  scheme.basis = Matrix<double>::Zero(n + 1, n + 1);
  scheme.basis.topLeftCorner(n, n) = -Matrix<double>::Identity(n, n);
  scheme.basis.topRightCorner(n, 1) = alpha;
  scheme.basis(n, n) = 1.0;
  scheme.internal_dim = n;
  scheme.window.lo = Vector<double>::Constant(n, -eps);
  scheme.window.hi = Vector<double>::Constant(n, eps);
  scheme.window.closed_lo = false;
  scheme.window.closed_hi = false;
  return scheme;
}

PointSample e_alpha_epsilon(const Vector<double>& alpha, double eps, std::int64_t range) {
  if (alpha.size() < 1) throw InputError("alpha must be nonempty");
  if (!(eps > 0.0 && eps < 0.5)) throw InputError("eps must lie in (0, 1/2)");
  if (range < 1) throw InputError("range must be positive");
  std::vector<double> ys;
  for (std::int64_t y = -range; y <= range; ++y) {
    bool inside = true;
    for (Eigen::Index i = 0; i < alpha.size() && inside; ++i) {
      // Same arithmetic as the scheme: internal coordinate y alpha - x with
      // x the nearest integer.
      const double t = static_cast<double>(y) * alpha[i];
      const double w = t - std::nearbyint(t);
      inside = -eps < w && w < eps;
    }
    if (inside) ys.push_back(static_cast<double>(y));
  }
  Matrix<double> pts = Eigen::Map<Matrix<double>>(ys.data(), 1, static_cast<Eigen::Index>(ys.size()));
  std::ostringstream label;
  label << "E_alpha^eps(eps=" << eps << ",Y=" << range << ")";
  return PointSample(std::move(pts), static_cast<double>(range), label.str());
}

double expected_density(const CutAndProjectScheme& scheme) {
  scheme.validate();
  return scheme.window.volume() / scheme.covolume();
}

PointSample jittered_lattice(Eigen::Index dimension, double amplitude, double radius, std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 0.5)) throw InputError("jitter amplitude must lie in [0, 1/2)");
  const PointSample base = lattice_sample(MatrixXr(MatrixXr::Identity(dimension, dimension)), radius - amplitude * std::sqrt(static_cast<double>(dimension)));
  std::mt19937_64 gen(seed);
  Matrix<double> pts = base.points();
  for (Eigen::Index i = 0; i < pts.size(); ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    pts.data()[i] += amplitude * (2.0 * u - 1.0);
  }
  std::ostringstream label;
  label << "jittered lattice(a=" << amplitude << ",seed=" << seed << ")";
  return PointSample(std::move(pts), radius, label.str());
}

CutAndProjectScheme e_alpha_strip_scheme(double alpha, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw InputError("eps must lie in (0, 1/2)");
  CutAndProjectScheme scheme;
  // Coefficients (k, x, y) map to (y alpha - k, x, y).
  scheme.basis = Matrix<double>::Zero(3, 3);
  scheme.basis(0, 0) = -1.0;
  scheme.basis(0, 2) = alpha;
  scheme.basis(1, 1) = 1.0;
  scheme.basis(2, 2) = 1.0;
  scheme.internal_dim = 1;
  scheme.window.lo = Vector<double>::Constant(1, -eps);
  scheme.window.hi = Vector<double>::Constant(1, eps);
  scheme.window.closed_lo = false;
  scheme.window.closed_hi = false;
  return scheme;
}

}  // namespace meyer
