#pragma once

// Centrally symmetric convex bodies: balls, intersections of symmetric slabs
// and symmetric planar polygons. Bodies are closed: boundary points are
// inside. The scalar parameter selects exact (Rational) or floating (double)
// membership; volumes are always reported as doubles, with an exact variant
// for the polyhedral kinds.

#include <numbers>
#include <string>
#include <string_view>

#include "meyer/core.hpp"

namespace meyer {

enum class BodyKind { Ball, Slab, Polygon };

/// Volume of the Euclidean unit ball in dimension n.
double unit_ball_volume(int n);

template <typename Scalar>
class ConvexBody {
 public:
  static ConvexBody ball(Eigen::Index dimension, Scalar radius) {
    if (dimension < 1) throw InputError("ball dimension must be positive");
    if (!(radius > Scalar(0))) throw InputError("ball radius must be positive");
    ConvexBody body(BodyKind::Ball, dimension);
    body.radius_ = std::move(radius);
    return body;
  }

  /// Rows of `forms` are the linear forms L_i; the body is |L_i(x)| <= A_i.
  static ConvexBody slab(Matrix<Scalar> forms, Vector<Scalar> bounds) {
    if (forms.rows() != forms.cols() || forms.rows() != bounds.size() || forms.rows() < 1) {
      throw InputError("slab body needs n forms in dimension n and n bounds");
    }
    for (Eigen::Index i = 0; i < bounds.size(); ++i) {
      if (!(bounds[i] > Scalar(0))) throw InputError("slab bounds must be positive");
    }
    if (determinant<Scalar>(forms) == Scalar(0)) throw InputError("slab forms are linearly dependent");
    ConvexBody body(BodyKind::Slab, forms.rows());
    body.forms_ = std::move(forms);
    body.bounds_ = std::move(bounds);
    return body;
  }

  /// `vertices` is 2 x k, counterclockwise, closed under x -> -x.
  static ConvexBody polygon(Matrix<Scalar> vertices) {
    if (vertices.rows() != 2 || vertices.cols() < 4 || vertices.cols() % 2 != 0) {
      throw InputError("symmetric polygon needs an even number (>= 4) of planar vertices");
    }
    const Eigen::Index k = vertices.cols();
    const Scalar tol = membership_tolerance<Scalar>();
    for (Eigen::Index i = 0; i < k; ++i) {
      const Eigen::Index j = (i + 1) % k;
      const Eigen::Index l = (i + 2) % k;
      const Scalar cross = (vertices(0, j) - vertices(0, i)) * (vertices(1, l) - vertices(1, j)) -
                           (vertices(1, j) - vertices(1, i)) * (vertices(0, l) - vertices(0, j));
      if (!(cross > tol)) throw InputError("polygon is not strictly convex in counterclockwise order");
      bool has_opposite = false;
      for (Eigen::Index m = 0; m < k && !has_opposite; ++m) {
        has_opposite = abs_value(Scalar(vertices(0, i) + vertices(0, m))) <= tol &&
                       abs_value(Scalar(vertices(1, i) + vertices(1, m))) <= tol;
      }
      if (!has_opposite) throw InputError("polygon is not centrally symmetric");
    }
    ConvexBody body(BodyKind::Polygon, 2);
    body.vertices_ = std::move(vertices);
    return body;
  }

  BodyKind kind() const { return kind_; }
  Eigen::Index dimension() const { return dimension_; }
  const Scalar& radius() const { return radius_; }
  const Matrix<Scalar>& forms() const { return forms_; }
  const Vector<Scalar>& bounds() const { return bounds_; }
  const Matrix<Scalar>& vertices() const { return vertices_; }

  bool contains(const Vector<Scalar>& x) const {
    if (x.size() != dimension_) throw InputError("point dimension does not match body dimension");
    const Scalar tol = membership_tolerance<Scalar>();
    switch (kind_) {
      case BodyKind::Ball: {
        const Scalar r = radius_ + tol;
        return squared_norm(x) <= r * r;
      }
      case BodyKind::Slab:
        for (Eigen::Index i = 0; i < dimension_; ++i) {
          Scalar s(0);
          for (Eigen::Index j = 0; j < dimension_; ++j) s += forms_(i, j) * x[j];
          if (abs_value(s) > bounds_[i] + tol) return false;
        }
        return true;
      case BodyKind::Polygon: {
        const Eigen::Index k = vertices_.cols();
        for (Eigen::Index i = 0; i < k; ++i) {
          const Eigen::Index j = (i + 1) % k;
          const Scalar cross = (vertices_(0, j) - vertices_(0, i)) * (x[1] - vertices_(1, i)) -
                               (vertices_(1, j) - vertices_(1, i)) * (x[0] - vertices_(0, i));
          if (cross < -tol) return false;
        }
        return true;
      }
    }
    return false;
  }

  ConvexBody scaled(const Scalar& t) const {
    if (!(t > Scalar(0))) throw InputError("scale factor must be positive");
    ConvexBody out = *this;
    switch (kind_) {
      case BodyKind::Ball:
        out.radius_ = radius_ * t;
        break;
      case BodyKind::Slab:
        for (Eigen::Index i = 0; i < out.bounds_.size(); ++i) out.bounds_[i] = bounds_[i] * t;
        break;
      case BodyKind::Polygon:
        for (Eigen::Index c = 0; c < vertices_.cols(); ++c) {
          out.vertices_(0, c) = vertices_(0, c) * t;
          out.vertices_(1, c) = vertices_(1, c) * t;
        }
        break;
    }
    return out;
  }

  /// Radius of a centered ball containing the body.
  double circumradius() const {
    switch (kind_) {
      case BodyKind::Ball:
        return to_double(radius_);
      case BodyKind::Slab: {
        // The slab intersection is the parallelepiped L^{-1}[-A, A]; its
        // farthest point is a vertex.
        const Matrix<double> inv = inverse<double>(forms_.unaryExpr([](const Scalar& s) { return to_double(s); }));
        double best = 0.0;
        const unsigned corners = 1u << dimension_;
        for (unsigned mask = 0; mask < corners; ++mask) {
          Vector<double> a(dimension_);
          for (Eigen::Index i = 0; i < dimension_; ++i) {
            a[i] = ((mask >> i) & 1u ? 1.0 : -1.0) * to_double(bounds_[i]);
          }
          best = std::max(best, (inv * a).norm());
        }
        return best;
      }
      case BodyKind::Polygon: {
        double best = 0.0;
        for (Eigen::Index c = 0; c < vertices_.cols(); ++c) {
          best = std::max(best, std::hypot(to_double(vertices_(0, c)), to_double(vertices_(1, c))));
        }
        return best;
      }
    }
    return 0.0;
  }

  /// Exact volume of a slab intersection or polygon in the body's scalar.
  Scalar polyhedral_volume() const {
    switch (kind_) {
      case BodyKind::Slab: {
        Scalar prod(1);
        for (Eigen::Index i = 0; i < dimension_; ++i) prod *= Scalar(2) * bounds_[i];
        return prod / abs_value(determinant<Scalar>(forms_));
      }
      case BodyKind::Polygon: {
        Scalar twice(0);
        const Eigen::Index k = vertices_.cols();
        for (Eigen::Index i = 0; i < k; ++i) {
          const Eigen::Index j = (i + 1) % k;
          twice += vertices_(0, i) * vertices_(1, j) - vertices_(0, j) * vertices_(1, i);
        }
        return twice / Scalar(2);
      }
      case BodyKind::Ball:
        break;
    }
    throw InputError("a ball has no exact polyhedral volume");
  }

  double volume() const {
    if (kind_ == BodyKind::Ball) {
      return unit_ball_volume(static_cast<int>(dimension_)) *
             std::pow(to_double(radius_), static_cast<double>(dimension_));
    }
    return to_double(polyhedral_volume());
  }

  template <typename To>
  ConvexBody<To> cast() const {
    if constexpr (std::is_same_v<To, Scalar>) {
      return *this;
    } else {
      switch (kind_) {
        case BodyKind::Ball:
          return ConvexBody<To>::ball(dimension_, convert<To>(radius_));
        case BodyKind::Slab:
          return ConvexBody<To>::slab(convert_matrix<To>(forms_), convert_matrix<To>(Matrix<Scalar>(bounds_)).col(0).eval());
        case BodyKind::Polygon:
          return ConvexBody<To>::polygon(convert_matrix<To>(vertices_));
      }
      throw InputError("unknown body kind");
    }
  }

 private:
  ConvexBody(BodyKind kind, Eigen::Index dimension) : kind_(kind), dimension_(dimension) {}

  template <typename To>
  static To convert(const Scalar& s) {
    if constexpr (std::is_same_v<To, double>) {
      return to_double(s);
    } else {
      return To(s);
    }
  }
  template <typename To>
  static Matrix<To> convert_matrix(const Matrix<Scalar>& m) {
    Matrix<To> out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = convert<To>(m(r, c));
    return out;
  }

  BodyKind kind_;
  Eigen::Index dimension_;
  Scalar radius_{0};
  Matrix<Scalar> forms_;
  Vector<Scalar> bounds_;
  Matrix<Scalar> vertices_;
};

template <typename Scalar>
bool contains(const ConvexBody<Scalar>& body, const Vector<Scalar>& x) {
  return body.contains(x);
}

template <typename Scalar>
double volume(const ConvexBody<Scalar>& body) {
  return body.volume();
}

template <typename Scalar>
ConvexBody<Scalar> scale(const ConvexBody<Scalar>& body, const Scalar& t) {
  return body.scaled(t);
}

/// Parses the CLI grammar `ball:r=2.5`, `slab:L=1,0;0,1:A=2,1` or
/// `poly:x1,y1;x2,y2;...`. Balls take `ball_dimension`; the other kinds
/// carry their own dimension.
ConvexBody<Rational> parse_body(std::string_view text, Eigen::Index ball_dimension);

std::string describe(const ConvexBody<Rational>& body);

}  // namespace meyer
