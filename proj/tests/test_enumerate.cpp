#include <doctest.h>

#include <random>

#include "meyer/enumerate.hpp"

using namespace meyer;

namespace {

/// Brute force over a generous coefficient box.
std::size_t brute_count(const MatrixXr& basis, const ConvexBody<Rational>& body, int reach) {
  std::size_t count = 0;
  VectorXl z(2);
  for (int a = -reach; a <= reach; ++a) {
    for (int b = -reach; b <= reach; ++b) {
      z << a, b;
      if (body.contains(apply<Rational>(basis, z))) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("Gauss circle counts") {
  // Oracle: direct loop over the bounding square.
  for (int r : {1, 2, 5, 10}) {
    int expected = 0;
    for (int x = -r; x <= r; ++x)
      for (int y = -r; y <= r; ++y) expected += x * x + y * y <= r * r;
    const auto pts = integer_points_in<Rational>(ConvexBody<Rational>::ball(2, Rational(r)));
    CHECK(pts.size() == static_cast<std::size_t>(expected));
  }
  CHECK(integer_points_in<Rational>(ConvexBody<Rational>::ball(2, Rational(10))).size() == 317);
  CHECK(integer_points_in<Rational>(ConvexBody<Rational>::ball(2, Rational(5))).size() == 81);
}

TEST_CASE("enumeration matches brute force on random lattices and bodies") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> entry(-20, 20);
  std::uniform_int_distribution<int> size(1, 30);
  for (int trial = 0; trial < 60; ++trial) {
    MatrixXr basis(2, 2);
    do {
      for (Eigen::Index i = 0; i < 4; ++i) basis.data()[i] = Rational(entry(gen), 10);
    } while (abs_value(determinant<Rational>(basis)) < Rational(1, 2));
    const ConvexBody<Rational> body =
        trial % 2 ? ConvexBody<Rational>::ball(2, Rational(size(gen), 10))
                  : ConvexBody<Rational>::slab(MatrixXr::Identity(2, 2), (VectorXr(2) << Rational(size(gen), 10),
                                                                          Rational(size(gen), 10))
                                                                             .finished());
    // Coefficients are bounded by |B^{-1}| times the circumradius.
    const double inv_norm = inverse<double>(basis.unaryExpr([](const Rational& r) { return to_double(r); })).norm();
    const int reach = static_cast<int>(std::ceil(inv_norm * body.circumradius())) + 1;
    CHECK(lattice_points_in<Rational>(basis, body).size() == brute_count(basis, body, reach));
  }
}

TEST_CASE("points come back sorted and exact") {
  const auto pts = integer_points_in<Rational>(ConvexBody<Rational>::ball(2, Rational(3, 2)));
  REQUIRE(pts.size() == 9);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(lex_less(pts[i - 1], pts[i]));
}

TEST_CASE("thin slab preimage enumeration visits only hits") {
  // A strip |x - alpha y| <= 0.01, |y| <= 1000 holds about 40 lattice points.
  const Rational alpha = parse_rational("0.41421356237309504880");
  MatrixXr forms = MatrixXr::Identity(2, 2);
  forms(0, 1) = -alpha;
  const auto body = ConvexBody<Rational>::slab(forms, parse_vector("0.01,1000"));
  std::size_t expected = 0;
  for (int y = -1000; y <= 1000; ++y) {
    const double t = y * 0.41421356237309504880;
    if (std::abs(t - std::round(t)) <= 0.01) ++expected;
  }
  CHECK(integer_points_in<Rational>(body).size() == expected);
}

TEST_CASE("box preimage visits every integer vector in the box") {
  const Matrix<double> basis = (Matrix<double>(2, 2) << 1.0, 0.5, 0.0, 1.0).finished();
  std::size_t visits = 0;
  enumerate_box_preimage(basis, Vector<double>::Constant(2, -2.0), Vector<double>::Constant(2, 2.0),
                         [&](const VectorXl&, const Vector<double>& x) {
                           if ((x.array().abs() <= 2.0 + 1e-9).all()) ++visits;
                         });
  // y in {-2..2}; x + y/2 in [-2, 2].
  std::size_t expected = 0;
  for (int a = -5; a <= 5; ++a)
    for (int b = -2; b <= 2; ++b) expected += std::abs(a + 0.5 * b) <= 2.0;
  CHECK(visits == expected);
}
