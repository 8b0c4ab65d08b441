#include <doctest.h>

#include <numbers>
#include <random>

#include "meyer/enumerate.hpp"
#include "meyer/minkowski.hpp"
#include "meyer/modelset.hpp"

using namespace meyer;

namespace {

const MatrixXr kZ2 = MatrixXr::Identity(2, 2);

/// Brute-force count of nonzero integer points of a body.
std::size_t brute_nonzero(const ConvexBody<Rational>& body, int reach) {
  std::size_t count = 0;
  VectorXr p(2);
  for (int x = -reach; x <= reach; ++x) {
    for (int y = -reach; y <= reach; ++y) {
      if (x == 0 && y == 0) continue;
      p << Rational(x), Rational(y);
      count += body.contains(p);
    }
  }
  return count;
}

Rational shoelace(const Matrix<Rational>& v) {
  Rational twice(0);
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    const Eigen::Index j = (i + 1) % v.cols();
    twice += v(0, i) * v(1, j) - v(0, j) * v(1, i);
  }
  return twice / 2;
}

}  // namespace

TEST_CASE("classical bound: small examples") {
  // pi r^2 / 4 just above 1.
  const ClassicalReport a = classical_bound_check(kZ2, ConvexBody<Rational>::ball(2, parse_rational("1.13")));
  CHECK(a.count == 4);
  CHECK(a.k == 1);
  CHECK(a.bound == 3);
  CHECK(a.pass);

  const ClassicalReport b = classical_bound_check(kZ2, ConvexBody<Rational>::ball(2, Rational(1, 2)));
  CHECK(b.count == 0);
  CHECK(b.k == 0);
  CHECK(b.pass);

  const ClassicalReport c = classical_bound_check(kZ2, ConvexBody<Rational>::ball(2, parse_rational("2.26")));
  CHECK(c.count == brute_nonzero(ConvexBody<Rational>::ball(2, parse_rational("2.26")), 3));
  CHECK(c.count == 20);
  CHECK(c.pass);
}

TEST_CASE("classical bound counts the origin") {
  // Two nonzero points and D Vol(S/2) = 0.99 * 1.0303 just above 1: the
  // bound 2 ceil(.) - 1 = 3 is met by the three points including 0.
  const auto slab = ConvexBody<Rational>::slab(kZ2, parse_vector("0.99,1.0303"));
  const ClassicalReport r = classical_bound_check(kZ2, slab);
  CHECK(r.count == 2);
  CHECK(r.bound == 3);
  CHECK(r.k == 1);
  CHECK(r.pass);
}

TEST_CASE("classical bound on the equality lattice") {
  const EqualityInstance inst = equality_instance(3);
  MatrixXr basis = kZ2;
  basis(0, 0) = 3;
  const ClassicalReport r = classical_bound_check(basis, inst.body);
  CHECK(r.count == 0);
  const Rational dv = shoelace(inst.body.vertices()) / 4 / 3;
  CHECK(r.density_times_half_volume == doctest::Approx(to_double(dv)));
  CHECK(dv <= 1);
  CHECK(r.pass);
}

TEST_CASE("classical bound never fails and counts match brute force") {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> entry(-15, 15), size(2, 40);
  for (int trial = 0; trial < 100; ++trial) {
    MatrixXr basis(2, 2);
    do {
      for (Eigen::Index i = 0; i < 4; ++i) basis.data()[i] = Rational(entry(gen), 10);
    } while (abs_value(determinant<Rational>(basis)) < Rational(1, 2));
    const auto body = ConvexBody<Rational>::ball(2, Rational(size(gen), 10));
    const ClassicalReport r = classical_bound_check(basis, body);
    CHECK(r.pass);
    CHECK(static_cast<std::int64_t>(r.count) >= 2 * r.k);
    CHECK(r.count + 1 == lattice_points_in<Rational>(basis, body).size());
  }
}

TEST_CASE("continuous inequality on Z^2 is exact") {
  const PointSample z2 = lattice_sample(kZ2, 40.0);
  const FrequencyTable t = frequency_table(z2, 6.0, 30.0);
  const MinkowskiReport r = verify_inequality(t, ConvexBody<Rational>::ball(2, Rational(5)));
  REQUIRE(r.exact_lhs);
  CHECK(*r.exact_lhs == 81);
  CHECK(r.rhs == doctest::Approx(std::numbers::pi * 6.25));
  CHECK(r.pass);
  CHECK(r.sampling_uncertainty == 0.0);
}

TEST_CASE("integer inequality on Z^2") {
  const PointSample z2 = lattice_sample(kZ2, 40.0);
  const FrequencyTable t = frequency_table(z2, 6.0, 30.0);
  const MinkowskiReport r = verify_integer_inequality(t, ConvexBody<Rational>::ball(2, Rational(5, 2)));
  CHECK(*r.exact_lhs == 21);
  CHECK(*r.exact_rhs == 5);
  CHECK(r.pass);
  CHECK(r.mode == MinkowskiMode::Integer);
}

TEST_CASE("equality instances give margin exactly zero") {
  for (int k : {3, 5, 7, 9}) {
    CAPTURE(k);
    const EqualityInstance inst = equality_instance(k);
    const MinkowskiReport r = verify_periodic(*inst.gamma.periodic(), inst.body, MinkowskiMode::Integer);
    CHECK(*r.exact_lhs == 1);
    CHECK(*r.exact_rhs == 1);
    CHECK(r.margin == 0.0);
    CHECK(r.pass);
    CHECK(integer_points_in<Rational>(inst.body.scaled(Rational(1, 2))).size() == static_cast<std::size_t>(k));
  }
  for (int k : {-1, 1, 2, 4}) CHECK_THROWS_AS(equality_instance(k), InputError);
}

TEST_CASE("the k = 3 hexagon's half contains exactly (-1,0), (0,0), (1,0)") {
  const EqualityInstance inst = equality_instance(3);
  const auto half = integer_points_in<Rational>(inst.body.scaled(Rational(1, 2)));
  REQUIRE(half.size() == 3);
  CHECK(half[0] == parse_vector("-1,0"));
  CHECK(half[1] == parse_vector("0,0"));
  CHECK(half[2] == parse_vector("1,0"));
  // S cap Z^2 has (2k-1) + 2(k-1) points.
  CHECK(integer_points_in<Rational>(inst.body).size() == 9);
}

TEST_CASE("preconditions") {
  const PointSample z2 = lattice_sample(kZ2, 40.0);
  const FrequencyTable t = frequency_table(z2, 4.0, 30.0);
  CHECK_THROWS_AS(verify_inequality(t, ConvexBody<Rational>::ball(2, Rational(5))), InputError);
  const PointSample e = e_alpha_epsilon(Vector<double>::Constant(1, std::sqrt(2.0) - 1.0), 0.1, 1000);
  const FrequencyTable te = frequency_table(e, 10.0, 900.0);
  CHECK_NOTHROW(verify_integer_inequality(te, ConvexBody<Rational>::ball(1, Rational(5))));
  const PointSample j = jittered_lattice(1, 0.2, 200.0, 1);
  const FrequencyTable tj = frequency_table(j, 10.0, 150.0);
  CHECK_THROWS_AS(verify_integer_inequality(tj, ConvexBody<Rational>::ball(1, Rational(5))), InputError);
}

TEST_CASE("inequality holds on E_alpha^eps for random bodies") {
  const PointSample e = e_alpha_epsilon(Vector<double>::Constant(1, std::sqrt(2.0) - 1.0), 0.1, 100000);
  const FrequencyTable t = frequency_table(e, 100.0, 99900.0);
  std::mt19937_64 gen(23);
  std::uniform_int_distribution<int> num(1, 1000), den(1, 10);
  int tested = 0;
  for (int i = 0; i < 100; ++i) {
    std::optional<ConvexBody<Rational>> body;
    if (i % 2 == 0) {
      body = ConvexBody<Rational>::ball(1, Rational(num(gen), 10));
    } else {
      // An interval |a x| <= A written as a one-dimensional slab.
      MatrixXr form(1, 1);
      form(0, 0) = Rational(den(gen), 4);
      VectorXr bound(1);
      bound[0] = Rational(num(gen), 10) * form(0, 0);
      body = ConvexBody<Rational>::slab(form, bound);
    }
    const MinkowskiReport r = verify_inequality(t, *body);
    CHECK(r.lhs >= r.rhs - 3.0 * r.sampling_uncertainty);
    ++tested;
  }
  CHECK(tested == 100);
}

TEST_CASE("report formatting labels the heuristic") {
  const EqualityInstance inst = equality_instance(3);
  const std::string text = format_report(verify_periodic(*inst.gamma.periodic(), inst.body, MinkowskiMode::Integer));
  CHECK(text.find("margin=0\n") != std::string::npos);
  CHECK(text.find("exact_margin=0\n") != std::string::npos);
  CHECK(text.find("heuristic") != std::string::npos);
}
