#include <doctest.h>

#include "meyer/modelset.hpp"

using namespace meyer;

namespace {

const double kAlpha = std::sqrt(2.0) - 1.0;

}  // namespace

TEST_CASE("lattice samples are exact and carry their period") {
  const PointSample z2 = lattice_sample(MatrixXr(MatrixXr::Identity(2, 2)), 5.0);
  CHECK(z2.size() == 81);
  REQUIRE(z2.periodic());
  CHECK(z2.periodic()->density() == Rational(1));
  CHECK(z2.is_integral());
  // Boundary points such as (3, 4) are included.
  bool has = false;
  for (std::size_t i = 0; i < z2.size(); ++i) has = has || (z2.point(i)[0] == 3.0 && z2.point(i)[1] == 4.0);
  CHECK(has);
  CHECK_THROWS_AS(lattice_sample(parse_matrix("1,2;2,4"), 5.0), InputError);
}

TEST_CASE("scheme generation agrees with direct evaluation of E_alpha^eps") {
  for (double eps : {0.05, 0.1, 0.2}) {
    const PointSample direct = e_alpha_epsilon(Vector<double>::Constant(1, kAlpha), eps, 3000);
    const PointSample scheme = generate(e_alpha_epsilon_scheme(Vector<double>::Constant(1, kAlpha), eps), 3000.0);
    CHECK(direct.points() == scheme.points());
  }
}

TEST_CASE("direct evaluation follows the definition") {
  const PointSample e = e_alpha_epsilon(Vector<double>::Constant(1, kAlpha), 0.1, 200);
  // Oracle: dist(y alpha, Z) < eps by brute force over y.
  std::vector<double> expected;
  for (int y = -200; y <= 200; ++y) {
    const double t = y * kAlpha;
    if (std::abs(t - std::round(t)) < 0.1) expected.push_back(y);
  }
  REQUIRE(e.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(e.point(i)[0] == expected[i]);
}

TEST_CASE("densities of model sets") {
  const auto scheme = e_alpha_epsilon_scheme(Vector<double>::Constant(1, kAlpha), 0.1);
  CHECK(expected_density(scheme) == doctest::Approx(0.2));
  const PointSample e = e_alpha_epsilon(Vector<double>::Constant(1, kAlpha), 0.1, 100000);
  CHECK(static_cast<double>(e.size()) / 200001.0 == doctest::Approx(0.2).epsilon(0.01));

  const auto strip = e_alpha_strip_scheme(kAlpha, 0.1);
  CHECK(expected_density(strip) == doctest::Approx(0.2));
  const PointSample s = generate(strip, 60.0);
  const DensityEstimate d = density_at(s, 60.0, {Vector<double>::Zero(2)});
  CHECK(d.value == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("two slopes: density (2 eps)^2") {
  Vector<double> alpha(2);
  alpha << kAlpha, std::sqrt(3.0) - 1.0;
  const PointSample e = e_alpha_epsilon(alpha, 0.2, 100000);
  CHECK(static_cast<double>(e.size()) / 200001.0 == doctest::Approx(0.16).epsilon(0.02));
}

TEST_CASE("scheme validation") {
  auto scheme = e_alpha_epsilon_scheme(Vector<double>::Constant(1, kAlpha), 0.1);
  scheme.window.hi[0] = scheme.window.lo[0];
  CHECK_THROWS_AS(scheme.validate(), InputError);
  CHECK_THROWS_AS(e_alpha_epsilon_scheme(Vector<double>::Constant(1, kAlpha), 0.5), InputError);
  CHECK_THROWS_AS(e_alpha_epsilon(Vector<double>::Constant(1, kAlpha), 0.0, 10), InputError);
}

TEST_CASE("non-injective projection is reported") {
  // Internal coordinate z0, physical coordinate z0 + z1: the lattice points
  // (1, -1) and (0, 0) share the physical image 0.
  CutAndProjectScheme scheme;
  scheme.basis = (Matrix<double>(2, 2) << 1.0, 0.0, 1.0, 1.0).finished();
  scheme.internal_dim = 1;
  scheme.window.lo = Vector<double>::Constant(1, -2.5);
  scheme.window.hi = Vector<double>::Constant(1, 2.5);
  CHECK_THROWS_WITH_AS(generate(scheme, 3.0), doctest::Contains("not injective"), InputError);
}

TEST_CASE("jittered lattice is deterministic per seed") {
  const PointSample a = jittered_lattice(1, 0.3, 100.0, 7);
  const PointSample b = jittered_lattice(1, 0.3, 100.0, 7);
  const PointSample c = jittered_lattice(1, 0.3, 100.0, 8);
  CHECK(a.points() == b.points());
  CHECK(a.points() != c.points());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.point(i)[0] - std::round(a.point(i)[0])) <= 0.3);
  CHECK_THROWS_AS(jittered_lattice(1, 0.6, 100.0, 7), InputError);
}
