#include <doctest.h>

#include <random>
#include <sstream>

#include "meyer/modelset.hpp"
#include "meyer/pointset.hpp"

using namespace meyer;

namespace {

PointSample line(std::vector<double> xs, double region) {
  Matrix<double> m = Eigen::Map<Matrix<double>>(xs.data(), 1, static_cast<Eigen::Index>(xs.size()));
  return PointSample(m, region);
}

Vector<double> at(double x) { return Vector<double>::Constant(1, x); }

}  // namespace

TEST_CASE("sample validation") {
  CHECK_THROWS_AS(line({0.0, 0.0}, 5.0), InputError);
  CHECK_THROWS_AS(line({6.0}, 5.0), InputError);
  CHECK_THROWS_AS(line({1.0}, -1.0), InputError);
  CHECK(line({-5.0, 5.0}, 5.0).size() == 2);
}

TEST_CASE("Delone parameters of Z") {
  const PointSample z = lattice_sample(MatrixXr(MatrixXr::Identity(1, 1)), 50.0);
  const DeloneParams p = delone_parameters(z, 0.05);
  CHECK(p.r_packing == doctest::Approx(0.5));
  CHECK(p.R_covering == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("Delone parameters of Z^2") {
  const PointSample z2 = lattice_sample(MatrixXr(MatrixXr::Identity(2, 2)), 20.0);
  const DeloneParams p = delone_parameters(z2, 0.1);
  CHECK(p.r_packing == doctest::Approx(0.5));
  // Deep holes at (1/2, 1/2) lie on the probe grid.
  CHECK(p.R_covering == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
}

TEST_CASE("density of lattices") {
  const PointSample z2 = lattice_sample(MatrixXr(MatrixXr::Identity(2, 2)), 120.0);
  const DensityEstimate d = upper_density(z2, {25.0, 50.0, 100.0}, 10.0);
  CHECK(d.value == doctest::Approx(1.0).epsilon(0.02));
  CHECK(d.trace.size() == 3);
  CHECK(d.erosion_margin == doctest::Approx(20.0));
  CHECK_THROWS_AS(upper_density(z2, {50.0, 25.0}, 10.0), InputError);
  CHECK_THROWS_AS(upper_density(z2, {115.0}, 10.0), InputError);
  const PointSample sparse = lattice_sample(parse_matrix("2,0;0,3"), 200.0);
  CHECK(density_at(sparse, 150.0, {Vector<double>::Zero(2)}).value == doctest::Approx(1.0 / 6.0).epsilon(0.01));
}

TEST_CASE("periodic structure") {
  PeriodicStructure p{parse_matrix("2,0;0,1"), {VectorXr::Zero(2), parse_vector("1,0.5")}};
  CHECK(p.density() == Rational(1));
  CHECK(p.contains(parse_vector("3,-0.5")));
  CHECK_FALSE(p.contains(parse_vector("1,0")));
}

TEST_CASE("difference set and Meyer check") {
  const PointSample z = lattice_sample(MatrixXr(MatrixXr::Identity(1, 1)), 10.0);
  const PointSample diffs = difference_set(z, 3.0);
  CHECK(diffs.size() == 7);
  const MeyerReport m = meyer_check(z, 3.0);
  CHECK(m.is_uniformly_discrete);
  CHECK(m.min_gap == doctest::Approx(1.0));

  const PointSample e = e_alpha_epsilon(Vector<double>::Constant(1, std::sqrt(2.0) - 1.0), 0.1, 2000);
  CHECK(meyer_check(e, 50.0).is_uniformly_discrete);

  // Generic points have differences that accumulate.
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::vector<double> xs;
  for (int i = 0; i < 3000; ++i) xs.push_back(u(gen));
  const MeyerReport noisy = meyer_check(line(xs, 100.0), 5.0);
  CHECK_FALSE(noisy.is_uniformly_discrete);
}

TEST_CASE("patch defect: periodic sets have zero defect") {
  const PointSample z = lattice_sample(MatrixXr(MatrixXr::Identity(1, 1)), 1000.0);
  const PatchDefect d = patch_defect(z, at(-300.0), at(417.0), 200.0);
  CHECK(d.defect == 0.0);
  CHECK(std::abs(d.v_best[0] - std::round(d.v_best[0])) == 0.0);
  CHECK(d.candidates > 0);
  CHECK_THROWS_AS(patch_defect(z, at(900.0), at(0.0), 200.0), InputError);
}

TEST_CASE("patch defect: identical patches and jittered sets") {
  const PointSample e = e_alpha_epsilon(Vector<double>::Constant(1, std::sqrt(2.0) - 1.0), 0.1, 20000);
  CHECK(patch_defect(e, at(100.0), at(100.0), 200.0).defect == 0.0);
  CHECK(patch_defect(e, at(-5000.0), at(7000.0), 200.0).defect <= 0.05);
  const PointSample j = jittered_lattice(1, 0.3, 2000.0, 5);
  CHECK(patch_defect(j, at(-500.0), at(800.0), 200.0).defect >= 0.1);
}

TEST_CASE("point files round-trip exactly") {
  const PointSample e = jittered_lattice(2, 0.25, 12.0, 9);
  std::stringstream buf;
  write_points(buf, e);
  const PointSample back = read_points(buf);
  CHECK(back.points() == e.points());
  CHECK(back.region_radius() == e.region_radius());
}

TEST_CASE("point files reject malformed content") {
  std::istringstream bad1("dim 1\nregion 5\n1\n2x\n");
  CHECK_THROWS_AS(read_points(bad1), InputError);
  std::istringstream bad2("dim 2\nregion 5\n1 2\n3\n");
  CHECK_THROWS_AS(read_points(bad2), InputError);
  std::istringstream bad3("dimension 2\n");
  CHECK_THROWS_AS(read_points(bad3), InputError);
}

TEST_CASE("point index queries agree with a linear scan") {
  const PointSample j = jittered_lattice(2, 0.4, 30.0, 2);
  const PointIndex index(j, 1.7);
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int t = 0; t < 50; ++t) {
    Vector<double> c(2);
    c << u(gen), u(gen);
    const double r = 1.0 + 0.1 * t;
    std::size_t expected = 0;
    for (std::size_t i = 0; i < j.size(); ++i) expected += (j.point(i) - c).norm() <= r;
    CHECK(index.count_within(c, r) == expected);
  }
  CHECK(index.find(j.point(17)) == std::optional<std::size_t>(17));
}
