#include <doctest.h>

#include <sstream>

#include "meyer/frequency.hpp"
#include "meyer/modelset.hpp"

using namespace meyer;

namespace {

const double kAlpha = std::sqrt(2.0) - 1.0;

Vector<double> at(double x) { return Vector<double>::Constant(1, x); }

/// Window-overlap formula for E_alpha^eps: the share of points whose
/// internal coordinate stays in the window after the shift v alpha mod 1.
double overlap_oracle(double v, double eps) {
  const double t = v * kAlpha - std::round(v * kAlpha);
  return std::max(0.0, 2.0 * eps - std::abs(t)) / (2.0 * eps);
}

}  // namespace

TEST_CASE("lattice frequencies are indicators") {
  const PointSample z2 = lattice_sample(MatrixXr(MatrixXr::Identity(2, 2)), 40.0);
  Vector<double> v(2);
  v << 1.0, 2.0;
  CHECK(frequency(z2, v, 30.0) == 1.0);
  v << 0.5, 0.0;
  CHECK(frequency(z2, v, 30.0) == 0.0);
  const FrequencyTable t = frequency_table(z2, 3.0, 30.0);
  for (const auto& e : t.entries) CHECK(e.rho == 1.0);
  // Integer points in the closed ball of radius 3.
  CHECK(t.entries.size() == 29);
  CHECK(t.density.value == doctest::Approx(1.0).epsilon(0.01));
  CHECK(t.periodic);
}

TEST_CASE("E_alpha^eps frequencies match the window-overlap formula") {
  const double eps = 0.1;
  const PointSample e = e_alpha_epsilon(at(kAlpha), eps, 100000);
  const FrequencyTable t = frequency_table(e, 60.0, 99900.0);
  int checked = 0;
  for (int v = 1; v <= 60; ++v) {
    const double expected = overlap_oracle(v, eps);
    CAPTURE(v);
    CHECK(std::abs(t.rho(at(v)) - expected) <= 0.01);
    checked += expected > 0.0;
  }
  CHECK(checked > 5);
}

TEST_CASE("symmetric estimator is exactly symmetric") {
  const PointSample j = jittered_lattice(1, 0.3, 500.0, 4);
  const PointSample e = e_alpha_epsilon(at(kAlpha), 0.2, 5000);
  const FrequencyTable t = frequency_table(e, 40.0, 4900.0);
  for (const auto& entry : t.entries) CHECK(t.rho(-entry.v) == entry.rho);
  for (int v = 1; v < 40; ++v) {
    CHECK(frequency(e, at(v), 4900.0, Estimator::Symmetric) == frequency(e, at(-v), 4900.0, Estimator::Symmetric));
  }
  // Frequencies lie in [0, 1] and rho(0) = 1.
  const FrequencyTable tj = frequency_table(j, 5.0, 490.0);
  CHECK(tj.rho(at(0.0)) == 1.0);
  for (const auto& entry : tj.entries) CHECK((entry.rho >= 0.0 && entry.rho <= 1.0));
}

TEST_CASE("the table and the point estimator agree") {
  const PointSample e = e_alpha_epsilon(at(kAlpha), 0.1, 20000);
  const FrequencyTable t = frequency_table(e, 30.0, 19900.0);
  for (int v = 1; v <= 30; ++v) {
    CHECK(t.rho(at(v)) == doctest::Approx(frequency(e, at(v), 19900.0, Estimator::Symmetric)));
  }
}

TEST_CASE("erosion is enforced") {
  const PointSample z = lattice_sample(MatrixXr(MatrixXr::Identity(1, 1)), 100.0);
  CHECK_THROWS_AS(frequency_table(z, 10.0, 95.0), InputError);
  CHECK_THROWS_AS(frequency(z, at(20.0), 90.0), InputError);
  CHECK_NOTHROW(frequency_table(z, 10.0, 90.0));
}

TEST_CASE("mean of frequencies equals the density") {
  const PointSample z = lattice_sample(MatrixXr(MatrixXr::Identity(1, 1)), 400.0);
  const FrequencyTable tz = frequency_table(z, 100.0, 300.0);
  // Closed balls of radius 10.5 centred on integers hold 21 points.
  const MeanFrequency mz = mean_frequency(tz, 10.5, {at(0.0), at(30.0), at(-50.0)});
  CHECK(mz.mean == doctest::Approx(1.0));
  CHECK(mz.max_deviation == doctest::Approx(0.0));
  CHECK_THROWS_AS(mean_frequency(tz, 10.0, {at(95.0)}), InputError);

  const PointSample e = e_alpha_epsilon(at(kAlpha), 0.1, 100000);
  const FrequencyTable te = frequency_table(e, 200.0, 99800.0);
  const MeanFrequency me = mean_frequency(te, 50.0, {at(-120.0), at(0.0), at(77.0), at(140.0)});
  CHECK(me.mean == doctest::Approx(te.density.value).epsilon(0.05));
}

TEST_CASE("table files round-trip") {
  const PointSample e = e_alpha_epsilon(at(kAlpha), 0.1, 5000);
  const FrequencyTable t = frequency_table(e, 20.0, 4900.0);
  std::stringstream buf;
  write_table(buf, t);
  const FrequencyTable back = read_table(buf);
  REQUIRE(back.entries.size() == t.entries.size());
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    CHECK(back.entries[i].v == t.entries[i].v);
    CHECK(back.entries[i].rho == t.entries[i].rho);
  }
  CHECK(back.cutoff == t.cutoff);
  CHECK(back.density.value == t.density.value);
  std::istringstream bad("dim 1\ncutoff 3\ndensity 0.2\n1 1.5\n");
  CHECK_THROWS_AS(read_table(bad), InputError);
}
