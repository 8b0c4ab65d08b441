#include "meyer/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "meyer/dirichlet.hpp"
#include "meyer/discretize.hpp"
#include "meyer/minkowski.hpp"
#include "meyer/modelset.hpp"

namespace meyer {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

const double kSqrt2Minus1 = std::numbers::sqrt2 - 1.0;
const double kGoldenConjugate = (std::sqrt(5.0) - 1.0) / 2.0;
constexpr const char* kSqrt2Minus1Text = "0.4142135623730950488016887242096980785697";

PointSample e_sample(double alpha, double eps, std::int64_t range) {
  return e_alpha_epsilon(Vector<double>::Constant(1, alpha), eps, range);
}

Outcome equality_example() {
  Outcome o{true, ""};
  for (int k : {3, 5, 7}) {
    const EqualityInstance inst = equality_instance(k);
    const double cutoff = std::ceil(inst.body.circumradius());
    const FrequencyTable table = frequency_table(inst.gamma, cutoff, inst.gamma.region_radius() - cutoff);
    const MinkowskiReport r = verify_integer_inequality(table, inst.body);
    const bool ok = r.exact_lhs && r.exact_rhs && *r.exact_lhs == 1 && *r.exact_rhs == 1 &&
                    *r.exact_lhs - *r.exact_rhs == 0;
    o.pass = o.pass && ok;
    o.detail += "k=" + std::to_string(k) + ":lhs=" + (r.exact_lhs ? r.exact_lhs->str() : "?") +
                ",rhs=" + (r.exact_rhs ? r.exact_rhs->str() : "?") + " ";
  }
  return o;
}

Rational random_rational(std::mt19937_64& gen, double lo, double hi) {
  std::uniform_int_distribution<std::int64_t> dist(static_cast<std::int64_t>(std::llround(lo * 1000)),
                                                   static_cast<std::int64_t>(std::llround(hi * 1000)));
  return Rational(dist(gen), 1000);
}

Outcome classical_minkowski() {
  std::mt19937_64 gen(20240601);
  int failures = 0, balls = 0, slabs = 0;
  std::size_t points = 0;
  for (int trial = 0; trial < 200; ++trial) {
    MatrixXr basis(2, 2);
    Rational det;
    do {
      for (Eigen::Index i = 0; i < 4; ++i) basis.data()[i] = random_rational(gen, -2.0, 2.0);
      det = determinant<Rational>(basis);
    } while (abs_value(det) < Rational(1, 5));
    const Rational covolume = random_rational(gen, 0.5, 5.0);
    const Rational factor = covolume / abs_value(det);
    basis(0, 0) *= factor;
    basis(1, 0) *= factor;

    std::optional<ConvexBody<Rational>> body;
    if (trial % 2 == 0) {
      body = ConvexBody<Rational>::ball(2, random_rational(gen, 0.3, 5.0));
      ++balls;
    } else {
      while (!body) {
        MatrixXr forms(2, 2);
        for (Eigen::Index i = 0; i < 4; ++i) forms.data()[i] = random_rational(gen, -1.5, 1.5);
        if (abs_value(determinant<Rational>(forms)) < Rational(1, 5)) continue;
        VectorXr bounds(2);
        bounds << random_rational(gen, 0.1, 3.0), random_rational(gen, 0.1, 3.0);
        ConvexBody<Rational> candidate = ConvexBody<Rational>::slab(forms, bounds);
        if (candidate.circumradius() <= 40.0) body = candidate;
      }
      ++slabs;
    }
    const ClassicalReport r = classical_bound_check(basis, *body);
    points += r.count;
    if (!r.pass) ++failures;
  }
  return {failures == 0, "trials=200 balls=" + std::to_string(balls) + " slabs=" + std::to_string(slabs) +
                             " failures=" + std::to_string(failures) + " points=" + std::to_string(points)};
}

Outcome quasicrystal_inequality() {
  Outcome o{true, ""};
  constexpr std::int64_t range = 100000;
  constexpr double cutoff = 100.0;
  double min_ratio = 1e300, max_ratio = 0.0;
  int cells = 0, passed = 0;
  for (double alpha : {kSqrt2Minus1, kGoldenConjugate}) {
    for (double eps : {0.05, 0.1, 0.2}) {
      const PointSample gamma = e_sample(alpha, eps, range);
      const FrequencyTable table = frequency_table(gamma, cutoff, static_cast<double>(range) - cutoff);
      for (int d : {5, 20, 100}) {
        const ConvexBody<Rational> body = ConvexBody<Rational>::ball(1, Rational(d));
        const MinkowskiReport r = verify_inequality(table, body);
        ++cells;
        if (r.lhs >= r.rhs - 3.0 * r.sampling_uncertainty) ++passed;
        min_ratio = std::min(min_ratio, r.lhs / r.rhs);
        max_ratio = std::max(max_ratio, r.lhs / r.rhs);
      }
    }
  }
  o.pass = passed == cells && cells == 18;
  o.detail = "cells=" + std::to_string(passed) + "/" + std::to_string(cells) + " factor2_probe_ratio_min=" +
             fmt(min_ratio) + " ratio_max=" + fmt(max_ratio);
  return o;
}

Outcome density_of_e() {
  Outcome o{true, ""};
  constexpr std::int64_t range = 100000;
  double worst = 0.0;
  for (double alpha : {kSqrt2Minus1, kGoldenConjugate}) {
    for (double eps : {0.05, 0.1, 0.2}) {
      const PointSample gamma = e_sample(alpha, eps, range);
      const DensityEstimate d = density_at(gamma, static_cast<double>(range), {Vector<double>::Zero(1)});
      worst = std::max(worst, std::abs(d.value - 2.0 * eps) / (2.0 * eps));
    }
  }
  o.pass = worst <= 0.02;
  o.detail = "max_relative_error=" + fmt(worst);
  return o;
}

Outcome mean_of_frequencies() {
  Outcome o{true, ""};
  constexpr std::int64_t range = 100000;
  constexpr double cutoff = 200.0;
  constexpr double eps = 0.1;
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> center(-150, 150);
  std::vector<Vector<double>> centers;
  for (int i = 0; i < 10; ++i) centers.push_back(Vector<double>::Constant(1, center(gen)));
  double worst_mean = 0.0, worst_dev = 0.0;
  for (double alpha : {kSqrt2Minus1, kGoldenConjugate}) {
    const PointSample gamma = e_sample(alpha, eps, range);
    const FrequencyTable table = frequency_table(gamma, cutoff, static_cast<double>(range) - cutoff);
    const MeanFrequency m = mean_frequency(table, 50.0, centers);
    const double density = table.density.value;
    worst_mean = std::max(worst_mean, std::abs(m.mean - density) / density);
    worst_dev = std::max(worst_dev, m.max_deviation / density);
  }
  o.pass = worst_mean <= 0.05 && worst_dev < 0.05;
  o.detail = "eps=0.1 mean_relative_error=" + fmt(worst_mean) + " max_relative_deviation=" + fmt(worst_dev);
  return o;
}

Outcome weak_almost_periodicity() {
  constexpr double radius = 200.0;
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> center(-50000, 50000);
  const PointSample e = e_sample(kSqrt2Minus1, 0.1, 100000);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Vector<double> x = Vector<double>::Constant(1, center(gen));
    const Vector<double> y = Vector<double>::Constant(1, center(gen));
    worst = std::max(worst, patch_defect(e, x, y, radius).defect);
  }
  const PointSample jitter = jittered_lattice(1, 0.3, 20000.0, 3);
  std::uniform_int_distribution<int> jcenter(-19000, 19000);
  std::vector<double> defects;
  for (int i = 0; i < 20; ++i) {
    const Vector<double> x = Vector<double>::Constant(1, jcenter(gen));
    const Vector<double> y = Vector<double>::Constant(1, jcenter(gen));
    defects.push_back(patch_defect(jitter, x, y, radius).defect);
  }
  std::sort(defects.begin(), defects.end());
  const double median = (defects[9] + defects[10]) / 2.0;
  return {worst <= 0.05 && median >= 0.1,
          "model_set_max_defect=" + fmt(worst) + " jittered_median_defect=" + fmt(median)};
}

bool nonincreasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) return false;
  }
  return true;
}

Outcome rate_of_injectivity_values() {
  DiscretizedSequence identity{{LinearMapSpec::identity(2)}, std::nullopt};
  DiscretizedSequence quarter{{LinearMapSpec::rotation(std::numbers::pi / 2)}, std::nullopt};
  DiscretizedSequence eighth{{LinearMapSpec::rotation(std::numbers::pi / 4)}, std::nullopt};
  const auto t_id = rate_of_injectivity(identity, 1, {100.0, 500.0});
  const auto t_q = rate_of_injectivity(quarter, 1, {100.0, 500.0});
  const auto t_e = rate_of_injectivity(eighth, 1, {500.0, 1000.0});
  bool ok = t_id.tau[0][0] == 1.0 && t_id.tau[1][0] == 1.0 && t_q.tau[0][0] == 1.0 && t_q.tau[1][0] == 1.0;
  const double rel = std::abs(t_e.tau[0][0] - t_e.tau[1][0]) / t_e.tau[1][0];
  ok = ok && rel <= 0.01;
  bool monotone = true;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto t = rate_of_injectivity(random_rotation_sequence(seed, 10), 10, {300.0});
    monotone = monotone && nonincreasing(t.tau[0]);
  }
  return {ok && monotone, "tau_pi/4(500)=" + fmt(t_e.tau[0][0]) + " tau_pi/4(1000)=" + fmt(t_e.tau[1][0]) +
                              " relative_gap=" + fmt(rel) + " monotone=" + (monotone ? "true" : "false")};
}

Outcome decay_of_tau() {
  int decayed = 0;
  bool monotone = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = rate_of_injectivity(random_rotation_sequence(seed, 10), 10, {500.0});
    monotone = monotone && nonincreasing(t.tau[0]);
    if (t.tau[0][9] < t.tau[0][0]) ++decayed;
  }
  return {decayed >= 95 && monotone,
          "decayed=" + std::to_string(decayed) + "/100 monotone=" + (monotone ? "true" : "false")};
}

Outcome seeded_difference() {
  const PointSample z2 = lattice_sample(MatrixXr(MatrixXr::Identity(2, 2)), 60.0);
  const FrequencyTable t1 = frequency_table(z2, 4.0, 56.0);
  const SeedDifference s1 = seed_difference(t1, t1.density.value);

  DiscretizedSequence eighth{{LinearMapSpec::rotation(std::numbers::pi / 4)}, std::nullopt};
  const PointSample image = discretized_image(eighth, 1, 200.0);
  const FrequencyTable t2 = frequency_table(image, 6.0, 150.0);
  const SeedDifference s2 = seed_difference(t2, t2.density.value);

  bool ok = true;
  for (const auto* s : {&s1, &s2}) {
    ok = ok && s->rho0 >= s->density_floor - s->sampling_uncertainty && s->mass >= 1.0 - s->sampling_uncertainty;
  }
  std::ostringstream d;
  const auto pair = [](const VectorXl& u) { return std::to_string(u[0]) + "," + std::to_string(u[1]); };
  d << "Z2:u0=(" << pair(s1.u0) << "),rho0=" << fmt(s1.rho0) << ",mass=" << fmt(s1.mass)
    << " rotated:u0=(" << pair(s2.u0) << "),rho0=" << fmt(s2.rho0) << ",floor=" << fmt(s2.density_floor)
    << ",mass=" << fmt(s2.mass);
  return {ok, d.str()};
}

/// Denominators of the continued-fraction convergents of a rational.
std::vector<Rational> convergent_denominators(Rational x, int terms) {
  std::vector<Rational> q{Rational(1)};
  Rational prev(0);
  for (int i = 0; i < terms; ++i) {
    const boost::multiprecision::mpz_int a = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    const Rational frac = x - Rational(a);
    if (i > 0) {
      const Rational next = Rational(a) * q.back() + prev;
      prev = q.back();
      q.push_back(next);
    }
    if (frac == 0) break;
    x = Rational(1) / frac;
  }
  return q;
}

Outcome dirichlet_witness() {
  const PointSample z2 = lattice_sample(MatrixXr(MatrixXr::Identity(2, 2)), 260.0);
  bool ok = true;
  std::string detail;
  for (const char* q : {"10", "100"}) {
    const ApproximationQuery query = ApproximationQuery::parse({kSqrt2Minus1Text}, q, "1", z2);
    const SlopeWitness w = find_witness(query);
    const ConvexBody<Rational> body = slab_body(query);
    VectorXr u(2);
    u << Rational(w.u[0]), Rational(w.u[1]);
    const Rational err = abs_value(Rational(query.alpha[0] - u[0] / u[1]));
    ok = ok && body.contains(u) && err <= Rational(2) / (u[1] * u[1]);
    if (std::string(q) == "10") {
      const auto dens = convergent_denominators(query.alpha[0], 20);
      ok = ok && std::find(dens.begin(), dens.end(), u[1]) != dens.end();
    }
    detail += std::string("Q=") + q + ":u=(" + fmt(w.u[0]) + "," + fmt(w.u[1]) + "),err=" + fmt(w.errors[0]) + " ";
  }
  return {ok, detail};
}

Outcome image_degradation() {
  const Raster image = test_raster(220, 282);
  DiscretizedSequence identity;
  for (int i = 0; i < 10; ++i) identity.maps.push_back(LinearMapSpec::identity(2));
  const bool identity_ok = degrade_image(image, identity).image == image;

  DiscretizedSequence quarter{{LinearMapSpec::rotation(std::numbers::pi / 2)}, std::nullopt};
  Raster expected{image.width, image.height, std::vector<std::uint8_t>(image.pixels.size(), 255)};
  const int w = image.width, h = image.height;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const int r2 = h / 2 + w / 2 - c;
      const int c2 = w / 2 - h / 2 + r;
      if (r2 >= 0 && r2 < h && c2 >= 0 && c2 < w) expected.at(r2, c2) = image.at(r, c);
    }
  }
  const bool quarter_ok = degrade_image(image, quarter).image == expected;

  const DegradeResult random = degrade_image(image, random_rotation_sequence(7, 10));
  bool lost_ok = random.lost.front() > 0.0;
  for (std::size_t i = 1; i < random.lost.size(); ++i) lost_ok = lost_ok && random.lost[i] >= random.lost[i - 1];
  return {identity_ok && quarter_ok && lost_ok,
          std::string("identity_exact=") + (identity_ok ? "true" : "false") +
              " quarter_turn_exact=" + (quarter_ok ? "true" : "false") + " lost_k1=" + fmt(random.lost.front()) +
              " lost_k10=" + fmt(random.lost.back())};
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only, std::ostream* timing) {
  const std::vector<Criterion> criteria = {
      {1, "equality-example", 1.0, equality_example},
      {2, "classical-minkowski", 30.0, classical_minkowski},
      {3, "quasicrystal-inequality", 60.0, quasicrystal_inequality},
      {4, "model-set-density", 5.0, density_of_e},
      {5, "mean-of-frequencies", 60.0, mean_of_frequencies},
      {6, "weak-almost-periodicity", 60.0, weak_almost_periodicity},
      {7, "rate-of-injectivity", 60.0, rate_of_injectivity_values},
      {8, "decay-of-tau", 300.0, decay_of_tau},
      {9, "seeded-difference", 60.0, seeded_difference},
      {10, "dirichlet-witness", 10.0, dirichlet_witness},
      {11, "image-degradation", 30.0, image_degradation},
  };
  std::vector<CriterionResult> results;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.limit_seconds = c.limit;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.within_time = r.seconds <= c.limit;
    r.pass = o.pass && r.within_time;
    r.detail = o.detail;
    while (!r.detail.empty() && r.detail.back() == ' ') r.detail.pop_back();
    out << "criterion=" << r.id << " name=" << r.name << " result=" << (r.pass ? "pass" : "fail")
        << " within_time=" << (r.within_time ? "true" : "false") << " " << r.detail << '\n';
    if (timing) *timing << "criterion=" << r.id << " seconds=" << fmt(r.seconds, 4) << " limit=" << c.limit << '\n';
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace meyer
