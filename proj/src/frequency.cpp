#include "meyer/frequency.hpp"

#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>

#include "meyer/convex.hpp"

namespace meyer {

namespace {

constexpr double kMergeTol = 1e-9;

double cell_for(const PointSample& gamma, double reach) {
  const int n = static_cast<int>(gamma.dimension());
  const double vol = unit_ball_volume(n) * std::pow(gamma.region_radius(), n);
  const double spacing = std::pow(vol / static_cast<double>(std::max<std::size_t>(gamma.size(), 1)), 1.0 / n);
  return std::max({reach, spacing, 1e-6});
}

void check_erosion(const PointSample& gamma, double radius, double reach) {
  if (!(radius > 0.0)) throw InputError("estimation radius must be positive");
  if (radius + reach > gamma.region_radius() * (1.0 + 1e-12) + 1e-9) {
    throw InputError("estimation ball plus difference reach escapes the sampled region");
  }
}

std::vector<std::size_t> points_in_ball(const PointIndex& index, double radius) {
  std::vector<std::size_t> ids;
  index.for_each_within(Vector<double>::Zero(index.sample().dimension()), radius,
                        [&](std::size_t i) { ids.push_back(i); });
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

double frequency(const PointSample& gamma, const Vector<double>& v, double radius, Estimator estimator) {
  if (v.size() != gamma.dimension()) throw InputError("difference dimension mismatch");
  check_erosion(gamma, radius, v.norm());
  const PointIndex index(gamma, cell_for(gamma, 1.0));
  const auto base = points_in_ball(index, radius);
  if (base.empty()) throw InputError("no sample points in the estimation ball");
  const auto hits = [&](const Vector<double>& shift) {
    std::size_t count = 0;
    for (std::size_t i : base) {
      if (index.find(gamma.point(i) + shift, kMergeTol)) ++count;
    }
    return count;
  };
  const double n = static_cast<double>(base.size());
  if (estimator == Estimator::OneSided) return static_cast<double>(hits(v)) / n;
  return static_cast<double>(hits(v) + hits(-v)) / (2.0 * n);
}

double FrequencyTable::rho(const Vector<double>& v) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), v, [](const FrequencyEntry& e, const Vector<double>& key) {
    return lex_less(e.v, Vector<double>(key.array() - kMergeTol));
  });
  for (; it != entries.end(); ++it) {
    if ((it->v - v).cwiseAbs().maxCoeff() <= kMergeTol) return it->rho;
    if (it->v[0] > v[0] + kMergeTol) break;
  }
  return 0.0;
}

bool FrequencyTable::is_integral() const {
  for (const auto& e : entries) {
    for (Eigen::Index i = 0; i < e.v.size(); ++i) {
      if (e.v[i] != std::round(e.v[i])) return false;
    }
  }
  return true;
}

FrequencyTable frequency_table(const PointSample& gamma, double cutoff, double radius) {
  if (!(cutoff >= 0.0)) throw InputError("cutoff must be nonnegative");
  check_erosion(gamma, radius, cutoff);
  const PointIndex index(gamma, cell_for(gamma, cutoff));
  const auto base = points_in_ball(index, radius);
  if (base.empty()) throw InputError("no sample points in the estimation ball");

  DifferenceClasses classes(gamma.dimension(), kMergeTol);
  std::vector<std::size_t> counts;
  for (std::size_t i : base) {
    const Vector<double> x = gamma.point(i);
    index.for_each_within(x, cutoff, [&](std::size_t j) {
      const std::size_t id = classes.classify(gamma.point(j) - x);
      if (id >= counts.size()) counts.resize(id + 1, 0);
      ++counts[id];
    });
  }
  // Every realized v needs its mirror -v for the symmetric estimator.
  const std::size_t realized = classes.size();
  std::vector<std::size_t> mirror(realized);
  for (std::size_t id = 0; id < realized; ++id) mirror[id] = classes.classify(-classes.representative(id));
  counts.resize(classes.size(), 0);

  FrequencyTable table;
  table.dimension = gamma.dimension();
  table.cutoff = cutoff;
  table.estimation_radius = radius;
  table.erosion_margin = gamma.region_radius() - radius;
  table.base_count = base.size();
  table.source_label = gamma.label();
  table.source_integral = gamma.is_integral();
  table.periodic = gamma.periodic();

  const double n = static_cast<double>(base.size());
  for (std::size_t id = 0; id < classes.size(); ++id) {
    const std::size_t other = id < realized ? mirror[id] : *classes.find(-classes.representative(id));
    table.entries.push_back({classes.representative(id), static_cast<double>(counts[id] + counts[other]) / (2.0 * n)});
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const FrequencyEntry& a, const FrequencyEntry& b) { return lex_less(a.v, b.v); });

  // Density over the same eroded ball, with a short trace for convergence.
  const int dim = static_cast<int>(gamma.dimension());
  for (double frac : {0.25, 0.5, 1.0}) {
    const double r = radius * frac;
    const double count = frac == 1.0 ? n : static_cast<double>(points_in_ball(index, r).size());
    table.density.trace.push_back({r, count / (unit_ball_volume(dim) * std::pow(r, dim))});
  }
  table.density.value = table.density.trace.back().value;
  table.density.radius_used = radius;
  table.density.erosion_margin = table.erosion_margin;
  table.density.center_count = 1;
  return table;
}

MeanFrequency mean_frequency(const FrequencyTable& table, double ball_radius, const std::vector<Vector<double>>& centers) {
  if (!(ball_radius > 0.0)) throw InputError("ball radius must be positive");
  if (centers.empty()) throw InputError("mean frequency needs at least one center");
  const double vol = unit_ball_volume(static_cast<int>(table.dimension)) *
                     std::pow(ball_radius, static_cast<double>(table.dimension));
  const double r2 = (ball_radius + kMergeTol) * (ball_radius + kMergeTol);
  MeanFrequency out;
  for (const auto& c : centers) {
    if (c.size() != table.dimension) throw InputError("center dimension mismatch");
    if (c.norm() + ball_radius > table.cutoff * (1.0 + 1e-12) + 1e-9) {
      throw InputError("mean-frequency ball escapes the table cutoff");
    }
    double sum = 0.0;
    for (const auto& e : table.entries) {
      if ((e.v - c).squaredNorm() <= r2) sum += e.rho;
    }
    out.per_center.push_back(sum / vol);
  }
  out.mean = std::accumulate(out.per_center.begin(), out.per_center.end(), 0.0) /
             static_cast<double>(out.per_center.size());
  for (double value : out.per_center) out.max_deviation = std::max(out.max_deviation, std::abs(value - out.mean));
  return out;
}

void write_table(std::ostream& out, const FrequencyTable& table) {
  char buf[64];
  out << "dim " << table.dimension << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", table.cutoff);
  out << "cutoff " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", table.density.value);
  out << "density " << buf << '\n';
  for (const auto& e : table.entries) {
    for (Eigen::Index d = 0; d < e.v.size(); ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", e.v[d]);
      out << buf << ' ';
    }
    std::snprintf(buf, sizeof buf, "%.17g", e.rho);
    out << buf << '\n';
  }
}

FrequencyTable read_table(std::istream& in) {
  FrequencyTable table;
  std::string word;
  long dim = 0;
  if (!(in >> word >> dim) || word != "dim" || dim < 1) throw InputError("table file: expected 'dim <n>'");
  if (!(in >> word >> table.cutoff) || word != "cutoff") throw InputError("table file: expected 'cutoff <c>'");
  if (!(in >> word >> table.density.value) || word != "density") {
    throw InputError("table file: expected 'density <d>'");
  }
  table.dimension = dim;
  while (true) {
    FrequencyEntry e;
    e.v.resize(dim);
    if (!(in >> e.v[0])) break;
    for (Eigen::Index d = 1; d < dim; ++d) {
      if (!(in >> e.v[d])) throw InputError("table file: truncated entry");
    }
    if (!(in >> e.rho)) throw InputError("table file: truncated entry");
    if (e.rho < 0.0 || e.rho > 1.0) throw InputError("table file: frequency outside [0, 1]");
    table.entries.push_back(std::move(e));
  }
  if (!in.eof()) throw InputError("table file: malformed entry");
  std::sort(table.entries.begin(), table.entries.end(),
            [](const FrequencyEntry& a, const FrequencyEntry& b) { return lex_less(a.v, b.v); });
  return table;
}

}  // namespace meyer
