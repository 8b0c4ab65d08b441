#include "meyer/pointset.hpp"

#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "meyer/convex.hpp"

namespace meyer {

// --- PeriodicStructure -------------------------------------------------------

Rational PeriodicStructure::density() const {
  return Rational(static_cast<long>(offsets.size())) / abs_value(determinant<Rational>(period_basis));
}

bool PeriodicStructure::contains(const VectorXr& x) const {
  const MatrixXr inv = inverse<Rational>(period_basis);
  for (const VectorXr& o : offsets) {
    const VectorXr coeffs = apply<Rational>(inv, VectorXr(x - o));
    bool integral = true;
    for (Eigen::Index i = 0; i < coeffs.size() && integral; ++i) {
      integral = boost::multiprecision::denominator(coeffs[i]) == 1;
    }
    if (integral) return true;
  }
  return false;
}

// --- PointSample -------------------------------------------------------------

PointSample::PointSample(Matrix<double> points, double region_radius, std::string label)
    : points_(std::move(points)), region_radius_(region_radius), label_(std::move(label)) {
  if (points_.rows() < 1) throw InputError("point sample needs a positive dimension");
  if (!(region_radius_ > 0.0)) throw InputError("region radius must be positive");
  const double limit = region_radius_ * (1.0 + 1e-12) + 1e-9;
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    if (!points_.col(i).allFinite()) throw InputError("non-finite point coordinate");
    if (points_.col(i).norm() > limit) {
      throw InputError("point " + std::to_string(i) + " lies outside the sampled region");
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(points_.cols()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return lex_less(points_.col(a), points_.col(b)); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points_.col(order[i]) == points_.col(order[i - 1])) {
      throw InputError("duplicate point at indices " + std::to_string(order[i - 1]) + " and " +
                       std::to_string(order[i]));
    }
  }
}

PointSample PointSample::with_periodic(PeriodicStructure structure) const {
  if (structure.dimension() != dimension()) throw InputError("periodic structure dimension mismatch");
  PointSample out = *this;
  out.periodic_ = std::move(structure);
  return out;
}

bool PointSample::is_integral() const {
  for (Eigen::Index i = 0; i < points_.size(); ++i) {
    if (points_.data()[i] != std::round(points_.data()[i])) return false;
  }
  return true;
}

// --- PointIndex --------------------------------------------------------------

std::size_t PointIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (std::int64_t c : k) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

PointIndex::PointIndex(const PointSample& sample, double cell_size) : sample_(&sample), cell_(cell_size) {
  if (sample.dimension() > 4) throw InputError("point index supports dimensions up to 4");
  if (!(cell_ > 0.0)) throw InputError("cell size must be positive");
  const std::size_t n = sample.size();
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = key_of(sample.point(i));
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });
  std::uint32_t start = 0;
  for (std::uint32_t i = 1; i <= n; ++i) {
    if (i == n || keys[order_[i]] != keys[order_[start]]) {
      buckets_.emplace(keys[order_[start]], std::make_pair(start, i));
      start = i;
    }
  }
}

PointIndex::Key PointIndex::key_of(const Vector<double>& x) const {
  Key k{};
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    k[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::floor(x[d] / cell_));
  }
  return k;
}

std::size_t PointIndex::count_within(const Vector<double>& center, double radius) const {
  std::size_t count = 0;
  for_each_within(center, radius, [&](std::size_t) { ++count; });
  return count;
}

std::optional<std::size_t> PointIndex::find(const Vector<double>& x, double tol) const {
  const Eigen::Index n = sample_->dimension();
  Key lo{}, hi{};
  for (Eigen::Index d = 0; d < n; ++d) {
    lo[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::floor((x[d] - tol) / cell_));
    hi[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::floor((x[d] + tol) / cell_));
  }
  std::optional<std::size_t> hit;
  visit_cells(lo, hi, [&](std::uint32_t i) {
    if (!hit && (sample_->points().col(i) - x).cwiseAbs().maxCoeff() <= tol) hit = i;
  });
  return hit;
}

double PointIndex::nearest_distance(const Vector<double>& x, std::optional<std::size_t> exclude) const {
  const std::size_t available = sample_->size() - (exclude ? 1 : 0);
  if (available == 0) return std::numeric_limits<double>::infinity();
  double radius = cell_;
  while (true) {
    double best = std::numeric_limits<double>::infinity();
    for_each_within(x, radius, [&](std::size_t i) {
      if (exclude && *exclude == i) return;
      best = std::min(best, (sample_->point(i) - x).norm());
    });
    if (best <= radius) return best;
    radius *= 2.0;
  }
}

// --- DifferenceClasses ---------------------------------------------------------

std::size_t DifferenceClasses::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::int64_t c : k) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

DifferenceClasses::DifferenceClasses(Eigen::Index dimension, double merge_tol) : dim_(dimension), tol_(merge_tol) {
  if (dimension < 1 || dimension > 4) throw InputError("difference classes support dimensions 1 to 4");
  if (!(merge_tol > 0.0)) throw InputError("merge tolerance must be positive");
}

DifferenceClasses::Key DifferenceClasses::key_of(const Vector<double>& v) const {
  Key k{};
  for (Eigen::Index d = 0; d < dim_; ++d) k[static_cast<std::size_t>(d)] = std::llround(v[d] / tol_);
  return k;
}

std::optional<std::size_t> DifferenceClasses::lookup_near(const Key& key, const Vector<double>& v) const {
  // A vector within tol of a representative has a quantised key differing by
  // at most one unit in each coordinate.
  Key probe = key;
  const auto n = static_cast<std::size_t>(dim_);
  std::array<int, 4> step{-1, -1, -1, -1};
  while (true) {
    for (std::size_t d = 0; d < n; ++d) probe[d] = key[d] + step[d];
    if (auto it = ids_.find(probe); it != ids_.end()) {
      if ((reps_[it->second] - v).cwiseAbs().maxCoeff() <= tol_) return it->second;
    }
    std::size_t d = 0;
    for (; d < n; ++d) {
      if (step[d] < 1) {
        ++step[d];
        break;
      }
      step[d] = -1;
    }
    if (d == n) return std::nullopt;
  }
}

std::size_t DifferenceClasses::classify(const Vector<double>& v) {
  const Key key = key_of(v);
  if (auto it = ids_.find(key); it != ids_.end()) {
    if ((reps_[it->second] - v).cwiseAbs().maxCoeff() <= tol_) return it->second;
  }
  if (auto near = lookup_near(key, v)) {
    ids_.emplace(key, *near);
    return *near;
  }
  const std::size_t id = reps_.size();
  reps_.push_back(v);
  ids_[key] = id;
  return id;
}

std::optional<std::size_t> DifferenceClasses::find(const Vector<double>& v) const {
  const Key key = key_of(v);
  if (auto it = ids_.find(key); it != ids_.end()) {
    if ((reps_[it->second] - v).cwiseAbs().maxCoeff() <= tol_) return it->second;
  }
  return lookup_near(key, v);
}

// --- statistics ----------------------------------------------------------------

namespace {

double typical_spacing(const PointSample& gamma) {
  const int n = static_cast<int>(gamma.dimension());
  const double vol = unit_ball_volume(n) * std::pow(gamma.region_radius(), n);
  const double per_point = vol / static_cast<double>(std::max<std::size_t>(gamma.size(), 1));
  return std::max(std::pow(per_point, 1.0 / n), 1e-6);
}

double ball_volume(Eigen::Index n, double radius) {
  return unit_ball_volume(static_cast<int>(n)) * std::pow(radius, static_cast<double>(n));
}

// Grid points (multiples of `spacing`) inside the closed ball B(0, reach).
std::vector<Vector<double>> grid_in_ball(Eigen::Index n, double reach, double spacing) {
  std::vector<Vector<double>> out;
  const auto m = static_cast<std::int64_t>(std::floor(reach / spacing + 1e-12));
  VectorXl idx = VectorXl::Constant(n, -m);
  while (true) {
    const Vector<double> p = idx.cast<double>() * spacing;
    if (p.norm() <= reach + 1e-12) out.push_back(p);
    Eigen::Index d = 0;
    for (; d < n; ++d) {
      if (idx[d] < m) {
        ++idx[d];
        break;
      }
      idx[d] = -m;
    }
    if (d == n) break;
  }
  return out;
}

double min_pairwise_distance(const PointSample& sample) {
  if (sample.size() < 2) return std::numeric_limits<double>::infinity();
  const PointIndex index(sample, typical_spacing(sample));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    best = std::min(best, index.nearest_distance(sample.point(i), i));
  }
  return best;
}

}  // namespace

double DensityEstimate::trace_oscillation() const {
  if (trace.size() < 2) return 0.0;
  return std::abs(trace[trace.size() - 1].value - trace[trace.size() - 2].value);
}

DeloneParams delone_parameters(const PointSample& gamma, double probe_spacing) {
  if (gamma.size() < 2) throw InputError("Delone parameters need at least two points");
  if (!(probe_spacing > 0.0)) throw InputError("probe spacing must be positive");
  DeloneParams out;
  out.probe_spacing = probe_spacing;
  out.r_packing = min_pairwise_distance(gamma) / 2.0;
  const PointIndex index(gamma, typical_spacing(gamma));
  for (const auto& probe : grid_in_ball(gamma.dimension(), gamma.region_radius() / 2.0, probe_spacing)) {
    out.R_covering = std::max(out.R_covering, index.nearest_distance(probe));
    ++out.probe_count;
  }
  return out;
}

DensityEstimate density_at(const PointSample& gamma, double radius, const std::vector<Vector<double>>& centers) {
  if (!(radius > 0.0)) throw InputError("density radius must be positive");
  if (centers.empty()) throw InputError("density needs at least one center");
  const PointIndex index(gamma, std::max(radius / 4.0, typical_spacing(gamma)));
  DensityEstimate est;
  est.radius_used = radius;
  est.value = 0.0;
  double max_center = 0.0;
  for (const auto& c : centers) {
    if (c.size() != gamma.dimension()) throw InputError("center dimension mismatch");
    if (c.norm() + radius > gamma.region_radius() * (1.0 + 1e-12) + 1e-9) {
      throw InputError("density ball escapes the sampled region");
    }
    max_center = std::max(max_center, c.norm());
    est.value = std::max(est.value, static_cast<double>(index.count_within(c, radius)) /
                                        ball_volume(gamma.dimension(), radius));
  }
  est.center_count = centers.size();
  est.sup_over_centers = centers.size() > 1;
  est.erosion_margin = gamma.region_radius() - radius;
  est.trace.push_back({radius, est.value});
  return est;
}

DensityEstimate upper_density(const PointSample& gamma, const std::vector<double>& radii, double center_grid_spacing) {
  if (radii.empty()) throw InputError("radius list is empty");
  if (!(center_grid_spacing > 0.0)) throw InputError("center grid spacing must be positive");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw InputError("radii must be positive and increasing");
    }
  }
  if (radii.back() + center_grid_spacing > gamma.region_radius() * (1.0 + 1e-12) + 1e-9) {
    throw InputError("largest radius plus grid spacing exceeds the sampled region");
  }
  DensityEstimate est;
  est.grid_spacing = center_grid_spacing;
  est.sup_over_centers = true;
  for (double radius : radii) {
    const auto centers = grid_in_ball(gamma.dimension(), gamma.region_radius() - radius, center_grid_spacing);
    const DensityEstimate at = density_at(gamma, radius, centers);
    est.trace.push_back({radius, at.value});
    est.value = at.value;
    est.radius_used = radius;
    est.center_count = centers.size();
    est.erosion_margin = gamma.region_radius() - radius;
  }
  return est;
}

PointSample difference_set(const PointSample& gamma, double cutoff) {
  if (!(cutoff > 0.0)) throw InputError("cutoff must be positive");
  if (cutoff > 2.0 * gamma.region_radius() * (1.0 + 1e-12)) throw InputError("cutoff exceeds the sample diameter");
  DifferenceClasses classes(gamma.dimension());
  const PointIndex index(gamma, std::max(cutoff, typical_spacing(gamma)));
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const Vector<double> p = gamma.point(i);
    index.for_each_within(p, cutoff, [&](std::size_t j) { classes.classify(gamma.point(j) - p); });
  }
  std::vector<std::size_t> ids(classes.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(classes.representative(a), classes.representative(b));
  });
  Matrix<double> pts(gamma.dimension(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t k = 0; k < ids.size(); ++k) pts.col(static_cast<Eigen::Index>(k)) = classes.representative(ids[k]);
  return PointSample(std::move(pts), cutoff + 1e-9, "differences of " + gamma.label());
}

MeyerReport meyer_check(const PointSample& gamma, double cutoff) {
  const PointSample diffs = difference_set(gamma, cutoff);
  MeyerReport report;
  report.difference_count = diffs.size();
  report.min_gap = min_pairwise_distance(diffs);
  report.is_uniformly_discrete = report.min_gap > kUniformDiscretenessThreshold;
  return report;
}

PatchDefect patch_defect(const PointSample& gamma, const Vector<double>& x, const Vector<double>& y, double radius,
                         std::size_t anchors) {
  if (!(radius > 0.0)) throw InputError("patch radius must be positive");
  const double limit = gamma.region_radius() * (1.0 + 1e-12) + 1e-9;
  if (x.norm() + radius > limit || y.norm() + radius > limit) {
    throw InputError("patch ball escapes the sampled region");
  }
  const PointIndex index(gamma, std::max(radius / 8.0, typical_spacing(gamma)));
  std::vector<std::size_t> px, py;
  index.for_each_within(x, radius, [&](std::size_t i) { px.push_back(i); });
  index.for_each_within(y, radius, [&](std::size_t i) { py.push_back(i); });
  std::sort(px.begin(), px.end());
  std::sort(py.begin(), py.end());
  const double vol = ball_volume(gamma.dimension(), radius);

  PatchDefect best;
  best.v_best = y - x;
  best.defect = static_cast<double>(px.size() + py.size()) / vol;
  if (px.empty() || py.empty()) return best;

  std::vector<std::size_t> anchor_ids = px;
  std::sort(anchor_ids.begin(), anchor_ids.end(), [&](std::size_t a, std::size_t b) {
    const double da = (gamma.point(a) - x).squaredNorm();
    const double db = (gamma.point(b) - x).squaredNorm();
    return da != db ? da < db : a < b;
  });
  anchor_ids.resize(std::min(anchors, anchor_ids.size()));

  DifferenceClasses seen(gamma.dimension());
  const double r2 = (radius + 1e-9) * (radius + 1e-9);
  for (std::size_t a : anchor_ids) {
    for (std::size_t q : py) {
      const Vector<double> v = gamma.point(q) - gamma.point(a);
      const std::size_t before = seen.size();
      seen.classify(v);
      if (seen.size() == before) continue;
      std::size_t matches = 0;
      for (std::size_t j : py) {
        const Vector<double> shifted = gamma.point(j) - v;
        if ((shifted - x).squaredNorm() > r2) continue;
        if (index.find(shifted)) ++matches;
      }
      const double defect = static_cast<double>(px.size() + py.size() - 2 * matches) / vol;
      const bool better = defect < best.defect ||
                          (defect == best.defect && (v.squaredNorm() < best.v_best.squaredNorm() ||
                                                     (v.squaredNorm() == best.v_best.squaredNorm() &&
                                                      lex_less(v, best.v_best))));
      if (better) {
        best.defect = defect;
        best.v_best = v;
      }
    }
  }
  best.candidates = seen.size();
  return best;
}

// --- text format -----------------------------------------------------------------

void write_points(std::ostream& out, const PointSample& sample) {
  char buf[64];
  out << "dim " << sample.dimension() << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", sample.region_radius());
  out << "region " << buf << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (Eigen::Index d = 0; d < sample.dimension(); ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", sample.point(i)[d]);
      out << (d ? " " : "") << buf;
    }
    out << '\n';
  }
}

PointSample read_points(std::istream& in, std::string label) {
  std::string word;
  long dim = 0;
  if (!(in >> word >> dim) || word != "dim" || dim < 1) throw InputError("point file: expected 'dim <n>'");
  std::string region_text;
  if (!(in >> word >> region_text) || word != "region") throw InputError("point file: expected 'region <R>'");
  const double region = parse_real(region_text);
  std::vector<double> coords;
  std::string token;
  while (in >> token) {
    char* end = nullptr;
    coords.push_back(std::strtod(token.c_str(), &end));
    if (end == token.c_str() || *end != '\0') throw InputError("point file: malformed coordinate '" + token + "'");
  }
  if (coords.size() % static_cast<std::size_t>(dim) != 0) throw InputError("point file: ragged coordinates");
  const auto count = static_cast<Eigen::Index>(coords.size() / static_cast<std::size_t>(dim));
  Matrix<double> pts = Eigen::Map<Matrix<double>>(coords.data(), dim, count);
  return PointSample(std::move(pts), region, std::move(label));
}

}  // namespace meyer
