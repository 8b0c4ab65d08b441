#pragma once

// Finite truncations of Delone sets and the statistics measured on them:
// Delone parameters, uniform densities, difference sets, the Meyer
// (uniform discreteness of differences) check and the patch defect used to
// diagnose weak almost periodicity. Every statistic is taken over balls
// lying entirely inside the sampled region.

#include <array>
#include <iosfwd>
#include <optional>
#include <unordered_map>

#include "meyer/core.hpp"

namespace meyer {

/// Exact description of a periodic set: the translates of `offsets` by the
/// lattice spanned by the columns of `period_basis`. Attached to samples by
/// the constructors that build them; never inferred from coordinates.
struct PeriodicStructure {
  MatrixXr period_basis;
  std::vector<VectorXr> offsets;

  Eigen::Index dimension() const { return period_basis.rows(); }
  /// Points per unit volume, exactly.
  Rational density() const;
  /// Membership of an exact point.
  bool contains(const VectorXr& x) const;
};

class PointSample {
 public:
  /// `points` holds one point per column. Throws on points outside the
  /// region or exact duplicates.
  PointSample(Matrix<double> points, double region_radius, std::string label = {});

  Eigen::Index dimension() const { return points_.rows(); }
  std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  bool empty() const { return points_.cols() == 0; }
  const Matrix<double>& points() const { return points_; }
  auto point(std::size_t i) const { return points_.col(static_cast<Eigen::Index>(i)); }
  double region_radius() const { return region_radius_; }
  const std::string& label() const { return label_; }

  const std::optional<PeriodicStructure>& periodic() const { return periodic_; }
  PointSample with_periodic(PeriodicStructure structure) const;

  /// True when every coordinate is an integer.
  bool is_integral() const;

 private:
  Matrix<double> points_;
  double region_radius_;
  std::string label_;
  std::optional<PeriodicStructure> periodic_;
};

/// Uniform-grid bucket index over a sample, for ball queries and exact
/// point lookup. Supports dimensions 1 through 4.
class PointIndex {
 public:
  PointIndex(const PointSample& sample, double cell_size);

  template <typename Visit>
  void for_each_within(const Vector<double>& center, double radius, Visit&& visit) const;

  std::size_t count_within(const Vector<double>& center, double radius) const;

  /// Index of the sample point within `tol` (max-norm) of x, if any.
  std::optional<std::size_t> find(const Vector<double>& x, double tol = 1e-9) const;

  /// Distance from x to the closest sample point other than `exclude`.
  double nearest_distance(const Vector<double>& x, std::optional<std::size_t> exclude = std::nullopt) const;

  const PointSample& sample() const { return *sample_; }

 private:
  using Key = std::array<std::int64_t, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  Key key_of(const Vector<double>& x) const;
  template <typename Visit>
  void visit_cells(const Key& lo, const Key& hi, Visit&& visit) const;

  const PointSample* sample_;
  double cell_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<Key, std::pair<std::uint32_t, std::uint32_t>, KeyHash> buckets_;
};

/// Classes of difference vectors, merging vectors that agree to within a
/// tolerance (max-norm). Integral vectors are keyed exactly.
class DifferenceClasses {
 public:
  explicit DifferenceClasses(Eigen::Index dimension, double merge_tol = 1e-9);

  std::size_t classify(const Vector<double>& v);
  std::optional<std::size_t> find(const Vector<double>& v) const;
  const Vector<double>& representative(std::size_t id) const { return reps_[id]; }
  std::size_t size() const { return reps_.size(); }

 private:
  using Key = std::array<std::int64_t, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  Key key_of(const Vector<double>& v) const;
  std::optional<std::size_t> lookup_near(const Key& key, const Vector<double>& v) const;

  Eigen::Index dim_;
  double tol_;
  std::vector<Vector<double>> reps_;
  std::unordered_map<Key, std::size_t, KeyHash> ids_;
};

struct DeloneParams {
  double r_packing = 0.0;
  double R_covering = 0.0;
  double probe_spacing = 0.0;
  std::size_t probe_count = 0;
};

struct DensityTracePoint {
  double radius;
  double value;
};

struct DensityEstimate {
  double value = 0.0;
  double radius_used = 0.0;
  double erosion_margin = 0.0;
  std::size_t center_count = 0;
  bool sup_over_centers = false;
  double grid_spacing = 0.0;
  std::vector<DensityTracePoint> trace;

  /// Heuristic uncertainty: oscillation of the trace over its last two
  /// radii. Not a confidence interval.
  double trace_oscillation() const;
};

DeloneParams delone_parameters(const PointSample& gamma, double probe_spacing);

DensityEstimate density_at(const PointSample& gamma, double radius, const std::vector<Vector<double>>& centers);

/// Density estimates over an increasing list of radii, each the sup over a
/// centered grid of admissible ball centers. The result reports the largest
/// radius; the whole radius -> value trace is kept.
DensityEstimate upper_density(const PointSample& gamma, const std::vector<double>& radii, double center_grid_spacing);

PointSample difference_set(const PointSample& gamma, double cutoff);

struct MeyerReport {
  bool is_uniformly_discrete = false;
  double min_gap = 0.0;
  std::size_t difference_count = 0;
};

inline constexpr double kUniformDiscretenessThreshold = 1e-6;

MeyerReport meyer_check(const PointSample& gamma, double cutoff);

struct PatchDefect {
  Vector<double> v_best;
  /// Symmetric-difference count over the ball volume. Minimised over a
  /// finite candidate set, so an upper bound on the true minimum.
  double defect = 0.0;
  std::size_t candidates = 0;
};

/// `anchors` nearest points of the x-patch are paired with every point of the
/// y-patch to form candidate translations.
PatchDefect patch_defect(const PointSample& gamma, const Vector<double>& x, const Vector<double>& y, double radius,
                         std::size_t anchors = 8);

void write_points(std::ostream& out, const PointSample& sample);
PointSample read_points(std::istream& in, std::string label = {});

// ---------------------------------------------------------------------------

template <typename Visit>
void PointIndex::visit_cells(const Key& lo, const Key& hi, Visit&& visit) const {
  Key cur = lo;
  const auto n = static_cast<std::size_t>(sample_->dimension());
  while (true) {
    if (auto it = buckets_.find(cur); it != buckets_.end()) {
      for (std::uint32_t i = it->second.first; i < it->second.second; ++i) visit(order_[i]);
    }
    std::size_t d = 0;
    for (; d < n; ++d) {
      if (cur[d] < hi[d]) {
        ++cur[d];
        break;
      }
      cur[d] = lo[d];
    }
    if (d == n) return;
  }
}

template <typename Visit>
void PointIndex::for_each_within(const Vector<double>& center, double radius, Visit&& visit) const {
  const Eigen::Index n = sample_->dimension();
  const double r2 = (radius + 1e-9) * (radius + 1e-9);
  const auto check = [&](std::uint32_t i) {
    if ((sample_->points().col(i) - center).squaredNorm() <= r2) visit(static_cast<std::size_t>(i));
  };
  double cells = 1.0;
  for (Eigen::Index d = 0; d < n; ++d) cells *= 2.0 * radius / cell_ + 2.0;
  if (cells > static_cast<double>(sample_->size()) + 16.0) {
    for (std::uint32_t i = 0; i < sample_->size(); ++i) check(i);
    return;
  }
  Key lo{}, hi{};
  for (Eigen::Index d = 0; d < n; ++d) {
    lo[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::floor((center[d] - radius) / cell_));
    hi[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(std::floor((center[d] + radius) / cell_));
  }
  visit_cells(lo, hi, check);
}

}  // namespace meyer
