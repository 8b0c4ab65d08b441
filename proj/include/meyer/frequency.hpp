#pragma once

// Frequencies of differences rho(v): the share of points x of a sample for
// which x + v is also a point. Numerator and denominator are counted over the
// same eroded ball B(0, R); the partner x + v may lie anywhere in the sample,
// which is why R + |v| must fit inside the sampled region.

#include <iosfwd>

#include "meyer/pointset.hpp"

namespace meyer {

enum class Estimator {
  /// #{x in B(0,R) : x + v in sample} / #(sample in B(0,R))
  OneSided,
  /// Average of the one-sided estimates for v and -v; symmetric in v exactly.
  Symmetric,
};

double frequency(const PointSample& gamma, const Vector<double>& v, double radius,
                 Estimator estimator = Estimator::OneSided);

struct FrequencyEntry {
  Vector<double> v;
  double rho = 0.0;
};

struct FrequencyTable {
  Eigen::Index dimension = 0;
  /// Sorted lexicographically by v.
  std::vector<FrequencyEntry> entries;
  DensityEstimate density;
  double cutoff = 0.0;
  double estimation_radius = 0.0;
  double erosion_margin = 0.0;
  std::size_t base_count = 0;
  /// Whether every coordinate of the source sample was an integer.
  bool source_integral = false;
  std::string source_label;
  /// Copied from the source sample when it was built as a periodic set.
  std::optional<PeriodicStructure> periodic;

  /// rho at v (merging within 1e-9), zero when v is not a realized difference.
  double rho(const Vector<double>& v) const;
  /// True when every entry has integer coordinates.
  bool is_integral() const;
};

/// Symmetric-estimator table over every difference realized within `cutoff`
/// by a point of B(0, radius).
FrequencyTable frequency_table(const PointSample& gamma, double cutoff, double radius);

struct MeanFrequency {
  double mean = 0.0;
  double max_deviation = 0.0;  // max over centers of |value - mean|
  std::vector<double> per_center;
};

/// Average of rho over balls B(c, r): sum of rho(v) for table entries in the
/// ball, divided by the ball volume. Every ball must lie inside the cutoff.
MeanFrequency mean_frequency(const FrequencyTable& table, double ball_radius, const std::vector<Vector<double>>& centers);

void write_table(std::ostream& out, const FrequencyTable& table);
FrequencyTable read_table(std::istream& in);

}  // namespace meyer
