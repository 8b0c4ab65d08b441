#pragma once

// Discretized linear maps on Z^n: A-hat = pi o A with pi the coordinatewise
// rounding, their compositions, the rate of injectivity and the image
// degradation pipeline on grayscale rasters.

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "meyer/frequency.hpp"
#include "meyer/pointset.hpp"

namespace meyer {

/// Nearest integer point; ties go toward +infinity in every coordinate.
VectorXl project(const Vector<double>& x);

enum class MapKind { General, Rotation };

struct LinearMapSpec {
  Matrix<double> matrix;
  double det = 0.0;
  MapKind kind = MapKind::General;
  /// Rotation angle in radians (rotation kind only).
  double angle = 0.0;

  static LinearMapSpec general(Matrix<double> matrix);
  /// Planar rotation. Angles within 1e-15 of a multiple of pi/2 get exact
  /// 0/+-1 entries.
  static LinearMapSpec rotation(double angle);
  static LinearMapSpec identity(Eigen::Index dimension);

  Eigen::Index dimension() const { return matrix.rows(); }
  double operator_norm() const;
};

struct DiscretizedSequence {
  std::vector<LinearMapSpec> maps;
  std::optional<std::uint64_t> seed;

  Eigen::Index dimension() const { return maps.front().dimension(); }
  std::size_t size() const { return maps.size(); }
  void validate() const;
};

/// k rotations of the plane with angles 2 pi (g >> 11) 2^-53, g drawn from
/// std::mt19937_64 seeded with `seed`.
DiscretizedSequence random_rotation_sequence(std::uint64_t seed, std::size_t k);

/// Integer points of the closed ball B(0, R), lexicographically ordered.
std::vector<VectorXl> integer_ball(Eigen::Index dimension, double radius);

/// Image of B_R cap Z^n under A-hat_k o ... o A-hat_1, deduplicated. The
/// region radius is inflated by the operator norms and the rounding steps.
PointSample discretized_image(const DiscretizedSequence& seq, std::size_t k, double radius);

struct InjectivityTrace {
  std::vector<double> radii;
  std::vector<std::size_t> input_counts;
  /// tau[i][j] = #image after j+1 maps / #input, at radii[i].
  std::vector<std::vector<double>> tau;
  /// For |det| = 1 sequences: |det| times the density of the j-map image in
  /// B(0, R - (j+1) sqrt(n)/2), where it coincides with the image of Z^n.
  std::vector<std::vector<double>> density_estimate;
  std::string note;
};

InjectivityTrace rate_of_injectivity(const DiscretizedSequence& seq, std::size_t k, const std::vector<double>& radii);

struct SeedDifference {
  VectorXl u0;
  double rho0 = 0.0;
  double r = 0.0;
  /// Sum of rho over B(0, r) without the origin; at least 1 in theory.
  double mass = 0.0;
  /// 1 / (pi (r+1)^2): what mass >= 1 forces on the largest term.
  double rho_floor = 0.0;
  /// D / 16.
  double density_floor = 0.0;
  /// Density-trace oscillation relative to the density (heuristic).
  double sampling_uncertainty = 0.0;
  bool mass_ok = false;
  bool rho_ok = false;
};

/// r = max(3, sqrt(8 / (pi D))); u0 maximizes rho over nonzero integer
/// differences in B(0, r) (ties: shorter, then lexicographically smaller).
SeedDifference seed_difference(const FrequencyTable& table, double density);

/// 8-bit grayscale image, row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
  bool operator==(const Raster&) const = default;
};

Raster read_pgm(std::istream& in);
void write_pgm(std::ostream& out, const Raster& image);

struct DegradeResult {
  Raster image;
  /// lost[j] = share of frame pixels with no surviving source after j+1 maps.
  std::vector<double> lost;
};

/// Pushes pixel centres, with coordinates x = col - W/2 and y = H/2 - row,
/// through the first k rounded maps. Only pixels still in the frame move on
/// to the next map; on collisions the first pixel in row-major order of its
/// current position wins. Unhit pixels are white.
DegradeResult degrade_image(const Raster& image, const DiscretizedSequence& seq, std::size_t k);
DegradeResult degrade_image(const Raster& image, const DiscretizedSequence& seq);

/// A deterministic synthetic test raster: gradients, discs and stripes.
Raster test_raster(int width = 220, int height = 282);

}  // namespace meyer
