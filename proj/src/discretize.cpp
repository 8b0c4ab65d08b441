#include "meyer/discretize.hpp"

#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "meyer/convex.hpp"

namespace meyer {

namespace {

constexpr double kOrthogonalityTol = 1e-12;

double snap(double x) {
  for (double target : {-1.0, 0.0, 1.0}) {
    if (std::abs(x - target) < 1e-15) return target;
  }
  return x;
}

/// Points stored coordinate-interleaved: point i occupies [i n, (i+1) n).
using Flat = std::vector<std::int64_t>;

std::int64_t round_half_up(double x) { return static_cast<std::int64_t>(std::floor(x + 0.5)); }

/// A-hat applied to every point, keeping the first occurrence of each image.
Flat push_forward(const Flat& points, Eigen::Index n, const Matrix<double>& a) {
  Flat out;
  out.reserve(points.size());
  const std::size_t count = points.size() / static_cast<std::size_t>(n);
  if (n == 2) {
    const double a00 = a(0, 0), a01 = a(0, 1), a10 = a(1, 0), a11 = a(1, 1);
    std::int64_t reach = 0;
    for (std::int64_t c : points) reach = std::max(reach, std::abs(c));
    // Frobenius norm bounds the operator norm; |x| <= sqrt(2) reach.
    const double norm = a.norm() * std::sqrt(2.0);
    const std::int64_t bound = static_cast<std::int64_t>(std::ceil(norm * static_cast<double>(reach))) + 2;
    const std::int64_t side = 2 * bound + 1;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(side * side), 0);
    for (std::size_t i = 0; i < count; ++i) {
      const double x = static_cast<double>(points[2 * i]);
      const double y = static_cast<double>(points[2 * i + 1]);
      const std::int64_t u = round_half_up(a00 * x + a01 * y);
      const std::int64_t v = round_half_up(a10 * x + a11 * y);
      const std::size_t key = static_cast<std::size_t>((u + bound) * side + (v + bound));
      if (!seen[key]) {
        seen[key] = 1;
        out.push_back(u);
        out.push_back(v);
      }
    }
    return out;
  }
  std::vector<VectorXl> images;
  images.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector<double> x(n);
    for (Eigen::Index d = 0; d < n; ++d) x[d] = static_cast<double>(points[i * n + d]);
    images.push_back(project(a * x));
  }
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return lex_less(images[l], images[r]); });
  for (std::size_t j = 0; j < count; ++j) {
    if (j > 0 && images[order[j]] == images[order[j - 1]]) continue;
    for (Eigen::Index d = 0; d < n; ++d) out.push_back(images[order[j]][d]);
  }
  return out;
}

Flat flatten(const std::vector<VectorXl>& points, Eigen::Index n) {
  Flat out;
  out.reserve(points.size() * static_cast<std::size_t>(n));
  for (const auto& p : points)
    for (Eigen::Index d = 0; d < n; ++d) out.push_back(p[d]);
  return out;
}

std::size_t count_within(const Flat& points, Eigen::Index n, double radius) {
  const double r2 = radius * radius;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < points.size(); i += static_cast<std::size_t>(n)) {
    double s = 0.0;
    for (Eigen::Index d = 0; d < n; ++d) s += static_cast<double>(points[i + d]) * static_cast<double>(points[i + d]);
    if (s <= r2) ++hits;
  }
  return hits;
}

}  // namespace

VectorXl project(const Vector<double>& x) {
  VectorXl out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = round_half_up(x[i]);
  return out;
}

LinearMapSpec LinearMapSpec::general(Matrix<double> matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) throw InputError("linear map must be square");
  LinearMapSpec spec;
  spec.det = matrix.determinant();
  if (!(std::abs(spec.det) > 0.0)) throw InputError("linear map must be invertible");
  spec.matrix = std::move(matrix);
  return spec;
}

LinearMapSpec LinearMapSpec::rotation(double angle) {
  if (!std::isfinite(angle)) throw InputError("rotation angle must be finite");
  const double c = snap(std::cos(angle));
  const double s = snap(std::sin(angle));
  LinearMapSpec spec;
  spec.matrix.resize(2, 2);
  spec.matrix << c, -s, s, c;
  spec.det = c * c + s * s;
  spec.kind = MapKind::Rotation;
  spec.angle = angle;
  return spec;
}

LinearMapSpec LinearMapSpec::identity(Eigen::Index dimension) {
  return general(Matrix<double>::Identity(dimension, dimension));
}

double LinearMapSpec::operator_norm() const {
  if (kind == MapKind::Rotation) return 1.0;
  return Eigen::JacobiSVD<Matrix<double>>(matrix).singularValues()[0];
}

void DiscretizedSequence::validate() const {
  if (maps.empty()) throw InputError("map sequence must be nonempty");
  const Eigen::Index n = maps.front().dimension();
  for (const auto& m : maps) {
    if (m.dimension() != n || m.matrix.cols() != n) throw InputError("maps must share one dimension");
    if (!(std::abs(m.det) > 0.0)) throw InputError("maps must be invertible");
    if (m.kind == MapKind::Rotation) {
      const double err = (m.matrix.transpose() * m.matrix - Matrix<double>::Identity(n, n)).cwiseAbs().maxCoeff();
      if (err > kOrthogonalityTol) throw InputError("rotation matrix is not orthogonal");
    }
  }
}

DiscretizedSequence random_rotation_sequence(std::uint64_t seed, std::size_t k) {
  if (k < 1) throw InputError("sequence length must be positive");
  std::mt19937_64 gen(seed);
  DiscretizedSequence seq;
  seq.seed = seed;
  for (std::size_t i = 0; i < k; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    seq.maps.push_back(LinearMapSpec::rotation(2.0 * std::numbers::pi * u));
  }
  return seq;
}

std::vector<VectorXl> integer_ball(Eigen::Index dimension, double radius) {
  if (dimension < 1) throw InputError("dimension must be positive");
  if (!(radius >= 0.0)) throw InputError("radius must be nonnegative");
  const auto reach = static_cast<std::int64_t>(std::floor(radius));
  const double r2 = radius * radius;
  std::vector<VectorXl> out;
  VectorXl z = VectorXl::Constant(dimension, -reach);
  while (true) {
    double s = 0.0;
    for (Eigen::Index d = 0; d < dimension; ++d) s += static_cast<double>(z[d]) * static_cast<double>(z[d]);
    if (s <= r2) out.push_back(z);
    Eigen::Index d = dimension - 1;
    while (d >= 0 && z[d] == reach) z[d--] = -reach;
    if (d < 0) break;
    ++z[d];
  }
  return out;
}

PointSample discretized_image(const DiscretizedSequence& seq, std::size_t k, double radius) {
  seq.validate();
  if (k < 1 || k > seq.size()) throw InputError("k must lie between 1 and the sequence length");
  const Eigen::Index n = seq.dimension();
  Flat points = flatten(integer_ball(n, radius), n);
  double reach = radius;
  for (std::size_t j = 0; j < k; ++j) {
    points = push_forward(points, n, seq.maps[j].matrix);
    reach = reach * seq.maps[j].operator_norm() + std::sqrt(static_cast<double>(n)) / 2.0;
  }
  const std::size_t count = points.size() / static_cast<std::size_t>(n);
  std::vector<VectorXl> sorted(count);
  for (std::size_t i = 0; i < count; ++i) sorted[i] = Eigen::Map<const VectorXl>(points.data() + i * n, n);
  std::sort(sorted.begin(), sorted.end(), [](const VectorXl& a, const VectorXl& b) { return lex_less(a, b); });
  Matrix<double> m(n, static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) m.col(static_cast<Eigen::Index>(i)) = sorted[i].cast<double>();
  std::ostringstream label;
  label << "discretized image(k=" << k << ",R=" << radius << ")";
  return PointSample(std::move(m), reach * (1.0 + 1e-12) + 1e-9, label.str());
}

InjectivityTrace rate_of_injectivity(const DiscretizedSequence& seq, std::size_t k, const std::vector<double>& radii) {
  seq.validate();
  if (k < 1 || k > seq.size()) throw InputError("k must lie between 1 and the sequence length");
  if (radii.empty()) throw InputError("radius schedule must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw InputError("radii must be positive and increasing");
    }
  }
  const Eigen::Index n = seq.dimension();
  double det = 1.0;
  for (std::size_t j = 0; j < k; ++j) det *= seq.maps[j].det;
  bool unimodular = true;
  for (std::size_t j = 0; j < k; ++j) unimodular = unimodular && std::abs(std::abs(seq.maps[j].det) - 1.0) < 1e-12;

  InjectivityTrace trace;
  trace.radii = radii;
  for (double radius : radii) {
    Flat points = flatten(integer_ball(n, radius), n);
    const std::size_t input = points.size() / static_cast<std::size_t>(n);
    trace.input_counts.push_back(input);
    std::vector<double> tau, dens;
    for (std::size_t j = 0; j < k; ++j) {
      points = push_forward(points, n, seq.maps[j].matrix);
      tau.push_back(static_cast<double>(points.size() / static_cast<std::size_t>(n)) / static_cast<double>(input));
      if (unimodular) {
        const double inner = radius - static_cast<double>(j + 1) * std::sqrt(static_cast<double>(n)) / 2.0;
        const double vol = unit_ball_volume(static_cast<int>(n)) * std::pow(inner, static_cast<double>(n));
        dens.push_back(inner > 0.0 ? std::abs(det) * static_cast<double>(count_within(points, n, inner)) / vol : 0.0);
      }
    }
    trace.tau.push_back(std::move(tau));
    if (unimodular) trace.density_estimate.push_back(std::move(dens));
  }
  trace.note = "finite-radius estimates; stability across radii is reported, no limit is extrapolated";
  return trace;
}

SeedDifference seed_difference(const FrequencyTable& table, double density) {
  if (!(density > 0.0)) throw InputError("density must be positive");
  if (!table.is_integral()) throw InputError("seed difference needs a table supported on Z^n");
  SeedDifference out;
  out.r = std::max(3.0, std::sqrt(8.0 / (std::numbers::pi * density)));
  if (table.cutoff < out.r * (1.0 - 1e-12)) throw InputError("table cutoff is smaller than the seed radius");
  const double r2 = out.r * out.r * (1.0 + 1e-12);
  bool found = false;
  double best_norm = 0.0;
  for (const auto& e : table.entries) {
    const double s = e.v.squaredNorm();
    if (s == 0.0 || s > r2) continue;
    out.mass += e.rho;
    const bool wins = !found || e.rho > out.rho0 ||
                      (e.rho == out.rho0 && (s < best_norm || (s == best_norm && lex_less(e.v, out.u0.cast<double>()))));
    if (wins) {
      found = true;
      out.rho0 = e.rho;
      best_norm = s;
      out.u0 = e.v.unaryExpr([](double x) { return static_cast<std::int64_t>(std::llround(x)); });
    }
  }
  if (!found) throw InputError("no nonzero difference inside the seed ball");
  out.rho_floor = 1.0 / (std::numbers::pi * (out.r + 1.0) * (out.r + 1.0));
  out.density_floor = density / 16.0;
  out.sampling_uncertainty = table.density.trace_oscillation() / density;
  out.mass_ok = out.mass >= 1.0 - out.sampling_uncertainty;
  out.rho_ok = out.rho0 >= out.rho_floor - out.sampling_uncertainty;
  return out;
}

Raster read_pgm(std::istream& in) {
  const auto token = [&in]() {
    std::string word;
    char c = 0;
    while (in.get(c)) {
      if (c == '#') {
        while (in.get(c) && c != '\n') {
        }
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!word.empty()) break;
        continue;
      }
      word += c;
    }
    return word;
  };
  if (token() != "P5") throw InputError("image is not a binary PGM (P5)");
  Raster image;
  try {
    image.width = std::stoi(token());
    image.height = std::stoi(token());
    if (std::stoi(token()) != 255) throw InputError("PGM maxval must be 255");
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InputError*>(&e)) throw;
    throw InputError("malformed PGM header");
  }
  if (image.width <= 0 || image.height <= 0) throw InputError("PGM image must be nonempty");
  image.pixels.resize(static_cast<std::size_t>(image.width) * image.height);
  in.read(reinterpret_cast<char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels.size())) throw InputError("PGM pixel data is truncated");
  return image;
}

void write_pgm(std::ostream& out, const Raster& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

DegradeResult degrade_image(const Raster& image, const DiscretizedSequence& seq, std::size_t k) {
  seq.validate();
  if (seq.dimension() != 2) throw InputError("image pipeline needs planar maps");
  if (k > seq.size()) throw InputError("k exceeds the sequence length");
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw InputError("image must be nonempty");
  }
  const int w = image.width, h = image.height;
  const int cx = w / 2, cy = h / 2;
  // Alive pixels by current frame position, row-major; value or -1.
  std::vector<int> current(image.pixels.begin(), image.pixels.end());
  DegradeResult result;
  const double total = static_cast<double>(current.size());
  for (std::size_t j = 0; j < k; ++j) {
    const Matrix<double>& a = seq.maps[j].matrix;
    std::vector<int> next(current.size(), -1);
    std::size_t alive = 0;
    for (int row = 0; row < h; ++row) {
      for (int col = 0; col < w; ++col) {
        const int value = current[static_cast<std::size_t>(row) * w + col];
        if (value < 0) continue;
        const double x = col - cx, y = cy - row;
        const std::int64_t u = round_half_up(a(0, 0) * x + a(0, 1) * y);
        const std::int64_t v = round_half_up(a(1, 0) * x + a(1, 1) * y);
        const std::int64_t c2 = u + cx, r2 = cy - v;
        if (c2 < 0 || c2 >= w || r2 < 0 || r2 >= h) continue;
        int& slot = next[static_cast<std::size_t>(r2) * w + static_cast<std::size_t>(c2)];
        if (slot < 0) {
          slot = value;
          ++alive;
        }
      }
    }
    current = std::move(next);
    result.lost.push_back(1.0 - static_cast<double>(alive) / total);
  }
  result.image.width = w;
  result.image.height = h;
  result.image.pixels.resize(current.size());
  for (std::size_t i = 0; i < current.size(); ++i) {
    result.image.pixels[i] = current[i] < 0 ? 255 : static_cast<std::uint8_t>(current[i]);
  }
  return result;
}

DegradeResult degrade_image(const Raster& image, const DiscretizedSequence& seq) {
  return degrade_image(image, seq, seq.size());
}

Raster test_raster(int width, int height) {
  if (width <= 0 || height <= 0) throw InputError("raster must be nonempty");
  Raster image;
  image.width = width;
  image.height = height;
  image.pixels.resize(static_cast<std::size_t>(width) * height);
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      int value = (col * 200) / width + (row * 40) / height;
      const int dx = col - width / 3, dy = row - height / 3;
      if (dx * dx + dy * dy < (width / 6) * (width / 6)) value = 20;
      const int ex = col - 2 * width / 3, ey = row - 2 * height / 3;
      if (ex * ex + 4 * ey * ey < (width / 5) * (width / 5)) value = 235;
      if ((row / 7) % 5 == 0 && col > width / 2) value = (value + 128) % 240;
      image.at(row, col) = static_cast<std::uint8_t>(std::clamp(value, 0, 254));
    }
  }
  return image;
}

}  // namespace meyer
