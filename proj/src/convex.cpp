#include "meyer/convex.hpp"

#include <sstream>

namespace meyer {

double unit_ball_volume(int n) {
  if (n < 1) throw InputError("unit ball dimension must be at least 1");
  // mu_n = 2 pi mu_{n-2} / n, seeded by mu_1 = 2 and mu_2 = pi.
  double mu = (n % 2 == 1) ? 2.0 : std::numbers::pi;
  for (int k = (n % 2 == 1) ? 3 : 4; k <= n; k += 2) mu *= 2.0 * std::numbers::pi / k;
  return mu;
}

namespace {

std::string_view strip_key(std::string_view part, std::string_view key) {
  if (part.substr(0, key.size()) != key) throw InputError("expected '" + std::string(key) + "' in body spec");
  return part.substr(key.size());
}

}  // namespace

ConvexBody<Rational> parse_body(std::string_view text, Eigen::Index ball_dimension) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("body spec needs a kind prefix: '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "ball") {
    return ConvexBody<Rational>::ball(ball_dimension, parse_rational(strip_key(rest, "r=")));
  }
  if (kind == "slab") {
    const auto sep = rest.find(":A=");
    if (sep == std::string_view::npos) throw InputError("slab spec needs ':A=' bounds");
    MatrixXr forms = parse_matrix(strip_key(rest.substr(0, sep), "L="));
    VectorXr bounds = parse_vector(rest.substr(sep + 3));
    return ConvexBody<Rational>::slab(std::move(forms), std::move(bounds));
  }
  if (kind == "poly") {
    const MatrixXr rows = parse_matrix(rest);
    if (rows.cols() != 2) throw InputError("polygon vertices must be planar");
    return ConvexBody<Rational>::polygon(rows.transpose());
  }
  throw InputError("unknown body kind '" + std::string(kind) + "'");
}

std::string describe(const ConvexBody<Rational>& body) {
  std::ostringstream out;
  switch (body.kind()) {
    case BodyKind::Ball:
      out << "ball:r=" << body.radius();
      break;
    case BodyKind::Slab:
      out << "slab:L=";
      for (Eigen::Index r = 0; r < body.forms().rows(); ++r) {
        if (r) out << ';';
        for (Eigen::Index c = 0; c < body.forms().cols(); ++c) out << (c ? "," : "") << body.forms()(r, c);
      }
      out << ":A=";
      for (Eigen::Index i = 0; i < body.bounds().size(); ++i) out << (i ? "," : "") << body.bounds()[i];
      break;
    case BodyKind::Polygon:
      out << "poly:";
      for (Eigen::Index c = 0; c < body.vertices().cols(); ++c) {
        out << (c ? ";" : "") << body.vertices()(0, c) << ',' << body.vertices()(1, c);
      }
      break;
  }
  return out.str();
}

}  // namespace meyer
