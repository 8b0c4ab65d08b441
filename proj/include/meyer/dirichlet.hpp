#pragma once

// Simultaneous approximation of slopes by differences of a weakly almost
// periodic set. Points are written (x_1, ..., x_n, y); the body is
// |x_i - alpha_i y| <= Q^{-1/n} and |y| <= 2Q / D.

#include <string>
#include <vector>

#include "meyer/convex.hpp"
#include "meyer/frequency.hpp"
#include "meyer/pointset.hpp"

namespace meyer {

struct ApproximationQuery {
  /// Exact value of the decimal literals the slopes were given as.
  VectorXr alpha;
  Rational q;
  /// D(Gamma) of the sample.
  Rational density;
  PointSample gamma;

  /// Parses slopes and parameters from decimal text; irrational slopes
  /// should be given with 30 digits or more.
  static ApproximationQuery parse(const std::vector<std::string>& alpha, std::string_view q, std::string_view density,
                                  PointSample gamma);

  Eigen::Index n() const { return alpha.size(); }
  /// Throws unless Q > 1, D > 0 and the sample lives in dimension n + 1.
  void validate() const;
  /// A_1 = ... = A_n = Q^{-1/n} (exact for n = 1, 50 digits otherwise) and
  /// A_{n+1} = 2Q / D.
  VectorXr bounds() const;
};

/// The slab intersection of the query. Its forms have determinant 1.
ConvexBody<Rational> slab_body(const ApproximationQuery& query);

struct GuaranteedMass {
  /// Sum of rho(u) over table entries u != 0 in the slab body.
  double empirical = 0.0;
  /// D Vol(S/2) - 1, the lower bound left after removing u = 0.
  double floor = 0.0;
  std::size_t terms = 0;
};

GuaranteedMass guaranteed_mass(const ApproximationQuery& query, const FrequencyTable& table);

struct SlopeWitness {
  Vector<double> v;
  Vector<double> w;
  /// u = v - w, normalized so that its last coordinate is positive.
  Vector<double> u;
  /// |alpha_i - u_i / u_y|, evaluated exactly against the decimal slopes.
  std::vector<double> errors;
  /// 2^{1/n} D^{-1/n} |u_y|^{-1-1/n}.
  std::vector<double> bounds;
  /// D 2^{1/n} / (4Q)^{1+1/n}; informational, not certified.
  double q_form_bound = 0.0;
  bool certified = false;
  /// True when the double-precision slab test disagrees with the exact one.
  bool borderline = false;
  /// gcd of the coordinates of u is 1 (integer u only; reported, not enforced).
  bool primitive = false;
};

/// Raised when the sample holds no difference inside the slab body.
class WitnessNotFound : public InputError {
 public:
  WitnessNotFound(const std::string& message, VectorXr bounds, double sample_radius)
      : InputError(message), bounds_(std::move(bounds)), sample_radius_(sample_radius) {}
  const VectorXr& bounds() const { return bounds_; }
  double sample_radius() const { return sample_radius_; }

 private:
  VectorXr bounds_;
  double sample_radius_;
};

/// Smallest positive u_y first, then lexicographic u; among the pairs
/// realizing u, the lexicographically smallest w.
SlopeWitness find_witness(const ApproximationQuery& query);

std::string format_witness(const SlopeWitness& witness);

}  // namespace meyer
