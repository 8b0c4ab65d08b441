#pragma once

// Minkowski-type inequalities. The classical statement on lattices is
// checked by exact enumeration; the frequency form sum_{u in S} rho(u) >=
// D * Vol(S/2) (continuous mode) or D * #(S/2 cap Z^n) (integer mode) is
// checked on frequency tables, exactly when the source carries periodic
// structure and with a heuristic sampling uncertainty otherwise.

#include <optional>

#include "meyer/convex.hpp"
#include "meyer/frequency.hpp"
#include "meyer/pointset.hpp"

namespace meyer {

struct ClassicalReport {
  /// #(S cap Lambda \ {0}).
  std::size_t count = 0;
  /// 2 ceil(D Vol(S/2)) - 1, a lower bound for #(S cap Lambda) including 0.
  std::int64_t bound = 0;
  /// Largest k with Vol(S/2) > k covol; the theorem promises 2k nonzero points.
  std::int64_t k = 0;
  double density_times_half_volume = 0.0;
  bool pass = false;
};

ClassicalReport classical_bound_check(const MatrixXr& basis, const ConvexBody<Rational>& body);

enum class MinkowskiMode { Continuous, Integer };

struct MinkowskiReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  /// Density-trace oscillation times the rhs volume factor. A heuristic, not
  /// a confidence bound; zero on the exact periodic path.
  double sampling_uncertainty = 0.0;
  MinkowskiMode mode = MinkowskiMode::Continuous;
  std::size_t terms = 0;
  /// Set on the exact periodic path. rhs is exact unless it involves the
  /// volume of a ball.
  std::optional<Rational> exact_lhs;
  std::optional<Rational> exact_rhs;
};

MinkowskiReport verify_inequality(const FrequencyTable& table, const ConvexBody<Rational>& body);
MinkowskiReport verify_integer_inequality(const FrequencyTable& table, const ConvexBody<Rational>& body);

/// Exact evaluation of both sides on one period of a periodic set.
MinkowskiReport verify_periodic(const PeriodicStructure& periodic, const ConvexBody<Rational>& body,
                                MinkowskiMode mode);

/// Exact frequency of u in a periodic set: the share of offsets o with
/// o + u in the set.
Rational periodic_frequency(const PeriodicStructure& periodic, const VectorXr& u);

struct EqualityInstance {
  PointSample gamma;
  ConvexBody<Rational> body;
};

/// (kZ x Z) cap B(0, radius) with a symmetric hexagon S such that S cap Z^2
/// is {(i,0) : |i| <= k-1} together with +-{(i,1) : 1 <= i <= k-1}. For k = 3
/// the hexagon is the drawn one. The intersection lists are validated by
/// enumeration before returning. k must be odd and at least 3.
EqualityInstance equality_instance(int k, double radius = 40.0);

std::string format_report(const MinkowskiReport& report);

}  // namespace meyer
