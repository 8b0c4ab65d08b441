#include "meyer/minkowski.hpp"

#include <sstream>

#include "meyer/enumerate.hpp"
#include "meyer/modelset.hpp"

namespace meyer {

namespace {

using boost::multiprecision::mpz_int;

mpz_int ceil_rational(const Rational& r) {
  const mpz_int num = boost::multiprecision::numerator(r);
  const mpz_int den = boost::multiprecision::denominator(r);  // positive
  mpz_int q = num / den;                                       // truncates toward zero
  if (q * den != num && num > 0) q += 1;
  return q;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

Matrix<double> to_double_matrix(const MatrixXr& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
  return out;
}

std::vector<VectorXr> integer_points(const ConvexBody<Rational>& body) { return integer_points_in<Rational>(body); }

void require_inside_cutoff(const FrequencyTable& table, const ConvexBody<Rational>& body) {
  if (body.dimension() != table.dimension) throw InputError("body dimension does not match the table");
  if (body.circumradius() > table.cutoff * (1.0 + 1e-12) + 1e-9) {
    throw InputError("body exceeds the table cutoff; the sum would be silently truncated");
  }
}

/// Realized differences of a periodic set inside `body`, exact and sorted.
std::vector<VectorXr> periodic_differences_in(const PeriodicStructure& p, const ConvexBody<Rational>& body) {
  const Eigen::Index n = p.dimension();
  const Matrix<double> b = to_double_matrix(p.period_basis);
  const double reach = body.circumradius() * (1.0 + 1e-9) + 1e-9;
  std::vector<VectorXr> found;
  for (const auto& oi : p.offsets) {
    for (const auto& oj : p.offsets) {
      const VectorXr delta = oj - oi;
      Vector<double> lo(n), hi(n);
      for (Eigen::Index d = 0; d < n; ++d) {
        lo[d] = -reach - to_double(delta[d]);
        hi[d] = reach - to_double(delta[d]);
      }
      enumerate_box_preimage(b, lo, hi, [&](const VectorXl& z, const Vector<double>&) {
        VectorXr u = apply<Rational>(p.period_basis, z);
        for (Eigen::Index d = 0; d < n; ++d) u[d] += delta[d];
        if (body.contains(u)) found.push_back(std::move(u));
      });
    }
  }
  std::sort(found.begin(), found.end(), [](const VectorXr& a, const VectorXr& c) { return lex_less(a, c); });
  found.erase(std::unique(found.begin(), found.end(), [](const VectorXr& a, const VectorXr& c) { return a == c; }),
              found.end());
  return found;
}

void finish(MinkowskiReport& report) {
  if (report.exact_lhs && report.exact_rhs) {
    const Rational margin = *report.exact_lhs - *report.exact_rhs;
    report.margin = to_double(margin);
    report.pass = margin >= 0;
  } else {
    report.margin = report.lhs - report.rhs;
    report.pass = report.margin >= -report.sampling_uncertainty;
  }
}

MinkowskiReport sampled_report(const FrequencyTable& table, const ConvexBody<Rational>& body, double factor,
                               MinkowskiMode mode) {
  const ConvexBody<double> s = body.cast<double>();
  MinkowskiReport report;
  report.mode = mode;
  for (const auto& e : table.entries) {
    if (s.contains(e.v)) {
      report.lhs += e.rho;
      ++report.terms;
    }
  }
  report.rhs = table.density.value * factor;
  report.sampling_uncertainty = table.density.trace_oscillation() * factor;
  finish(report);
  return report;
}

}  // namespace

ClassicalReport classical_bound_check(const MatrixXr& basis, const ConvexBody<Rational>& body) {
  if (basis.rows() != basis.cols() || basis.rows() != body.dimension()) {
    throw InputError("lattice basis must be square and match the body dimension");
  }
  const Rational det = abs_value(determinant<Rational>(basis));
  if (det == 0) throw InputError("lattice basis is singular");
  const auto points = lattice_points_in<Rational>(basis, body);

  ClassicalReport report;
  report.count = points.size() - 1;  // the origin is always inside
  const ConvexBody<Rational> half = body.scaled(Rational(1, 2));
  std::int64_t ceiling = 0;
  if (body.kind() == BodyKind::Ball) {
    const double dv = half.volume() / to_double(det);
    report.density_times_half_volume = dv;
    ceiling = static_cast<std::int64_t>(std::ceil(dv));
  } else {
    const Rational dv = half.polyhedral_volume() / det;
    report.density_times_half_volume = to_double(dv);
    ceiling = ceil_rational(dv).convert_to<std::int64_t>();
  }
  report.bound = 2 * ceiling - 1;
  // Vol(S/2) > k covol holds exactly for k < D Vol(S/2), i.e. k <= ceil - 1.
  report.k = std::max<std::int64_t>(ceiling - 1, 0);
  const auto with_origin = static_cast<std::int64_t>(points.size());
  report.pass = with_origin >= report.bound && static_cast<std::int64_t>(report.count) >= 2 * report.k;
  return report;
}

Rational periodic_frequency(const PeriodicStructure& periodic, const VectorXr& u) {
  std::size_t hits = 0;
  for (const auto& o : periodic.offsets) {
    if (periodic.contains(VectorXr(o + u))) ++hits;
  }
  return Rational(hits) / Rational(periodic.offsets.size());
}

MinkowskiReport verify_periodic(const PeriodicStructure& periodic, const ConvexBody<Rational>& body,
                                MinkowskiMode mode) {
  if (body.dimension() != periodic.dimension()) throw InputError("body dimension does not match the set");
  const Rational density = periodic.density();
  MinkowskiReport report;
  report.mode = mode;
  Rational lhs(0);
  for (const auto& u : periodic_differences_in(periodic, body)) {
    lhs += periodic_frequency(periodic, u);
    ++report.terms;
  }
  report.exact_lhs = lhs;
  report.lhs = to_double(lhs);

  const ConvexBody<Rational> half = body.scaled(Rational(1, 2));
  if (mode == MinkowskiMode::Integer) {
    for (Eigen::Index r = 0; r < periodic.period_basis.rows(); ++r) {
      for (Eigen::Index c = 0; c < periodic.period_basis.cols(); ++c) {
        if (!is_integer(periodic.period_basis(r, c))) throw InputError("integer mode needs a set inside Z^n");
      }
    }
    for (const auto& o : periodic.offsets) {
      for (Eigen::Index d = 0; d < o.size(); ++d) {
        if (!is_integer(o[d])) throw InputError("integer mode needs a set inside Z^n");
      }
    }
    report.exact_rhs = density * Rational(integer_points(half).size());
    report.rhs = to_double(*report.exact_rhs);
  } else if (body.kind() == BodyKind::Ball) {
    report.rhs = to_double(density) * half.volume();
  } else {
    report.exact_rhs = density * half.polyhedral_volume();
    report.rhs = to_double(*report.exact_rhs);
  }
  finish(report);
  return report;
}

MinkowskiReport verify_inequality(const FrequencyTable& table, const ConvexBody<Rational>& body) {
  require_inside_cutoff(table, body);
  if (table.periodic) return verify_periodic(*table.periodic, body, MinkowskiMode::Continuous);
  return sampled_report(table, body, body.scaled(Rational(1, 2)).volume(), MinkowskiMode::Continuous);
}

MinkowskiReport verify_integer_inequality(const FrequencyTable& table, const ConvexBody<Rational>& body) {
  require_inside_cutoff(table, body);
  if (!table.source_integral) throw InputError("integer mode needs a sample with integer coordinates");
  if (table.periodic) return verify_periodic(*table.periodic, body, MinkowskiMode::Integer);
  const double count = static_cast<double>(integer_points(body.scaled(Rational(1, 2))).size());
  return sampled_report(table, body, count, MinkowskiMode::Integer);
}

EqualityInstance equality_instance(int k, double radius) {
  if (k < 3 || k % 2 == 0) throw InputError("equality instance needs an odd k >= 3");
  const Rational kk(k);
  Matrix<Rational> v(2, 6);
  if (k == 3) {
    const Rational a(11, 5), b(1, 10), c(6, 5);
    v << a, a, Rational(1), -a, -a, Rational(-1),  //
        -b, c, c, b, -c, -c;
  } else {
    // Right side at x = k - 4/5; the upper slanted edge runs from
    // (-(k - 4/5), 1/10) through (1/2, 1) up to the top edge y = 6/5.
    const Rational side = kk - Rational(4, 5);
    const Rational top_x = Rational(1, 2) + (Rational(2) * kk - Rational(3, 5)) / Rational(9);
    v << side, side, top_x, -side, -side, -top_x,  //
        Rational(-1, 10), Rational(6, 5), Rational(6, 5), Rational(1, 10), Rational(-6, 5), Rational(-6, 5);
  }
  const ConvexBody<Rational> body = ConvexBody<Rational>::polygon(v);

  std::vector<VectorXr> expected;
  for (int i = -(k - 1); i <= k - 1; ++i) expected.push_back((VectorXr(2) << Rational(i), Rational(0)).finished());
  for (int i = 1; i <= k - 1; ++i) {
    expected.push_back((VectorXr(2) << Rational(i), Rational(1)).finished());
    expected.push_back((VectorXr(2) << Rational(-i), Rational(-1)).finished());
  }
  std::sort(expected.begin(), expected.end(), [](const VectorXr& a, const VectorXr& c) { return lex_less(a, c); });
  if (integer_points(body) != expected) throw std::logic_error("equality hexagon: S cap Z^2 differs from the listed set");
  if (integer_points(body.scaled(Rational(1, 2))).size() != static_cast<std::size_t>(k)) {
    throw std::logic_error("equality hexagon: S/2 cap Z^2 does not have k points");
  }

  MatrixXr basis = MatrixXr::Identity(2, 2);
  basis(0, 0) = kk;
  if (lattice_points_in<Rational>(basis, body).size() != 1) {
    throw std::logic_error("equality hexagon: S meets kZ x Z outside the origin");
  }
  return {lattice_sample(basis, radius), body};
}

std::string format_report(const MinkowskiReport& report) {
  std::ostringstream out;
  out << "mode=" << (report.mode == MinkowskiMode::Integer ? "integer" : "continuous") << '\n';
  out << "lhs=" << format_double(report.lhs) << '\n';
  out << "rhs=" << format_double(report.rhs) << '\n';
  out << "margin=" << format_double(report.margin) << '\n';
  out << "pass=" << (report.pass ? "true" : "false") << '\n';
  out << "terms=" << report.terms << '\n';
  if (report.exact_lhs) out << "exact_lhs=" << report.exact_lhs->str() << '\n';
  if (report.exact_rhs) out << "exact_rhs=" << report.exact_rhs->str() << '\n';
  if (report.exact_lhs && report.exact_rhs) out << "exact_margin=" << (*report.exact_lhs - *report.exact_rhs).str() << '\n';
  out << "sampling_uncertainty=" << format_double(report.sampling_uncertainty)
      << " (heuristic: density-trace oscillation, not a confidence bound)\n";
  return out.str();
}

}  // namespace meyer
