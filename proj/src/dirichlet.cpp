#include "meyer/dirichlet.hpp"

#include <numeric>
#include <optional>
#include <sstream>

#include "meyer/enumerate.hpp"

namespace meyer {

namespace {

Rational to_rational(double x) { return Rational(x); }

VectorXr to_rational(const Vector<double>& x) {
  VectorXr out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = to_rational(x[i]);
  return out;
}

Float50 to_float50(const Rational& r) { return Float50(r); }

struct Candidate {
  Vector<double> u;
  std::size_t w = 0;
};

/// Smallest positive u_y first, then lexicographic u, then lexicographic w.
bool better(const Candidate& a, const Candidate& b, const PointSample& gamma) {
  const Eigen::Index y = a.u.size() - 1;
  if (a.u[y] != b.u[y]) return a.u[y] < b.u[y];
  if (a.u != b.u) return lex_less(a.u, b.u);
  return lex_less(gamma.point(a.w), gamma.point(b.w));
}

std::optional<Candidate> integral_search(const ApproximationQuery& query, const ConvexBody<Rational>& body) {
  const PointSample& gamma = query.gamma;
  const Eigen::Index y = query.n();
  std::vector<VectorXr> slab_points = integer_points_in<Rational>(body);
  std::vector<Vector<double>> candidates;
  for (const auto& p : slab_points) {
    if (p[y] > 0) {
      Vector<double> u(p.size());
      for (Eigen::Index i = 0; i < p.size(); ++i) u[i] = to_double(p[i]);
      candidates.push_back(std::move(u));
    }
  }
  std::sort(candidates.begin(), candidates.end(), [y](const Vector<double>& a, const Vector<double>& b) {
    if (a[y] != b[y]) return a[y] < b[y];
    return lex_less(a, b);
  });
  // Sample points are stored in lexicographic order, so the first hit in
  // index order is the lexicographically smallest w.
  std::vector<std::size_t> order(gamma.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(gamma.point(a), gamma.point(b)); });
  const PointIndex index(gamma, 1.0);
  for (const auto& u : candidates) {
    for (std::size_t w : order) {
      if (index.find(gamma.point(w) + u, 0.0)) return Candidate{u, w};
    }
  }
  return std::nullopt;
}

std::optional<Candidate> pair_search(const ApproximationQuery& query, const ConvexBody<Rational>& body) {
  const PointSample& gamma = query.gamma;
  const Eigen::Index y = query.n();
  const ConvexBody<double> loose = body.cast<double>();
  const double reach = body.circumradius() * (1.0 + 1e-9) + 1e-9;
  const PointIndex index(gamma, std::max(reach / 4.0, 1e-3));
  std::optional<Candidate> best;
  for (std::size_t w = 0; w < gamma.size(); ++w) {
    const Vector<double> pw = gamma.point(w);
    index.for_each_within(pw, reach, [&](std::size_t v) {
      Candidate c{gamma.point(v) - pw, w};
      if (!(c.u[y] > 0.0) || !loose.contains(c.u)) return;
      if (best && !better(c, *best, gamma)) return;
      // Exact differences of the stored doubles.
      const VectorXr exact = to_rational(Vector<double>(gamma.point(v))) - to_rational(pw);
      if (body.contains(exact)) best = c;
    });
  }
  return best;
}

}  // namespace

ApproximationQuery ApproximationQuery::parse(const std::vector<std::string>& alpha, std::string_view q,
                                             std::string_view density, PointSample gamma) {
  VectorXr a(static_cast<Eigen::Index>(alpha.size()));
  for (std::size_t i = 0; i < alpha.size(); ++i) a[static_cast<Eigen::Index>(i)] = parse_rational(alpha[i]);
  ApproximationQuery query{a, parse_rational(q), parse_rational(density), std::move(gamma)};
  query.validate();
  return query;
}

void ApproximationQuery::validate() const {
  if (alpha.size() < 1) throw InputError("at least one slope is required");
  if (!(q > 1)) throw InputError("Q must exceed 1");
  if (!(density > 0)) throw InputError("density must be positive");
  if (gamma.dimension() != alpha.size() + 1) throw InputError("sample dimension must be the number of slopes plus one");
}

VectorXr ApproximationQuery::bounds() const {
  const Eigen::Index dim = n();
  VectorXr a(dim + 1);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (dim == 1) {
      a[i] = Rational(1) / q;
    } else {
      a[i] = Rational(boost::multiprecision::pow(to_float50(q), Float50(-1) / Float50(dim)));
    }
  }
  a[dim] = Rational(2) * q / density;
  return a;
}

ConvexBody<Rational> slab_body(const ApproximationQuery& query) {
  query.validate();
  const Eigen::Index dim = query.n();
  MatrixXr forms = MatrixXr::Identity(dim + 1, dim + 1);
  for (Eigen::Index i = 0; i < dim; ++i) forms(i, dim) = -query.alpha[i];
  return ConvexBody<Rational>::slab(forms, query.bounds());
}

GuaranteedMass guaranteed_mass(const ApproximationQuery& query, const FrequencyTable& table) {
  const ConvexBody<Rational> body = slab_body(query);
  if (table.dimension != body.dimension()) throw InputError("table dimension does not match the query");
  if (body.circumradius() > table.cutoff * (1.0 + 1e-12) + 1e-9) {
    throw InputError("slab body exceeds the table cutoff");
  }
  const ConvexBody<double> s = body.cast<double>();
  GuaranteedMass mass;
  for (const auto& e : table.entries) {
    if (e.v.cwiseAbs().maxCoeff() <= 1e-9) continue;
    if (s.contains(e.v)) {
      mass.empirical += e.rho;
      ++mass.terms;
    }
  }
  mass.floor = to_double(query.density * body.scaled(Rational(1, 2)).polyhedral_volume()) - 1.0;
  return mass;
}

SlopeWitness find_witness(const ApproximationQuery& query) {
  const ConvexBody<Rational> body = slab_body(query);
  const PointSample& gamma = query.gamma;
  if (gamma.empty()) throw InputError("empty sample");
  const std::optional<Candidate> found =
      gamma.is_integral() ? integral_search(query, body) : pair_search(query, body);
  if (!found) {
    std::ostringstream msg;
    msg << "no difference of the sample lies in the slab body (bounds";
    const VectorXr a = query.bounds();
    for (Eigen::Index i = 0; i < a.size(); ++i) msg << ' ' << format_double(to_double(a[i]));
    msg << ", sample radius " << format_double(gamma.region_radius()) << "); the sample is too small";
    throw WitnessNotFound(msg.str(), query.bounds(), gamma.region_radius());
  }

  const Eigen::Index dim = query.n();
  SlopeWitness witness;
  witness.w = gamma.point(found->w);
  witness.u = found->u;
  witness.v = witness.w + witness.u;
  const VectorXr u = to_rational(witness.u);
  witness.borderline = body.cast<double>().contains(witness.u) != body.contains(u);

  const Float50 d = to_float50(query.density);
  const Float50 inv_n = Float50(1) / Float50(dim);
  const Float50 dy = to_float50(u[dim]);
  const Float50 bound = boost::multiprecision::pow(Float50(2) / d, inv_n) * boost::multiprecision::pow(dy, -1 - inv_n);
  witness.q_form_bound = to_double(Float50(d * boost::multiprecision::pow(Float50(2), inv_n) /
                                           boost::multiprecision::pow(Float50(4) * to_float50(query.q), 1 + inv_n)));
  witness.certified = true;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Rational e = abs_value(Rational(query.alpha[i] - u[i] / u[dim]));
    witness.errors.push_back(to_double(e));
    witness.bounds.push_back(to_double(bound));
    witness.certified = witness.certified && to_float50(e) <= bound;
  }
  if (!witness.certified) throw std::logic_error("slope witness violates the certified bound");

  if (gamma.is_integral()) {
    std::int64_t g = 0;
    for (Eigen::Index i = 0; i <= dim; ++i) g = std::gcd(g, static_cast<std::int64_t>(witness.u[i]));
    witness.primitive = g == 1;
  }
  return witness;
}

std::string format_witness(const SlopeWitness& witness) {
  const auto join = [](const auto& values) {
    std::string out;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(values.size()); ++i) {
      if (i) out += ',';
      out += format_double(values[i]);
    }
    return out;
  };
  std::ostringstream out;
  out << "v=" << join(witness.v) << '\n';
  out << "w=" << join(witness.w) << '\n';
  out << "u=" << join(witness.u) << '\n';
  out << "err=" << join(witness.errors) << '\n';
  out << "bound=" << join(witness.bounds) << '\n';
  out << "q_form_bound=" << format_double(witness.q_form_bound) << " (informational)\n";
  out << "certified=" << (witness.certified ? "true" : "false") << '\n';
  out << "borderline=" << (witness.borderline ? "true" : "false") << '\n';
  out << "primitive=" << (witness.primitive ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace meyer
