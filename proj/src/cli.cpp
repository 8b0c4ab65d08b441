#include "meyer/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "meyer/acceptance.hpp"
#include "meyer/dirichlet.hpp"
#include "meyer/discretize.hpp"
#include "meyer/minkowski.hpp"
#include "meyer/modelset.hpp"

namespace meyer {

namespace {

/// Verification outcome signalled from a handler.
struct Failed {};

PointSample load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open point file '" + path + "'");
  return read_points(in, path);
}

FrequencyTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open table file '" + path + "'");
  return read_table(in);
}

Raster load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open image '" + path + "'");
  return read_pgm(in);
}

template <typename Write>
void save(const std::string& path, bool binary, Write&& write) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw InputError("cannot write '" + path + "'");
  write(out);
}

Vector<double> parse_point(const std::string& text) {
  const VectorXr v = parse_vector(text);
  Vector<double> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
  return out;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw InputError(std::string(what) + " must be positive");
}

std::string str(double x) { return format_double(x); }
std::string str(bool b) { return b ? "true" : "false"; }

void emit_trace(std::ostream& out, const DensityEstimate& d) {
  for (const auto& p : d.trace) out << "trace_R" << str(p.radius) << '=' << str(p.value) << '\n';
}

/// Point samples come from --pts or, when periodic structure matters, from
/// --lattice with --region.
PointSample sample_from(const std::string& pts, const std::string& lattice, double region) {
  if (!pts.empty() && !lattice.empty()) throw InputError("give either --pts or --lattice, not both");
  if (!lattice.empty()) {
    require_positive(region, "--region");
    return lattice_sample(parse_matrix(lattice), region);
  }
  if (pts.empty()) throw InputError("a point sample is required (--pts or --lattice)");
  return load_points(pts);
}

}  // namespace

CliResult dispatch(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CLI::App app{"Meyer-set toolkit: model sets, frequencies, Minkowski inequalities, discretized maps", "meyer"};
  app.require_subcommand(1);
  std::function<void()> action;

  // modelset -----------------------------------------------------------------
  auto* modelset = app.add_subcommand("modelset", "generate lattices, model sets and test sets");
  modelset->require_subcommand(1);
  struct {
    std::string kind = "ealpha", alpha, eps, lattice, out;
    double radius = 0.0, amplitude = 0.3;
    std::int64_t range = 0;
    std::uint64_t seed = 0;
    int dim = 1;
  } ms;
  auto* ms_gen = modelset->add_subcommand("gen", "points of a scheme inside B(0, R)");
  ms_gen->add_option("--kind", ms.kind, "ealpha | strip | lattice | jitter")
      ->check(CLI::IsMember({"ealpha", "strip", "lattice", "jitter"}));
  ms_gen->add_option("--alpha", ms.alpha, "slopes, comma separated");
  ms_gen->add_option("--eps", ms.eps, "window half-width");
  ms_gen->add_option("--lattice", ms.lattice, "basis 'a,b;c,d' (columns span the lattice)");
  ms_gen->add_option("--amplitude", ms.amplitude, "jitter amplitude");
  ms_gen->add_option("--dim", ms.dim, "jitter dimension");
  ms_gen->add_option("--seed", ms.seed, "jitter seed");
  ms_gen->add_option("--R", ms.radius, "sample radius")->required();
  ms_gen->add_option("--out", ms.out, "point file to write")->required();
  ms_gen->callback([&] {
    action = [&] {
      require_positive(ms.radius, "--R");
      std::optional<PointSample> sample;
      std::optional<double> expected;
      if (ms.kind == "lattice") {
        if (ms.lattice.empty()) throw InputError("--lattice is required for kind=lattice");
        sample = lattice_sample(parse_matrix(ms.lattice), ms.radius);
      } else if (ms.kind == "jitter") {
        sample = jittered_lattice(ms.dim, ms.amplitude, ms.radius, ms.seed);
      } else {
        if (ms.alpha.empty() || ms.eps.empty()) throw InputError("--alpha and --eps are required");
        const auto alpha = parse_list(ms.alpha);
        const CutAndProjectScheme scheme =
            ms.kind == "strip" ? (alpha.size() == 1 ? e_alpha_strip_scheme(alpha[0], parse_real(ms.eps))
                                                    : throw InputError("strip takes a single slope"))
                               : e_alpha_epsilon_scheme(Eigen::Map<const Vector<double>>(alpha.data(),
                                                                                         static_cast<Eigen::Index>(alpha.size())),
                                                        parse_real(ms.eps));
        sample = generate(scheme, ms.radius);
        expected = expected_density(scheme);
      }
      save(ms.out, false, [&](std::ostream& o) { write_points(o, *sample); });
      out << "points=" << sample->size() << '\n' << "dim=" << sample->dimension() << '\n';
      if (expected) out << "expected_density=" << str(*expected) << '\n';
    };
  });
  auto* ms_e = modelset->add_subcommand("ealpha", "E_alpha^eps in Z by direct evaluation");
  ms_e->add_option("--alpha", ms.alpha, "slopes, comma separated")->required();
  ms_e->add_option("--eps", ms.eps, "window half-width")->required();
  ms_e->add_option("--Y", ms.range, "range |y| <= Y")->required();
  ms_e->add_option("--out", ms.out, "point file to write")->required();
  ms_e->callback([&] {
    action = [&] {
      const auto alpha = parse_list(ms.alpha);
      const PointSample s = e_alpha_epsilon(
          Eigen::Map<const Vector<double>>(alpha.data(), static_cast<Eigen::Index>(alpha.size())), parse_real(ms.eps),
          ms.range);
      save(ms.out, false, [&](std::ostream& o) { write_points(o, s); });
      out << "points=" << s.size() << '\n' << "expected_density=" << str(std::pow(2.0 * parse_real(ms.eps), alpha.size())) << '\n';
    };
  });

  // pointset -----------------------------------------------------------------
  auto* pointset = app.add_subcommand("pointset", "statistics of a point sample");
  pointset->require_subcommand(1);
  struct {
    std::string pts, radii;
    double spacing = 0.0, radius = 0.0, span = 0.0;
    int pairs = 20;
    std::uint64_t seed = 0;
  } ps;
  auto* ps_density = pointset->add_subcommand("density", "uniform upper density over a radius schedule");
  ps_density->add_option("--pts", ps.pts, "point file")->required();
  ps_density->add_option("--radii", ps.radii, "increasing radii, comma separated")->required();
  ps_density->add_option("--spacing", ps.spacing, "center grid spacing")->required();
  ps_density->callback([&] {
    action = [&] {
      const PointSample s = load_points(ps.pts);
      const DensityEstimate d = upper_density(s, parse_list(ps.radii), ps.spacing);
      out << "density=" << str(d.value) << '\n' << "radius_used=" << str(d.radius_used) << '\n'
          << "erosion_margin=" << str(d.erosion_margin) << '\n' << "centers=" << d.center_count << '\n';
      emit_trace(out, d);
      out << "uncertainty=" << str(d.trace_oscillation()) << " (heuristic: trace oscillation)\n";
    };
  });
  auto* ps_delone = pointset->add_subcommand("delone", "packing and covering radii");
  ps_delone->add_option("--pts", ps.pts, "point file")->required();
  ps_delone->add_option("--spacing", ps.spacing, "probe grid spacing")->required();
  ps_delone->callback([&] {
    action = [&] {
      const PointSample s = load_points(ps.pts);
      const DeloneParams p = delone_parameters(s, ps.spacing);
      out << "r_packing=" << str(p.r_packing) << '\n' << "R_covering=" << str(p.R_covering) << '\n'
          << "probes=" << p.probe_count << '\n';
    };
  });
  auto* ps_wap = pointset->add_subcommand("wap", "patch defect between random ball pairs");
  ps_wap->add_option("--pts", ps.pts, "point file")->required();
  ps_wap->add_option("--R", ps.radius, "patch radius")->required();
  ps_wap->add_option("--pairs", ps.pairs, "number of center pairs");
  ps_wap->add_option("--span", ps.span, "centers drawn uniformly in [-span, span]^n")->required();
  ps_wap->add_option("--seed", ps.seed, "center seed");
  ps_wap->callback([&] {
    action = [&] {
      const PointSample s = load_points(ps.pts);
      if (ps.pairs < 1) throw InputError("--pairs must be positive");
      std::mt19937_64 gen(ps.seed);
      std::uniform_real_distribution<double> u(-ps.span, ps.span);
      std::vector<double> defects;
      for (int i = 0; i < ps.pairs; ++i) {
        Vector<double> x(s.dimension()), y(s.dimension());
        for (Eigen::Index d = 0; d < s.dimension(); ++d) x[d] = std::round(u(gen));
        for (Eigen::Index d = 0; d < s.dimension(); ++d) y[d] = std::round(u(gen));
        defects.push_back(patch_defect(s, x, y, ps.radius).defect);
      }
      std::vector<double> sorted = defects;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t m = sorted.size();
      out << "pairs=" << m << '\n' << "max_defect=" << str(sorted.back()) << '\n'
          << "median_defect=" << str(m % 2 ? sorted[m / 2] : (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0) << '\n';
    };
  });

  // freq ---------------------------------------------------------------------
  auto* freq = app.add_subcommand("freq", "frequencies of differences");
  freq->require_subcommand(1);
  struct {
    std::string pts, table, out, centers;
    double cutoff = 0.0, radius = 0.0, ball = 0.0;
  } fq;
  auto* fq_table = freq->add_subcommand("table", "frequency table of a sample");
  fq_table->add_option("--pts", fq.pts, "point file")->required();
  fq_table->add_option("--cutoff", fq.cutoff, "largest |v|")->required();
  fq_table->add_option("--R", fq.radius, "estimation radius")->required();
  fq_table->add_option("--out", fq.out, "table file to write")->required();
  fq_table->callback([&] {
    action = [&] {
      const FrequencyTable t = frequency_table(load_points(fq.pts), fq.cutoff, fq.radius);
      save(fq.out, false, [&](std::ostream& o) { write_table(o, t); });
      out << "entries=" << t.entries.size() << '\n' << "density=" << str(t.density.value) << '\n'
          << "base_points=" << t.base_count << '\n' << "erosion_margin=" << str(t.erosion_margin) << '\n';
    };
  });
  auto* fq_mean = freq->add_subcommand("mean", "average of rho over balls");
  fq_mean->add_option("--table", fq.table, "table file")->required();
  fq_mean->add_option("--radius", fq.ball, "ball radius")->required();
  fq_mean->add_option("--centers", fq.centers, "centers 'x1,y1;x2,y2'")->required();
  fq_mean->callback([&] {
    action = [&] {
      const FrequencyTable t = load_table(fq.table);
      std::vector<Vector<double>> centers;
      for (const auto& c : split(fq.centers, ';')) centers.push_back(parse_point(c));
      const MeanFrequency m = mean_frequency(t, fq.ball, centers);
      out << "mean=" << str(m.mean) << '\n' << "max_deviation=" << str(m.max_deviation) << '\n'
          << "density=" << str(t.density.value) << '\n';
    };
  });

  // minkowski ----------------------------------------------------------------
  auto* mink = app.add_subcommand("minkowski", "Minkowski-type inequalities");
  mink->require_subcommand(1);
  struct {
    std::string pts, lattice, body, basis;
    double cutoff = 0.0, radius = 0.0, region = 0.0;
    bool integer = false, probe = false;
    int k = 3;
  } mk;
  auto* mk_verify = mink->add_subcommand("verify", "sum of rho over S against the density bound");
  mk_verify->add_option("--pts", mk.pts, "point file");
  mk_verify->add_option("--lattice", mk.lattice, "lattice basis, exact periodic path");
  mk_verify->add_option("--region", mk.region, "sample radius for --lattice");
  mk_verify->add_option("--body", mk.body, "ball:r=.. | slab:L=..:A=.. | poly:x,y;...")->required();
  mk_verify->add_option("--cutoff", mk.cutoff, "table cutoff")->required();
  mk_verify->add_option("--R", mk.radius, "estimation radius")->required();
  mk_verify->add_flag("--integer", mk.integer, "integer mode: rhs uses #(S/2 cap Z^n)");
  mk_verify->add_flag("--probe-factor2", mk.probe, "also report lhs/rhs (no pass/fail attached)");
  mk_verify->callback([&] {
    action = [&] {
      const PointSample s = sample_from(mk.pts, mk.lattice, mk.region);
      const ConvexBody<Rational> body = parse_body(mk.body, s.dimension());
      const FrequencyTable t = frequency_table(s, mk.cutoff, mk.radius);
      const MinkowskiReport r = mk.integer ? verify_integer_inequality(t, body) : verify_inequality(t, body);
      out << "body=" << describe(body) << '\n' << format_report(r);
      if (mk.probe) out << "factor2_ratio=" << str(r.lhs / r.rhs) << '\n';
      if (!r.pass) throw Failed{};
    };
  });
  auto* mk_classical = mink->add_subcommand("classical", "lattice-point count against 2 ceil(D Vol(S/2)) - 1");
  mk_classical->add_option("--basis", mk.basis, "lattice basis 'a,b;c,d'")->required();
  mk_classical->add_option("--body", mk.body, "convex body")->required();
  mk_classical->callback([&] {
    action = [&] {
      const MatrixXr basis = parse_matrix(mk.basis);
      const ConvexBody<Rational> body = parse_body(mk.body, basis.rows());
      const ClassicalReport r = classical_bound_check(basis, body);
      out << "count=" << r.count << '\n' << "count_with_origin=" << r.count + 1 << '\n' << "bound=" << r.bound
          << '\n' << "k=" << r.k << '\n' << "density_times_half_volume=" << str(r.density_times_half_volume)
          << '\n' << "pass=" << str(r.pass) << '\n';
      if (!r.pass) throw Failed{};
    };
  });
  auto* mk_equality = mink->add_subcommand("equality", "the odd-k equality instance, exactly");
  mk_equality->add_option("--k", mk.k, "odd k >= 3")->required();
  mk_equality->callback([&] {
    action = [&] {
      const EqualityInstance inst = equality_instance(mk.k);
      const MinkowskiReport r = verify_periodic(*inst.gamma.periodic(), inst.body, MinkowskiMode::Integer);
      out << "k=" << mk.k << '\n' << "body=" << describe(inst.body) << '\n' << format_report(r);
      if (!r.pass) throw Failed{};
    };
  });

  // dirichlet ----------------------------------------------------------------
  auto* dir = app.add_subcommand("dirichlet", "slope approximation by differences");
  dir->require_subcommand(1);
  struct {
    std::string alpha, q, density = "1", pts, lattice;
    double region = 0.0, radius = 0.0;
  } dq;
  const auto add_query_options = [&](CLI::App* sub) {
    sub->add_option("--alpha", dq.alpha, "slopes as decimals, comma separated")->required();
    sub->add_option("--Q", dq.q, "quality parameter Q > 1")->required();
    sub->add_option("--density", dq.density, "density D of the sample (default 1)");
    sub->add_option("--pts", dq.pts, "point file");
    sub->add_option("--lattice", dq.lattice, "lattice basis instead of a point file");
    sub->add_option("--region", dq.region, "sample radius for --lattice");
  };
  const auto query = [&] {
    return ApproximationQuery::parse(split(dq.alpha, ','), dq.q, dq.density, sample_from(dq.pts, dq.lattice, dq.region));
  };
  auto* dq_find = dir->add_subcommand("find", "smallest witness difference");
  add_query_options(dq_find);
  dq_find->callback([&] {
    action = [&] {
      const SlopeWitness w = find_witness(query());
      out << format_witness(w);
      if (!w.certified) throw Failed{};
    };
  });
  auto* dq_mass = dir->add_subcommand("mass", "sum of rho over the slab body");
  add_query_options(dq_mass);
  dq_mass->add_option("--R", dq.radius, "estimation radius")->required();
  dq_mass->callback([&] {
    action = [&] {
      const ApproximationQuery qy = query();
      const ConvexBody<Rational> body = slab_body(qy);
      const FrequencyTable t = frequency_table(qy.gamma, body.circumradius() * (1.0 + 1e-9), dq.radius);
      const GuaranteedMass m = guaranteed_mass(qy, t);
      out << "empirical=" << str(m.empirical) << '\n' << "floor=" << str(m.floor) << '\n' << "terms=" << m.terms
          << '\n' << "pass=" << str(m.empirical >= m.floor) << '\n';
      if (m.empirical < m.floor) throw Failed{};
    };
  });

  // discretize ---------------------------------------------------------------
  auto* disc = app.add_subcommand("discretize", "discretized rotations");
  disc->require_subcommand(1);
  struct {
    std::uint64_t seed = 0;
    std::size_t k = 10;
    double radius = 0.0, cutoff = 4.0;
    std::string radii, in, out, pts;
  } dz;
  auto* dz_tau = disc->add_subcommand("tau", "rate of injectivity of a random rotation sequence");
  dz_tau->add_option("--seed", dz.seed, "sequence seed");
  dz_tau->add_option("--k", dz.k, "sequence length");
  dz_tau->add_option("--R", dz.radius, "radius");
  dz_tau->add_option("--radii", dz.radii, "radius schedule, comma separated");
  dz_tau->callback([&] {
    action = [&] {
      std::vector<double> radii = dz.radii.empty() ? std::vector<double>{dz.radius} : parse_list(dz.radii);
      const DiscretizedSequence seq = random_rotation_sequence(dz.seed, dz.k);
      const InjectivityTrace t = rate_of_injectivity(seq, dz.k, radii);
      out << "seed=" << dz.seed << '\n';
      for (std::size_t j = 0; j < seq.size(); ++j) out << "angle" << j + 1 << '=' << str(seq.maps[j].angle) << '\n';
      for (std::size_t i = 0; i < t.radii.size(); ++i) {
        out << "R=" << str(t.radii[i]) << " input=" << t.input_counts[i] << '\n';
        for (std::size_t j = 0; j < t.tau[i].size(); ++j) {
          out << "tau" << j + 1 << '=' << str(t.tau[i][j]);
          if (!t.density_estimate.empty()) out << " density_estimate=" << str(t.density_estimate[i][j]);
          out << '\n';
        }
      }
      out << "note=" << t.note << '\n';
    };
  });
  auto* dz_degrade = disc->add_subcommand("degrade", "push an image through rounded rotations");
  dz_degrade->add_option("--in", dz.in, "input PGM (default: synthetic 220x282 raster)");
  dz_degrade->add_option("--out", dz.out, "output PGM")->required();
  dz_degrade->add_option("--seed", dz.seed, "sequence seed");
  dz_degrade->add_option("--k", dz.k, "number of rotations");
  dz_degrade->callback([&] {
    action = [&] {
      const Raster image = dz.in.empty() ? test_raster() : load_pgm(dz.in);
      const DegradeResult r = degrade_image(image, random_rotation_sequence(dz.seed, dz.k));
      save(dz.out, true, [&](std::ostream& o) { write_pgm(o, r.image); });
      for (std::size_t j = 0; j < r.lost.size(); ++j) out << "lost" << j + 1 << '=' << str(r.lost[j]) << '\n';
    };
  });
  auto* dz_seed = disc->add_subcommand("seed-diff", "difference with large frequency near the origin");
  dz_seed->add_option("--pts", dz.pts, "integral point file (default: one rotation image of Z^2)");
  dz_seed->add_option("--seed", dz.seed, "rotation seed when --pts is absent");
  dz_seed->add_option("--R", dz.radius, "estimation radius")->required();
  dz_seed->add_option("--cutoff", dz.cutoff, "table cutoff");
  dz_seed->callback([&] {
    action = [&] {
      const PointSample s = dz.pts.empty()
                                ? discretized_image(random_rotation_sequence(dz.seed, 1), 1, dz.radius + dz.cutoff + 2.0)
                                : load_points(dz.pts);
      const FrequencyTable t = frequency_table(s, dz.cutoff, dz.radius);
      const SeedDifference d = seed_difference(t, t.density.value);
      out << "r=" << str(d.r) << '\n' << "u0=";
      for (Eigen::Index i = 0; i < d.u0.size(); ++i) out << (i ? "," : "") << d.u0[i];
      out << '\n' << "rho0=" << str(d.rho0) << '\n' << "mass=" << str(d.mass) << '\n'
          << "rho_floor=" << str(d.rho_floor) << '\n' << "density_floor=" << str(d.density_floor) << '\n'
          << "sampling_uncertainty=" << str(d.sampling_uncertainty) << " (heuristic)\n"
          << "pass=" << str(d.mass_ok && d.rho_ok) << '\n';
      if (!(d.mass_ok && d.rho_ok)) throw Failed{};
    };
  });

  // accept -------------------------------------------------------------------
  std::vector<int> only;
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("--only", only, "criterion ids to run, comma separated")->delimiter(',');
  accept->callback([&] {
    action = [&] {
      const auto results = run_acceptance(out, only, &err);
      const bool all = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
      out << "summary=" << (all ? "pass" : "fail") << '\n';
      if (!all) throw Failed{};
    };
  });

  CliResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (action) action();
    result.status = 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    result.status = 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    result.status = 2;
  } catch (const Failed&) {
    result.status = 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    result.status = 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    result.status = 3;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace meyer
