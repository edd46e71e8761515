// sphgeo: geodesics on spherical-harmonic surfaces and Kovacic's algorithm
// for the equatorial normal variational equation.
//
// Exit codes: 0 ok, 1 usage error, 2 computation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sphgeo/geodesic.hpp"
#include "sphgeo/io.hpp"
#include "sphgeo/kovacic.hpp"
#include "sphgeo/nve.hpp"
#include "sphgeo/poincare.hpp"
#include "sphgeo/surface.hpp"

namespace {

using namespace sphgeo;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Global {
  std::string out_dir;
  std::string format;  // empty: human-readable summary only
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

struct SurfaceArgs {
  std::string family = "sectoral";
  int n = 3, l = 2, m = 0;
  std::string eps = "0.1";
};

Rational parse_eps(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--eps: ") + e.what());
  }
}

double numeric_eps(const std::string& text) {
  const double e = to_double(parse_eps(text));
  if (!(e >= 0 && e < 1)) throw UsageError("--eps must lie in [0, 1)");
  return e;
}

/// Exact eps for the symbolic commands, 0 < eps < 1.
Rational symbolic_eps(const std::string& text) {
  const Rational e = parse_eps(text);
  if (sgn(e) <= 0 || e >= 1) throw UsageError("--eps must lie in (0, 1)");
  return e;
}

SurfaceSpec surface_spec(const SurfaceArgs& a) {
  SurfaceSpec s;
  try {
    s.family = family_from_string(a.family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  s.eps = numeric_eps(a.eps);
  switch (s.family) {
    case Family::sectoral:
      if (a.n < 1) throw UsageError("--n must be >= 1");
      s.l = s.m = a.n;
      break;
    case Family::zonal:
      if (a.l < 0) throw UsageError("--l must be >= 0");
      s.l = a.l;
      s.m = 0;
      break;
    case Family::tesseral:
      if (a.l < 1 || a.m < 1 || a.m > a.l) throw UsageError("tesseral surfaces need 1 <= m <= l");
      s.l = a.l;
      s.m = a.m;
      break;
    case Family::custom: throw UsageError("custom surfaces are library-only");
  }
  return s;
}

void add_surface_options(CLI::App* cmd, SurfaceArgs& a, bool with_family) {
  if (with_family) {
    cmd->add_option("--surface", a.family, "Surface family")
        ->check(CLI::IsMember({"sectoral", "zonal", "tesseral"}))
        ->capture_default_str();
    cmd->add_option("--l", a.l, "Degree l (zonal, tesseral)")->capture_default_str();
    cmd->add_option("--m", a.m, "Order m (tesseral)")->capture_default_str();
  }
  cmd->add_option("--n", a.n, "Sectoral order n")->capture_default_str();
  cmd->add_option("--eps", a.eps, "Amplitude, as p/q or a decimal")->capture_default_str();
}

std::string eps_tag(const Rational& e) {
  std::string s = e.get_str();
  for (char& c : s) {
    if (c == '/') c = '-';
  }
  return s;
}

/// Writes `content` to out_dir/name when an output directory is set, or to
/// stdout when `to_stdout` holds.
void emit(const Global& g, const std::string& name, const std::string& content, bool to_stdout) {
  if (!g.out_dir.empty()) {
    std::filesystem::create_directories(g.out_dir);
    const auto path = std::filesystem::path(g.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
    std::cerr << "wrote " << path.string() << "\n";
  } else if (to_stdout) {
    std::cout << content;
  }
}

void require_format(const Global& g, std::initializer_list<const char*> allowed, const char* cmd) {
  if (g.format.empty()) return;
  for (const char* f : allowed) {
    if (g.format == f) return;
  }
  throw UsageError(std::string(cmd) + " does not produce --format " + g.format);
}

// ---------------------------------------------------------------------------

struct TraceArgs {
  SurfaceArgs surf;
  double theta0 = std::numbers::pi / 2, phi0 = 0;
  std::optional<double> heading;
  double length = 100, tol = 1e-12, sample = 0.05;
};

void cmd_trace(const Global& g, const TraceArgs& a) {
  require_format(g, {"csv", "json"}, "trace");
  const PolarSurface surf = PolarSurface::from_spec(surface_spec(a.surf));
  if (!(a.length > 0)) throw UsageError("--length must be positive");
  if (!(a.theta0 > kPoleGuard && a.theta0 < std::numbers::pi - kPoleGuard)) throw UsageError("--theta0 is at a pole");
  double heading = 0;
  if (a.heading) {
    heading = *a.heading;
  } else {
    std::mt19937_64 rng(g.seed);
    heading = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
  }
  // heading is measured from the direction of increasing phi in the (theta, phi) plane
  const GeodesicState x0 =
      normalize_speed(surf, {a.theta0, a.phi0, -std::sin(heading), std::cos(heading) / std::sin(a.theta0), 0});
  IntegratorOptions opt;
  opt.rtol = opt.atol = a.tol;
  opt.sample_interval = a.sample;
  const Trajectory tr = GeodesicIntegrator(surf, opt).integrate(x0, a.length);

  double drift = 0;
  for (const auto& smp : tr.samples) drift = std::max(drift, std::abs(2 * smp.H - 1));
  nlohmann::json j{{"surface", surf.spec()},
                   {"initial", {{"theta", x0.theta}, {"phi", x0.phi}, {"theta_dot", x0.theta_dot}, {"phi_dot", x0.phi_dot}}},
                   {"length", a.length},
                   {"steps", tr.steps},
                   {"chart_swaps", tr.chart_swaps},
                   {"equator_crossings", tr.crossings.size()},
                   {"max_energy_drift", drift},
                   {"final",
                    {{"theta", tr.final_state.theta},
                     {"phi", tr.final_state.phi},
                     {"theta_dot", tr.final_state.theta_dot},
                     {"phi_dot", tr.final_state.phi_dot}}}};
  std::ostringstream csv;
  write_trajectory_csv(csv, tr);
  if (g.format.empty() || g.format == "csv") emit(g, "trace.csv", csv.str(), g.format == "csv");
  if (g.format.empty() || g.format == "json") emit(g, "trace.json", j.dump(2) + "\n", g.format == "json");
  if (g.format.empty()) {
    std::printf("trace: %ld steps, %zu equator crossings, max |2H-1| = %.3e\n", tr.steps, tr.crossings.size(), drift);
  }
}

// ---------------------------------------------------------------------------

struct SectionArgs {
  SurfaceArgs surf;
  int traj = 40, crossings = 400, grid = 100;
  bool rotated = false;
};

void cmd_psection(const Global& g, const SectionArgs& a) {
  const SurfaceSpec spec = surface_spec(a.surf);
  if (a.traj < 1 || a.crossings < 1) throw UsageError("--traj and --crossings must be positive");
  if (a.grid < 1) throw UsageError("--grid must be positive");
  PolarSurface surf = PolarSurface::from_spec(spec);
  if (a.rotated) surf = surf.with_chart(Chart::rotated_x());
  SectionOptions opt;
  opt.num_traj = a.traj;
  opt.num_crossings = a.crossings;
  opt.seed = g.seed;
  opt.threads = g.threads;
  const Section sec = generate_section(surf, opt);
  const double bound = section_sampling_bound(surf);

  std::ostringstream csv, svg;
  write_section_csv(csv, sec);
  write_section_svg(svg, sec, bound);
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : sec.failures) fails.push_back({{"traj_id", f.traj_id}, {"s", f.s}, {"reason", f.reason}});
  const double ratio = max_occupancy_ratio(sec, bound, a.grid);
  const nlohmann::json j{{"surface", spec},
                         {"rotated", a.rotated},
                         {"seed", g.seed},
                         {"num_traj", a.traj},
                         {"num_crossings", a.crossings},
                         {"phi_dot_bound", bound},
                         {"points", sec.points.size()},
                         {"max_occupancy_ratio", ratio},
                         {"failures", fails}};
  const std::string base = a.rotated ? "psection_rotated" : "psection";
  if (g.format.empty() || g.format == "csv") emit(g, base + ".csv", csv.str(), g.format == "csv");
  if (g.format.empty() || g.format == "svg") emit(g, base + ".svg", svg.str(), g.format == "svg");
  if (g.format == "json") emit(g, base + ".json", j.dump(2) + "\n", true);
  if (g.format.empty()) {
    std::printf("psection: %zu points from %d trajectories, %zu failed, max occupancy %.4f\n", sec.points.size(),
                a.traj, sec.failures.size(), ratio);
  }
  if (!sec.failures.empty()) throw std::runtime_error(std::to_string(sec.failures.size()) + " trajectories failed");
}

// ---------------------------------------------------------------------------

struct ClosedArgs {
  SurfaceArgs surf;
  std::string family = "planar";
  int k = 1, index = 0;
  std::optional<double> phi, phi_dot;
};

void cmd_closed(const Global& g, const ClosedArgs& a) {
  require_format(g, {"json"}, "closed");
  const SurfaceSpec spec = surface_spec(a.surf);
  if (a.k < 1) throw UsageError("--k must be >= 1");
  const GeodesicFamily fam = geodesic_family_from_string(a.family);
  double phi0 = 0, pd0 = 0;
  if (a.phi) {
    phi0 = *a.phi;
    pd0 = a.phi_dot.value_or(0.0);
  } else {
    if (spec.family != Family::sectoral) throw UsageError("--phi is required for non-sectoral surfaces");
    const int n = spec.n();
    if (a.index < 0 || a.index >= n) throw UsageError("--index must lie in [0, n)");
    if (fam == GeodesicFamily::planar) {
      std::tie(phi0, pd0) = planar_guess(n, a.index);
    } else if (fam == GeodesicFamily::perpendicular) {
      std::tie(phi0, pd0) = perpendicular_guess(n, a.index);
    } else {
      throw UsageError("--phi is required for family " + a.family);
    }
  }
  const ClosedGeodesic cg = find_closed_geodesic(PolarSurface::from_spec(spec), fam, phi0, pd0, a.k);
  nlohmann::json j = closed_geodesic_json(cg);
  j["surface"] = spec;
  emit(g, "closed.json", j.dump(2) + "\n", g.format == "json");
  if (g.format.empty()) {
    std::printf("%s k=%d at phi=%.12f phi_dot=%.3e: %s (trace %.9f, det %.9f)\n", to_string(cg.family).c_str(), cg.period,
                cg.phi, cg.phi_dot, to_string(cg.stability).c_str(), cg.trace(), cg.det());
  }
}

// ---------------------------------------------------------------------------

void cmd_lemma1(const Global& g, int n) {
  require_format(g, {"json"}, "lemma1");
  if (n < 2) throw UsageError("--n must be >= 2");
  const double e = lemma1_critical_eps(n);
  emit(g, "lemma1.json", nlohmann::json{{"n", n}, {"critical_eps", e}}.dump(2) + "\n", g.format == "json");
  if (g.format.empty()) std::printf("n=%d critical eps %.6f\n", n, e);
}

void cmd_nve(const Global& g, int n, const std::string& eps_text) {
  require_format(g, {"json"}, "nve");
  if (n < 1) throw UsageError("--n must be >= 1");
  const Rational eps = symbolic_eps(eps_text);
  const NVEData d = equatorial_nve(n, eps);
  emit(g, "nve_n" + std::to_string(n) + "_eps" + eps_tag(eps) + ".json", nve_json(d).dump(2) + "\n",
       g.format == "json");
  if (g.format.empty()) {
    std::printf("n=%d eps=%s: %zu poles, beta_inf = %s\n", n, eps.get_str().c_str(), d.poles.size(),
                d.beta_inf.to_string().c_str());
    for (std::size_t j = 0; j < d.poles.size(); ++j) {
      std::printf("  pole %s  beta %s  delta %s\n", d.poles[j].to_string().c_str(), d.beta[j].to_string().c_str(),
                  d.delta[j].to_string().c_str());
    }
  }
}

void cmd_kovacic(const Global& g, int n, const std::string& eps_text, bool all_cases) {
  require_format(g, {"json"}, "kovacic");
  if (n < 1) throw UsageError("--n must be >= 1");
  const Rational eps = symbolic_eps(eps_text);
  const FuchsianODE f = make_fuchsian(equatorial_nve(n, eps));
  KovacicOptions opt;
  opt.threads = g.threads;
  opt.use_necessary_conditions = !all_cases;
  const KovacicOutcome out = run_kovacic(f, opt);
  nlohmann::json j = kovacic_json(f, out);
  j["input"]["n"] = n;
  j["input"]["eps"] = eps.get_str();
  emit(g, "kovacic_n" + std::to_string(n) + "_eps" + eps_tag(eps) + ".json", j.dump(2) + "\n", g.format == "json");
  if (g.format.empty()) {
    std::printf("n=%d eps=%s: %s", n, eps.get_str().c_str(), to_string(out.verdict));
    if (out.solution) std::printf(", case %d, d = %ld", out.case_number, out.solution->candidate.d);
    std::printf(" (%zu candidates searched", out.ledger.size());
    if (out.ledger.empty()) std::printf(", empty ledger");
    std::printf(")\n");
    if (out.solution && out.solution->relation.degree() == 1) {
      const std::string w = to_string(out.solution->omega(), [](const QuadExt& c) { return c.to_string(); });
      std::printf("omega = %s\n", w.c_str());
    }
  }
}

void cmd_table1(const Global& g, int n_min, int n_max, const std::string& eps_text) {
  require_format(g, {"json"}, "table1");
  if (n_min < 2 || n_max < n_min) throw UsageError("need 2 <= --n-min <= --n-max");
  const Rational eps = symbolic_eps(eps_text);
  std::vector<std::pair<int, Table1Row>> rows;
  for (int n = n_min; n <= n_max; ++n) rows.emplace_back(n, table1(n, eps));
  if (g.format == "json") {
    emit(g, "table1.json", table1_json(rows).dump(2) + "\n", true);
  } else {
    emit(g, "table1.txt", table1_text(rows), true);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics on spherical-harmonic surfaces and Kovacic's algorithm for the equatorial NVE"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--out-dir", g.out_dir, "Write outputs into this directory instead of stdout");
  app.add_option("--format", g.format, "Output format; without it a summary is printed")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();

  TraceArgs ta;
  auto* trace = app.add_subcommand("trace", "Integrate one geodesic");
  add_surface_options(trace, ta.surf, true);
  trace->add_option("--theta0", ta.theta0, "Initial polar angle")->capture_default_str();
  trace->add_option("--phi0", ta.phi0, "Initial azimuth")->capture_default_str();
  trace->add_option("--heading", ta.heading, "Initial direction, radians from +phi; random from --seed if absent");
  trace->add_option("--length", ta.length, "Arc length")->capture_default_str();
  trace->add_option("--tol", ta.tol, "Integrator tolerance")->capture_default_str();
  trace->add_option("--sample", ta.sample, "Arc-length spacing of recorded samples, 0 = every step")
      ->capture_default_str();

  SectionArgs sa;
  auto* psection = app.add_subcommand("psection", "Equatorial Poincare section");
  add_surface_options(psection, sa.surf, true);
  psection->add_option("--traj", sa.traj, "Number of trajectories")->capture_default_str();
  psection->add_option("--crossings", sa.crossings, "Upward crossings per trajectory")->capture_default_str();
  psection->add_option("--grid", sa.grid, "Grid size for the occupancy summary")->capture_default_str();
  psection->add_flag("--rotated", sa.rotated, "Section through the meridian phi = 0, pi instead of the equator");

  ClosedArgs ca;
  auto* closed = app.add_subcommand("closed", "Closed geodesic as a fixed point of the k-th return map");
  add_surface_options(closed, ca.surf, true);
  closed->add_option("--family", ca.family, "Family of the initial guess")
      ->check(CLI::IsMember({"planar", "perpendicular", "oblique", "island"}))
      ->capture_default_str();
  closed->add_option("--k", ca.k, "Period of the fixed point")->capture_default_str();
  closed->add_option("--index", ca.index, "Member i of the family, guess at phi = pi i/n or pi (i+1/2)/n")
      ->capture_default_str();
  closed->add_option("--phi", ca.phi, "Explicit initial phi");
  closed->add_option("--phi-dot", ca.phi_dot, "Explicit initial phi_dot");

  int lemma_n = 2;
  auto* lemma1 = app.add_subcommand("lemma1", "Smallest eps at which f(1; c) > 0 fails, so northern theta-maxima are no longer excluded");
  lemma1->add_option("--n", lemma_n, "Sectoral order n >= 2")->required();

  int nve_n = 2;
  std::string nve_eps = "1/2";
  auto* nve = app.add_subcommand("nve", "Equatorial NVE in the z variable with its Fuchsian data");
  nve->add_option("--n", nve_n, "Sectoral order n")->required();
  nve->add_option("--eps", nve_eps, "Amplitude, as p/q or a decimal")->capture_default_str();

  int kov_n = 2;
  std::string kov_eps = "1/2";
  bool kov_all = false;
  auto* kovacic = app.add_subcommand("kovacic", "Kovacic's algorithm on the equatorial NVE");
  kovacic->add_option("--n", kov_n, "Sectoral order n")->required();
  kovacic->add_option("--eps", kov_eps, "Amplitude, as p/q or a decimal")->capture_default_str();
  kovacic->add_flag("--all-cases", kov_all, "Search every case, ignoring the necessary conditions");

  int t_min = 2, t_max = 12;
  std::string t_eps = "1/2";
  auto* tab = app.add_subcommand("table1", "Candidate degrees d and their counts per case");
  tab->add_option("--n-min", t_min, "First n")->capture_default_str();
  tab->add_option("--n-max", t_max, "Last n")->capture_default_str();
  tab->add_option("--eps", t_eps, "Amplitude; the table does not depend on it")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*trace) cmd_trace(g, ta);
    if (*psection) cmd_psection(g, sa);
    if (*closed) cmd_closed(g, ca);
    if (*lemma1) cmd_lemma1(g, lemma_n);
    if (*nve) cmd_nve(g, nve_n, nve_eps);
    if (*kovacic) cmd_kovacic(g, kov_n, kov_eps, kov_all);
    if (*tab) cmd_table1(g, t_min, t_max, t_eps);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
