#include "msmono/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msmono/competitors.hpp"
#include "msmono/model_json.hpp"
#include "msmono/twopoint.hpp"

namespace msmono {

using nlohmann::json;

namespace {

constexpr double kMonotoneTol = 1e-8;
constexpr double kDlmsTol = 1e-6;
constexpr double kRepTol = 1e-8;
constexpr double kCrossingBoundTol = 1e-6;
constexpr double kEquilibriumTol = 1e-6;

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json verdicts = json::object();
  bool no_convergence = false;

  void verdict(const std::string& name, bool pass, json details = json::object()) {
    details["pass"] = pass;
    verdicts[name] = std::move(details);
  }

  bool all_pass() const {
    for (const auto& [name, v] : verdicts.items())
      if (!v.at("pass").get<bool>()) return false;
    return true;
  }
};

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_string()) return v.get<std::string>();
  return "nan";
}

std::string render(const Table& t, const json& config, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    out << json{{"config", config}, {"rows", rows}, {"verdicts", t.verdicts}}.dump(2) << "\n";
    return out.str();
  }
  out << "# msmono " << config.at("command").get<std::string>() << "\n";
  out << "# config " << config.dump() << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  for (const auto& [name, v] : t.verdicts.items())
    out << "# verdict " << name << " " << (v.at("pass").get<bool>() ? "pass" : "fail") << " " << v.dump() << "\n";
  return out.str();
}

json num(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

struct Resolved {
  RunConfig cfg;
  std::optional<FieldModel> model;
  DiagnosticsSpec spec;
  std::vector<double> radii;
};

json config_json(const Resolved& r) {
  const RunConfig& c = r.cfg;
  json j{{"command", c.command},
         {"model", r.model ? model_to_json(*r.model) : json(nullptr)},
         {"center", {c.center.x(), c.center.y()}},
         {"r_min", *c.r_min},
         {"r_max", *c.r_max},
         {"r_steps", *c.r_steps},
         {"grid", *c.grid_kind == GridKind::geometric ? "geometric" : "linear"},
         {"quad_order", c.quad_order},
         {"quad_tol", *c.quad_tol},
         {"fourier_modes", c.fourier_K},
         {"cert_n", c.cert_n},
         {"directions", c.directions},
         {"seed", c.seed},
         {"format", c.out_format}};
  if (c.command == "equilibrium") j["bumps"] = c.bumps;
  if (c.command == "twopoint") j["claims"] = c.claims;
  return j;
}

bool needs_model(const std::string& cmd) { return cmd != "sharpness" && cmd != "twopoint"; }

Resolved resolve(const RunConfig& in) {
  static const std::vector<std::string> commands{"scan",      "dlms",       "prop31",   "slice",
                                                 "sharpness", "competitor", "twopoint", "equilibrium"};
  if (std::find(commands.begin(), commands.end(), in.command) == commands.end())
    throw SchemaError("command", "unknown command '" + in.command + "'");
  if (in.out_format != "csv" && in.out_format != "json") throw SchemaError("format", "must be csv or json");
  Resolved r{in, std::nullopt, {}, {}};
  RunConfig& c = r.cfg;
  const bool sharp = c.command == "sharpness";
  if (!c.r_min) c.r_min = sharp ? 0.01 : 0.05;
  if (!c.r_max) c.r_max = sharp ? 0.1 : 50.0;
  if (!c.r_steps) c.r_steps = sharp ? 10 : 400;
  if (!c.grid_kind) c.grid_kind = sharp ? GridKind::linear : GridKind::geometric;
  if (!c.quad_tol) c.quad_tol = sharp ? 1e-9 : 1e-7;
  if (!(*c.r_min > 0) && !sharp) throw SchemaError("r-min", "must be positive");
  if (!(*c.r_min < *c.r_max)) throw SchemaError("r-max", "must exceed r-min");
  if (*c.r_steps < 2) throw SchemaError("r-steps", "must be at least 2");
  if (c.command == "scan" && *c.r_steps < 32) throw SchemaError("r-steps", "scan needs at least 32 radii");
  if (c.quad_order < 4 || c.quad_order > 64) throw SchemaError("quad-order", "must lie in [4, 64]");
  if (!(*c.quad_tol > 0)) throw SchemaError("quad-tol", "must be positive");
  if (c.fourier_K < 1) throw SchemaError("fourier-modes", "must be positive");
  if (c.command == "twopoint" && c.cert_n < 1024) throw SchemaError("cert-n", "must be at least 1024");
  if (c.directions < 1) throw SchemaError("directions", "must be positive");
  if (c.bumps < 1) throw SchemaError("bumps", "must be positive");
  for (int id : c.claims)
    if (id < 1 || id > 4) throw SchemaError("claims", "claim ids are 1..4");
  if (!c.center.allFinite()) throw SchemaError("center", "must be finite");

  if (needs_model(c.command)) {
    if (c.model_source.empty()) throw SchemaError("model", "required for '" + c.command + "'");
    r.model = load_model(c.model_source);
  }
  r.spec.quad.nodes_per_panel = c.quad_order;
  r.spec.quad.rel_tolerance = *c.quad_tol;
  if (sharp) {
    if (*c.r_min < 0 || *c.r_max > 0.2) throw SchemaError("r-max", "sharpness deltas must lie in [0, 0.2]");
    r.radii.resize(*c.r_steps);
    for (int i = 0; i < *c.r_steps; ++i)
      r.radii[i] = *c.grid_kind == GridKind::linear
                       ? *c.r_min + (*c.r_max - *c.r_min) * i / (*c.r_steps - 1)
                       : *c.r_min * std::pow(*c.r_max / *c.r_min, static_cast<double>(i) / (*c.r_steps - 1));
  } else {
    r.radii = radius_grid(*c.r_min, *c.r_max, *c.r_steps, *c.grid_kind);
  }
  return r;
}

Table cmd_scan(const Resolved& r) {
  Table t;
  t.columns = {"r", "F", "E", "E_dir", "jump_count", "D1", "D2", "dlms_residual", "circle_tau", "circle_nu", "skipped"};
  const MonotonicityReport rep = scan(*r.model, r.cfg.center, r.radii, r.spec);
  double min_d1 = 0.0, worst_rep = 0.0, worst_dlms = 0.0, worst_crossing = 0.0;
  for (const ScanRow& row : rep.rows) {
    t.rows.push_back({num(row.r), num(row.F), num(row.E), num(row.E_dir), row.jump_count, num(row.D1), num(row.D2),
                      num(row.dlms_residual), num(row.circle_tau), num(row.circle_nu), row.usable() ? 0 : 1});
    if (!row.usable()) continue;
    min_d1 = std::min(min_d1, row.D1);
    worst_rep = std::max(worst_rep, std::abs(row.D1 - row.D2));
    worst_dlms = std::max(worst_dlms, std::abs(row.dlms_residual));
    worst_crossing = std::min(worst_crossing, row.D1 - d_lower_bound(row));
  }
  t.verdict("monotone", rep.verdict,
            {{"min_forward_difference", rep.min_forward_difference}, {"worst_radius", rep.worst_radius},
             {"tolerance", kMonotoneTol}});
  t.verdict("differential", rep.differential_verdict,
            {{"min_slack", rep.min_differential_slack}, {"worst_radius", rep.worst_differential_radius},
             {"tolerance", ScanTolerances{}.differential}});
  t.verdict("d_nonnegative", min_d1 >= -kMonotoneTol, {{"min_D1", min_d1}});
  t.verdict("d_representations_agree", worst_rep <= kRepTol, {{"max_abs_D1_minus_D2", worst_rep}});
  t.verdict("dlms", worst_dlms < kDlmsTol, {{"max_abs_residual", worst_dlms}});
  t.verdict("crossing_count_bounds", worst_crossing >= -kCrossingBoundTol, {{"min_D1_minus_bound", worst_crossing}});
  t.verdict("rows", rep.errors == 0, {{"skipped_tangential", rep.skipped}, {"integration_errors", rep.errors}});
  t.no_convergence = rep.errors > 0;
  return t;
}

// Rows of circle quantities over the radius grid; tangential radii are kept and flagged.
template <class Fill>
void circle_rows(const Resolved& r, Table& t, Fill&& fill) {
  for (double rad : r.radii) {
    const DiskProbe disk(r.cfg.center, rad);
    try {
      fill(disk, false);
    } catch (const TangentialContact&) {
      fill(disk, true);
    } catch (const NoConvergence&) {
      t.no_convergence = true;
      fill(disk, true);
    }
  }
}

Table cmd_dlms(const Resolved& r) {
  Table t;
  t.columns = {"r", "jump_count", "dlms_residual", "skipped"};
  double worst = 0.0;
  circle_rows(r, t, [&](const DiskProbe& disk, bool skipped) {
    const int count = static_cast<int>(circle_crossings(jump_set(*r.model), disk).size());
    if (skipped) {
      t.rows.push_back({disk.radius(), count, nullptr, 1});
      return;
    }
    const double res = dlms_residual(*r.model, disk, r.spec);
    worst = std::max(worst, std::abs(res));
    t.rows.push_back({disk.radius(), count, res, 0});
  });
  t.verdict("dlms", worst < kDlmsTol, {{"max_abs_residual", worst}, {"tolerance", kDlmsTol}});
  return t;
}

Table cmd_tangent_gap(const Resolved& r) {
  Table t;
  t.columns = {"r", "jump_count", "circle_dirichlet", "min_gap", "q_angle", "skipped"};
  double worst = std::numeric_limits<double>::infinity();
  circle_rows(r, t, [&](const DiskProbe& disk, bool skipped) {
    const int count = static_cast<int>(circle_crossings(jump_set(*r.model), disk).size());
    if (skipped) {
      t.rows.push_back({disk.radius(), count, nullptr, nullptr, nullptr, 1});
      return;
    }
    const CircleEnergies ce = circle_energies(*r.model, disk, r.spec);
    const TangentGapMin m = min_tangent_gap(*r.model, disk, r.cfg.directions, r.spec);
    worst = std::min(worst, m.gap);
    t.rows.push_back({disk.radius(), count, ce.dirichlet(), m.gap, wrap_angle(m.q.angle()), 0});
  });
  t.verdict("tangent_gap", !(worst < -kMonotoneTol), {{"min_gap", num(std::isinf(worst) ? NAN : worst)}});
  return t;
}

Table cmd_slice(const Resolved& r) {
  Table t;
  t.columns = {"r", "jump_count", "circle_dirichlet", "slice_bound", "E", "skipped"};
  const bool singular = is_singular_point(*r.model, r.cfg.center);
  double worst_slice = std::numeric_limits<double>::infinity(), worst_e = worst_slice;
  circle_rows(r, t, [&](const DiskProbe& disk, bool skipped) {
    const int count = static_cast<int>(circle_crossings(jump_set(*r.model), disk).size());
    const double E = energy_density(*r.model, disk, r.spec);
    worst_e = std::min(worst_e, E);
    if (skipped) {
      t.rows.push_back({disk.radius(), count, nullptr, nullptr, E, 1});
      return;
    }
    const CircleEnergies ce = circle_energies(*r.model, disk, r.spec);
    const double slice = ce.dirichlet() + static_cast<double>(ce.crossings.size()) - 2.0;
    worst_slice = std::min(worst_slice, slice);
    t.rows.push_back({disk.radius(), count, ce.dirichlet(), slice, E, 0});
  });
  auto finite = [](double x) { return std::isinf(x) ? json(nullptr) : json(x); };
  t.verdict("radial_slice", !singular || !(worst_slice < -kMonotoneTol),
            {{"singular_point", singular}, {"min_slice_bound", finite(worst_slice)}});
  t.verdict("density", !singular || !(worst_e < 2.0 - kMonotoneTol),
            {{"singular_point", singular}, {"min_E", finite(worst_e)}});
  return t;
}

Table cmd_sharpness(const Resolved& r) {
  Table t;
  t.columns = {"delta", "F", "slope"};
  const auto rows = sharpness_scan(r.radii, r.spec);
  bool above = true;
  double smallest = std::numeric_limits<double>::infinity(), slope_at_smallest = NAN;
  for (const auto& row : rows) {
    t.rows.push_back({row.delta, row.F, num(row.slope)});
    if (row.delta > 0) {
      above = above && row.F > 1.5;
      if (row.delta < smallest) {
        smallest = row.delta;
        slope_at_smallest = row.slope;
      }
    }
  }
  t.verdict("above_three_halves", above);
  const bool slope_ok = std::isnan(slope_at_smallest) || (slope_at_smallest >= 0.4 && slope_at_smallest <= 0.6);
  t.verdict("slope_near_half", slope_ok,
            {{"delta", std::isinf(smallest) ? json(nullptr) : json(smallest)}, {"slope", num(slope_at_smallest)}});
  return t;
}

Table cmd_competitor(const Resolved& r) {
  Table t;
  t.columns = {"r", "jump_count", "kind", "E", "competitor_E", "bound", "tail_estimate", "status"};
  const int K = r.cfg.fourier_K;
  bool extension_ok = true, minimal_ok = true;
  for (double rad : r.radii) {
    const DiskProbe disk(r.cfg.center, rad);
    const auto crossings = circle_crossings(jump_set(*r.model), disk);
    const int count = static_cast<int>(crossings.size());
    double E;
    try {
      E = energy_density(*r.model, disk, r.spec);
    } catch (const NoConvergence&) {
      t.no_convergence = true;
      t.rows.push_back({rad, count, "none", nullptr, nullptr, nullptr, nullptr, "no_convergence"});
      continue;
    }
    if (count == 0) {
      const FourierTrace tr = disk_trace(*r.model, disk, K);
      const ExtensionEnergies en = disk_extension_energies(tr);
      const double tail = tail_energy_estimate(tr.a, tr.b);
      const double slack = 1e-6 * std::max(1.0, E) + kPi * tail / rad;
      const bool ok_extension = en.extension_over_r <= en.boundary_tau * (1 + 1e-12) + 1e-12;
      const bool ok_min = E <= en.extension_over_r + slack;
      extension_ok = extension_ok && ok_extension;
      minimal_ok = minimal_ok && ok_min;
      t.rows.push_back({rad, count, "disk", E, en.extension_over_r, en.boundary_tau, num(tail),
                        ok_extension && ok_min ? "ok" : "violated"});
      continue;
    }
    if (count != 2) {
      t.rows.push_back({rad, count, "none", E, nullptr, nullptr, nullptr, "not_applicable"});
      continue;
    }
    try {
      const TwoSectorResult res = two_sector_competitor(*r.model, disk, K, 0, r.spec);
      double tail = 0.0;
      for (int i = 0; i < 2; ++i)
        tail += tail_energy_estimate(sector_trace_from_arc(*r.model, disk, res.arcs[i], K).a);
      const double slack = 1e-6 * std::max(1.0, E) + kPi * tail / rad;
      const bool ok_bound = res.within_bound();
      const bool ok_min = E <= res.competitor_E + slack;
      extension_ok = extension_ok && ok_bound;
      minimal_ok = minimal_ok && ok_min;
      t.rows.push_back({rad, count, "two_sector", E, res.competitor_E, res.bound, num(tail),
                        ok_bound && ok_min ? "ok" : "violated"});
    } catch (const ArcTooLong&) {
      t.rows.push_back({rad, count, "two_sector", E, nullptr, nullptr, nullptr, "arc_too_long"});
    } catch (const WrongCrossingCount&) {
      t.rows.push_back({rad, count, "two_sector", E, nullptr, nullptr, nullptr, "tangential"});
    } catch (const TangentialContact&) {
      t.rows.push_back({rad, count, "two_sector", E, nullptr, nullptr, nullptr, "tangential"});
    } catch (const NoConvergence&) {
      t.no_convergence = true;
      t.rows.push_back({rad, count, "two_sector", E, nullptr, nullptr, nullptr, "no_convergence"});
    }
  }
  t.verdict("extension_bounds", extension_ok);
  t.verdict("minimality", minimal_ok);
  return t;
}

Table cmd_twopoint(const Resolved& r) {
  Table t;
  t.columns = {"claim_id",       "grid_resolution", "claimed_bound", "grid_minimum", "lipschitz_bound",
               "cell_radius",    "certified_lower_bound", "refined_cells", "verdict"};
  static const Claim all[] = {Claim::sqrt2, Claim::reduced_angle, Claim::half_secants, Claim::secant_cosine};
  bool certified = true;
  json inconclusive = json::array();
  for (int id : r.cfg.claims) {
    try {
      const CertificationReport rep = certify_claim(all[id - 1], r.cfg.cert_n);
      t.rows.push_back({rep.claim_id, rep.grid_resolution, rep.claimed_bound, rep.grid_minimum, rep.lipschitz_bound,
                        rep.cell_radius, rep.certified_lower_bound, rep.refined_cells, rep.verdict});
      certified = certified && rep.verdict;
    } catch (const CertificationInconclusive& e) {
      certified = false;
      inconclusive.push_back(claim_id(all[id - 1]));
    }
  }
  t.verdict("certification", certified, {{"inconclusive", inconclusive}});

  const FMin m = f_min(kPi / 2, 1024);
  const bool fmin_ok = std::abs(m.minimum - std::sqrt(2.0)) < 1e-6 && std::abs(m.alpha1 - kPi / 4) < 1e-3 &&
                       std::abs(m.alpha2 + kPi / 4) < 1e-3;
  t.verdict("f_min_half_pi", fmin_ok, {{"minimum", m.minimum}, {"alpha1", m.alpha1}, {"alpha2", m.alpha2}});
  const double sym = symmetrization_check(256);
  t.verdict("symmetrization", sym >= -1e-12, {{"worst_violation", sym}});
  const DerivativeSignReport ds = derivative_sign_check(1024);
  t.verdict("derivative_sign", ds.verdict, {{"max_left", ds.max_left}, {"min_right", ds.min_right}});

  if (!r.cfg.landscape_path.empty()) {
    std::ofstream out(r.cfg.landscape_path);
    if (!out) throw SchemaError("landscape", "cannot write '" + r.cfg.landscape_path + "'");
    out << "phi_tilde,alpha1,alpha2,f\n";
    const int n = 65;
    const double box = 1.2;
    for (double phi : {kPi / 8, kPi / 4, 3 * kPi / 8, kReducedPhiMax, kPi / 2})
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double a1 = -box + 2 * box * i / (n - 1), a2 = -box + 2 * box * j / (n - 1);
          out << fmt(phi) << "," << fmt(a1) << "," << fmt(a2) << "," << fmt(f_eval({phi, a1, a2})) << "\n";
        }
  }
  return t;
}

// Deterministic uniform draw in [0, 1) independent of the standard library's distributions.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Point2 reference_point(const FieldModel& model) {
  return std::visit([](const auto& m) -> Point2 {
    using T = std::decay_t<decltype(m)>;
    if constexpr (std::is_same_v<T, CrackTip>) return m.tip;
    else if constexpr (std::is_same_v<T, PlanarInterface>) return m.point;
    else return m.center;
  }, model);
}

Table cmd_equilibrium(const Resolved& r) {
  Table t;
  t.columns = {"index", "center_x", "center_y", "radius", "direction_x", "direction_y", "bulk", "jump", "residual"};
  std::mt19937_64 rng(r.cfg.seed);
  const Point2 ref = reference_point(*r.model);
  double worst = 0.0;
  for (int i = 0; i < r.cfg.bumps; ++i) {
    BumpField b;
    b.center = ref + Vector2(3.0 * uniform(rng) - 1.5, 3.0 * uniform(rng) - 1.5);
    b.radius = 0.3 + 0.9 * uniform(rng);
    const double ang = kTwoPi * uniform(rng);
    b.direction = Vector2(std::cos(ang), std::sin(ang));
    try {
      const EquilibriumTerms e = equilibrium_terms(*r.model, b, r.spec);
      worst = std::max(worst, std::abs(e.residual()));
      t.rows.push_back({i, b.center.x(), b.center.y(), b.radius, b.direction.x(), b.direction.y(), e.bulk, e.jump,
                        e.residual()});
    } catch (const NoConvergence&) {
      t.no_convergence = true;
      t.rows.push_back(
          {i, b.center.x(), b.center.y(), b.radius, b.direction.x(), b.direction.y(), nullptr, nullptr, nullptr});
    }
  }
  t.verdict("equilibrium", worst < kEquilibriumTol, {{"max_abs_residual", worst}, {"tolerance", kEquilibriumTol}});
  return t;
}

Point2 parse_center(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw SchemaError("center", "expected X,Y");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
    const double x = std::stod(xs, &p1), y = std::stod(ys, &p2);
    if (p1 != xs.size() || p2 != ys.size()) throw std::invalid_argument("trailing characters");
    return {x, y};
  } catch (const std::logic_error&) {
    throw SchemaError("center", "expected X,Y with numeric coordinates");
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  Resolved r;
  try {
    r = resolve(config);
  } catch (const SchemaError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  Table t;
  try {
    const std::string& cmd = r.cfg.command;
    if (cmd == "scan") t = cmd_scan(r);
    else if (cmd == "dlms") t = cmd_dlms(r);
    else if (cmd == "prop31") t = cmd_tangent_gap(r);
    else if (cmd == "slice") t = cmd_slice(r);
    else if (cmd == "sharpness") t = cmd_sharpness(r);
    else if (cmd == "competitor") t = cmd_competitor(r);
    else if (cmd == "twopoint") t = cmd_twopoint(r);
    else t = cmd_equilibrium(r);
  } catch (const NoConvergence& e) {
    log << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const SchemaError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::string text = render(t, config_json(r), r.cfg.out_format);
  if (r.cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(r.cfg.out_path, std::ios::binary);
    if (!out) {
      log << "error: out: cannot write '" << r.cfg.out_path << "'\n";
      return kExitConfig;
    }
    out << text;
  }
  for (const auto& [name, v] : t.verdicts.items())
    if (!v.at("pass").get<bool>()) log << "verdict failed: " << name << " " << v.dump() << "\n";
  if (t.no_convergence) return kExitNoConvergence;
  return t.all_pass() ? kExitPass : kExitVerdictFail;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Monotonicity diagnostics for free-discontinuity minimizers"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string center = "0,0", grid, format = "csv", claims;
  double r_min = 0, r_max = 0, quad_tol = 0;
  int r_steps = 0;
  app.add_option("--model", cfg.model_source, "Model JSON file or inline JSON document");
  app.add_option("--center", center, "Probe center X,Y");
  auto* o_rmin = app.add_option("--r-min", r_min, "Smallest radius (delta for sharpness)");
  auto* o_rmax = app.add_option("--r-max", r_max, "Largest radius (delta for sharpness)");
  auto* o_steps = app.add_option("--r-steps", r_steps, "Number of radii");
  auto* o_grid = app.add_option("--grid", grid, "geometric or linear")->check(CLI::IsMember({"geometric", "linear"}));
  app.add_option("--quad-order", cfg.quad_order, "Gauss-Legendre nodes per panel");
  auto* o_tol = app.add_option("--quad-tol", quad_tol, "Relative quadrature tolerance");
  app.add_option("--fourier-modes", cfg.fourier_K, "Fourier modes K");
  app.add_option("--cert-n", cfg.cert_n, "Certification grid resolution");
  app.add_option("--out", cfg.out_path, "Output file (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized commands");
  app.add_option("--directions", cfg.directions, "Directions q for the tangent-gap minimum (prop31)");
  app.add_option("--bumps", cfg.bumps, "Number of random test bumps for equilibrium");
  app.add_option("--claims", claims, "Comma-separated claim ids 1-4 for twopoint");
  app.add_option("--landscape", cfg.landscape_path, "Write the f landscape CSV here (twopoint)");

  for (const char* name : {"scan", "dlms", "prop31", "slice", "sharpness", "competitor", "twopoint", "equilibrium"})
    app.add_subcommand(name, std::string("Run ") + name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.out_format = format;
  try {
    cfg.center = parse_center(center);
    if (!claims.empty()) {
      cfg.claims.clear();
      std::stringstream ss(claims);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.claims.push_back(std::stoi(item));
    }
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::logic_error&) {
    std::cerr << "error: claims: expected comma-separated integers\n";
    return kExitConfig;
  }
  if (o_rmin->count()) cfg.r_min = r_min;
  if (o_rmax->count()) cfg.r_max = r_max;
  if (o_steps->count()) cfg.r_steps = r_steps;
  if (o_grid->count()) cfg.grid_kind = grid == "linear" ? GridKind::linear : GridKind::geometric;
  if (o_tol->count()) cfg.quad_tol = quad_tol;
  return run(cfg, std::cerr);
}

ScanRow parse_scan_csv_line(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) f.push_back(item);
  if (f.size() != 11) throw SchemaError("row", "expected 11 scan columns");
  auto d = [&](int i) { return std::strtod(f[i].c_str(), nullptr); };
  ScanRow row;
  row.r = d(0);
  row.F = d(1);
  row.E = d(2);
  row.E_dir = d(3);
  row.jump_count = std::stoi(f[4]);
  row.D1 = d(5);
  row.D2 = d(6);
  row.dlms_residual = d(7);
  row.circle_tau = d(8);
  row.circle_nu = d(9);
  row.circle_dirichlet = row.circle_tau + row.circle_nu;
  row.skipped_tangential = f[10] != "0";
  return row;
}

}  // namespace msmono
