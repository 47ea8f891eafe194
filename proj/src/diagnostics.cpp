#include "msmono/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace msmono {

namespace {

bool tip_centered(const FieldModel& model, const Point2& x0) {
  const auto* m = std::get_if<CrackTip>(&model);
  return m && (x0 - m->tip).norm() <= kOnJumpTolerance;
}

bool piecewise_constant(const FieldModel& model) {
  return std::holds_alternative<PlanarInterface>(model) || std::holds_alternative<Propeller>(model);
}

struct Functionals {
  double E_dir;
  double jump_over_r;
  double F() const { return E_dir + 0.5 * jump_over_r; }
  double E() const { return E_dir + jump_over_r; }
};

Functionals functionals(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  const double r = disk.radius();
  return {dirichlet_energy(model, disk, spec) / r, jump_length_in_disk(jump_set(model), disk) / r};
}

double rep1(const Functionals& fn, const CircleEnergies& ce) {
  const double F = fn.F();
  if (!below_three_halves(F)) return 0.0;
  return ce.dirichlet() + 0.5 * ce.sum_inverse_nu_dot_t() - F;
}

double rep2(const Functionals& fn, const CircleEnergies& ce) {
  if (!below_three_halves(fn.F())) return 0.0;
  return 1.5 * ce.tau + 0.5 * ce.nu + 0.5 * (ce.sum_inverse_nu_dot_t() + ce.sum_nu_dot_t()) - fn.E();
}

double dlms(const Functionals& fn, const CircleEnergies& ce) {
  return (ce.tau + ce.sum_nu_dot_t()) - (ce.nu + fn.jump_over_r);
}

}  // namespace

double CircleEnergies::sum_inverse_nu_dot_t() const {
  double s = 0.0;
  for (const auto& c : crossings) s += 1.0 / c.nu_dot_t;
  return s;
}

double CircleEnergies::sum_nu_dot_t() const {
  double s = 0.0;
  for (const auto& c : crossings) s += c.nu_dot_t;
  return s;
}

double dirichlet_energy(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  if (piecewise_constant(model)) return 0.0;
  const double r = disk.radius();
  if (spec.closed_forms) {
    if (tip_centered(model, disk.center())) return r;
    if (const auto* h = std::get_if<SmoothHarmonic>(&model); h && (disk.center() - h->center).norm() == 0.0) {
      // sum_k pi k r^(2k) (a_k^2 + b_k^2)
      double sum = 0.0;
      for (std::size_t k = 1; k < h->coefficients.size(); ++k) {
        const auto& [a, b] = h->coefficients[k];
        sum += kPi * k * std::pow(r, 2.0 * k) * (a * a + b * b);
      }
      return sum;
    }
  }
  auto density = [&](const Point2& p) { return gradient_unchecked(model, p).squaredNorm(); };
  const auto tip = gradient_singularity(model);
  std::vector<double> splits;
  if (tip) splits = jump_directions_from(jump_set(model), *tip);
  return integrate_disk(density, disk, tip, spec.quad, splits).value;
}

double entropy(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  return functionals(model, disk, spec).F();
}

double energy_density(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  return functionals(model, disk, spec).E();
}

CircleEnergies circle_energies(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  CircleEnergies out;
  out.crossings = circle_crossings(jump_set(model), disk);
  for (const auto& c : out.crossings)
    if (!c.transversal) throw TangentialContact("circle meets the jump set non-transversally");
  if (const auto tip = gradient_singularity(model);
      tip && std::abs((*tip - disk.center()).norm() - disk.radius()) <= kTangencyTolerance * disk.radius())
    throw TangentialContact("circle passes through the crack tip");
  if (piecewise_constant(model)) return out;
  if (spec.closed_forms && tip_centered(model, disk.center())) {
    out.tau = 0.5;
    out.nu = 0.5;
    return out;
  }
  const ArcPartition partition = crossing_partition(model, disk);
  const Point2& c = disk.center();
  const double r = disk.radius();
  auto component = [&](bool tangential) {
    return [&, tangential](double phi) {
      const Vector2 nu(std::cos(phi), std::sin(phi));
      const Vector2 g = gradient_unchecked(model, c + r * nu);
      const double v = tangential ? -nu.y() * g.x() + nu.x() * g.y() : nu.dot(g);
      return v * v;
    };
  };
  out.tau = integrate_circle(component(true), partition, spec.quad).value;
  out.nu = integrate_circle(component(false), partition, spec.quad).value;
  return out;
}

double d_rep1(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  const CircleEnergies ce = circle_energies(model, disk, spec);
  return rep1(functionals(model, disk, spec), ce);
}

double d_rep2(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  const CircleEnergies ce = circle_energies(model, disk, spec);
  return rep2(functionals(model, disk, spec), ce);
}

double dlms_residual(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  const CircleEnergies ce = circle_energies(model, disk, spec);
  return dlms({0.0, jump_length_in_disk(jump_set(model), disk) / disk.radius()}, ce);
}

double tangent_gap(const FieldModel& model, const DiskProbe& disk, const UnitVector& q, const DiagnosticsSpec& spec) {
  const CircleEnergies ce = circle_energies(model, disk, spec);
  double sum = 0.0;
  for (const auto& c : ce.crossings) sum += q.dot(c.tangent.vec());
  return ce.dirichlet() - sum;
}

TangentGapMin min_tangent_gap(const FieldModel& model, const DiskProbe& disk, int directions,
                             const DiagnosticsSpec& spec) {
  if (directions < 1) throw std::invalid_argument("min_tangent_gap: need at least one direction");
  const CircleEnergies ce = circle_energies(model, disk, spec);
  Vector2 t_sum = Vector2::Zero();
  for (const auto& c : ce.crossings) t_sum += c.tangent.vec();
  TangentGapMin best{std::numeric_limits<double>::infinity(), UnitVector()};
  for (int k = 0; k < directions; ++k) {
    const UnitVector q = UnitVector::from_angle(kTwoPi * k / directions);
    const double gap = ce.dirichlet() - q.dot(t_sum);
    if (gap < best.gap) best = {gap, q};
  }
  return best;
}

double radial_slice_bound(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec) {
  const CircleEnergies ce = circle_energies(model, disk, spec);
  return ce.dirichlet() + static_cast<double>(ce.crossings.size()) - 2.0;
}

ScanRow scan_row(const FieldModel& model, const Point2& x0, double r, const DiagnosticsSpec& spec) {
  ScanRow row;
  row.r = r;
  const DiskProbe disk(x0, r);
  Functionals fn{};
  try {
    fn = functionals(model, disk, spec);
  } catch (const NoConvergence& e) {
    row.error = e.what();
    row.F = row.E = row.E_dir = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  row.E_dir = fn.E_dir;
  row.F = fn.F();
  row.E = fn.E();
  row.jump_length = fn.jump_over_r * r;

  CircleEnergies ce;
  try {
    ce = circle_energies(model, disk, spec);
  } catch (const TangentialContact&) {
    row.skipped_tangential = true;
    row.jump_count = static_cast<int>(circle_crossings(jump_set(model), disk).size());
    return row;
  } catch (const NoConvergence& e) {
    row.error = e.what();
    return row;
  }
  row.jump_count = static_cast<int>(ce.crossings.size());
  row.circle_tau = ce.tau;
  row.circle_nu = ce.nu;
  row.circle_dirichlet = ce.dirichlet();
  row.sum_inverse_nu_dot_t = ce.sum_inverse_nu_dot_t();
  row.sum_nu_dot_t = ce.sum_nu_dot_t();
  row.D1 = rep1(fn, ce);
  row.D2 = rep2(fn, ce);
  row.dlms_residual = dlms(fn, ce);
  return row;
}

double d_lower_bound(const ScanRow& row) {
  if (!below_three_halves(row.F)) return 0.0;
  if (row.jump_count == 0) return 0.5 * row.circle_dirichlet;
  if (row.jump_count == 2) return 0.0;
  return std::max(0.0, 1.5 - row.F);
}

std::vector<double> radius_grid(double r_min, double r_max, int steps, GridKind kind) {
  if (!(r_min > 0) || !(r_max > r_min)) throw std::invalid_argument("radius_grid: need 0 < r_min < r_max");
  if (steps < 2) throw std::invalid_argument("radius_grid: need at least 2 steps");
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    out[i] = kind == GridKind::geometric ? r_min * std::pow(r_max / r_min, t) : r_min + (r_max - r_min) * t;
  }
  out.back() = r_max;
  return out;
}

MonotonicityReport scan(const FieldModel& model, const Point2& x0, const std::vector<double>& radii,
                        const DiagnosticsSpec& spec, const ScanTolerances& tol) {
  if (radii.size() < 32) throw std::invalid_argument("scan: need at least 32 radii");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] > 0) || !(radii[i + 1] > radii[i]))
      throw std::invalid_argument("scan: radii must be positive and strictly increasing");

  MonotonicityReport rep;
  for (double r : radii) {
    rep.rows.push_back(scan_row(model, x0, r, spec));
    if (rep.rows.back().skipped_tangential) ++rep.skipped;
    if (rep.rows.back().error) ++rep.errors;
  }

  const double inf = std::numeric_limits<double>::infinity();
  double min_fd = inf, min_slack = inf;
  const ScanRow* prev = nullptr;
  for (const ScanRow& row : rep.rows) {
    if (!row.usable()) continue;
    if (prev) {
      const double fd = std::min(row.F, 1.5) - std::min(prev->F, 1.5);
      if (fd < min_fd) {
        min_fd = fd;
        rep.worst_radius = prev->r;
      }
      if (below_three_halves(prev->F)) {
        const double slope = (row.F - prev->F) / (row.r - prev->r);
        const double slack = slope - std::min(prev->D1 / prev->r, row.D1 / row.r);
        if (slack < min_slack) {
          min_slack = slack;
          rep.worst_differential_radius = prev->r;
        }
      }
    }
    prev = &row;
  }
  rep.min_forward_difference = min_fd == inf ? 0.0 : min_fd;
  rep.min_differential_slack = min_slack == inf ? 0.0 : min_slack;
  rep.verdict = rep.min_forward_difference >= -tol.monotone;
  rep.differential_verdict = rep.min_differential_slack >= -tol.differential;
  return rep;
}

std::vector<SharpnessRow> sharpness_scan(const std::vector<double>& deltas, const DiagnosticsSpec& spec) {
  const FieldModel model = CrackTip{};
  std::vector<SharpnessRow> out;
  for (double delta : deltas) {
    if (!(delta >= 0.0 && delta <= 0.2)) throw std::invalid_argument("sharpness_scan: delta must lie in [0, 0.2]");
    const double F = entropy(model, DiskProbe(Point2(delta, 0.0), 1.0), spec);
    out.push_back({delta, F, delta > 0 ? (F - 1.5) / delta : std::numeric_limits<double>::quiet_NaN()});
  }
  return out;
}

Vector2 BumpField::value(const Point2& x) const {
  const double s2 = (x - center).squaredNorm() / (radius * radius);
  if (s2 >= 1.0) return Vector2::Zero();
  return amplitude * (1.0 - s2) * (1.0 - s2) * direction;
}

Vector2 BumpField::profile_gradient(const Point2& x) const {
  const double s2 = (x - center).squaredNorm() / (radius * radius);
  if (s2 >= 1.0) return Vector2::Zero();
  return -4.0 * (1.0 - s2) * (x - center) / (radius * radius);
}

EquilibriumTerms equilibrium_terms(const FieldModel& model, const BumpField& eta, const DiagnosticsSpec& spec) {
  if (!(eta.radius > 0)) throw std::invalid_argument("BumpField: radius must be positive");
  if (eta.amplitude == 0.0 || eta.direction.isZero()) return {0.0, 0.0};
  const Vector2& d = eta.direction;
  const DiskProbe support(eta.center, eta.radius);

  double bulk = 0.0;
  if (!piecewise_constant(model)) {
    auto integrand = [&](const Point2& x) {
      const Vector2 g = gradient_unchecked(model, x);
      const Vector2 dpsi = eta.profile_gradient(x);
      return 2.0 * g.dot(d) * g.dot(dpsi) - g.squaredNorm() * d.dot(dpsi);
    };
    const auto tip = gradient_singularity(model);
    std::vector<double> splits;
    if (tip) splits = jump_directions_from(jump_set(model), *tip);
    bulk = eta.amplitude * integrate_disk(integrand, support, tip, spec.quad, splits).value;
  }

  double jump = 0.0;
  for (const auto& curve : jump_set(model).curves) {
    const ParametricLine pl = as_parametric(curve);
    const Vector2 w = pl.origin - eta.center;
    const double foot = -pl.direction.dot(w);
    const double disc = eta.radius * eta.radius - (w + foot * pl.direction).squaredNorm();
    if (disc <= 0) continue;
    const double lo = std::max(foot - std::sqrt(disc), pl.s_min);
    const double hi = std::min(foot + std::sqrt(disc), pl.s_max);
    if (!(hi > lo)) continue;
    const Vector2 t = pl.direction;
    jump += integrate_interval(
                [&](double s) { return t.dot(d) * t.dot(eta.profile_gradient(pl.origin + s * t)); }, lo, hi,
                spec.quad)
                .value;
  }
  return {bulk, eta.amplitude * jump};
}

}  // namespace msmono
