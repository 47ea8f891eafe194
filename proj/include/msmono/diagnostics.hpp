#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msmono/geometry.hpp"
#include "msmono/quadrature.hpp"

namespace msmono {

// Tie tolerance of the indicator F < 3/2.
inline constexpr double kIndicatorTolerance = 1e-12;
// Number of equally spaced directions q in the tangent-gap minimum.
inline constexpr int kTangentGapDirections = 720;

struct DiagnosticsSpec {
  QuadratureSpec quad{};
  // Use exact formulas where the model/probe admits one; otherwise quadrature.
  bool closed_forms = true;
};

// Integral of |grad u|^2 over B_r(x0) minus the jump set.
double dirichlet_energy(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});

// F(r, x0): (Dirichlet + H1(J cap B_r)/2) / r.
double entropy(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});
// E(r, x0): (Dirichlet + H1(J cap B_r)) / r.
double energy_density(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});

struct CircleEnergies {
  double tau = 0.0;
  double nu = 0.0;
  std::vector<CircleCrossing> crossings;

  double dirichlet() const { return tau + nu; }
  double sum_inverse_nu_dot_t() const;
  double sum_nu_dot_t() const;
};

// Tangential and normal Dirichlet energies on the circle. Throws
// TangentialContact when a crossing is not transversal.
CircleEnergies circle_energies(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});

inline bool below_three_halves(double F) { return F < 1.5 - kIndicatorTolerance; }

double d_rep1(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});
double d_rep2(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});
// [tau + sum nu.t] - [nu + H1(J cap B_r) / r].
double dlms_residual(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});

// Circle Dirichlet energy minus sum over crossings of q . t.
double tangent_gap(const FieldModel& model, const DiskProbe& disk, const UnitVector& q,
                   const DiagnosticsSpec& spec = {});

struct TangentGapMin {
  double gap;
  UnitVector q;
};

// tangent_gap minimized over `directions` equally spaced q.
TangentGapMin min_tangent_gap(const FieldModel& model, const DiskProbe& disk,
                             int directions = kTangentGapDirections, const DiagnosticsSpec& spec = {});

// Circle Dirichlet energy + number of crossings - 2.
double radial_slice_bound(const FieldModel& model, const DiskProbe& disk, const DiagnosticsSpec& spec = {});

struct ScanRow {
  double r = 0.0;
  double F = 0.0;
  double E = 0.0;
  double E_dir = 0.0;
  int jump_count = 0;
  double D1 = 0.0;
  double D2 = 0.0;
  double dlms_residual = 0.0;
  double circle_dirichlet = 0.0;
  double circle_tau = 0.0;
  double circle_nu = 0.0;
  double jump_length = 0.0;
  double sum_inverse_nu_dot_t = 0.0;
  double sum_nu_dot_t = 0.0;
  bool skipped_tangential = false;
  // Set when an integration error stopped this row; the row is then skipped.
  std::optional<std::string> error;

  bool usable() const { return !skipped_tangential && !error; }
};

// All diagnostics at one radius. Tangential radii come back flagged with the
// volume quantities filled in and the circle quantities left at zero.
ScanRow scan_row(const FieldModel& model, const Point2& x0, double r, const DiagnosticsSpec& spec = {});

// Lower bound on D1 implied by the number of crossings: half the circle
// energy (none), (3/2 - F)_+ (one, three or more), 0 (two).
double d_lower_bound(const ScanRow& row);

enum class GridKind { geometric, linear };

std::vector<double> radius_grid(double r_min, double r_max, int steps, GridKind kind = GridKind::geometric);

struct ScanTolerances {
  double monotone = 1e-8;
  double differential = 1e-3;
};

struct MonotonicityReport {
  std::vector<ScanRow> rows;
  double min_forward_difference = 0.0;
  bool verdict = true;
  double worst_radius = 0.0;
  // min over rows with F < 3/2 of dF/dr - min(D1_i / r_i, D1_{i+1} / r_{i+1}).
  double min_differential_slack = 0.0;
  bool differential_verdict = true;
  double worst_differential_radius = 0.0;
  int skipped = 0;
  int errors = 0;
};

// Throws std::invalid_argument unless `radii` is strictly increasing with at least 32 entries.
MonotonicityReport scan(const FieldModel& model, const Point2& x0, const std::vector<double>& radii,
                        const DiagnosticsSpec& spec = {}, const ScanTolerances& tol = {});

struct SharpnessRow {
  double delta;
  double F;
  // (F - 3/2) / delta, NaN at delta = 0.
  double slope;
};

// F(1, delta e1) for the crack-tip at the origin along e1.
std::vector<SharpnessRow> sharpness_scan(const std::vector<double>& deltas, const DiagnosticsSpec& spec = {});

// eta(x) = amplitude * direction * (1 - |x - center|^2 / radius^2)^2 inside the disk.
struct BumpField {
  Point2 center{0.0, 0.0};
  double radius = 1.0;
  Vector2 direction{1.0, 0.0};
  double amplitude = 1.0;

  Vector2 value(const Point2& x) const;
  // Gradient of the scalar profile; grad eta = amplitude * direction (x) profile_gradient.
  Vector2 profile_gradient(const Point2& x) const;
};

struct EquilibriumTerms {
  double bulk;
  double jump;
  double residual() const { return bulk - jump; }
};

// Bulk term (2 grad u (x) grad u - |grad u|^2 Id) : grad eta and the jump term
// of t (x) t : grad eta integrated along the jump set.
EquilibriumTerms equilibrium_terms(const FieldModel& model, const BumpField& eta, const DiagnosticsSpec& spec = {});

inline double equilibrium_residual(const FieldModel& model, const BumpField& eta, const DiagnosticsSpec& spec = {}) {
  return equilibrium_terms(model, eta, spec).residual();
}

}  // namespace msmono
