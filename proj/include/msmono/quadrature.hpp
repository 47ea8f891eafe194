#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "msmono/geometry.hpp"

namespace msmono {

struct QuadratureSpec {
  int nodes_per_panel = 16;
  int panels_per_arc = 2;
  int refinement_levels = 6;
  double rel_tolerance = 1e-9;

  // Throws std::invalid_argument on nodes_per_panel < 4 or a non-positive tolerance.
  void validate() const;
};

// Looser tolerance used by radius scans.
inline QuadratureSpec scan_quadrature() {
  QuadratureSpec s;
  s.rel_tolerance = 1e-7;
  return s;
}

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Angular cut of a circle. A positive `focus_width` grades the panels next to
// the cut with a sinh map of that angular scale (near-singular integrands).
struct ArcCut {
  double angle;
  double focus_width = 0.0;
};

class ArcPartition {
 public:
  // Breakpoints are wrapped into [0, 2pi), sorted and merged when closer than 1e-14.
  ArcPartition(DiskProbe disk, std::vector<double> breakpoints, std::vector<ArcCut> foci = {});

  const DiskProbe& disk() const { return disk_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<ArcCut>& cuts() const { return cuts_; }

 private:
  DiskProbe disk_;
  std::vector<double> breakpoints_;
  std::vector<ArcCut> cuts_;
};

// Partition of the circle at the jump crossings, with grading toward the
// gradient singularity of `model` when the circle passes close to it.
ArcPartition crossing_partition(const FieldModel& model, const DiskProbe& disk);

// Integral of f(phi) r dphi over the circle, panel boundaries at every cut.
QuadResult integrate_circle(const std::function<double(double)>& f, const ArcPartition& partition,
                            const QuadratureSpec& spec = {});

// Integral of f over [a, b] by the same panel-doubling scheme.
QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              const QuadratureSpec& spec = {});

// Integral of f over the disk. With a singular point, the rule is polar about
// that point and `split_angles` (polar angles about it, e.g. jump directions)
// become angular panel boundaries.
QuadResult integrate_disk(const std::function<double(const Point2&)>& f, const DiskProbe& disk,
                          const std::optional<Point2>& singular_point, const QuadratureSpec& spec = {},
                          const std::vector<double>& split_angles = {});

}  // namespace msmono
