#pragma once

#include <vector>

#include "msmono/diagnostics.hpp"
#include "msmono/geometry.hpp"

namespace msmono {

inline constexpr int kDefaultFourierModes = 64;
// Longest arc the two-sector competitor accepts: (3/2) pi - 0.00001.
inline constexpr double kTwoSectorMaxArc = 1.5 * kPi - 1e-5;

// u(r, phi) = sum_k a_k cos k phi + b_k sin k phi; a[k] for k = 0..K, b[k - 1] for k = 1..K.
struct FourierTrace {
  double r = 1.0;
  std::vector<double> a;
  std::vector<double> b;

  int modes() const { return static_cast<int>(a.size()) - 1; }
  double b_at(int k) const { return k >= 1 && k <= static_cast<int>(b.size()) ? b[k - 1] : 0.0; }
};

// u(r, phi) = sum_k a_k cos(k pi phi / theta), phi measured from the arc start.
struct SectorTrace {
  double r = 1.0;
  double theta = kPi;
  std::vector<double> a;
};

struct ExtensionEnergies {
  double extension_over_r;
  double boundary_tau;
};

struct SectorEnergies {
  double extension_over_r;
  double boundary_tau;
  double bound_rhs;
};

// Counterclockwise arc [start, start + width] of the probe circle.
struct Arc {
  double start;
  double width;
};

// Trace coefficients from n_samples equispaced samples (0 selects 8K).
// Throws JumpOnCircle if the jump set meets the circle.
FourierTrace disk_trace(const FieldModel& model, const DiskProbe& disk, int K = kDefaultFourierModes,
                        int n_samples = 0);

ExtensionEnergies disk_extension_energies(const FourierTrace& trace);

// Gradient of the harmonic extension at offset x - center (|offset| < r).
Vector2 disk_extension_gradient(const FourierTrace& trace, const Vector2& offset);

// theta must lie in (0, 2pi), or equal 2pi when `allow_slit` is set.
SectorEnergies sector_extension_energies(const SectorTrace& trace, bool allow_slit = false);

// Radial and angular components of the sector extension's gradient at polar
// position (rho, phi), phi measured from the arc start.
Vector2 sector_extension_gradient(const SectorTrace& trace, double rho, double phi);

// Cosine coefficients of the trace on the arc from n_samples midpoint samples
// (0 selects 8K). Throws JumpInsideArc if a crossing lies strictly inside.
SectorTrace sector_trace_from_arc(const FieldModel& model, const DiskProbe& disk, const Arc& arc,
                                  int K = kDefaultFourierModes, int n_samples = 0, bool allow_slit = false);

// Estimate of sum_{k > K} k^2 (a_k^2 + b_k^2) from a power-law fit of the last
// quarter of the coefficients. Infinite when the fitted decay is too slow.
double tail_energy_estimate(const std::vector<double>& a, const std::vector<double>& b = {});

struct TwoSectorResult {
  double competitor_E;
  double bound;
  // Integral of |d_tau u|^2 over the circle used in the bound.
  double boundary_tau;
  Arc arcs[2];
  SectorEnergies sectors[2];

  bool within_bound() const { return competitor_E <= bound + 1e-12; }
};

// Harmonic extension in each of the two sectors cut out by the crossings plus
// jumps along the two radii. Throws WrongCrossingCount unless there are exactly
// two transversal crossings, ArcTooLong when the longer arc exceeds kTwoSectorMaxArc.
TwoSectorResult two_sector_competitor(const FieldModel& model, const DiskProbe& disk, int K = kDefaultFourierModes,
                                      int n_samples = 0, const DiagnosticsSpec& spec = {});

}  // namespace msmono
