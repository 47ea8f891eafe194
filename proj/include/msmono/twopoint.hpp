#pragma once

#include <string>
#include <vector>

#include "msmono/geometry.hpp"

namespace msmono {

// Largest phi_tilde of the second claim: (82/90) (pi/2).
inline constexpr double kReducedPhiMax = 82.0 / 90.0 * kPi / 2.0;
// Slack allowed for floating-point round-off in certified comparisons.
inline constexpr double kCertRoundoff = 1e-12;

struct TwoPointConfig {
  double phi_tilde;
  double alpha1;
  double alpha2;

  // Throws std::invalid_argument outside phi_tilde in (0, pi/2], |alpha_i| < pi/2.
  void validate() const;
};

// 1/(2 cos a1) + 1/(2 cos a2) + sqrt(2 + 2 cos(phi_tilde + a1 - a2)).
double f_eval(const TwoPointConfig& config);

struct FMin {
  double minimum;
  double alpha1;
  double alpha2;
};

// Minimum of f over alpha in (-pi/2, pi/2)^2 for fixed phi_tilde: n x n grid on
// the box where 1/cos alpha <= 6, then nested golden-section refinement.
FMin f_min(double phi_tilde, int n = 1024);

struct CertificationReport {
  std::string claim_id;
  int grid_resolution = 0;
  double claimed_bound = 0.0;
  double grid_minimum = 0.0;
  double lipschitz_bound = 0.0;
  double cell_radius = 0.0;
  double certified_lower_bound = 0.0;
  // Cells that needed subdivision beyond the base grid.
  long long refined_cells = 0;
  bool verdict = false;
};

enum class Claim {
  sqrt2,          // f >= sqrt 2 for phi_tilde in (0, pi/2]
  reduced_angle,  // f >= 1.52 for phi_tilde <= (82/90)(pi/2)
  half_secants,   // f < 1.51 implies sum 1/(2 cos a_i) >= 1.26
  secant_cosine,  // f < 1.51 implies sum (1/(2 cos a_i) + cos(a_i)/2) >= 2.055
};

const char* claim_id(Claim claim);

// Grid + Lipschitz certification of one claim. Throws CertificationInconclusive
// when a cell can neither be certified nor refuted after subdivision.
CertificationReport certify_claim(Claim claim, int n = 4096);

// All four claims; n >= 1024.
std::vector<CertificationReport> certify_all_claims(int n = 4096);

// Most negative f(a + s, -a + s) - f(a, -a) over a (phi_tilde, a, s) grid with
// |s| < min(a, pi/2 - a).
double symmetrization_check(int n = 256);

// d/da [sec a + 2 |cos(phi_tilde/2 + a)|], the restriction of f to a1 = -a2 = a.
double reduced_derivative(double alpha, double phi_tilde);

struct DerivativeSignReport {
  // Largest derivative left of the critical angle (must be negative).
  double max_left;
  // Smallest derivative right of it (must be positive).
  double min_right;
  bool verdict;
};

// Sign pattern of reduced_derivative around pi/4 (phi_tilde = pi/2) and
// around (98/90)(pi/4) (phi_tilde = kReducedPhiMax) on an n-point grid.
DerivativeSignReport derivative_sign_check(int n = 1024);

// Angles of the two-crossing configuration with x1 counterclockwise from x2
// along the shorter arc. Throws WrongCrossingCount unless exactly two
// transversal crossings are given.
TwoPointConfig crossings_to_config(const std::vector<CircleCrossing>& crossings, const DiskProbe& disk);

// Shorter arc angle phi between the two crossings (before clamping to pi/2).
double shorter_arc(const std::vector<CircleCrossing>& crossings);

}  // namespace msmono
