#pragma once

// Planar free-discontinuity model fields and the geometry of their jump
// sets relative to probe disks.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "msmono/errors.hpp"

namespace msmono {

using Point2 = Eigen::Vector2d;
using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance below which a point counts as lying on a jump curve.
inline constexpr double kOnJumpTolerance = 1e-12;
// |nu . t| below this marks a crossing as a tangential contact.
inline constexpr double kTangencyTolerance = 1e-9;

// Maps an angle into [0, 2pi).
double wrap_angle(double angle);

class UnitVector {
 public:
  UnitVector() : v_(1.0, 0.0) {}
  // Normalizes `v`; throws std::invalid_argument for zero or non-finite input.
  explicit UnitVector(const Vector2& v);
  UnitVector(double x, double y) : UnitVector(Vector2(x, y)) {}

  static UnitVector from_angle(double angle) {
    UnitVector u;
    u.v_ = Vector2(std::cos(angle), std::sin(angle));
    return u;
  }

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  const Vector2& vec() const { return v_; }
  double angle() const { return std::atan2(v_.y(), v_.x()); }
  // Counterclockwise rotation by pi/2, so that e1 maps to e2.
  UnitVector perp() const {
    UnitVector u;
    u.v_ = Vector2(-v_.y(), v_.x());
    return u;
  }
  UnitVector operator-() const {
    UnitVector u;
    u.v_ = -v_;
    return u;
  }
  double dot(const Vector2& w) const { return v_.dot(w); }

 private:
  Vector2 v_;
};

struct Segment {
  Point2 p;
  Point2 q;
};

struct Ray {
  Point2 origin;
  UnitVector direction;
};

struct Line {
  Point2 point;
  UnitVector direction;
};

using JumpCurve = std::variant<Segment, Ray, Line>;

// Common parametrization `origin + s * direction` for s in [s_min, s_max].
struct ParametricLine {
  Point2 origin;
  Vector2 direction;
  double s_min;
  double s_max;
};

ParametricLine as_parametric(const JumpCurve& curve);

struct JumpSet {
  std::vector<JumpCurve> curves;
  bool empty() const { return curves.empty(); }
};

// sqrt(2/pi) * rho^(1/2) * cos(phi/2), with phi in (0, 2pi) measured from
// the crack axis; the jump set is the ray from `tip` along the axis.
struct CrackTip {
  Point2 tip{0.0, 0.0};
  double axis_angle = 0.0;
};

// `alpha` on the side the normal points to, `beta` on the other.
struct PlanarInterface {
  Point2 point{0.0, 0.0};
  UnitVector normal{0.0, 1.0};
  double alpha = 1.0;
  double beta = 0.0;
};

// Three rays from `center` at angles axis_angle + 2 pi j / 3. Sector j lies
// between ray j and ray j + 1 and carries values[j].
struct Propeller {
  Point2 center{0.0, 0.0};
  double axis_angle = 0.0;
  std::array<double, 3> values{0.0, 1.0, 2.0};
};

// u = sum_k rho^k (a_k cos k phi + b_k sin k phi) about `center`;
// coefficients[k] = (a_k, b_k) starting at k = 0.
struct SmoothHarmonic {
  Point2 center{0.0, 0.0};
  std::vector<std::pair<double, double>> coefficients;
};

using FieldModel = std::variant<CrackTip, PlanarInterface, Propeller, SmoothHarmonic>;

// Throws std::invalid_argument when a model violates its invariants.
void validate(const FieldModel& model);

class DiskProbe {
 public:
  DiskProbe(Point2 center, double radius);
  const Point2& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Point2 center_;
  double radius_;
};

struct CircleCrossing {
  Point2 point;
  // Jump tangent oriented so that nu . tangent >= 0.
  UnitVector tangent;
  double nu_dot_t = 0.0;
  bool transversal = true;
  // Polar angle of `point` about the disk center, in [0, 2pi).
  double angle = 0.0;
};

JumpSet jump_set(const FieldModel& model);

// Point singularity of the gradient (the crack tip), if any.
std::optional<Point2> gradient_singularity(const FieldModel& model);

// Polar angles, about `from`, of the jump rays emanating from `from`.
std::vector<double> jump_directions_from(const JumpSet& jumps, const Point2& from);

double distance_to_jump_set(const JumpSet& jumps, const Point2& p);

// Field value off the jump set. On a jump curve, `side` selects the one-sided
// limit: side >= 0 takes the limit from the left of the curve's direction
// (the counterclockwise side of a crack or propeller ray, the `alpha` side of
// a planar interface).
double eval_value(const FieldModel& model, const Point2& p, int side = 1);

// Analytic gradient of the absolutely continuous part.
// Throws OnJumpSet on a jump curve and AtSingularPoint at the crack tip.
Vector2 eval_gradient(const FieldModel& model, const Point2& p);

// Same formula as eval_gradient without the jump-set checks; for quadrature
// nodes, which never sit on the jump set.
Vector2 gradient_unchecked(const FieldModel& model, const Point2& p);

// Intersections of the jump set with the circle, sorted by polar angle.
std::vector<CircleCrossing> circle_crossings(const JumpSet& jumps, const DiskProbe& disk);

// Exact length of the jump set inside the open disk.
double jump_length_in_disk(const JumpSet& jumps, const DiskProbe& disk);

struct CoareaResult {
  double length;
  double integral;
};

// Jump length in B_R(x0) next to the radial integral of sum 1/|nu . t| over
// the crossings of each circle.
CoareaResult coarea_two_sides(const JumpSet& jumps, const Point2& x0, double R, int n_r);

// True when x0 is a point where the model is not smooth: on the jump set
// (including the crack tip and the propeller junction).
bool is_singular_point(const FieldModel& model, const Point2& x0);

// Rotates a model about the origin.
FieldModel rotated(const FieldModel& model, double angle);

inline Point2 rotate(const Point2& p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x() - s * p.y(), s * p.x() + c * p.y()};
}

}  // namespace msmono
