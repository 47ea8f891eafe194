#include "msmono/geometry.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>

#include "msmono/gauss_legendre.hpp"

namespace msmono {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kCrackPrefactor = std::sqrt(2.0 / kPi);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Local polar coordinates about the crack tip, with phi in [0, 2pi).
struct TipPolar {
  double rho;
  double phi;
};

TipPolar tip_polar(const CrackTip& m, const Point2& p) {
  const Point2 q = rotate(p - m.tip, -m.axis_angle);
  return {q.norm(), wrap_angle(std::atan2(q.y(), q.x()))};
}

// Direction of the planar interface line, chosen so that its left side is
// the side `normal` points to.
UnitVector interface_direction(const PlanarInterface& m) { return -m.normal.perp(); }

double distance_to_curve(const ParametricLine& pl, const Point2& p) {
  const double s = std::clamp((p - pl.origin).dot(pl.direction), pl.s_min, pl.s_max);
  return (pl.origin + s * pl.direction - p).norm();
}

}  // namespace

double wrap_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

UnitVector::UnitVector(const Vector2& v) {
  const double n = v.norm();
  if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("UnitVector: zero or non-finite vector");
  v_ = v / n;
}

DiskProbe::DiskProbe(Point2 center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0) || !std::isfinite(radius)) throw std::invalid_argument("DiskProbe: radius must be positive");
  if (!center_.allFinite()) throw std::invalid_argument("DiskProbe: center must be finite");
}

ParametricLine as_parametric(const JumpCurve& curve) {
  return std::visit(Overloaded{
                        [](const Segment& s) {
                          const Vector2 d = s.q - s.p;
                          const double len = d.norm();
                          if (!(len > 0)) throw std::invalid_argument("Segment: endpoints coincide");
                          return ParametricLine{s.p, d / len, 0.0, len};
                        },
                        [](const Ray& r) { return ParametricLine{r.origin, r.direction.vec(), 0.0, kInf}; },
                        [](const Line& l) { return ParametricLine{l.point, l.direction.vec(), -kInf, kInf}; },
                    },
                    curve);
}

void validate(const FieldModel& model) {
  std::visit(Overloaded{
                 [](const CrackTip& m) {
                   if (!m.tip.allFinite() || !std::isfinite(m.axis_angle))
                     throw std::invalid_argument("crack_tip: non-finite parameters");
                 },
                 [](const PlanarInterface& m) {
                   if (!m.point.allFinite()) throw std::invalid_argument("planar_interface: non-finite point");
                   if (!(m.alpha != m.beta)) throw std::invalid_argument("planar_interface: alpha must differ from beta");
                 },
                 [](const Propeller& m) {
                   if (!m.center.allFinite() || !std::isfinite(m.axis_angle))
                     throw std::invalid_argument("propeller: non-finite parameters");
                   const auto& v = m.values;
                   if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
                     throw std::invalid_argument("propeller: values must be pairwise distinct");
                 },
                 [](const SmoothHarmonic& m) {
                   if (!m.center.allFinite()) throw std::invalid_argument("smooth_harmonic: non-finite center");
                   for (const auto& [a, b] : m.coefficients)
                     if (!std::isfinite(a) || !std::isfinite(b))
                       throw std::invalid_argument("smooth_harmonic: non-finite coefficient");
                 },
             },
             model);
}

JumpSet jump_set(const FieldModel& model) {
  return std::visit(Overloaded{
                        [](const CrackTip& m) {
                          return JumpSet{{Ray{m.tip, UnitVector::from_angle(m.axis_angle)}}};
                        },
                        [](const PlanarInterface& m) {
                          return JumpSet{{Line{m.point, interface_direction(m)}}};
                        },
                        [](const Propeller& m) {
                          JumpSet js;
                          for (int j = 0; j < 3; ++j)
                            js.curves.push_back(Ray{m.center, UnitVector::from_angle(m.axis_angle + j * kTwoPi / 3.0)});
                          return js;
                        },
                        [](const SmoothHarmonic&) { return JumpSet{}; },
                    },
                    model);
}

std::optional<Point2> gradient_singularity(const FieldModel& model) {
  if (const auto* m = std::get_if<CrackTip>(&model)) return m->tip;
  return std::nullopt;
}

std::vector<double> jump_directions_from(const JumpSet& jumps, const Point2& from) {
  std::vector<double> out;
  for (const auto& c : jumps.curves) {
    const ParametricLine pl = as_parametric(c);
    // Points of the curve seen from `from` along a fixed direction: only when
    // `from` lies on the curve's supporting line.
    const Vector2 w = from - pl.origin;
    const double s = w.dot(pl.direction);
    const double off = (w - s * pl.direction).norm();
    if (off > kOnJumpTolerance) continue;
    if (s < pl.s_max - kOnJumpTolerance) out.push_back(wrap_angle(std::atan2(pl.direction.y(), pl.direction.x())));
    if (s > pl.s_min + kOnJumpTolerance) out.push_back(wrap_angle(std::atan2(-pl.direction.y(), -pl.direction.x())));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double distance_to_jump_set(const JumpSet& jumps, const Point2& p) {
  double best = kInf;
  for (const auto& c : jumps.curves) best = std::min(best, distance_to_curve(as_parametric(c), p));
  return best;
}

double eval_value(const FieldModel& model, const Point2& p, int side) {
  return std::visit(
      Overloaded{
          [&](const CrackTip& m) {
            TipPolar tp = tip_polar(m, p);
            const Point2 q = rotate(p - m.tip, -m.axis_angle);
            if (std::abs(q.y()) <= kOnJumpTolerance && q.x() > 0) tp.phi = side >= 0 ? 0.0 : kTwoPi;
            return kCrackPrefactor * std::sqrt(tp.rho) * std::cos(tp.phi / 2.0);
          },
          [&](const PlanarInterface& m) {
            const double s = m.normal.dot(p - m.point);
            if (std::abs(s) <= kOnJumpTolerance) return side >= 0 ? m.alpha : m.beta;
            return s > 0 ? m.alpha : m.beta;
          },
          [&](const Propeller& m) {
            const Point2 q = p - m.center;
            const double sector_width = kTwoPi / 3.0;
            double theta = wrap_angle(std::atan2(q.y(), q.x()) - m.axis_angle);
            int j = std::min(2, static_cast<int>(theta / sector_width));
            // On ray j the counterclockwise side is sector j, the other sector j - 1.
            for (int k = 0; k < 3; ++k) {
              const double ray_angle = k * sector_width;
              const double dist = q.norm() * std::abs(std::sin(theta - ray_angle));
              if (dist <= kOnJumpTolerance && std::cos(theta - ray_angle) > 0) {
                j = side >= 0 ? k : (k + 2) % 3;
                break;
              }
            }
            return m.values[j];
          },
          [&](const SmoothHarmonic& m) {
            const std::complex<double> z(p.x() - m.center.x(), p.y() - m.center.y());
            std::complex<double> zk(1.0, 0.0), sum(0.0, 0.0);
            for (const auto& [a, b] : m.coefficients) {
              sum += std::complex<double>(a, -b) * zk;
              zk *= z;
            }
            return sum.real();
          },
      },
      model);
}

Vector2 gradient_unchecked(const FieldModel& model, const Point2& p) {
  return std::visit(Overloaded{
                        [&](const CrackTip& m) -> Vector2 {
                          const TipPolar tp = tip_polar(m, p);
                          const double s = 0.5 * kCrackPrefactor / std::sqrt(tp.rho);
                          const Vector2 local(s * std::cos(tp.phi / 2.0), s * std::sin(tp.phi / 2.0));
                          return rotate(local, m.axis_angle);
                        },
                        [](const PlanarInterface&) -> Vector2 { return Vector2::Zero(); },
                        [](const Propeller&) -> Vector2 { return Vector2::Zero(); },
                        [&](const SmoothHarmonic& m) -> Vector2 {
                          // u_x - i u_y = sum_k k (a_k - i b_k) z^(k-1)
                          const std::complex<double> z(p.x() - m.center.x(), p.y() - m.center.y());
                          std::complex<double> zk(1.0, 0.0), sum(0.0, 0.0);
                          for (std::size_t k = 1; k < m.coefficients.size(); ++k) {
                            const auto& [a, b] = m.coefficients[k];
                            sum += static_cast<double>(k) * std::complex<double>(a, -b) * zk;
                            zk *= z;
                          }
                          return {sum.real(), -sum.imag()};
                        },
                    },
                    model);
}

Vector2 eval_gradient(const FieldModel& model, const Point2& p) {
  if (const auto tip = gradient_singularity(model); tip && (p - *tip).norm() <= kOnJumpTolerance)
    throw AtSingularPoint("gradient requested at the crack tip");
  if (distance_to_jump_set(jump_set(model), p) <= kOnJumpTolerance)
    throw OnJumpSet("gradient requested on the jump set");
  return gradient_unchecked(model, p);
}

std::vector<CircleCrossing> circle_crossings(const JumpSet& jumps, const DiskProbe& disk) {
  std::vector<CircleCrossing> out;
  const Point2& c = disk.center();
  const double r = disk.radius();
  const double end_tol = kOnJumpTolerance * std::max(1.0, r);

  auto push = [&](const Point2& x, const Vector2& dir, bool transversal) {
    const Vector2 nu = (x - c) / r;
    CircleCrossing cc;
    cc.point = x;
    cc.tangent = UnitVector(nu.dot(dir) >= 0 ? dir : Vector2(-dir));
    cc.nu_dot_t = std::min(1.0, std::abs(nu.dot(dir)));
    cc.transversal = transversal && cc.nu_dot_t >= kTangencyTolerance;
    cc.angle = wrap_angle(std::atan2(x.y() - c.y(), x.x() - c.x()));
    out.push_back(cc);
  };

  for (const auto& curve : jumps.curves) {
    const ParametricLine pl = as_parametric(curve);
    const Vector2 w = pl.origin - c;
    const double b = pl.direction.dot(w);
    const double foot = -b;
    const double dist2 = (w + foot * pl.direction).squaredNorm();
    const double disc = r * r - dist2;
    if (disc < 0) {
      continue;
    }
    const double root = std::sqrt(disc);
    if (root / r < kTangencyTolerance) {
      if (foot >= pl.s_min - end_tol && foot <= pl.s_max + end_tol)
        push(pl.origin + foot * pl.direction, pl.direction, false);
      continue;
    }
    for (double s : {foot - root, foot + root}) {
      if (s < pl.s_min - end_tol || s > pl.s_max + end_tol) continue;
      const bool at_end = std::abs(s - pl.s_min) <= end_tol || std::abs(s - pl.s_max) <= end_tol;
      push(pl.origin + s * pl.direction, pl.direction, !at_end);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.angle < b.angle; });
  return out;
}

double jump_length_in_disk(const JumpSet& jumps, const DiskProbe& disk) {
  double total = 0.0;
  const Point2& c = disk.center();
  const double r = disk.radius();
  for (const auto& curve : jumps.curves) {
    const ParametricLine pl = as_parametric(curve);
    const Vector2 w = pl.origin - c;
    const double foot = -pl.direction.dot(w);
    const double disc = r * r - (w + foot * pl.direction).squaredNorm();
    if (disc <= 0) continue;
    const double root = std::sqrt(disc);
    const double lo = std::max(foot - root, pl.s_min);
    const double hi = std::min(foot + root, pl.s_max);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

CoareaResult coarea_two_sides(const JumpSet& jumps, const Point2& x0, double R, int n_r) {
  if (n_r < 16) throw std::invalid_argument("coarea_two_sides: n_r must be at least 16");
  if (!(R > 0)) throw std::invalid_argument("coarea_two_sides: R must be positive");

  // Radii where the crossing structure changes: tangency radii of the
  // supporting lines (when the foot point is on the curve) and endpoint radii.
  std::vector<double> cuts{0.0, R};
  for (const auto& curve : jumps.curves) {
    const ParametricLine pl = as_parametric(curve);
    const Vector2 w = pl.origin - x0;
    const double foot = -pl.direction.dot(w);
    if (foot > pl.s_min && foot < pl.s_max) cuts.push_back((w + foot * pl.direction).norm());
    if (std::isfinite(pl.s_min)) cuts.push_back((w + pl.s_min * pl.direction).norm());
    if (std::isfinite(pl.s_max)) cuts.push_back((w + pl.s_max * pl.direction).norm());
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> radii;
  for (double c : cuts)
    if (c >= 0 && c <= R && (radii.empty() || c - radii.back() > 1e-14 * R)) radii.push_back(c);

  const auto& gl = gauss_legendre(16);
  const int intervals = static_cast<int>(radii.size()) - 1;
  const int panels = std::max(1, (n_r + 16 * intervals - 1) / (16 * intervals));

  auto crossing_sum = [&](double r) {
    double sum = 0.0;
    for (const auto& cc : circle_crossings(jumps, DiskProbe(x0, r)))
      if (cc.transversal) sum += 1.0 / cc.nu_dot_t;
    return sum;
  };

  double integral = 0.0;
  for (int i = 0; i < intervals; ++i) {
    const double a = radii[i], b = radii[i + 1];
    // r = a + (b - a) t^2 absorbs the inverse square root at a tangency radius.
    integral += gl.integrate(
        [&](double t) {
          const double r = a + (b - a) * t * t;
          return r > 0 ? crossing_sum(r) * 2.0 * (b - a) * t : 0.0;
        },
        0.0, 1.0, panels);
  }
  return {jump_length_in_disk(jumps, DiskProbe(x0, R)), integral};
}

bool is_singular_point(const FieldModel& model, const Point2& x0) {
  if (const auto tip = gradient_singularity(model); tip && (x0 - *tip).norm() <= kOnJumpTolerance) return true;
  const JumpSet js = jump_set(model);
  return !js.empty() && distance_to_jump_set(js, x0) <= kOnJumpTolerance;
}

FieldModel rotated(const FieldModel& model, double angle) {
  return std::visit(Overloaded{
                        [&](const CrackTip& m) -> FieldModel {
                          return CrackTip{rotate(m.tip, angle), m.axis_angle + angle};
                        },
                        [&](const PlanarInterface& m) -> FieldModel {
                          return PlanarInterface{rotate(m.point, angle), UnitVector(rotate(m.normal.vec(), angle)),
                                                 m.alpha, m.beta};
                        },
                        [&](const Propeller& m) -> FieldModel {
                          return Propeller{rotate(m.center, angle), m.axis_angle + angle, m.values};
                        },
                        [&](const SmoothHarmonic& m) -> FieldModel {
                          SmoothHarmonic out{rotate(m.center, angle), {}};
                          for (std::size_t k = 0; k < m.coefficients.size(); ++k) {
                            const auto& [a, b] = m.coefficients[k];
                            const std::complex<double> c =
                                std::complex<double>(a, -b) * std::polar(1.0, -static_cast<double>(k) * angle);
                            out.coefficients.emplace_back(c.real(), -c.imag());
                          }
                          return out;
                        },
                    },
                    model);
}

const GaussLegendreRule<double>& gauss_legendre(int n) {
  static const std::vector<GaussLegendreRule<double>> cache = [] {
    std::vector<GaussLegendreRule<double>> rules;
    rules.reserve(64);
    for (int k = 1; k <= 64; ++k) rules.emplace_back(k);
    return rules;
  }();
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: order must be in [1, 64]");
  return cache[n - 1];
}

}  // namespace msmono
