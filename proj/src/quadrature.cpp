#include "msmono/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "msmono/gauss_legendre.hpp"

namespace msmono {

namespace {

constexpr double kMergeTolerance = 1e-14;
constexpr double kFocusMergeTolerance = 1e-12;
// Grading is only worth it when the near-singular scale is well below the arc.
constexpr double kMaxFocusWidth = 0.5;

struct Sum {
  double value = 0.0;
  double abs = 0.0;
  Sum& operator+=(const Sum& o) {
    value += o.value;
    abs += o.abs;
    return *this;
  }
};

template <class G>
Sum composite(const GaussLegendreRule<double>& gl, double a, double b, int panels, G&& g) {
  Sum s;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < gl.size(); ++i) {
      const double w = 0.5 * h * gl.weights[i];
      const double v = g(mid + 0.5 * h * gl.nodes[i]);
      s.value += w * v;
      s.abs += w * std::abs(v);
    }
  }
  return s;
}

// Interval whose ends may be graded toward a near-singularity of width w_lo / w_hi.
struct Piece {
  double lo;
  double hi;
  double w_lo = 0.0;
  double w_hi = 0.0;
};

template <class G>
Sum integrate_piece(const GaussLegendreRule<double>& gl, const Piece& pc, int panels, G&& g) {
  if (!(pc.hi > pc.lo)) return {};
  if (pc.w_lo > 0 && pc.w_hi > 0) {
    const double mid = 0.5 * (pc.lo + pc.hi);
    Sum s = integrate_piece(gl, {pc.lo, mid, pc.w_lo, 0.0}, panels, g);
    s += integrate_piece(gl, {mid, pc.hi, 0.0, pc.w_hi}, panels, g);
    return s;
  }
  if (pc.w_lo > 0) {
    const double w = pc.w_lo;
    return composite(gl, 0.0, std::asinh((pc.hi - pc.lo) / w), panels,
                     [&](double u) { return g(pc.lo + w * std::sinh(u)) * w * std::cosh(u); });
  }
  if (pc.w_hi > 0) {
    const double w = pc.w_hi;
    return composite(gl, 0.0, std::asinh((pc.hi - pc.lo) / w), panels,
                     [&](double u) { return g(pc.hi - w * std::sinh(u)) * w * std::cosh(u); });
  }
  return composite(gl, pc.lo, pc.hi, panels, g);
}

// Pieces between successive cuts around a full turn starting at cuts[0].
std::vector<Piece> circular_pieces(const std::vector<ArcCut>& cuts) {
  if (cuts.empty()) return {{0.0, kTwoPi}};
  std::vector<Piece> out;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const ArcCut& a = cuts[i];
    const ArcCut& b = cuts[(i + 1) % cuts.size()];
    const double hi = i + 1 < cuts.size() ? b.angle : cuts[0].angle + kTwoPi;
    out.push_back({a.angle, hi, a.focus_width, b.focus_width});
  }
  return out;
}

std::vector<ArcCut> merge_cuts(std::vector<double> breakpoints, const std::vector<ArcCut>& foci) {
  std::vector<ArcCut> cuts;
  for (double b : breakpoints) cuts.push_back({b, 0.0});
  for (const ArcCut& f : foci) {
    const double a = wrap_angle(f.angle);
    bool merged = false;
    for (ArcCut& c : cuts) {
      const double gap = std::abs(c.angle - a);
      if (std::min(gap, kTwoPi - gap) <= kFocusMergeTolerance) {
        c.focus_width = std::max(c.focus_width, f.focus_width);
        merged = true;
      }
    }
    if (!merged) cuts.push_back({a, f.focus_width});
  }
  // A cut near a focus sees the same near-singularity at scale hypot(w, gap).
  for (ArcCut& c : cuts) {
    for (const ArcCut& f : foci) {
      const double gap = std::abs(c.angle - wrap_angle(f.angle));
      const double scale = std::hypot(f.focus_width, std::min(gap, kTwoPi - gap));
      if (scale < kMaxFocusWidth) c.focus_width = std::max(c.focus_width, scale);
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const ArcCut& x, const ArcCut& y) { return x.angle < y.angle; });
  return cuts;
}

template <class Eval>
QuadResult refine(Eval&& eval, const QuadratureSpec& spec, const char* what) {
  spec.validate();
  int panels = spec.panels_per_arc;
  Sum prev = eval(panels);
  double last_err = std::numeric_limits<double>::infinity();
  for (int level = 0; level < spec.refinement_levels; ++level) {
    panels *= 2;
    const Sum cur = eval(panels);
    const double err = std::abs(cur.value - prev.value);
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * cur.abs;
    if (err <= spec.rel_tolerance * cur.abs || err <= roundoff) return {cur.value, std::max(err, roundoff)};
    last_err = err;
    prev = cur;
  }
  throw NoConvergence(std::string(what) + ": refinements still differ by " + std::to_string(last_err) + " after " +
                      std::to_string(spec.refinement_levels) + " levels");
}

}  // namespace

void QuadratureSpec::validate() const {
  if (nodes_per_panel < 4 || nodes_per_panel > 64)
    throw std::invalid_argument("QuadratureSpec: nodes_per_panel must be in [4, 64]");
  if (panels_per_arc < 1) throw std::invalid_argument("QuadratureSpec: panels_per_arc must be positive");
  if (refinement_levels < 1) throw std::invalid_argument("QuadratureSpec: refinement_levels must be positive");
  if (!(rel_tolerance > 0)) throw std::invalid_argument("QuadratureSpec: rel_tolerance must be positive");
}

ArcPartition::ArcPartition(DiskProbe disk, std::vector<double> breakpoints, std::vector<ArcCut> foci)
    : disk_(std::move(disk)) {
  for (double& b : breakpoints) b = wrap_angle(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double b : breakpoints) {
    if (!breakpoints_.empty() && b - breakpoints_.back() <= kMergeTolerance) continue;
    breakpoints_.push_back(b);
  }
  if (breakpoints_.size() > 1 && breakpoints_.front() + kTwoPi - breakpoints_.back() <= kMergeTolerance)
    breakpoints_.pop_back();
  cuts_ = merge_cuts(breakpoints_, foci);
}

ArcPartition crossing_partition(const FieldModel& model, const DiskProbe& disk) {
  std::vector<double> angles;
  for (const auto& c : circle_crossings(jump_set(model), disk)) angles.push_back(c.angle);
  std::vector<ArcCut> foci;
  if (const auto tip = gradient_singularity(model)) {
    const Vector2 to_tip = *tip - disk.center();
    const double d = to_tip.norm();
    const double r = disk.radius();
    if (d > 0) {
      const double w = std::abs(r - d) / std::sqrt(r * d);
      if (w > 0 && w < kMaxFocusWidth) foci.push_back({std::atan2(to_tip.y(), to_tip.x()), w});
    }
  }
  return ArcPartition(disk, std::move(angles), std::move(foci));
}

QuadResult integrate_circle(const std::function<double(double)>& f, const ArcPartition& partition,
                            const QuadratureSpec& spec) {
  const auto& gl = gauss_legendre(spec.nodes_per_panel);
  const double r = partition.disk().radius();
  const std::vector<Piece> pieces = circular_pieces(partition.cuts());
  auto eval = [&](int panels) {
    Sum s;
    for (const Piece& pc : pieces) s += integrate_piece(gl, pc, panels, [&](double phi) { return r * f(phi); });
    return s;
  };
  return refine(eval, spec, "integrate_circle");
}

QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              const QuadratureSpec& spec) {
  const auto& gl = gauss_legendre(spec.nodes_per_panel);
  return refine([&](int panels) { return composite(gl, a, b, panels, f); }, spec, "integrate_interval");
}

QuadResult integrate_disk(const std::function<double(const Point2&)>& f, const DiskProbe& disk,
                          const std::optional<Point2>& singular_point, const QuadratureSpec& spec,
                          const std::vector<double>& split_angles) {
  const auto& gl = gauss_legendre(spec.nodes_per_panel);
  const Point2& c = disk.center();
  const double r = disk.radius();

  if (!singular_point) {
    auto eval = [&](int panels) {
      return composite(gl, 0.0, kTwoPi, panels, [&](double phi) {
        const Vector2 e(std::cos(phi), std::sin(phi));
        return composite(gl, 0.0, r, panels, [&](double rho) { return rho * f(c + rho * e); }).value;
      });
    };
    return refine(eval, spec, "integrate_disk");
  }

  const Point2 s = *singular_point;
  const Vector2 to_center = c - s;
  const double d = to_center.norm();
  const double phi_c = d > 0 ? std::atan2(to_center.y(), to_center.x()) : 0.0;

  if (d < r * (1.0 - kMergeTolerance)) {
    // Polar about s; the far boundary is rho_out(phi).
    std::vector<ArcCut> foci;
    const double w = std::sqrt(std::max(0.0, 1.0 - (d / r) * (d / r)));
    if (d > 0 && w < kMaxFocusWidth) {
      foci.push_back({phi_c + kPi / 2, w});
      foci.push_back({phi_c - kPi / 2, w});
    }
    std::vector<double> splits;
    for (double a : split_angles) splits.push_back(wrap_angle(a));
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    const std::vector<Piece> pieces = circular_pieces(merge_cuts(splits, foci));
    auto eval = [&](int panels) {
      Sum total;
      for (const Piece& pc : pieces) {
        total += integrate_piece(gl, pc, panels, [&](double phi) {
          const double psi = phi - phi_c;
          const double sn = std::sin(psi);
          const double rho_out = d * std::cos(psi) + std::sqrt(std::max(0.0, r * r - d * d * sn * sn));
          const Vector2 e(std::cos(phi), std::sin(phi));
          return composite(gl, 0.0, rho_out, panels, [&](double rho) { return rho * f(s + rho * e); }).value;
        });
      }
      return total;
    };
    return refine(eval, spec, "integrate_disk");
  }

  // s outside (or on) the circle: directions phi = phi_c + asin((r/d) sin t)
  // sweep the disk as t runs over (-pi/2, pi/2).
  const double k = r / d;
  const double w = std::sqrt(std::max(0.0, 1.0 - k * k));
  std::vector<double> cuts{-kPi / 2};
  for (double a : split_angles) {
    const double delta = std::remainder(a - phi_c, kTwoPi);
    if (std::cos(delta) <= 0 || std::abs(std::sin(delta)) >= k) continue;
    cuts.push_back(std::asin(std::sin(delta) / k));
  }
  cuts.push_back(kPi / 2);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= kMergeTolerance) continue;
    const bool grade = w > 0 && w < kMaxFocusWidth;
    pieces.push_back({cuts[i], cuts[i + 1], grade && i == 0 ? w : 0.0, grade && i + 2 == cuts.size() ? w : 0.0});
  }
  auto eval = [&](int panels) {
    Sum total;
    for (const Piece& pc : pieces) {
      total += integrate_piece(gl, pc, panels, [&](double t) {
        const double st = k * std::sin(t);
        const double cos_delta = std::sqrt(std::max(0.0, 1.0 - st * st));
        const double ct = std::cos(t);
        if (!(cos_delta > 0)) return 0.0;
        const double jac = k * ct / cos_delta;
        const double phi = phi_c + std::asin(st);
        const Vector2 e(std::cos(phi), std::sin(phi));
        const double lo = std::max(0.0, d * cos_delta - r * ct);
        const double hi = d * cos_delta + r * ct;
        return jac * composite(gl, lo, hi, panels, [&](double rho) { return rho * f(s + rho * e); }).value;
      });
    }
    return total;
  };
  return refine(eval, spec, "integrate_disk");
}

}  // namespace msmono
