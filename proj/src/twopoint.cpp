#include "msmono/twopoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace msmono {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRegionLevel = 1.51;
constexpr int kMaxSubdivision = 8;

double p(double a) { return 0.5 / std::cos(a); }
double dp(double a) {
  const double c = std::cos(a);
  return 0.5 * std::sin(a) / (c * c);
}
double q(double a) { return p(a) + 0.5 * std::cos(a); }

// sqrt(2 + 2 cos x) = 2 |cos(x / 2)|, without the cancellation near x = pi.
double root_term(double x) { return 2.0 * std::abs(std::cos(x / 2)); }

// inf of 2|cos(y/2)| over y in [lo, hi] with -pi < lo <= hi < 3pi.
double two_abs_cos_min(double lo, double hi) {
  if (lo <= kPi && hi >= kPi) return 0.0;
  return std::min(root_term(lo), root_term(hi));
}

// Root term minimized over phi_tilde in (0, phi_max], as a function of delta = a1 - a2.
double m_exact(double delta, double phi_max) { return two_abs_cos_min(delta, delta + phi_max); }

// Bounds of m' on [d0, d1], which lies inside one smooth piece of m.
void dm_bounds(double d0, double d1, double phi_max, double& lo, double& hi) {
  const double mid = 0.5 * (d0 + d1);
  double v0, v1;
  if (mid < -phi_max / 2) {
    v0 = -std::sin(d0 / 2);
    v1 = -std::sin(d1 / 2);
  } else if (mid < kPi - phi_max) {
    v0 = -std::sin((d0 + phi_max) / 2);
    v1 = -std::sin((d1 + phi_max) / 2);
  } else {
    v0 = v1 = 0.0;
  }
  lo = std::min(v0, v1);
  hi = std::max(v0, v1);
}

double P(double delta, double s) { return p(s + delta / 2) + p(s - delta / 2); }
double Q(double delta, double s) { return q(s + delta / 2) + q(s - delta / 2); }

double max_abs_dp(double lo, double hi) { return std::max(std::abs(dp(lo)), std::abs(dp(hi))); }

double clamp0(double lo, double hi) { return std::clamp(0.0, lo, hi); }

struct Cell {
  double d0, d1, s0, s1;
  double dc() const { return 0.5 * (d0 + d1); }
  double sc() const { return 0.5 * (s0 + s1); }
};

struct ClaimSetup {
  double phi_max;
  double bound;
  bool region;  // claims of the form "G < 1.51 implies target >= bound"
  double (*target)(double, double);
};

ClaimSetup setup(Claim claim) {
  switch (claim) {
    case Claim::sqrt2:
      return {kPi / 2, std::sqrt(2.0), false, nullptr};
    case Claim::reduced_angle:
      return {kReducedPhiMax, 1.52, false, nullptr};
    case Claim::half_secants:
      return {kPi / 2, 1.26, true, &P};
    case Claim::secant_cosine:
      return {kPi / 2, 2.055, true, &Q};
  }
  throw std::invalid_argument("unknown claim");
}

class Certifier {
 public:
  // Search box |a_i| <= A with 1/(2 cos A) = 3/2: outside it one term exceeds
  // 3/2 and the other is at least 1/2, so f > 2, above every claimed constant
  // and outside the region f < 1.51.
  static inline const double A = std::acos(1.0 / 3.0);

  explicit Certifier(Claim claim) : c_(setup(claim)) {}

  double G(double delta, double s) const { return P(delta, s) + m_exact(delta, c_.phi_max); }

  // Lower bound of G on the cell; exact whenever G is monotone in delta there.
  double g_lower(const Cell& cell) const {
    const double ds = clamp0(cell.d0, cell.d1), ss = clamp0(cell.s0, cell.s1);
    const double sep = P(ds, ss) + two_abs_cos_min(cell.d0, cell.d1 + c_.phi_max);
    if (!inside(cell)) return sep;
    double mlo, mhi;
    dm_bounds(cell.d0, cell.d1, c_.phi_max, mlo, mhi);
    const double a1_lo = cell.s0 + cell.d0 / 2, a1_hi = cell.s1 + cell.d1 / 2;
    const double a2_lo = cell.s0 - cell.d1 / 2, a2_hi = cell.s1 - cell.d0 / 2;
    const double gd_lo = 0.5 * (dp(a1_lo) - dp(a2_hi)) + mlo;
    const double gd_hi = 0.5 * (dp(a1_hi) - dp(a2_lo)) + mhi;
    // P increases in |s|, so along an edge of fixed delta the minimum is at ss.
    if (gd_hi < 0) return G(cell.d1, ss);
    if (gd_lo > 0) return G(cell.d0, ss);
    const double gs = max_abs_dp(a1_lo, a1_hi) + max_abs_dp(a2_lo, a2_hi);
    const double gd = std::max(std::abs(gd_lo), std::abs(gd_hi));
    const double lip = G(cell.dc(), cell.sc()) - 0.5 * gs * (cell.s1 - cell.s0) - 0.5 * gd * (cell.d1 - cell.d0);
    return std::max(sep, lip);
  }

  // Exact minimum of the (separable, convex) target over the cell.
  double target_lower(const Cell& cell) const {
    return c_.target(clamp0(cell.d0, cell.d1), clamp0(cell.s0, cell.s1));
  }

  static bool inside(const Cell& cell) {
    const double far_s = std::max(std::abs(cell.s0), std::abs(cell.s1));
    const double far_d = std::max(std::abs(cell.d0), std::abs(cell.d1));
    return far_s + far_d / 2 <= A;
  }

  static bool outside(const Cell& cell) {
    return std::abs(clamp0(cell.s0, cell.s1)) + std::abs(clamp0(cell.d0, cell.d1)) / 2 > A;
  }

  // Certifies the cell, recursing into quarters when needed. Returns the
  // contribution to the certified bound (infinity for cells outside the region).
  double certify(const Cell& cell, int depth) {
    if (outside(cell)) return c_.region ? kInf : 2.0;
    const double threshold = c_.bound - kCertRoundoff;
    const double g = g_lower(cell);
    if (!c_.region) {
      if (g >= threshold) return g;
    } else {
      if (g >= kRegionLevel) return kInf;
      const double t = target_lower(cell);
      if (t >= threshold) return t;
    }
    if (depth < kMaxSubdivision) {
      if (depth == 0) ++refined_;
      const double dm = 0.5 * (cell.d0 + cell.d1), sm = 0.5 * (cell.s0 + cell.s1);
      double best = kInf;
      for (const Cell& child : {Cell{cell.d0, dm, cell.s0, sm}, Cell{dm, cell.d1, cell.s0, sm},
                                Cell{cell.d0, dm, sm, cell.s1}, Cell{dm, cell.d1, sm, cell.s1}})
        best = std::min(best, certify(child, depth + 1));
      return best;
    }
    // Still undecided: either the claim fails at a sample point or the grid is too coarse.
    const double gc = G(cell.dc(), cell.sc());
    const bool refuted = c_.region ? (gc < kRegionLevel && c_.target(cell.dc(), cell.sc()) < c_.bound)
                                   : gc < c_.bound - kCertRoundoff;
    if (!refuted) throw CertificationInconclusive("cell could not be certified; retry with a larger n");
    refuted_ = true;
    return c_.region ? c_.target(cell.dc(), cell.sc()) : gc;
  }

  const ClaimSetup& claim() const { return c_; }
  long long refined() const { return refined_; }
  bool refuted() const { return refuted_; }

 private:
  ClaimSetup c_;
  long long refined_ = 0;
  bool refuted_ = false;
};

std::vector<double> nodes(double lo, double hi, int n, std::vector<double> extra) {
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = lo + (hi - lo) * i / n;
  for (double e : extra)
    if (e > lo && e < hi) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
            out.end());
  return out;
}

template <class F>
double golden_section(F&& f, double lo, double hi, double& arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  if (f1 <= f2) {
    arg = x1;
    return f1;
  }
  arg = x2;
  return f2;
}

}  // namespace

void TwoPointConfig::validate() const {
  if (!(phi_tilde > 0 && phi_tilde <= kPi / 2)) throw std::invalid_argument("TwoPointConfig: phi_tilde must lie in (0, pi/2]");
  if (!(std::abs(alpha1) < kPi / 2) || !(std::abs(alpha2) < kPi / 2))
    throw std::invalid_argument("TwoPointConfig: alphas must lie in (-pi/2, pi/2)");
}

double f_eval(const TwoPointConfig& c) {
  c.validate();
  return p(c.alpha1) + p(c.alpha2) + root_term(c.phi_tilde + c.alpha1 - c.alpha2);
}

FMin f_min(double phi_tilde, int n) {
  if (n < 256) throw std::invalid_argument("f_min: n must be at least 256");
  if (!(phi_tilde > 0 && phi_tilde <= kPi / 2)) throw std::invalid_argument("f_min: phi_tilde must lie in (0, pi/2]");
  // f(0, 0) <= 3, and 1/(2 cos a) > 3 once 1/cos a > 6.
  const double box = std::acos(1.0 / 6.0);
  auto f = [&](double a1, double a2) {
    return p(a1) + p(a2) + root_term(phi_tilde + a1 - a2);
  };
  const double h = 2 * box / (n - 1);
  FMin best{kInf, 0.0, 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a1 = -box + h * i, a2 = -box + h * j;
      const double v = f(a1, a2);
      if (v < best.minimum) best = {v, a1, a2};
    }

  // Refine in (delta, s) = (a1 - a2, (a1 + a2) / 2): convex in s, and the
  // minimizer in delta may sit on the kink of the root term.
  const double d_g = best.alpha1 - best.alpha2, s_g = 0.5 * (best.alpha1 + best.alpha2);
  const double lim = kPi / 2 - 1e-12;
  auto inner = [&](double delta, double& s_arg) {
    const double half = std::abs(delta) / 2;
    const double lo = std::max(s_g - 3 * h, -lim + half), hi = std::min(s_g + 3 * h, lim - half);
    if (!(hi > lo)) {
      s_arg = 0.5 * (lo + hi);
      return f(s_arg + delta / 2, s_arg - delta / 2);
    }
    return golden_section([&](double s) { return f(s + delta / 2, s - delta / 2); }, lo, hi, s_arg);
  };
  double d_arg = d_g;
  const double value = golden_section(
      [&](double delta) {
        double s;
        return inner(delta, s);
      },
      d_g - 3 * h, d_g + 3 * h, d_arg);
  if (value < best.minimum) {
    double s_arg;
    inner(d_arg, s_arg);
    best = {value, s_arg + d_arg / 2, s_arg - d_arg / 2};
  }
  return best;
}

const char* claim_id(Claim claim) {
  switch (claim) {
    case Claim::sqrt2:
      return "f_ge_sqrt2";
    case Claim::reduced_angle:
      return "f_ge_1.52_reduced_angle";
    case Claim::half_secants:
      return "half_secants_ge_1.26";
    case Claim::secant_cosine:
      return "secant_cosine_ge_2.055";
  }
  return "unknown";
}

CertificationReport certify_claim(Claim claim, int n) {
  if (n < 16) throw std::invalid_argument("certify_claim: n must be at least 16");
  Certifier cert(claim);
  const ClaimSetup& cs = cert.claim();
  const double A = Certifier::A;
  const std::vector<double> dn = nodes(-2 * A, 2 * A, n, {-cs.phi_max / 2, kPi - cs.phi_max});
  const std::vector<double> sn = nodes(-A, A, n, {0.0});

  const double hd = 4 * A / n, hs = 2 * A / n;
  const double dpA = dp(A);
  double lipschitz;
  if (!cs.region) {
    lipschitz = std::hypot(2 * dpA, dpA + 1.0);
  } else if (claim == Claim::half_secants) {
    lipschitz = std::sqrt(5.0) * dpA;
  } else {
    lipschitz = std::sqrt(5.0) * (dpA - 0.5 * std::sin(A));
  }

  CertificationReport rep;
  rep.claim_id = claim_id(claim);
  rep.grid_resolution = n;
  rep.claimed_bound = cs.bound;
  rep.lipschitz_bound = lipschitz;
  rep.cell_radius = 0.5 * std::hypot(hd, hs);

  double grid_min = kInf, certified = kInf;
  for (std::size_t i = 0; i + 1 < dn.size(); ++i) {
    for (std::size_t j = 0; j + 1 < sn.size(); ++j) {
      const Cell cell{dn[i], dn[i + 1], sn[j], sn[j + 1]};
      if (Certifier::outside(cell)) continue;
      if (Certifier::inside(cell)) {
        const double gc = cert.G(cell.dc(), cell.sc());
        if (!cs.region) {
          grid_min = std::min(grid_min, gc);
        } else if (cert.g_lower(cell) < kRegionLevel) {
          grid_min = std::min(grid_min, cs.target(cell.dc(), cell.sc()));
        }
      }
      certified = std::min(certified, cert.certify(cell, 0));
    }
  }
  rep.grid_minimum = grid_min;
  rep.certified_lower_bound = certified;
  rep.refined_cells = cert.refined();
  rep.verdict = !cert.refuted() && certified >= cs.bound - kCertRoundoff;
  return rep;
}

std::vector<CertificationReport> certify_all_claims(int n) {
  if (n < 1024) throw std::invalid_argument("certify_all_claims: n must be at least 1024");
  std::vector<CertificationReport> out;
  for (Claim c : {Claim::sqrt2, Claim::reduced_angle, Claim::half_secants, Claim::secant_cosine})
    out.push_back(certify_claim(c, n));
  return out;
}

double symmetrization_check(int n) {
  if (n < 128) throw std::invalid_argument("symmetrization_check: n must be at least 128");
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double phi = kPi / 2 * i / n;
    for (int j = 0; j < n; ++j) {
      const double a = kPi / 2 * (j + 0.5) / n;
      const double base = f_eval({phi, a, -a});
      const double smax = std::min(a, kPi / 2 - a);
      for (int k = -n + 1; k < n; ++k) {
        const double s = smax * k / n;
        worst = std::min(worst, f_eval({phi, a + s, -a + s}) - base);
      }
    }
  }
  return worst;
}

double reduced_derivative(double alpha, double phi_tilde) {
  const double c = std::cos(phi_tilde / 2 + alpha);
  const double sign = c > 0 ? 1.0 : (c < 0 ? -1.0 : 0.0);
  return 2.0 * dp(alpha) - 2.0 * sign * std::sin(phi_tilde / 2 + alpha);
}

DerivativeSignReport derivative_sign_check(int n) {
  if (n < 1024) throw std::invalid_argument("derivative_sign_check: n must be at least 1024");
  DerivativeSignReport rep{-kInf, kInf, true};
  for (double phi : {kPi / 2, kReducedPhiMax}) {
    const double critical = kPi / 2 - phi / 2;
    for (int j = 0; j < n; ++j) {
      const double a = kPi / 2 * (j + 0.5) / n;
      if (std::abs(a - critical) < 1e-12) continue;
      const double d = reduced_derivative(a, phi);
      if (a < critical)
        rep.max_left = std::max(rep.max_left, d);
      else
        rep.min_right = std::min(rep.min_right, d);
    }
  }
  rep.verdict = rep.max_left < 0 && rep.min_right > 0;
  return rep;
}

double shorter_arc(const std::vector<CircleCrossing>& crossings) {
  if (crossings.size() != 2 || !crossings[0].transversal || !crossings[1].transversal)
    throw WrongCrossingCount("two-point configuration needs exactly two transversal crossings");
  const double w = wrap_angle(crossings[1].angle - crossings[0].angle);
  return std::min(w, kTwoPi - w);
}

TwoPointConfig crossings_to_config(const std::vector<CircleCrossing>& crossings, const DiskProbe& disk) {
  const double phi = shorter_arc(crossings);
  // x1 is the crossing reached counterclockwise along the shorter arc.
  const double w = wrap_angle(crossings[1].angle - crossings[0].angle);
  const CircleCrossing& x1 = w <= kPi ? crossings[1] : crossings[0];
  const CircleCrossing& x2 = w <= kPi ? crossings[0] : crossings[1];
  auto alpha = [&](const CircleCrossing& x) {
    const UnitVector nu(x.point - disk.center());
    return std::atan2(x.tangent.dot(nu.perp().vec()), x.tangent.dot(nu.vec()));
  };
  TwoPointConfig cfg{std::min(phi, kPi / 2), alpha(x1), alpha(x2)};
  cfg.validate();
  return cfg;
}

}  // namespace msmono
