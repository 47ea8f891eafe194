#include "msmono/competitors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace msmono {

namespace {

int resolve_samples(int K, int n_samples) {
  if (K < 0) throw std::invalid_argument("Fourier trace: K must be nonnegative");
  const int n = n_samples > 0 ? n_samples : 8 * std::max(K, 1);
  if (n < 4 * K || n < 2) throw std::invalid_argument("Fourier trace: need n_samples >= 4K");
  return n;
}

void check_theta(double theta, bool allow_slit) {
  const bool ok = theta > 0 && (theta < kTwoPi || (allow_slit && theta == kTwoPi));
  if (!ok) throw std::invalid_argument("sector: theta must lie in (0, 2pi)");
}

// Point of the circle at polar angle phi, evaluated off the jump set.
double trace_value(const FieldModel& model, const DiskProbe& disk, double phi) {
  const Point2 x = disk.center() + disk.radius() * Vector2(std::cos(phi), std::sin(phi));
  return eval_value(model, x);
}

}  // namespace

FourierTrace disk_trace(const FieldModel& model, const DiskProbe& disk, int K, int n_samples) {
  if (!circle_crossings(jump_set(model), disk).empty()) throw JumpOnCircle("disk trace: jump set meets the circle");
  const int n = resolve_samples(K, n_samples);
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) u[j] = trace_value(model, disk, kTwoPi * j / n);

  FourierTrace t;
  t.r = disk.radius();
  t.a.assign(K + 1, 0.0);
  t.b.assign(K, 0.0);
  for (int k = 0; k <= K; ++k) {
    double sc = 0.0, ss = 0.0;
    for (int j = 0; j < n; ++j) {
      // Reduce k j mod n so the angle stays in [0, 2pi).
      const double phi = kTwoPi * static_cast<double>((static_cast<long long>(k) * j) % n) / n;
      sc += u[j] * std::cos(phi);
      ss += u[j] * std::sin(phi);
    }
    const double scale = (k == 0 || 2 * k == n) ? 1.0 / n : 2.0 / n;
    t.a[k] = scale * sc;
    if (k >= 1) t.b[k - 1] = scale * ss;
  }
  return t;
}

ExtensionEnergies disk_extension_energies(const FourierTrace& trace) {
  if (!(trace.r > 0)) throw std::invalid_argument("FourierTrace: r must be positive");
  double ext = 0.0, tau = 0.0;
  for (int k = 1; k <= trace.modes() || k <= static_cast<int>(trace.b.size()); ++k) {
    const double ak = k < static_cast<int>(trace.a.size()) ? trace.a[k] : 0.0;
    const double c2 = ak * ak + trace.b_at(k) * trace.b_at(k);
    ext += kPi * k * c2;
    tau += kPi * static_cast<double>(k) * k * c2;
  }
  return {ext / trace.r, tau / trace.r};
}

Vector2 disk_extension_gradient(const FourierTrace& trace, const Vector2& offset) {
  // v = Re sum (a_k - i b_k) (z / r)^k, so v_x - i v_y = sum k (a_k - i b_k) z^(k-1) / r^k.
  const std::complex<double> z(offset.x(), offset.y());
  std::complex<double> zk(1.0, 0.0), sum(0.0, 0.0);
  double rk = trace.r;
  const int K = std::max(trace.modes(), static_cast<int>(trace.b.size()));
  for (int k = 1; k <= K; ++k) {
    const double ak = k < static_cast<int>(trace.a.size()) ? trace.a[k] : 0.0;
    sum += static_cast<double>(k) * std::complex<double>(ak, -trace.b_at(k)) * zk / rk;
    zk *= z;
    rk *= trace.r;
  }
  return {sum.real(), -sum.imag()};
}

SectorEnergies sector_extension_energies(const SectorTrace& trace, bool allow_slit) {
  check_theta(trace.theta, allow_slit);
  if (!(trace.r > 0)) throw std::invalid_argument("SectorTrace: r must be positive");
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t k = 1; k < trace.a.size(); ++k) {
    const double a2 = trace.a[k] * trace.a[k];
    s1 += static_cast<double>(k) * a2;
    s2 += static_cast<double>(k) * k * a2;
  }
  const double ext = 0.5 * kPi * s1 / trace.r;
  const double boundary = kPi * kPi / (2.0 * trace.theta) * s2 / trace.r;
  return {ext, boundary, trace.theta / kPi * boundary};
}

Vector2 sector_extension_gradient(const SectorTrace& trace, double rho, double phi) {
  double radial = 0.0, angular = 0.0;
  for (std::size_t k = 1; k < trace.a.size(); ++k) {
    const double mu = static_cast<double>(k) * kPi / trace.theta;
    const double amp = trace.a[k] * mu * std::pow(rho / trace.r, mu) / rho;
    radial += amp * std::cos(mu * phi);
    angular -= amp * std::sin(mu * phi);
  }
  return {radial, angular};
}

SectorTrace sector_trace_from_arc(const FieldModel& model, const DiskProbe& disk, const Arc& arc, int K,
                                  int n_samples, bool allow_slit) {
  check_theta(arc.width, allow_slit);
  const double tol = 1e-12;
  for (const auto& c : circle_crossings(jump_set(model), disk)) {
    const double rel = wrap_angle(c.angle - arc.start);
    if (rel > tol && rel < arc.width - tol) throw JumpInsideArc("sector trace: a crossing lies inside the arc");
  }
  const int n = resolve_samples(K, n_samples);
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) u[j] = trace_value(model, disk, arc.start + arc.width * (j + 0.5) / n);

  // DCT-II of the midpoint samples: the even reflection of the trace.
  SectorTrace t;
  t.r = disk.radius();
  t.theta = arc.width;
  t.a.assign(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += u[j] * std::cos(kPi * k * (j + 0.5) / n);
    t.a[k] = (k == 0 ? 1.0 : 2.0) * s / n;
  }
  return t;
}

double tail_energy_estimate(const std::vector<double>& a, const std::vector<double>& b) {
  const int K = static_cast<int>(std::max(a.empty() ? 0 : a.size() - 1, b.size()));
  if (K < 8) return 0.0;
  std::vector<double> lk, lc;
  for (int k = K - K / 4; k <= K; ++k) {
    const double ak = k < static_cast<int>(a.size()) ? a[k] : 0.0;
    const double bk = k >= 1 && k <= static_cast<int>(b.size()) ? b[k - 1] : 0.0;
    const double c = std::hypot(ak, bk);
    if (c > 1e-14) {
      lk.push_back(std::log(static_cast<double>(k)));
      lc.push_back(std::log(c));
    }
  }
  if (lk.size() < 3) return 0.0;
  // Least-squares fit log|c_k| = log C - p log k.
  const double n = static_cast<double>(lk.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lk.size(); ++i) {
    mx += lk[i] / n;
    my += lc[i] / n;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lk.size(); ++i) {
    sxx += (lk[i] - mx) * (lk[i] - mx);
    sxy += (lk[i] - mx) * (lc[i] - my);
  }
  if (sxx <= 0) return 0.0;
  const double p = -sxy / sxx;
  const double logC = my + p * mx;
  if (p <= 1.5) return std::numeric_limits<double>::infinity();
  // sum_{k > K} C^2 k^(2 - 2p) ~ C^2 K^(3 - 2p) / (2p - 3)
  return std::exp(2.0 * logC + (3.0 - 2.0 * p) * std::log(static_cast<double>(K))) / (2.0 * p - 3.0);
}

TwoSectorResult two_sector_competitor(const FieldModel& model, const DiskProbe& disk, int K, int n_samples,
                                      const DiagnosticsSpec& spec) {
  const auto crossings = circle_crossings(jump_set(model), disk);
  const bool two_transversal =
      crossings.size() == 2 && std::all_of(crossings.begin(), crossings.end(), [](const auto& c) { return c.transversal; });
  if (!two_transversal) throw WrongCrossingCount("two-sector competitor needs exactly two transversal crossings");

  const double a1 = crossings[0].angle, a2 = crossings[1].angle;
  TwoSectorResult res{};
  res.arcs[0] = {a1, a2 - a1};
  res.arcs[1] = {a2, kTwoPi - (a2 - a1)};
  if (std::max(res.arcs[0].width, res.arcs[1].width) > kTwoSectorMaxArc)
    throw ArcTooLong("two-sector competitor: longer arc exceeds 3pi/2 - 0.00001");

  double ext = 0.0;
  for (int i = 0; i < 2; ++i) {
    res.sectors[i] = sector_extension_energies(sector_trace_from_arc(model, disk, res.arcs[i], K, n_samples));
    ext += res.sectors[i].extension_over_r;
  }
  res.boundary_tau = circle_energies(model, disk, spec).tau;
  // Two radii of jump, each of length r, contribute 2 after division by r.
  res.competitor_E = ext + 2.0;
  res.bound = kTwoSectorMaxArc / kPi * res.boundary_tau + 2.0;
  return res;
}

}  // namespace msmono
