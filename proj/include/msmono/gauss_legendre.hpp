#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace msmono {

// Gauss-Legendre nodes and weights on [-1, 1].
template <typename Scalar = double>
struct GaussLegendreRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;

  explicit GaussLegendreRule(int n) : nodes(n), weights(n) {
    if (n < 1) throw std::invalid_argument("GaussLegendreRule: order must be positive");
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      // Newton iteration on P_n from the Chebyshev-like initial guess.
      Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
      Scalar dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) p0 = 1;
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Scalar dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < Scalar(1e-16)) break;
      }
      // recompute derivative at the converged node
      Scalar p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        dp = 1;
      } else {
        dp = n * (x * p1 - p0) / (x * x - 1);
      }
      const Scalar w = 2 / ((1 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0;
  }

  int size() const { return static_cast<int>(nodes.size()); }

  // Composite rule on [a, b] with `panels` equal panels.
  template <typename F>
  Scalar integrate(F&& f, Scalar a, Scalar b, int panels = 1) const {
    const Scalar h = (b - a) / panels;
    Scalar sum = 0;
    for (int p = 0; p < panels; ++p) {
      const Scalar lo = a + p * h;
      const Scalar half = h / 2;
      const Scalar mid = lo + half;
      Scalar panel_sum = 0;
      for (int i = 0; i < size(); ++i) panel_sum += weights[i] * f(mid + half * nodes[i]);
      sum += half * panel_sum;
    }
    return sum;
  }
};

// Shared rule instance per order (orders up to 64 are cached).
const GaussLegendreRule<double>& gauss_legendre(int n);

}  // namespace msmono
