#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "msmono/diagnostics.hpp"

using namespace msmono;

namespace {

const FieldModel kTip = CrackTip{};
const FieldModel kInterface = PlanarInterface{{0, 0}, UnitVector(0, 1), 1.0, 0.0};
const FieldModel kPropeller = Propeller{};
const FieldModel kLinear = SmoothHarmonic{{0, 0}, {{0.0, 0.0}, {1.0, 0.0}}};

DiagnosticsSpec quadrature_only() {
  DiagnosticsSpec s;
  s.closed_forms = false;
  return s;
}

struct CrackOracle {
  Point2 center;
  double r;
  double dirichlet;
  double tau;
  double nu;
};

// mpmath values from tests/oracles/crack_tip_oracles.py.
const CrackOracle kCrackOracles[] = {
    {{0.0, 0.5}, 0.6, 0.4755432270806467, 0.65802768194230627, 0.65802768194230627},
    {{1.0, 0.0}, 0.5, 0.12932895230567083, 0.26829550178734109, 0.26829550178734109},
    {{1.0, 0.0}, 2.0, 1.8684309153353882, 0.78659100357468219, 0.28659100357468219},
    {{0.0, 0.3}, 1.0, 0.97710533106158495, 0.51185777318808319, 0.51185777318808319},
    {{-0.4, 0.7}, 1.3, 1.1641362371240886, 0.40860685709454971, 0.7162991647868574},
};

}  // namespace

TEST_CASE("entropy and density at catalog singular points") {
  for (double r : {0.1, 1.0, 10.0}) {
    CHECK(entropy(kTip, DiskProbe({0, 0}, r)) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(energy_density(kTip, DiskProbe({0, 0}, r)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(entropy(kTip, DiskProbe({0, 0}, r), quadrature_only()) - 1.5) < 1e-7);
    CHECK(entropy(kInterface, DiskProbe({0.3, 0}, r)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(energy_density(kInterface, DiskProbe({0.3, 0}, r)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(entropy(kPropeller, DiskProbe({0, 0}, r)) == doctest::Approx(1.5).epsilon(1e-14));
  }
  CHECK(energy_density(kLinear, DiskProbe({0, 0}, 1)) == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("crack tip Dirichlet energy off the tip") {
  for (const auto& o : kCrackOracles) {
    const DiskProbe disk(o.center, o.r);
    CHECK(std::abs(dirichlet_energy(kTip, disk) - o.dirichlet) < 1e-9);
    const CircleEnergies ce = circle_energies(kTip, disk);
    CHECK(std::abs(ce.tau - o.tau) < 1e-9);
    CHECK(std::abs(ce.nu - o.nu) < 1e-9);
  }
}

TEST_CASE("circle energies") {
  CircleEnergies ce = circle_energies(kTip, DiskProbe({0, 0}, 3.0));
  CHECK(ce.tau == doctest::Approx(0.5));
  CHECK(ce.nu == doctest::Approx(0.5));
  ce = circle_energies(kTip, DiskProbe({0, 0}, 2.0), quadrature_only());
  CHECK(std::abs(ce.tau - 0.5) < 1e-9);
  CHECK(std::abs(ce.nu - 0.5) < 1e-9);
  ce = circle_energies(kInterface, DiskProbe({0, 0}, 1.0));
  CHECK(ce.tau == 0.0);
  CHECK(ce.nu == 0.0);
  ce = circle_energies(kLinear, DiskProbe({0, 0}, 1.0));
  CHECK(ce.tau == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(ce.nu == doctest::Approx(kPi).epsilon(1e-10));
  CHECK_THROWS_AS(circle_energies(kInterface, DiskProbe({0, 1}, 1.0)), TangentialContact);
}

TEST_CASE("the two representations of D") {
  CHECK(d_rep1(kTip, DiskProbe({0, 0}, 1)) == 0.0);
  CHECK(d_rep2(kTip, DiskProbe({0, 0}, 1)) == 0.0);
  CHECK(std::abs(d_rep1(kInterface, DiskProbe({0.4, 0}, 1))) < 1e-14);
  CHECK(std::abs(d_rep2(kInterface, DiskProbe({0.4, 0}, 1))) < 1e-14);
  // u = x: F = pi r, so the indicator is off at r = 1 and D = 2 pi r - pi r below r = 3 / (2 pi).
  CHECK(d_rep1(kLinear, DiskProbe({0, 0}, 1)) == 0.0);
  CHECK(d_rep1(kLinear, DiskProbe({0, 0}, 0.1)) == doctest::Approx(0.1 * kPi).epsilon(1e-10));
  CHECK(d_rep2(kLinear, DiskProbe({0, 0}, 0.1)) == doctest::Approx(0.1 * kPi).epsilon(1e-10));
}

TEST_CASE("DLMS relation") {
  CHECK(std::abs(dlms_residual(kTip, DiskProbe({0, 0}, 1))) < 1e-9);
  CHECK(std::abs(dlms_residual(kInterface, DiskProbe({0, 0}, 1))) < 1e-14);
  CHECK(std::abs(dlms_residual(kTip, DiskProbe({0, 0.3}, 1))) < 1e-7);
}

TEST_CASE("random probes: DLMS, representations, and crossing-count bounds") {
  const std::vector<FieldModel> models{CrackTip{{0.2, -0.1}, 0.5}, kInterface, Propeller{{0.1, 0.2}, 0.3, {0, 1, 2}}};
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  int done = 0;
  while (done < 100) {
    const FieldModel& m = models[done % models.size()];
    const Point2 c(U(rng), U(rng));
    const double r = 0.05 + std::abs(U(rng)) * 2;
    const ScanRow row = scan_row(m, c, r);
    if (!row.usable()) continue;
    CHECK(std::abs(row.dlms_residual) < 1e-6);
    CHECK(std::abs(row.D1 - row.D2) < 1e-8);
    CHECK(row.D1 >= -1e-8);
    if (row.jump_count == 1 || row.jump_count >= 3) CHECK(row.D1 >= 1.5 - row.F - 1e-6);
    ++done;
  }
}

TEST_CASE("DLMS residual shrinks under refinement") {
  DiagnosticsSpec coarse = quadrature_only();
  coarse.quad.rel_tolerance = 1e-5;
  DiagnosticsSpec fine = quadrature_only();
  fine.quad.rel_tolerance = 1e-11;
  fine.quad.refinement_levels = 10;
  const DiskProbe disk({-0.4, 0.7}, 1.3);
  CHECK(std::abs(dlms_residual(kTip, disk, fine)) <= std::abs(dlms_residual(kTip, disk, coarse)) + 1e-14);
  CHECK(std::abs(dlms_residual(kTip, disk, fine)) < 1e-10);
}

TEST_CASE("tangent gap") {
  CHECK(std::abs(tangent_gap(kTip, DiskProbe({0, 0}, 1), UnitVector(1, 0))) < 1e-9);
  CHECK(tangent_gap(kTip, DiskProbe({0, 0}, 1), UnitVector(0, 1)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tangent_gap(kLinear, DiskProbe({0, 0}, 1), UnitVector(0, 1)) == doctest::Approx(2 * kPi).epsilon(1e-9));
  const TangentGapMin m = min_tangent_gap(kTip, DiskProbe({0, 0}, 1));
  CHECK(std::abs(m.gap) < 1e-8);
  CHECK(std::abs(m.q.x() - 1.0) < 1e-12);
  for (const auto& [model, c] : {std::pair{kTip, Point2(0.3, 0.4)}, std::pair{kInterface, Point2(0.2, 0.5)},
                                 std::pair{kPropeller, Point2(-0.3, 0.1)}})
    CHECK(min_tangent_gap(model, DiskProbe(c, 1.1)).gap >= -1e-8);
}

TEST_CASE("radial slice bound") {
  CHECK(std::abs(radial_slice_bound(kTip, DiskProbe({0, 0}, 2))) < 1e-12);
  CHECK(std::abs(radial_slice_bound(kInterface, DiskProbe({0, 0}, 2))) < 1e-14);
  CHECK(radial_slice_bound(kPropeller, DiskProbe({0, 0}, 2)) == doctest::Approx(1.0));
}

TEST_CASE("monotonicity scans") {
  const auto radii = radius_grid(0.05, 50, 120);
  SUBCASE("crack tip off the tip") {
    for (const Point2& c : {Point2(1, 0), Point2(0, 0.5)}) {
      const MonotonicityReport rep = scan(kTip, c, radii);
      CHECK(rep.verdict);
      CHECK(rep.differential_verdict);
      CHECK(rep.errors == 0);
    }
  }
  SUBCASE("interface at distance one") {
    const MonotonicityReport rep = scan(kInterface, {0, 1}, radii);
    CHECK(rep.verdict);
    for (const ScanRow& row : rep.rows) {
      if (!row.usable()) continue;
      const double expected = row.r < 1 ? 0.0 : std::sqrt(row.r * row.r - 1) / row.r;
      CHECK(row.F == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("linear field") {
    const MonotonicityReport rep = scan(kLinear, {0, 0}, radius_grid(0.1, 10, 40));
    CHECK(rep.verdict);
    for (const ScanRow& row : rep.rows) CHECK(row.F == doctest::Approx(kPi * row.r).epsilon(1e-9));
  }
  CHECK_THROWS_AS(scan(kTip, {0, 0}, radius_grid(0.1, 1, 8)), std::invalid_argument);
}

TEST_CASE("scale invariance of the crack tip") {
  const Point2 v(0.6, -0.3);
  for (double lambda : {0.5, 2.0, 10.0}) {
    const double F = entropy(kTip, DiskProbe(v, 0.8));
    const double Fs = entropy(kTip, DiskProbe(lambda * v, lambda * 0.8));
    CHECK(std::abs(F - Fs) < 1e-7);
    CHECK(std::abs(energy_density(kTip, DiskProbe(v, 0.8)) - energy_density(kTip, DiskProbe(lambda * v, lambda * 0.8))) <
          1e-7);
  }
}

TEST_CASE("sharpness of three halves") {
  const auto rows = sharpness_scan({0.0, 0.01, 0.05, 0.1});
  CHECK(rows[0].F == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(rows[1].F - 1.5049749995312305) < 1e-9);
  CHECK(std::abs(rows[2].F - 1.5243747067256563) < 1e-9);
  CHECK(std::abs(rows[3].F - 1.5474952928612609) < 1e-9);
  CHECK(rows[1].slope >= 0.4);
  CHECK(rows[1].slope <= 0.6);
  CHECK(rows[3].F >= 1.53);
  CHECK(rows[3].F <= 1.55);
}

TEST_CASE("equilibrium equation") {
  BumpField b{{2, 0}, 0.5, {0, 1}, 1.0};
  CHECK(std::abs(equilibrium_residual(kTip, b)) < 1e-7);
  b.amplitude = 0.0;
  CHECK(equilibrium_residual(kTip, b) == 0.0);
  const EquilibriumTerms off = equilibrium_terms(kInterface, {{0, 2}, 0.5, {1, 0}, 1.0});
  CHECK(off.bulk == 0.0);
  CHECK(off.jump == 0.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 10; ++i) {
    const BumpField eta{{U(rng), U(rng)}, 0.4 + std::abs(U(rng)), Vector2(U(rng), U(rng)).normalized(), 1.0};
    CHECK(std::abs(equilibrium_residual(kTip, eta)) < 1e-6);
    CHECK(std::abs(equilibrium_residual(kInterface, eta)) < 1e-12);
  }
}
