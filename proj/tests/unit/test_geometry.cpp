#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "msmono/geometry.hpp"
#include "msmono/model_json.hpp"

using namespace msmono;

namespace {

std::vector<FieldModel> catalog() {
  return {CrackTip{{0.3, -0.2}, 0.7},
          PlanarInterface{{0.1, 0.4}, UnitVector(1.0, 2.0), 1.5, -0.5},
          Propeller{{-0.2, 0.1}, 0.4, {0.0, 1.0, 2.5}},
          SmoothHarmonic{{0.5, 0.5}, {{0.3, 0.0}, {1.0, -0.5}, {0.25, 0.75}, {-0.1, 0.2}}}};
}

}  // namespace

TEST_CASE("crack tip gradient at the upper side of the axis") {
  const FieldModel m = CrackTip{};
  const Vector2 g = eval_gradient(m, {1.0, 1e-9});
  CHECK(g.squaredNorm() == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(eval_gradient(m, {0.0, 0.0}), AtSingularPoint);
  CHECK_THROWS_AS(eval_gradient(m, {1.0, 0.0}), OnJumpSet);
}

TEST_CASE("piecewise constant and linear gradients") {
  const FieldModel p = PlanarInterface{};
  CHECK(eval_gradient(p, {0.3, 0.7}).norm() == 0.0);
  CHECK_THROWS_AS(eval_gradient(p, {0.3, 0.0}), OnJumpSet);
  const FieldModel h = SmoothHarmonic{{0, 0}, {{0.0, 0.0}, {1.0, 0.0}}};
  for (const Point2& q : {Point2(0.3, 0.2), Point2(-4, 7), Point2(0, 0)}) {
    CHECK(eval_gradient(h, q).x() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(eval_gradient(h, q).y()) < 1e-14);
  }
}

TEST_CASE("one-sided values across a crack") {
  const FieldModel m = CrackTip{};
  const double c = std::sqrt(2.0 / kPi);
  CHECK(eval_value(m, {1.0, 0.0}, 1) == doctest::Approx(c));
  CHECK(eval_value(m, {1.0, 0.0}, -1) == doctest::Approx(-c));
  CHECK(std::abs(eval_value(m, {-1.0, 0.0})) < 1e-15);
}

TEST_CASE("circle crossings") {
  SUBCASE("ray through the center") {
    const auto cs = circle_crossings(jump_set(CrackTip{}), DiskProbe({0, 0}, 1));
    REQUIRE(cs.size() == 1);
    CHECK((cs[0].point - Point2(1, 0)).norm() < 1e-15);
    CHECK(cs[0].tangent.x() == doctest::Approx(1.0));
    CHECK(cs[0].nu_dot_t == doctest::Approx(1.0));
  }
  SUBCASE("line off center") {
    const JumpSet j{{Line{{0, 0}, UnitVector(1, 0)}}};
    const auto cs = circle_crossings(j, DiskProbe({0, 0.5}, 1));
    REQUIRE(cs.size() == 2);
    for (const auto& c : cs) {
      CHECK(std::abs(c.point.x()) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
      CHECK(std::abs(c.point.y()) < 1e-15);
      CHECK(c.nu_dot_t == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
    }
  }
  SUBCASE("tangent line is flagged") {
    const JumpSet j{{Line{{0, 1}, UnitVector(1, 0)}}};
    const auto cs = circle_crossings(j, DiskProbe({0, 0}, 1));
    REQUIRE_FALSE(cs.empty());
    for (const auto& c : cs) CHECK_FALSE(c.transversal);
  }
  CHECK(circle_crossings(jump_set(SmoothHarmonic{{0, 0}, {{1, 0}}}), DiskProbe({0, 0}, 1)).empty());
}

TEST_CASE("crossing normals are consistent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  for (const FieldModel& m : catalog()) {
    const JumpSet j = jump_set(m);
    for (int i = 0; i < 200; ++i) {
      const DiskProbe disk({U(rng), U(rng)}, 0.1 + std::abs(U(rng)));
      for (const auto& c : circle_crossings(j, disk)) {
        CHECK(c.nu_dot_t >= 0.0);
        CHECK(c.nu_dot_t <= 1.0);
        const Vector2 nu = (c.point - disk.center()) / disk.radius();
        CHECK(std::abs(nu.dot(c.tangent.vec()) - c.nu_dot_t) < 1e-12);
        CHECK(std::abs((c.point - disk.center()).norm() - disk.radius()) < 1e-12);
      }
    }
  }
}

TEST_CASE("jump length in a disk") {
  CHECK(jump_length_in_disk(jump_set(CrackTip{}), DiskProbe({0.1, 0}, 1)) == doctest::Approx(1.1).epsilon(1e-15));
  const JumpSet line{{Line{{0, 0.5}, UnitVector(1, 0)}}};
  CHECK(jump_length_in_disk(line, DiskProbe({0, 0}, 1)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(jump_length_in_disk(JumpSet{}, DiskProbe({0, 0}, 1)) == 0.0);
  const JumpSet seg{{Segment{{-1, 0}, {1, 0}}}};
  CHECK(jump_length_in_disk(seg, DiskProbe({0, 0}, 5)) == doctest::Approx(2.0));
}

TEST_CASE("jump length grows with the radius") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (const FieldModel& m : catalog()) {
    const JumpSet j = jump_set(m);
    for (int t = 0; t < 20; ++t) {
      const Point2 c(U(rng), U(rng));
      double prev = 0.0;
      for (double r = 0.01; r < 5; r *= 1.07) {
        const double L = jump_length_in_disk(j, DiskProbe(c, r));
        CHECK(L >= prev - 1e-14);
        prev = L;
      }
    }
  }
}

TEST_CASE("coarea formula on straight jumps") {
  const JumpSet diameter{{Segment{{-1, 0}, {1, 0}}}};
  auto d = coarea_two_sides(diameter, {0, 0}, 1.0, 64);
  CHECK(d.length == doctest::Approx(2.0));
  CHECK(d.integral == doctest::Approx(2.0).epsilon(1e-6));

  const JumpSet chord{{Line{{0, 0.5}, UnitVector(1, 0)}}};
  d = coarea_two_sides(chord, {0, 0}, 1.0, 64);
  CHECK(d.length == doctest::Approx(std::sqrt(3.0)));
  CHECK(d.integral == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));

  d = coarea_two_sides(JumpSet{}, {0, 0}, 1.0, 16);
  CHECK(d.length == 0.0);
  CHECK(d.integral == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  for (const FieldModel& m : catalog()) {
    const Point2 x0(U(rng), U(rng));
    const auto r = coarea_two_sides(jump_set(m), x0, 1.7, 64);
    CHECK(std::abs(r.length - r.integral) < 1e-6);
  }
}

TEST_CASE("crack tip gradient magnitude at random points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  const CrackTip tip{{0.4, -1.1}, 2.1};
  const FieldModel m = tip;
  int checked = 0;
  while (checked < 1000) {
    const Point2 p(U(rng), U(rng));
    if (distance_to_jump_set(jump_set(m), p) < 1e-6) continue;
    const double g2 = eval_gradient(m, p).squaredNorm();
    CHECK(std::abs(g2 * 2 * kPi * (p - tip.tip).norm() - 1.0) < 1e-12);
    ++checked;
  }
}

TEST_CASE("rotational covariance") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(-2, 2);
  for (const FieldModel& m : catalog()) {
    for (double theta : {0.3, 1.0, -2.2, kPi}) {
      const FieldModel mr = rotated(m, theta);
      for (int i = 0; i < 200; ++i) {
        const Point2 p(U(rng), U(rng));
        if (distance_to_jump_set(jump_set(m), p) < 1e-6) continue;
        const Vector2 g = eval_gradient(m, p);
        const Vector2 gr = eval_gradient(mr, rotate(p, theta));
        CHECK((gr - rotate(g, theta)).norm() < 1e-12 * std::max(1.0, g.norm()));
        CHECK(std::abs(eval_value(mr, rotate(p, theta)) - eval_value(m, p)) < 1e-12);
      }
    }
  }
}

TEST_CASE("singular points") {
  CHECK(is_singular_point(CrackTip{}, {0, 0}));
  CHECK(is_singular_point(CrackTip{}, {2, 0}));
  CHECK_FALSE(is_singular_point(CrackTip{}, {-2, 0}));
  CHECK(is_singular_point(Propeller{}, {0, 0}));
  CHECK(is_singular_point(PlanarInterface{}, {5, 0}));
  CHECK_FALSE(is_singular_point(SmoothHarmonic{{0, 0}, {{1, 0}}}, {0, 0}));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(UnitVector(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS(validate(PlanarInterface{{0, 0}, UnitVector(0, 1), 1.0, 1.0}));
  CHECK_THROWS(validate(Propeller{{0, 0}, 0.0, {1.0, 1.0, 2.0}}));
  CHECK_NOTHROW(validate(CrackTip{}));
}

TEST_CASE("model JSON round trip") {
  for (const FieldModel& m : catalog()) {
    const FieldModel back = model_from_json(nlohmann::json::parse(model_to_json(m).dump()));
    const nlohmann::json a = model_to_json(back), b = model_to_json(m);
    CHECK(a.at("kind") == b.at("kind"));
    CHECK(a.size() == b.size());
    for (const auto& [key, value] : b.items()) {
      const nlohmann::json& other = a.at(key);
      if (value.is_array() && !value.empty() && value[0].is_number()) {
        for (std::size_t i = 0; i < value.size(); ++i)
          CHECK(other[i].get<double>() == doctest::Approx(value[i].get<double>()).epsilon(1e-15));
      } else {
        CHECK(other == value);
      }
    }
  }
  const FieldModel tip = load_model(R"({"kind": "crack_tip", "tip": [1, 2]})");
  CHECK(std::get<CrackTip>(tip).tip == Point2(1, 2));
}

TEST_CASE("model JSON schema errors name the field") {
  auto field_of = [](const std::string& text) {
    try {
      load_model(text);
    } catch (const SchemaError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(R"({"kind": "crack_tip", "tipp": [0, 0]})") == "tipp");
  CHECK(field_of(R"({"kind": "crack_tip", "tip": [0]})") == "tip");
  CHECK(field_of(R"({"kind": "planar_interface", "point": [0, 0], "normal": [0, 0], "alpha": 0, "beta": 1})") ==
        "normal");
  CHECK(field_of(R"({"kind": "planar_interface", "point": [0, 0], "normal": [0, 1], "alpha": 1})") == "beta");
  CHECK(field_of(R"({"kind": "propeller", "values": [0, 0, 1]})") == "values");
  CHECK(field_of(R"({"kind": "smooth_harmonic", "coefficients": [[1, 0], [2]]})") == "coefficients[1]");
  CHECK(field_of(R"({"kind": "hexagon"})") == "kind");
  CHECK(field_of(R"({"kind": "crack_tip",})") == "model");
  CHECK(field_of("/no/such/model.json") == "model");
}
