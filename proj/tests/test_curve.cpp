#include <doctest.h>

#include <cmath>
#include <random>

#include "dragondim/curve.hpp"
#include "dragondim/error.hpp"

using namespace dragondim;

namespace {

void check_point(Point p, double x, double y, double tol = 1e-12) {
  CHECK(std::abs(p.x - x) <= tol);
  CHECK(std::abs(p.y - y) <= tol);
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

TEST_CASE("build_curve: right angle examples") {
  const DragonParams p = validate_params(kPi / 2);
  const PolylineCurve c1 = build_curve(p, 1);
  REQUIRE(c1.vertices.size() == 3);
  check_point(c1.vertices[0], 0, 0);
  check_point(c1.vertices[1], 0.5, 0.5);
  check_point(c1.vertices[2], 1, 0);

  const PolylineCurve c2 = build_curve(p, 2);
  REQUIRE(c2.vertices.size() == 5);
  check_point(c2.vertices[0], 0, 0);
  check_point(c2.vertices[1], 0, 0.5);
  check_point(c2.vertices[2], 0.5, 0.5);
  check_point(c2.vertices[3], 0.5, 0);
  check_point(c2.vertices[4], 1, 0);
}

TEST_CASE("build_curve: degenerate angle is the unit segment") {
  const PolylineCurve c = build_curve(validate_params(kPi), 5);
  REQUIRE(c.vertices.size() == 33);
  for (std::size_t j = 0; j < c.vertices.size(); ++j) {
    CHECK(c.vertices[j].y == 0.0);
    CHECK(c.vertices[j].x == doctest::Approx(j / 32.0).epsilon(1e-15));
  }
}

TEST_CASE("build_curve: capacity") {
  CHECK_THROWS_AS(build_curve(validate_params(2.0), 12, 10), CapacityError);
}

TEST_CASE("build_curve: endpoints, segment lengths and directions") {
  for (const double theta : {1.2, kPi / 2, 2 * kPi / 3, 2.7, 4.0, 5.0}) {
    const DragonParams p = validate_params(theta);
    const double sign = p.reflected ? -1.0 : 1.0;
    for (const int k : {0, 1, 5, 12, 20}) {
      const PolylineCurve c = build_curve(p, k);
      REQUIRE(c.vertices.size() == (std::size_t{1} << k) + 1);
      check_point(c.vertices.front(), 0, 0, 0);
      check_point(c.vertices.back(), 1, 0, 1e-9);
      if (k > 12) continue;
      const double L = segment_length(p, k);
      CHECK(L == doctest::Approx(std::pow(2 * std::cos(p.alpha), -k)).epsilon(1e-14));
      bool ok = true;
      for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
        const double dx = c.vertices[i + 1].x - c.vertices[i].x;
        const double dy = c.vertices[i + 1].y - c.vertices[i].y;
        ok = ok && std::abs(std::hypot(dx, dy) - L) <= 1e-9 * L;
        const double b = angle_at(k, i + 1) * p.alpha;
        const double diff = std::remainder(std::atan2(sign * dy, dx) - b, 2 * kPi);
        ok = ok && std::abs(diff) <= 1e-9;
      }
      CHECK_MESSAGE(ok, "theta = " << theta << ", k = " << k);
    }
  }
}

TEST_CASE("build_curve: reflection negates y") {
  const PolylineCurve a = build_curve(params_from_pi_fraction(11, 18), 10);
  const PolylineCurve b = build_curve(params_from_pi_fraction(25, 18), 10);
  for (std::size_t j = 0; j < a.vertices.size(); ++j) {
    CHECK(b.vertices[j].x == a.vertices[j].x);
    CHECK(b.vertices[j].y == -a.vertices[j].y);
  }
}

TEST_CASE("dyadic_vertex: examples") {
  const DragonParams p = validate_params(kPi / 2);
  check_point(dyadic_vertex(p, 1, 2), 1, 0, 0);
  check_point(dyadic_vertex(p, 1, 0), 0, 0, 0);
  for (const int k : {1, 3, 5}) {
    const std::uint64_t j = std::uint64_t{1} << (k - 1);
    check_point(dyadic_vertex(p, k, j), 0.5, 0.5);
    check_point(build_curve(p, k).vertices[j], 0.5, 0.5);
  }
  CHECK_THROWS_AS(dyadic_vertex(p, 3, 9), Error);
  try {
    dyadic_vertex(p, 3, 9);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}

TEST_CASE("dyadic_vertex agrees with build_curve") {
  for (const double theta : {1.3, kPi / 2, 2.5, 4.4}) {
    const DragonParams p = validate_params(theta);
    for (const int k : {0, 4, 11}) {
      const PolylineCurve c = build_curve(p, k);
      double worst = 0.0;
      for (std::uint64_t j = 0; j < c.vertices.size(); ++j) {
        worst = std::max(worst, dist(c.vertices[j], dyadic_vertex(p, k, j)));
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("refinement stability of dyadic vertices") {
  std::mt19937_64 rng(20240611);
  for (const double theta : {1.1, kPi / 2, 2 * kPi / 3, 3.0}) {
    const DragonParams p = validate_params(theta);
    for (int k = 0; k <= 10; ++k) {
      std::uniform_int_distribution<std::uint64_t> pick(0, std::uint64_t{1} << k);
      for (int l = 0; l <= 4; ++l) {
        const PolylineCurve fine = build_curve(p, k + l);
        double worst = 0.0;
        for (int n = 0; n < 100; ++n) {
          const std::uint64_t j = pick(rng);
          worst = std::max(worst, dist(fine.vertices[j << l], dyadic_vertex(p, k, j)));
          worst = std::max(worst, dist(dyadic_vertex(p, k + l, j << l), dyadic_vertex(p, k, j)));
        }
        CHECK(worst < 1e-9);
      }
    }
  }
}

TEST_CASE("direction table is exact per residue class") {
  const DragonParams p = validate_params(kPi / 2);  // q = 8
  const DirectionTable t(p, 40);
  for (int c = -40; c + 8 <= 40; ++c) {
    CHECK(t.cos_of(c) == t.cos_of(c + 8));
    CHECK(t.sin_of(c) == t.sin_of(c + 8));
  }
  CHECK(t.cos_of(2) == 0.0);
  CHECK(t.sin_of(4) == 0.0);
  CHECK(t.component(Axis::X, 1) == doctest::Approx(std::sqrt(0.5)));
  const DirectionTable r(validate_params(3 * kPi / 2), 3);
  CHECK(r.sin_of(1) == -t.sin_of(1));
}
