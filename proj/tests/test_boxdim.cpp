#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "dragondim/boxdim.hpp"
#include "dragondim/error.hpp"

using namespace dragondim;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidArgument;
}

// Brute-force count: every cell (column j, row r) whose closed square meets
// a segment of the graph, with the same gridline rule as the library.
std::uint64_t brute_count(const PiecewiseLinear& f, int m) {
  const std::size_t per = std::size_t{1} << (f.depth - m);
  std::uint64_t total = 0;
  for (std::size_t col = 0; col < (std::size_t{1} << m); ++col) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t j = col * per; j <= (col + 1) * per; ++j) {
      lo = std::min(lo, f.values[j]);
      hi = std::max(hi, f.values[j]);
    }
    const double d = std::ldexp(1.0, -m);
    const auto row = [&](double v) { return static_cast<std::int64_t>(std::ceil(v / d - 1e-9)) - 1; };
    total += static_cast<std::uint64_t>(row(hi) - row(lo) + 1);
  }
  return total;
}

}  // namespace

TEST_CASE("mesh_row: gridline values go to the cell below") {
  CHECK(mesh_row(0.5, 2) == 1);
  CHECK(mesh_row(0.51, 2) == 2);
  CHECK(mesh_row(0.0, 3) == -1);
  CHECK(mesh_row(0.01, 3) == 0);
  CHECK(mesh_row(-0.01, 3) == -1);
  CHECK(mesh_row(0.5 + 1e-15, 2) == 1);
  CHECK(column_cells(0.0, 0.0, 2) == 1);
  CHECK(column_cells(0.0, 0.5, 2) == 3);
}

TEST_CASE("mesh_count: stage-2 examples") {
  const DragonParams p = validate_params(kPi / 2);
  const MeshCount x = mesh_count(coordinate_function(p, 2, Axis::X), 2);
  CHECK(x.level == 2);
  CHECK(x.per_column == std::vector<std::uint64_t>{1, 3, 1, 3});
  CHECK(x.total == 8);
  CHECK(mesh_count(coordinate_function(p, 2, Axis::Y), 2).total == 8);
  CHECK(code_of([&] { mesh_count(coordinate_function(p, 2, Axis::X), 3); }) == Errc::DepthTooShallow);
}

TEST_CASE("mesh_count: the straight ramp touches two cells per column") {
  // Each closed column [j, j+1] / 2^m meets the ramp at both corners; the
  // lower corner sits on a gridline and counts in the cell below.
  const DragonParams flat = validate_params(kPi);
  for (int m = 0; m <= 10; ++m) {
    const MeshCount c = mesh_count(coordinate_function(flat, m + 2, Axis::X), m);
    CHECK(c.total == std::uint64_t{2} << m);
  }
}

TEST_CASE("mesh_count: invariants and brute-force agreement") {
  for (const double theta : {1.2, kPi / 2, 2 * kPi / 3, 4.4}) {
    const DragonParams p = validate_params(theta);
    for (const Axis axis : {Axis::X, Axis::Y}) {
      const PiecewiseLinear f = coordinate_function(p, 14, axis);
      std::uint64_t prev = 0;
      for (int m = 0; m <= 12; ++m) {
        const MeshCount c = mesh_count(f, m);
        CHECK(c.total == std::accumulate(c.per_column.begin(), c.per_column.end(), std::uint64_t{0}));
        CHECK(c.total >= std::uint64_t{1} << m);
        CHECK(c.total == brute_count(f, m));
        CHECK(c.total >= prev);
        prev = c.total;
      }
    }
  }
}

TEST_CASE("mesh_count: independent of thread partitioning") {
  const PiecewiseLinear f = coordinate_function(validate_params(2.3), 18, Axis::Y);
  const MeshCount one = mesh_count(f, 12);
  for (const unsigned threads : {2u, 3u, 7u, 16u}) {
    const MeshCount many = mesh_count(f, 12, {true, threads});
    CHECK(many.total == one.total);
    CHECK(many.per_column == one.per_column);
  }
  CHECK(mesh_count(f, 12, {false, 4}).per_column.empty());
}

TEST_CASE("mesh_count_at_depth agrees with the materialized count") {
  for (const double theta : {1.2, kPi / 2, 2 * kPi / 3, 2.9, 25 * kPi / 18}) {
    const DragonParams p = validate_params(theta);
    for (const Axis axis : {Axis::X, Axis::Y}) {
      for (const int depth : {8, 12, 17}) {
        const PiecewiseLinear f = coordinate_function(p, depth, axis);
        for (const int m : {2, 5, 8}) {
          const MeshCount a = mesh_count(f, m);
          const MeshCount b = mesh_count_at_depth(p, axis, m, depth, true);
          CHECK(a.total == b.total);
          CHECK(a.per_column == b.per_column);
        }
      }
    }
  }
  const DragonParams p = validate_params(kPi / 2);
  CHECK(code_of([&] { mesh_count_at_depth(p, Axis::X, 6, 5); }) == Errc::DepthTooShallow);
  CHECK(code_of([&] { mesh_count_at_depth(p, Axis::X, 6, 5000); }) == Errc::CapacityExceeded);
}

TEST_CASE("subtree extrema of one segment") {
  const DragonParams p = validate_params(kPi / 2);
  const SubtreeExtrema zero(p, Axis::X, 4, 0);
  CHECK(zero.at(0, true).lo == 0.0);
  CHECK(zero.at(0, true).hi == doctest::Approx(1.0));
  // One fold of a horizontal odd segment: (0,0) -> (1/2, 1/2) -> (1, 0).
  const SubtreeExtrema one(p, Axis::Y, 4, 1);
  CHECK(one.at(0, true).lo == doctest::Approx(0.0));
  CHECK(one.at(0, true).hi == doctest::Approx(0.5));
  CHECK(one.at(0, false).lo == doctest::Approx(-0.5));
  CHECK(code_of([&] { one.at(9, true); }) == Errc::IndexOutOfRange);
}

TEST_CASE("theoretical_dimension") {
  CHECK(theoretical_dimension(validate_params(kPi / 2)) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(theoretical_dimension(validate_params(kPi)) == 1.0);
  CHECK(theoretical_dimension(validate_params(2 * kPi / 3)) == doctest::Approx(1.20751874963942).epsilon(1e-13));
  CHECK(theoretical_dimension(params_from_pi_fraction(4, 9)) == doctest::Approx(1.63758597486015).epsilon(1e-13));
  CHECK(theoretical_dimension(params_from_pi_fraction(5, 6)) == doctest::Approx(1.0500156865235).epsilon(1e-12));
  CHECK(theoretical_dimension(params_from_pi_fraction(25, 18)) == doctest::Approx(1.28779683693663).epsilon(1e-13));
  for (const double theta : {1.1, 2.0, 2.8}) {
    CHECK(theoretical_dimension(validate_params(theta)) ==
          doctest::Approx(theoretical_dimension(validate_params(2 * kPi - theta))).epsilon(1e-14));
  }
}

TEST_CASE("fit_line") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  const std::vector<double> one{1};
  CHECK(code_of([&] { fit_line(one, one); }) == Errc::InvalidArgument);
  const std::vector<double> same{2, 2}, any{1, 3};
  CHECK(code_of([&] { fit_line(same, any); }) == Errc::InvalidArgument);
}

TEST_CASE("effective_depth") {
  const DragonParams p = validate_params(kPi / 2);
  CHECK(effective_depth(p, 6, 2) == certified_depth(p, 1.0 / 64));
  CHECK(effective_depth(p, 6, 40) == 46);
  CHECK(effective_depth(validate_params(kPi), 6, 2) == 8);
}

TEST_CASE("estimate_dimension: right angle") {
  const DragonParams p = validate_params(kPi / 2);
  for (const Axis axis : {Axis::X, Axis::Y}) {
    const DimensionEstimate e = estimate_dimension(p, axis, 6, 12);
    CHECK(e.counts.size() == 7);
    CHECK(e.depths.size() == 7);
    CHECK(e.theoretical == doctest::Approx(1.5));
    CHECK(std::abs(e.slope - 1.5) < 0.05);
    CHECK(e.abs_error == doctest::Approx(std::abs(e.slope - 1.5)));
    CHECK(e.r_squared >= 0.99);
    CHECK(e.slope >= 1.0);
    CHECK(e.slope <= 2.0);
    for (std::size_t i = 0; i < e.depths.size(); ++i) CHECK(e.depths[i] == effective_depth(p, 6 + static_cast<int>(i), 2));
  }
}

TEST_CASE("estimate_dimension: straight segment") {
  const DimensionEstimate e = estimate_dimension(validate_params(kPi), Axis::X, 4, 10, {0});
  CHECK(std::abs(e.slope - 1.0) < 1e-12);
  CHECK(e.theoretical == 1.0);
  CHECK(e.counts.front().total == 32);
}

TEST_CASE("estimate_dimension: reflection") {
  const DragonParams a = params_from_pi_fraction(11, 18);
  const DragonParams b = params_from_pi_fraction(25, 18);
  const DimensionEstimate ax = estimate_dimension(a, Axis::X, 4, 9);
  const DimensionEstimate bx = estimate_dimension(b, Axis::X, 4, 9);
  const DimensionEstimate ay = estimate_dimension(a, Axis::Y, 4, 9);
  const DimensionEstimate by = estimate_dimension(b, Axis::Y, 4, 9);
  CHECK(ax.slope == bx.slope);
  for (std::size_t i = 0; i < ax.counts.size(); ++i) {
    CHECK(ax.counts[i].total == bx.counts[i].total);
    const auto m = ay.counts[i].level;
    const auto diff = static_cast<std::int64_t>(ay.counts[i].total) - static_cast<std::int64_t>(by.counts[i].total);
    CHECK(std::abs(diff) <= (std::int64_t{2} << m));
  }
}

TEST_CASE("estimate_dimension: argument errors") {
  const DragonParams p = validate_params(2.0);
  CHECK(code_of([&] { estimate_dimension(p, Axis::X, 1, 5); }) == Errc::InvalidArgument);
  CHECK(code_of([&] { estimate_dimension(p, Axis::X, 6, 6); }) == Errc::InvalidArgument);
  CHECK(code_of([&] { estimate_dimension(p, Axis::X, 6, 8, {-1}); }) == Errc::InvalidArgument);
}

TEST_CASE("cover_bound") {
  CHECK(cover_bound(validate_params(kPi / 2), 1) == 20);
  CHECK(cover_bound(validate_params(kPi / 2), 2) == 56);
  CHECK(cover_bound(validate_params(2 * kPi / 3), 1) == 12);
  CHECK(code_of([] { cover_bound(validate_params(kPi), 3); }) == Errc::Degenerate);
  CHECK(code_of([] { cover_bound(validate_params(kPi / 2), 0); }) == Errc::InvalidArgument);
}

TEST_CASE("lambda_min") {
  CHECK(lambda_min(validate_params(kPi / 2), Axis::X) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(lambda_min(validate_params(kPi / 2), Axis::Y) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(lambda_min(validate_params(2 * kPi / 3), Axis::X) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lambda_min(validate_params(2 * kPi / 3), Axis::Y) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(code_of([] { lambda_min(validate_params(2.0), Axis::X); }) == Errc::IrrationalAngle);
  // Floating cos(2 pi / 4) is about 6e-17, not zero; the residue test must still drop it.
  CHECK(lambda_min(params_from_rational({1, 8}), Axis::X) > 0.5);
}

TEST_CASE("noncover_bound") {
  const DragonParams p = validate_params(kPi / 2);
  CHECK(noncover_bound(p, 4, Axis::X) == 8);
  CHECK(noncover_bound(p, 6, Axis::X) == 64);
  CHECK(noncover_bound(p, 1, Axis::X) == 0);
  CHECK(code_of([] { noncover_bound(validate_params(2.0), 4, Axis::Y); }) == Errc::IrrationalAngle);
}

TEST_CASE("sandwich on the rational sweep") {
  for (const auto& [num, den] : {std::pair{1, 2}, {4, 9}, {2, 3}, {5, 6}, {25, 18}}) {
    const DragonParams p = params_from_pi_fraction(num, den);
    for (int k = 6; k <= 12; ++k) {
      const int n = std::max(k, certified_depth(p, std::ldexp(1.0, -k)));
      for (const Axis axis : {Axis::X, Axis::Y}) {
        const std::uint64_t count = mesh_count_at_depth(p, axis, k, n).total;
        CHECK(noncover_bound(p, k, axis) <= count);
        CHECK(count <= cover_bound(p, k) + (std::uint64_t{2} << k));
      }
    }
  }
}
