#include "dragondim/curve.hpp"

#include <cmath>
#include <string>

#include "dragondim/compensated_sum.hpp"
#include "dragondim/error.hpp"

namespace dragondim {

namespace {
__extension__ typedef __int128 wide_int;

// cos and sin of 2 pi r / q, folded into the first quadrant so that quarter
// turns come out as exact zeros and the quadrants mirror each other exactly.
Point unit_vector(std::int64_t r, std::int64_t q) {
  const wide_int n = static_cast<wide_int>(r) * 4;
  const auto quadrant = static_cast<int>(n / q);
  const auto rest = static_cast<std::int64_t>(n % q);
  double c = 1.0, s = 0.0;
  if (rest != 0) {
    const long double phi = std::numbers::pi_v<long double> / 2 * static_cast<long double>(rest) /
                            static_cast<long double>(q);
    c = static_cast<double>(std::cos(phi));
    s = static_cast<double>(std::sin(phi));
  }
  switch (quadrant) {
    case 1: return {-s, c};
    case 2: return {-c, -s};
    case 3: return {s, -c};
    default: return {c, s};
  }
}
}  // namespace

DirectionTable::DirectionTable(const DragonParams& params, int max_coeff)
    : max_coeff_(max_coeff),
      cos_(2 * static_cast<std::size_t>(max_coeff) + 1),
      sin_(2 * static_cast<std::size_t>(max_coeff) + 1) {
  if (max_coeff < 0) throw Error(Errc::InvalidArgument, "negative coefficient range");
  const double sign = params.reflected ? -1.0 : 1.0;

  if (params.rational) {
    const auto [p, q] = *params.rational;
    for (std::int64_t c = -max_coeff; c <= max_coeff; ++c) {
      const auto r = static_cast<std::int64_t>((static_cast<wide_int>(residue(c, q)) * p) % q);
      const Point u = unit_vector(r, q);
      cos_[index(c)] = u.x;
      sin_[index(c)] = sign * u.y;
    }
    return;
  }
  for (std::int64_t c = -max_coeff; c <= max_coeff; ++c) {
    const double angle = static_cast<double>(c) * params.alpha;
    cos_[index(c)] = std::cos(angle);
    sin_[index(c)] = sign * std::sin(angle);
  }
}

double segment_length(const DragonParams& params, int k) {
  return std::pow(params.two_cos_alpha(), -static_cast<double>(k));
}

PolylineCurve build_curve(const DragonParams& params, int k, int max_depth) {
  const AngleWord word = materialize_word(k, max_depth);
  const DirectionTable table(params, k);
  const double length = segment_length(params, k);

  PolylineCurve curve{params, k, {}};
  curve.vertices.reserve(word.coeffs.size() + 1);
  curve.vertices.push_back({0.0, 0.0});
  CompensatedSum x, y;
  for (const std::int32_t c : word.coeffs) {
    x += length * table.cos_of(c);
    y += length * table.sin_of(c);
    curve.vertices.push_back({x.value(), y.value()});
  }
  return curve;
}

Point dyadic_vertex(const DragonParams& params, int k, std::uint64_t j) {
  if (k < 0 || k > kMaxStreamingDepth) {
    throw Error(Errc::IndexOutOfRange, "depth " + std::to_string(k) + " out of range");
  }
  const std::uint64_t segments = std::uint64_t{1} << k;
  if (j > segments) {
    throw Error(Errc::IndexOutOfRange,
                "vertex " + std::to_string(j) + " outside [0, " + std::to_string(segments) + "]");
  }
  if (j == segments) return {1.0, 0.0};

  const DirectionTable table(params, k);
  const double ratio = params.ratio;
  CompensatedSum x, y;
  std::int64_t c = 0;
  bool odd_position = true;
  double length = 1.0;
  for (int level = 1; level <= k; ++level) {
    length *= ratio;
    const std::int64_t s = odd_position ? 1 : -1;
    const bool right = ((j >> (k - level)) & 1) != 0;
    if (right) {
      x += length * table.cos_of(c + s);
      y += length * table.sin_of(c + s);
      c -= s;
      odd_position = false;
    } else {
      c += s;
      odd_position = true;
    }
  }
  return {x.value(), y.value()};
}

}  // namespace dragondim
