#pragma once

#include <cstdint>
#include <vector>

#include "dragondim/angles.hpp"

namespace dragondim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Axis { X, Y };

/// cos(c*alpha) and sin(c*alpha) for every coefficient |c| <= max_coeff.
///
/// For rational alpha = 2*pi*p/q the values are taken per residue class of
/// c*p mod q, so letters whose directions coincide get bit-identical
/// projections. The sine already carries the reflection sign.
class DirectionTable {
 public:
  DirectionTable(const DragonParams& params, int max_coeff);

  double cos_of(std::int64_t c) const { return cos_[index(c)]; }
  double sin_of(std::int64_t c) const { return sin_[index(c)]; }
  double component(Axis axis, std::int64_t c) const {
    return axis == Axis::X ? cos_of(c) : sin_of(c);
  }
  int max_coeff() const { return max_coeff_; }

 private:
  std::size_t index(std::int64_t c) const { return static_cast<std::size_t>(c + max_coeff_); }

  int max_coeff_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Segment length (2 cos alpha)^-k of the depth-k curve.
double segment_length(const DragonParams& params, int k);

struct PolylineCurve {
  DragonParams params;
  int depth = 0;
  std::vector<Point> vertices;  // 2^depth + 1 points from (0,0) to (1,0)
};

/// Vertices of the depth-k curve as compensated cumulative sums of the
/// segment vectors L_k (cos b_i, sin b_i).
PolylineCurve build_curve(const DragonParams& params, int k, int max_depth = kDefaultMaxDepth);

/// Vertex j of the depth-k curve, i.e. the point at parameter t = j / 2^k,
/// computed in O(k) by walking down the refinement tree. Because the vertices
/// of coarser stages persist in every refinement, the result depends only on
/// the dyadic number j / 2^k and not on the representation.
Point dyadic_vertex(const DragonParams& params, int k, std::uint64_t j);

}  // namespace dragondim
