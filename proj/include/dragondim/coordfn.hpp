#pragma once

#include <cstdint>
#include <vector>

#include "dragondim/angles.hpp"
#include "dragondim/curve.hpp"

namespace dragondim {

/// Deepest stage evaluated pointwise or through subtree extrema. These paths
/// never materialize the stage, so the cap only bounds loop lengths.
inline constexpr int kMaxEvalDepth = 2048;

/// Coordinate function x_k or y_k, stored by its values on the dyadic grid
/// j / 2^k and linear in between.
struct PiecewiseLinear {
  DragonParams params;
  int depth = 0;
  Axis axis = Axis::X;
  std::vector<double> values;  // 2^depth + 1 entries
};

/// Builds x_k / y_k by repeated midpoint refinement: values of stage l-1 are
/// copied to the even indices of stage l and each odd index adds the first
/// child segment's projection. Even-index values therefore equal the previous
/// stage's values bit for bit.
PiecewiseLinear coordinate_function(const DragonParams& params, int k, Axis axis,
                                    int max_depth = kDefaultMaxDepth);

/// Linear interpolation on the containing dyadic interval; exact at breakpoints.
double eval_pl(const PiecewiseLinear& f, double t);

/// 4 / ((2cos a)^(n-1) (2cos a - 1)): certified bound on sup |x_theta - x_n|
/// (and the same for y).
double tail_bound(const DragonParams& params, int n);

/// Smallest n >= 1 with tail_bound(n) < eps.
int certified_depth(const DragonParams& params, double eps, int max_depth = kMaxEvalDepth);

/// x_n(t) or y_n(t) in O(n) without materializing stage n.
double eval_at_depth(const DragonParams& params, Axis axis, int n, double t);

struct LimitValue {
  double value = 0.0;
  int depth = 0;       // stage actually evaluated
  double bound = 0.0;  // certified distance to the limit function
};

/// Value of the limit function within eps, by evaluating the first stage whose
/// tail bound is below eps. Throws CapacityError carrying the bound reachable
/// at max_depth when that is not enough.
LimitValue eval_limit(const DragonParams& params, Axis axis, double t, double eps,
                      int max_depth = kMaxEvalDepth);

/// Rational-angle parameter sets approaching an irrational theta: continued
/// fraction convergents of alpha / 2pi that lie in (0, 1/6), up to
/// `max_denominator`. The reflection flag of theta is carried over.
std::vector<DragonParams> rational_approx_sequence(double theta, int count,
                                                   const RationalDetection& detection = {},
                                                   std::int64_t max_denominator = 1'000'000);

}  // namespace dragondim
