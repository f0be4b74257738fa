#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dragondim/coordfn.hpp"

namespace dragondim {

/// Values within this many cell heights above a horizontal gridline are
/// treated as lying on it, so that two summation orders that disagree in the
/// last bits still pick the same cell.
inline constexpr double kGridlineTolerance = 1e-9;

/// Row of the delta-mesh cell holding value v, with delta = 2^-m. A value on a
/// gridline belongs to the cell below it.
std::int64_t mesh_row(double v, int m);

/// Number of level-m cells met by a vertical column whose graph spans [lo, hi].
std::uint64_t column_cells(double lo, double hi, int m);

struct MeshCount {
  int level = 0;            // delta = 2^-level
  std::uint64_t total = 0;  // cells meeting the graph
  std::vector<std::uint64_t> per_column;
};

struct MeshCountOptions {
  bool keep_columns = true;
  unsigned threads = 1;  // columns are split into this many contiguous blocks
};

/// Exact level-m count for a materialized coordinate function. Column extrema
/// are read off the breakpoints, which is exact for piecewise-linear data.
MeshCount mesh_count(const PiecewiseLinear& f, int m, const MeshCountOptions& options = {});

/// Value range of every refinement of one segment, in units of that segment's
/// length and relative to its start point. Indexed by the segment's
/// coefficient and by the parity of its position, which together fix the
/// whole subtree below it.
class SubtreeExtrema {
 public:
  struct Range {
    double lo = 0.0;
    double hi = 0.0;
  };

  /// Extrema after `depth` further refinements of segments with |c| <= max_coeff.
  SubtreeExtrema(const DragonParams& params, Axis axis, int max_coeff, int depth);

  Range at(std::int64_t c, bool odd_position) const;
  int depth() const { return depth_; }

 private:
  int max_coeff_;
  int depth_;
  std::vector<Range> odd_;
  std::vector<Range> even_;
};

/// Level-m count for the stage-`depth` coordinate function without
/// materializing that stage: only stage m is built, and each column's extrema
/// come from SubtreeExtrema. Agrees with mesh_count on the materialized
/// function whenever both can be computed.
MeshCount mesh_count_at_depth(const DragonParams& params, Axis axis, int m, int depth,
                              bool keep_columns = false, int max_depth = kDefaultMaxDepth);

/// 1 - log(cos alpha) / log 2.
double theoretical_dimension(const DragonParams& params);

/// max(m + margin, smallest n with tail_bound(n) < 2^-m).
int effective_depth(const DragonParams& params, int m, int depth_margin,
                    int max_depth = kMaxEvalDepth);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct DimensionOptions {
  int depth_margin = 2;
  int max_eval_depth = kMaxEvalDepth;
  int max_materialized_depth = kDefaultMaxDepth;
};

struct DimensionEstimate {
  DragonParams params;
  Axis axis = Axis::X;
  int m_lo = 0;
  int m_hi = 0;
  int depth_margin = 0;
  std::vector<MeshCount> counts;  // one per level, m_lo..m_hi
  std::vector<int> depths;        // stage counted at each level
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double theoretical = 0.0;
  double abs_error = 0.0;
};

/// Least-squares slope of log2 N against m over [m_lo, m_hi].
DimensionEstimate estimate_dimension(const DragonParams& params, Axis axis, int m_lo, int m_hi,
                                     const DimensionOptions& options = {});

/// Upper bound on the number of level-k cells needed to cover either graph:
/// 2^k floor(2^(k+1) / ((2cos a)^(k-1) (2cos a - 1))) + 2^k.
std::uint64_t cover_bound(const DragonParams& params, int k);

/// Smallest nonzero |cos(j alpha)| (X) or |sin(j alpha)| (Y) over j < q.
double lambda_min(const DragonParams& params, Axis axis);

/// 2^(k-1) floor(lambda / (2 cos^k a)): a cell count that cannot cover the
/// graph once k is large enough.
std::uint64_t noncover_bound(const DragonParams& params, int k, Axis axis);

}  // namespace dragondim
