#include "dragondim/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "dragondim/error.hpp"

namespace dragondim {

namespace {

__extension__ typedef __int128 wide_int;

void check_level(int m, int max_depth) {
  if (m < 0) throw Error(Errc::InvalidArgument, "negative mesh level");
  if (m > max_depth) {
    throw CapacityError("mesh level " + std::to_string(m) + " exceeds the cap of " +
                        std::to_string(max_depth));
  }
}

// floor(x), except that values within rounding distance of an integer snap to
// it. The closed-form bounds hit exact integers for some angles (for instance
// lambda / (2 cos^k a) is a power of two at theta = pi/2, odd k).
double snapped_floor(long double x) {
  const long double r = std::round(x);
  if (std::abs(x - r) <= 1e-9L * std::max<long double>(1.0L, std::abs(x))) {
    return static_cast<double>(r);
  }
  return static_cast<double>(std::floor(x));
}

std::uint64_t checked_count(long double x) {
  if (!(x >= 0.0L) || x >= 0x1p63L) throw CapacityError("cell count overflows 64 bits");
  return static_cast<std::uint64_t>(x);
}

}  // namespace

std::int64_t mesh_row(double v, int m) {
  return static_cast<std::int64_t>(std::ceil(std::ldexp(v, m) - kGridlineTolerance)) - 1;
}

std::uint64_t column_cells(double lo, double hi, int m) {
  return static_cast<std::uint64_t>(mesh_row(hi, m) - mesh_row(lo, m) + 1);
}

MeshCount mesh_count(const PiecewiseLinear& f, int m, const MeshCountOptions& options) {
  if (m < 0) throw Error(Errc::InvalidArgument, "negative mesh level");
  if (f.depth < m) {
    throw Error(Errc::DepthTooShallow, "function depth " + std::to_string(f.depth) +
                                           " is below mesh level " + std::to_string(m));
  }
  const std::size_t columns = std::size_t{1} << m;
  const std::size_t stride = std::size_t{1} << (f.depth - m);

  std::vector<std::uint64_t> per_column(columns);
  auto count_block = [&](std::size_t first, std::size_t last) {
    for (std::size_t j = first; j < last; ++j) {
      const auto begin = f.values.begin() + static_cast<std::ptrdiff_t>(j * stride);
      const auto [lo, hi] = std::minmax_element(begin, begin + static_cast<std::ptrdiff_t>(stride) + 1);
      per_column[j] = column_cells(*lo, *hi, m);
    }
  };

  const std::size_t blocks = std::clamp<std::size_t>(options.threads, 1, columns);
  if (blocks == 1) {
    count_block(0, columns);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      workers.emplace_back(count_block, columns * b / blocks, columns * (b + 1) / blocks);
    }
  }

  MeshCount out{m, 0, {}};
  for (const std::uint64_t n : per_column) out.total += n;
  if (options.keep_columns) out.per_column = std::move(per_column);
  return out;
}

SubtreeExtrema::SubtreeExtrema(const DragonParams& params, Axis axis, int max_coeff, int depth)
    : max_coeff_(max_coeff), depth_(depth) {
  if (max_coeff < 0 || depth < 0) throw Error(Errc::InvalidArgument, "negative range or depth");
  const int widest = max_coeff + depth;
  const DirectionTable table(params, widest);
  const double ratio = params.ratio;

  // Level d holds coefficients |c| <= widest - d; index c + widest throughout.
  const std::size_t size = 2 * static_cast<std::size_t>(widest) + 1;
  std::vector<Range> odd(size), even(size);
  for (int c = -widest; c <= widest; ++c) {
    const double v = table.component(axis, c);
    odd[c + widest] = even[c + widest] = {std::min(0.0, v), std::max(0.0, v)};
  }
  for (int d = 1; d <= depth; ++d) {
    const int reach = widest - d;
    std::vector<Range> next_odd(size), next_even(size);
    for (int c = -reach; c <= reach; ++c) {
      for (const bool odd_position : {true, false}) {
        // Children: first (odd position) turns by s, second (even) by -s.
        const int s = odd_position ? 1 : -1;
        const Range& first = odd[c + s + widest];
        const Range& second = even[c - s + widest];
        const double offset = table.component(axis, c + s);
        const Range r{ratio * std::min(first.lo, offset + second.lo),
                      ratio * std::max(first.hi, offset + second.hi)};
        (odd_position ? next_odd : next_even)[c + widest] = r;
      }
    }
    odd = std::move(next_odd);
    even = std::move(next_even);
  }

  odd_.assign(odd.begin() + depth, odd.begin() + depth + 2 * max_coeff + 1);
  even_.assign(even.begin() + depth, even.begin() + depth + 2 * max_coeff + 1);
}

SubtreeExtrema::Range SubtreeExtrema::at(std::int64_t c, bool odd_position) const {
  if (c < -max_coeff_ || c > max_coeff_) {
    throw Error(Errc::IndexOutOfRange, "coefficient " + std::to_string(c) + " outside the table");
  }
  const auto i = static_cast<std::size_t>(c + max_coeff_);
  return odd_position ? odd_[i] : even_[i];
}

MeshCount mesh_count_at_depth(const DragonParams& params, Axis axis, int m, int depth,
                              bool keep_columns, int max_depth) {
  check_level(m, max_depth);
  if (depth < m) {
    throw Error(Errc::DepthTooShallow,
                "depth " + std::to_string(depth) + " is below mesh level " + std::to_string(m));
  }
  if (depth > kMaxEvalDepth) {
    throw CapacityError("depth " + std::to_string(depth) + " exceeds the evaluation cap");
  }
  const AngleWord word = materialize_word(m, max_depth);
  const PiecewiseLinear start = coordinate_function(params, m, axis, max_depth);
  const SubtreeExtrema extrema(params, axis, m, depth - m);
  const double length = segment_length(params, m);

  MeshCount out{m, 0, {}};
  if (keep_columns) out.per_column.resize(word.coeffs.size());
  for (std::size_t j = 0; j < word.coeffs.size(); ++j) {
    const auto range = extrema.at(word.coeffs[j], j % 2 == 0);
    const double origin = start.values[j];
    const std::uint64_t cells =
        column_cells(origin + length * range.lo, origin + length * range.hi, m);
    out.total += cells;
    if (keep_columns) out.per_column[j] = cells;
  }
  return out;
}

double theoretical_dimension(const DragonParams& params) {
  return 1.0 - std::log(std::cos(params.alpha)) / std::log(2.0);
}

int effective_depth(const DragonParams& params, int m, int depth_margin, int max_depth) {
  if (depth_margin < 0) throw Error(Errc::InvalidArgument, "negative depth margin");
  int depth = m + depth_margin;
  if (!params.degenerate) depth = std::max(depth, certified_depth(params, std::ldexp(1.0, -m), max_depth));
  if (depth > max_depth) {
    throw CapacityError("level " + std::to_string(m) + " needs depth " + std::to_string(depth) +
                        " beyond the cap of " + std::to_string(max_depth));
  }
  return depth;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(Errc::InvalidArgument, "line fit needs at least two paired samples");
  }
  const auto n = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
    syy += (y[i] - mean_y) * (y[i] - mean_y);
  }
  if (sxx == 0.0) throw Error(Errc::InvalidArgument, "line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    residual += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - residual / syy, 0.0, 1.0) : 1.0;
  return fit;
}

DimensionEstimate estimate_dimension(const DragonParams& params, Axis axis, int m_lo, int m_hi,
                                     const DimensionOptions& options) {
  if (m_lo < 2) throw Error(Errc::InvalidArgument, "m_lo must be at least 2");
  if (m_hi <= m_lo) throw Error(Errc::InvalidArgument, "m_hi must exceed m_lo");
  check_level(m_hi, options.max_materialized_depth);

  DimensionEstimate est;
  est.params = params;
  est.axis = axis;
  est.m_lo = m_lo;
  est.m_hi = m_hi;
  est.depth_margin = options.depth_margin;

  std::vector<double> levels, logs;
  for (int m = m_lo; m <= m_hi; ++m) {
    const int depth = effective_depth(params, m, options.depth_margin, options.max_eval_depth);
    est.counts.push_back(
        mesh_count_at_depth(params, axis, m, depth, false, options.max_materialized_depth));
    est.depths.push_back(depth);
    levels.push_back(m);
    logs.push_back(std::log2(static_cast<double>(est.counts.back().total)));
  }
  const LineFit fit = fit_line(levels, logs);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  est.theoretical = theoretical_dimension(params);
  est.abs_error = std::abs(est.slope - est.theoretical);
  return est;
}

std::uint64_t cover_bound(const DragonParams& params, int k) {
  if (params.degenerate) throw Error(Errc::Degenerate, "cover bound is undefined at theta = pi");
  if (k < 1) throw Error(Errc::InvalidArgument, "cover bound needs k >= 1");
  if (k > 61) throw CapacityError("cover bound at level " + std::to_string(k) + " overflows");
  const long double c = 2.0L * std::cos(static_cast<long double>(params.alpha));
  const long double columns = std::ldexp(1.0L, k);
  const long double height = std::ldexp(1.0L, k + 1) / (std::pow(c, k - 1) * (c - 1.0L));
  return checked_count(columns * snapped_floor(height) + columns);
}

double lambda_min(const DragonParams& params, Axis axis) {
  if (!params.rational) throw Error(Errc::IrrationalAngle, "lambda needs a rational alpha");
  const auto [p, q] = *params.rational;
  if (q > 100'000'000) throw CapacityError("denominator too large for the residue scan");

  long double best = std::numeric_limits<long double>::infinity();
  for (std::int64_t j = 0; j < q; ++j) {
    const auto r = static_cast<std::int64_t>((static_cast<wide_int>(j) * p) % q);
    // cos(2 pi r / q) = 0  iff  4r = q or 3q;  sin(2 pi r / q) = 0  iff  2r = 0 mod q
    const bool vanishes = axis == Axis::X ? (4 * r == q || 4 * r == 3 * q) : (2 * r) % q == 0;
    if (vanishes) continue;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * r / static_cast<long double>(q);
    best = std::min(best, std::abs(axis == Axis::X ? std::cos(angle) : std::sin(angle)));
  }
  if (!std::isfinite(best)) throw Error(Errc::EmptySet, "every projection vanishes");
  return static_cast<double>(best);
}

std::uint64_t noncover_bound(const DragonParams& params, int k, Axis axis) {
  if (k < 1) throw Error(Errc::InvalidArgument, "non-cover bound needs k >= 1");
  if (k > 62) throw CapacityError("non-cover bound at level " + std::to_string(k) + " overflows");
  const long double lambda = lambda_min(params, axis);
  const long double cos_k = std::pow(std::cos(static_cast<long double>(params.alpha)), k);
  return checked_count(std::ldexp(1.0L, k - 1) * snapped_floor(lambda / (2.0L * cos_k)));
}

}  // namespace dragondim
