#include "dragondim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "dragondim/boxdim.hpp"
#include "dragondim/coordfn.hpp"
#include "dragondim/curve.hpp"
#include "dragondim/error.hpp"

namespace dragondim {

namespace {

std::string format(const char* fmt, double a, double b = 0.0) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, fmt, a, b);
  return buffer;
}

LemmaCheck check_histogram(int k) {
  const int top = std::min(k, 16);
  for (int depth = 0; depth <= top; ++depth) {
    const AngleWord word = materialize_word(depth);
    if (word_histogram(word) != angle_histogram(depth)) {
      return {"pascal-histogram", CheckStatus::Fail,
              "histogram differs from the binomial row at depth " + std::to_string(depth)};
    }
    if (word.coeffs.front() != depth) {
      return {"pascal-histogram", CheckStatus::Fail,
              "first letter is not k at depth " + std::to_string(depth)};
    }
  }
  return {"pascal-histogram", CheckStatus::Pass, "depths 0.." + std::to_string(top)};
}

LemmaCheck check_dyadic(const DragonParams& params, int k) {
  const int top = std::min(k, 10);
  if (top < 1) return {"dyadic-stability", CheckStatus::Skip, "needs k >= 1"};
  std::map<int, PolylineCurve> curves;
  for (int depth = 1; depth <= top + 4; ++depth) curves.emplace(depth, build_curve(params, depth));

  std::mt19937_64 rng(0x5eed);
  double worst = 0.0;
  for (int depth = 1; depth <= top; ++depth) {
    const auto& coarse = curves.at(depth).vertices;
    std::uniform_int_distribution<std::uint64_t> pick(0, coarse.size() - 1);
    for (int extra = 1; extra <= 4; ++extra) {
      const auto& fine = curves.at(depth + extra).vertices;
      for (int sample = 0; sample < 100; ++sample) {
        const std::uint64_t j = pick(rng);
        const Point a = coarse[j];
        const Point b = fine[j << extra];
        worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.y - b.y)});
      }
    }
  }
  const bool ok = worst < 1e-9;
  return {"dyadic-stability", ok ? CheckStatus::Pass : CheckStatus::Fail,
          format("max refinement drift %.3g (limit 1e-9)", worst)};
}

LemmaCheck check_tail(const DragonParams& params, int k) {
  const int top = std::min(k, 14);
  if (top < 1) return {"tail-bound", CheckStatus::Skip, "needs k >= 1"};
  double worst_ratio = 0.0;
  for (const Axis axis : {Axis::X, Axis::Y}) {
    PiecewiseLinear coarse = coordinate_function(params, 1, axis);
    for (int n = 1; n <= top; ++n) {
      PiecewiseLinear fine = coordinate_function(params, n + 1, axis);
      double sup = 0.0;
      for (std::size_t j = 0; j < fine.values.size(); ++j) {
        const double t = std::ldexp(static_cast<double>(j), -(n + 1));
        sup = std::max(sup, std::abs(fine.values[j] - eval_pl(coarse, t)));
      }
      const double bound = 4.0 / std::pow(params.two_cos_alpha(), n);
      worst_ratio = std::max(worst_ratio, sup / bound);
      coarse = std::move(fine);
    }
  }
  const bool ok = worst_ratio <= 1.0;
  return {"tail-bound", ok ? CheckStatus::Pass : CheckStatus::Fail,
          format("largest deviation / bound = %.4f", worst_ratio) + " over n = 1.." + std::to_string(top)};
}

LemmaCheck check_sandwich(const DragonParams& params, int k) {
  if (params.degenerate) return {"sandwich", CheckStatus::Skip, "degenerate angle"};
  if (!params.rational) return {"sandwich", CheckStatus::Skip, "irrational angle"};
  const int top = std::min(k, 12);
  const int bottom = std::min(6, top);
  if (bottom < 1) return {"sandwich", CheckStatus::Skip, "needs k >= 1"};
  for (int level = bottom; level <= top; ++level) {
    const int depth = std::max(level, certified_depth(params, std::ldexp(1.0, -level)));
    const std::uint64_t upper = cover_bound(params, level) + (std::uint64_t{2} << level);
    for (const Axis axis : {Axis::X, Axis::Y}) {
      const std::uint64_t count = mesh_count_at_depth(params, axis, level, depth).total;
      const std::uint64_t lower = noncover_bound(params, level, axis);
      if (count < lower || count > upper) {
        return {"sandwich", CheckStatus::Fail,
                std::string(axis == Axis::X ? "x" : "y") + " count " + std::to_string(count) +
                    " outside [" + std::to_string(lower) + ", " + std::to_string(upper) +
                    "] at level " + std::to_string(level)};
      }
    }
  }
  return {"sandwich", CheckStatus::Pass,
          "levels " + std::to_string(bottom) + ".." + std::to_string(top)};
}

}  // namespace

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
  }
  return "?";
}

std::vector<LemmaCheck> verify_lemmas(const DragonParams& params, int k) {
  if (k < 0) throw Error(Errc::InvalidArgument, "negative depth");
  return {check_histogram(k), check_dyadic(params, k), check_tail(params, k),
          check_sandwich(params, k)};
}

}  // namespace dragondim
