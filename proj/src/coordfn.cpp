#include "dragondim/coordfn.hpp"

#include <cmath>
#include <string>

#include "dragondim/compensated_sum.hpp"
#include "dragondim/error.hpp"

namespace dragondim {

PiecewiseLinear coordinate_function(const DragonParams& params, int k, Axis axis,
                                    int max_depth) {
  if (k < 0) throw Error(Errc::InvalidArgument, "negative depth");
  if (k > max_depth) {
    throw CapacityError("materializing depth " + std::to_string(k) + " exceeds the cap of " +
                        std::to_string(max_depth));
  }
  const DirectionTable table(params, k);

  PiecewiseLinear f{params, k, axis, {0.0, table.component(axis, 0)}};
  AngleWord word;
  for (int level = 1; level <= k; ++level) {
    const double length = segment_length(params, level);
    const std::size_t parents = word.coeffs.size();
    std::vector<double> next(2 * parents + 1);
    for (std::size_t i = 0; i < parents; ++i) {
      const std::int32_t first_child = word.coeffs[i] + ((i % 2 == 0) ? 1 : -1);
      next[2 * i] = f.values[i];
      next[2 * i + 1] = f.values[i] + length * table.component(axis, first_child);
    }
    next[2 * parents] = f.values[parents];
    f.values = std::move(next);
    word = substitute(word, max_depth);
  }
  return f;
}

double eval_pl(const PiecewiseLinear& f, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(Errc::DomainError, "t = " + std::to_string(t) + " outside [0, 1]");
  }
  const std::size_t segments = f.values.size() - 1;
  const double scaled = std::ldexp(t, f.depth);
  std::size_t j = static_cast<std::size_t>(scaled);
  if (j >= segments) return f.values[segments];
  const double frac = scaled - static_cast<double>(j);
  if (frac == 0.0) return f.values[j];
  return f.values[j] + frac * (f.values[j + 1] - f.values[j]);
}

double tail_bound(const DragonParams& params, int n) {
  if (params.degenerate) {
    throw Error(Errc::Degenerate, "theta = pi: every stage already equals the limit");
  }
  if (n < 1) throw Error(Errc::InvalidArgument, "tail bound needs n >= 1");
  const double c = params.two_cos_alpha();
  return 4.0 / (std::pow(c, n - 1) * (c - 1.0));
}

int certified_depth(const DragonParams& params, double eps, int max_depth) {
  if (!(eps > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  for (int n = 1; n <= max_depth; ++n) {
    if (tail_bound(params, n) < eps) return n;
  }
  throw CapacityError("tail bound below " + std::to_string(eps) + " needs depth beyond " +
                          std::to_string(max_depth),
                      tail_bound(params, std::max(max_depth, 1)));
}

double eval_at_depth(const DragonParams& params, Axis axis, int n, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(Errc::DomainError, "t = " + std::to_string(t) + " outside [0, 1]");
  }
  if (n < 0) throw Error(Errc::InvalidArgument, "negative depth");
  if (t == 1.0) return axis == Axis::X ? 1.0 : 0.0;

  const DirectionTable table(params, n);
  CompensatedSum sum;
  std::int64_t c = 0;
  bool odd_position = true;
  double length = 1.0;
  double u = t;  // doubling a binary fraction is exact
  for (int level = 1; level <= n; ++level) {
    length *= params.ratio;
    const std::int64_t s = odd_position ? 1 : -1;
    u *= 2.0;
    if (u >= 1.0) {
      u -= 1.0;
      sum += length * table.component(axis, c + s);
      c -= s;
      odd_position = false;
    } else {
      c += s;
      odd_position = true;
    }
  }
  if (u != 0.0) sum += u * length * table.component(axis, c);
  return sum.value();
}

LimitValue eval_limit(const DragonParams& params, Axis axis, double t, double eps,
                      int max_depth) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(Errc::DomainError, "t = " + std::to_string(t) + " outside [0, 1]");
  }
  if (!(eps > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  if (params.degenerate) return {axis == Axis::X ? t : 0.0, 0, 0.0};
  const int n = certified_depth(params, eps, max_depth);
  return {eval_at_depth(params, axis, n, t), n, tail_bound(params, n)};
}

std::vector<DragonParams> rational_approx_sequence(double theta, int count,
                                                   const RationalDetection& detection,
                                                   std::int64_t max_denominator) {
  if (count < 0) throw Error(Errc::InvalidArgument, "negative count");
  const DragonParams base = validate_params(theta, detection);
  if (base.degenerate) throw Error(Errc::AlreadyRational, "alpha = 0");
  if (base.rational) {
    throw Error(Errc::AlreadyRational, "alpha/2pi = " + std::to_string(base.rational->p) + "/" +
                                           std::to_string(base.rational->q));
  }

  const long double x =
      static_cast<long double>(base.alpha) / (2.0L * std::numbers::pi_v<long double>);
  std::vector<DragonParams> out;
  std::int64_t h_prev = 0, h = 1;  // numerators h_{n-2}, h_{n-1}
  std::int64_t k_prev = 1, k = 0;  // denominators
  long double y = x;
  long double last_error = INFINITY;
  while (static_cast<int>(out.size()) < count) {
    const long double a_real = std::floor(y);
    if (a_real > static_cast<long double>(max_denominator)) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h_next = a * h + h_prev;
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;

    const long double error = std::abs(static_cast<long double>(h) / k - x);
    if (h > 0 && 6 * h < k) {
      if (!(error < last_error)) break;
      last_error = error;
      DragonParams params = params_from_rational({h, k});
      params.reflected = base.reflected;
      out.push_back(params);
    }
    const long double frac = y - a_real;
    if (frac <= 0.0L) break;
    y = 1.0L / frac;
  }
  if (static_cast<int>(out.size()) < count) {
    throw CapacityError("only " + std::to_string(out.size()) +
                        " convergents with denominator <= " + std::to_string(max_denominator));
  }
  return out;
}

}  // namespace dragondim
