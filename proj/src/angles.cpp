#include "dragondim/angles.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dragondim/error.hpp"

namespace dragondim {

double DragonParams::two_cos_alpha() const { return 2.0 * std::cos(alpha); }

std::optional<Rational> detect_rational(double x, const RationalDetection& detection) {
  if (!std::isfinite(x)) return std::nullopt;
  for (std::int64_t q = 1; q <= detection.max_denominator; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (std::abs(x - p / static_cast<double>(q)) < detection.tolerance) {
      // The first hit has the smallest denominator, hence is already reduced.
      return Rational{static_cast<std::int64_t>(p), q};
    }
  }
  return std::nullopt;
}

namespace {

DragonParams finish(double theta, double alpha, std::optional<Rational> rational,
                    bool reflected) {
  DragonParams params;
  params.theta = theta;
  params.alpha = alpha;
  params.ratio = 1.0 / (2.0 * std::cos(alpha));
  params.rational = rational;
  params.reflected = reflected;
  params.degenerate = alpha == 0.0;
  return params;
}

double alpha_from_turns(const Rational& r) {
  return static_cast<double>(2.0L * std::numbers::pi_v<long double> *
                             static_cast<long double>(r.p) / static_cast<long double>(r.q));
}

}  // namespace

DragonParams validate_params(double theta, const RationalDetection& detection) {
  if (!std::isfinite(theta)) throw Error(Errc::OutOfRange, "theta must be finite");
  if (theta <= kPi / 3.0 || theta >= 5.0 * kPi / 3.0) {
    throw Error(Errc::OutOfRange,
                "theta = " + std::to_string(theta) + " is outside (pi/3, 5pi/3)");
  }
  bool reflected = false;
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    reflected = true;
  }
  const double alpha = (kPi - theta) / 2.0;
  std::optional<Rational> rational;
  if (alpha > 0.0) {
    rational = detect_rational(alpha / (2.0 * kPi), detection);
    if (rational && (rational->p <= 0 || 6 * rational->p >= rational->q)) rational.reset();
  }
  return finish(theta, alpha, rational, reflected);
}

DragonParams params_from_pi_fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den > (std::int64_t{1} << 40)) throw Error(Errc::InvalidArgument, "denominator too large");
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (!(3 * num > den && 3 * num < 5 * den)) {
    const std::string shown = (num == 1 ? std::string() : std::to_string(num)) + "pi" +
                              (den == 1 ? std::string() : "/" + std::to_string(den));
    throw Error(Errc::OutOfRange, "theta = " + shown + " is outside (pi/3, 5pi/3)");
  }
  bool reflected = false;
  if (num > den) {
    num = 2 * den - num;
    reflected = true;
  }
  const double theta =
      static_cast<double>(std::numbers::pi_v<long double> * num / static_cast<long double>(den));
  if (num == den) return finish(kPi, 0.0, std::nullopt, reflected);

  // alpha / 2pi = (1 - num/den) / 4
  std::int64_t p = den - num;
  std::int64_t q = 4 * den;
  const std::int64_t h = std::gcd(p, q);
  p /= h;
  q /= h;
  const Rational r{p, q};
  return finish(theta, alpha_from_turns(r), r, reflected);
}

DragonParams params_from_rational(Rational alpha_turns) {
  if (alpha_turns.q <= 0) throw Error(Errc::InvalidArgument, "denominator must be positive");
  const std::int64_t g = std::gcd(alpha_turns.p, alpha_turns.q);
  if (g != 0) {
    alpha_turns.p /= g;
    alpha_turns.q /= g;
  }
  if (alpha_turns.p <= 0 || 6 * alpha_turns.p >= alpha_turns.q) {
    throw Error(Errc::OutOfRange, "alpha/2pi = " + std::to_string(alpha_turns.p) + "/" +
                                      std::to_string(alpha_turns.q) + " is outside (0, 1/6)");
  }
  const double alpha = alpha_from_turns(alpha_turns);
  return finish(kPi - 2.0 * alpha, alpha, alpha_turns, false);
}

AngleWord substitute(const AngleWord& word, int max_depth) {
  if (word.depth + 1 > max_depth) {
    throw CapacityError("materializing depth " + std::to_string(word.depth + 1) +
                        " exceeds the cap of " + std::to_string(max_depth));
  }
  if (word.coeffs.size() != (std::size_t{1} << word.depth)) {
    throw Error(Errc::InvalidArgument, "word length does not match its depth");
  }
  AngleWord next;
  next.depth = word.depth + 1;
  next.coeffs.resize(word.coeffs.size() * 2);
  for (std::size_t j = 0; j < word.coeffs.size(); ++j) {
    // j is 0-based, so even j is an odd 1-based position.
    const std::int32_t s = (j % 2 == 0) ? 1 : -1;
    next.coeffs[2 * j] = word.coeffs[j] + s;
    next.coeffs[2 * j + 1] = word.coeffs[j] - s;
  }
  return next;
}

AngleWord materialize_word(int k, int max_depth) {
  if (k < 0) throw Error(Errc::InvalidArgument, "negative depth");
  if (k > max_depth) {
    throw CapacityError("materializing depth " + std::to_string(k) + " exceeds the cap of " +
                        std::to_string(max_depth));
  }
  AngleWord word;
  for (int level = 0; level < k; ++level) word = substitute(word, max_depth);
  return word;
}

std::int32_t angle_at(int k, std::uint64_t i) {
  if (k < 0 || k > kMaxStreamingDepth) {
    throw Error(Errc::IndexOutOfRange, "depth " + std::to_string(k) + " out of range");
  }
  const std::uint64_t length = std::uint64_t{1} << k;
  if (i < 1 || i > length) {
    throw Error(Errc::IndexOutOfRange,
                "index " + std::to_string(i) + " outside [1, " + std::to_string(length) + "]");
  }
  std::int32_t c = 0;
  std::uint64_t pos = i;
  for (int level = k; level > 0; --level) {
    const std::uint64_t parent = (pos + 1) / 2;
    c += ((pos & 1) == (parent & 1)) ? 1 : -1;
    pos = parent;
  }
  return c;
}

std::vector<HistogramEntry> angle_histogram(int k) {
  if (k < 0) throw Error(Errc::InvalidArgument, "negative depth");
  if (k > kMaxStreamingDepth) {
    throw CapacityError("binomial row " + std::to_string(k) + " overflows 64-bit counts");
  }
  std::vector<std::uint64_t> row{1};
  for (int n = 1; n <= k; ++n) {
    std::vector<std::uint64_t> next(row.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t j = 1; j < row.size(); ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  std::vector<HistogramEntry> out;
  out.reserve(row.size());
  for (int j = 0; j <= k; ++j) out.push_back({row[j], k - 2 * j});
  return out;
}

std::vector<HistogramEntry> word_histogram(const AngleWord& word) {
  const int k = word.depth;
  std::vector<std::uint64_t> counts(2 * static_cast<std::size_t>(k) + 1);
  for (const std::int32_t c : word.coeffs) {
    if (c < -k || c > k) throw Error(Errc::InvalidArgument, "coefficient outside [-k, k]");
    ++counts[c + k];
  }
  std::vector<HistogramEntry> out;
  for (int c = k; c >= -k; --c) {
    if (counts[c + k] > 0) out.push_back({counts[c + k], c});
  }
  return out;
}

std::vector<std::uint64_t> residue_histogram(int k, const Rational& alpha_turns) {
  if (alpha_turns.q <= 0) throw Error(Errc::InvalidArgument, "denominator must be positive");
  std::vector<std::uint64_t> out(alpha_turns.q);
  for (const auto& [count, coeff] : angle_histogram(k)) out[residue(coeff, alpha_turns.q)] += count;
  return out;
}

}  // namespace dragondim
