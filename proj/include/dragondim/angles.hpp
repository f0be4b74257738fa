#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

namespace dragondim {

inline constexpr double kPi = std::numbers::pi;

/// Largest depth whose angle word (and curve, and coordinate functions) may be
/// materialized in memory: 2^26 letters.
inline constexpr int kDefaultMaxDepth = 26;

/// angle_at and the Pascal histogram index with 64-bit integers.
inline constexpr int kMaxStreamingDepth = 63;

/// alpha = 2*pi*p/q with gcd(p, q) = 1.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

struct RationalDetection {
  std::int64_t max_denominator = 10'000;
  double tolerance = 1e-12;
};

/// Validated angle data for one member of the dragon family.
///
/// Inputs in (pi, 5pi/3) are mirrored to 2pi - theta; `theta` always holds the
/// reduced angle in (pi/3, pi] and `reflected` records the mirror so that
/// geometry can negate y afterwards.
struct DragonParams {
  double theta = kPi / 2;
  double alpha = kPi / 4;
  double ratio = 0.0;  // 1 / (2 cos alpha)
  std::optional<Rational> rational;
  bool reflected = false;
  bool degenerate = false;  // theta == pi: the curve is the unit segment

  double two_cos_alpha() const;
};

/// Builds parameters from theta in radians. Rationality of alpha / 2pi is
/// detected by scanning denominators up to `detection.max_denominator`.
DragonParams validate_params(double theta, const RationalDetection& detection = {});

/// theta = (num / den) * pi, exactly. Here q is known without float sniffing.
DragonParams params_from_pi_fraction(std::int64_t num, std::int64_t den);

/// alpha = 2*pi*p/q; requires 0 < p/q < 1/6. The fraction is reduced first.
DragonParams params_from_rational(Rational alpha_turns);

std::optional<Rational> detect_rational(double x, const RationalDetection& detection = {});

/// Word of coefficients c_i; segment i of the depth-k curve points in
/// direction c_i * alpha.
struct AngleWord {
  int depth = 0;
  std::vector<std::int32_t> coeffs{0};
};

/// One application of the folding substitution: the letter at 1-based
/// position j becomes (c+1, c-1) for odd j and (c-1, c+1) for even j.
AngleWord substitute(const AngleWord& word, int max_depth = kDefaultMaxDepth);

/// substitute applied k times to the base word (0).
AngleWord materialize_word(int k, int max_depth = kDefaultMaxDepth);

/// Coefficient of letter i (1-based) of the depth-k word in O(k), without
/// materializing the word.
std::int32_t angle_at(int k, std::uint64_t i);

struct HistogramEntry {
  std::uint64_t count = 0;
  std::int32_t coeff = 0;

  friend bool operator==(const HistogramEntry&, const HistogramEntry&) = default;
};

/// Multiplicity of every coefficient in the depth-k word, ordered by
/// decreasing coefficient: (C(k, j), k - 2j) for j = 0..k.
std::vector<HistogramEntry> angle_histogram(int k);

/// Histogram of an explicit word, same ordering as angle_histogram.
std::vector<HistogramEntry> word_histogram(const AngleWord& word);

/// Letter counts of the depth-k word grouped by coefficient residue mod q.
/// Entry r counts letters with c = r (mod q), i.e. direction 2*pi*r*p/q.
std::vector<std::uint64_t> residue_histogram(int k, const Rational& alpha_turns);

/// Non-negative residue of c modulo q.
constexpr std::int64_t residue(std::int64_t c, std::int64_t q) {
  const std::int64_t r = c % q;
  return r < 0 ? r + q : r;
}

}  // namespace dragondim
