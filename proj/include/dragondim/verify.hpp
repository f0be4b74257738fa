#pragma once

#include <string>
#include <vector>

#include "dragondim/angles.hpp"

namespace dragondim {

enum class CheckStatus { Pass, Fail, Skip };

struct LemmaCheck {
  std::string name;
  CheckStatus status = CheckStatus::Skip;
  std::string detail;
};

/// Numerical checks of the counting and convergence facts behind the
/// dimension formula, at stages up to k:
///   pascal-histogram   letter multiplicities are binomial coefficients (k <= 16)
///   dyadic-stability   vertices of stage k persist at stages k+1..k+4 (k <= 10)
///   tail-bound         sup |x_{n+1} - x_n| <= 4 / (2cos a)^n (n <= 14)
///   sandwich           non-cover <= N <= cover + 2^(k+1) at certified depth
///                      (rational angles, levels 6..12)
std::vector<LemmaCheck> verify_lemmas(const DragonParams& params, int k);

std::string_view to_string(CheckStatus status);

}  // namespace dragondim
