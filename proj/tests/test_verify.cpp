#include <doctest.h>

#include "dragondim/verify.hpp"

using namespace dragondim;

TEST_CASE("verify_lemmas passes on rational and irrational angles") {
  for (const DragonParams& p : {validate_params(kPi / 2), params_from_pi_fraction(2, 3),
                                params_from_pi_fraction(25, 18), validate_params(2.0)}) {
    const auto checks = verify_lemmas(p, 10);
    REQUIRE(checks.size() == 4);
    CHECK(checks[0].name == "pascal-histogram");
    CHECK(checks[1].name == "dyadic-stability");
    CHECK(checks[2].name == "tail-bound");
    CHECK(checks[3].name == "sandwich");
    for (const LemmaCheck& c : checks) {
      CHECK_MESSAGE(c.status != CheckStatus::Fail, c.name << ": " << c.detail);
    }
    CHECK((checks[3].status == CheckStatus::Skip) == !p.rational.has_value());
  }
}

TEST_CASE("check status names") {
  CHECK(to_string(CheckStatus::Pass) == "PASS");
  CHECK(to_string(CheckStatus::Fail) == "FAIL");
  CHECK(to_string(CheckStatus::Skip) == "SKIP");
}
