// Compares compiled replacement transducers against the independent
// site-selection oracle on every input up to a length bound.

#include <string>

#include "doctest.h"
#include "fsc/regex.hpp"
#include "helpers.hpp"
#include "suite_cases.hpp"

using namespace fsc;

TEST_CASE("compiled replacements agree with the site-selection oracle") {
  for (const suitecases::SuiteCase& sc : suitecases::suite()) {
    CAPTURE(sc.name);
    CAPTURE(sc.expr);
    Network net = testutil::rx(sc.expr);
    for (const std::string& input : oracle::universe(sc.alphabet, sc.maxlen)) {
      auto got = testutil::outs(net, input, ApplyDir::Down, 20000);
      auto want = oracle::rewrite(sc.rules, input, sc.orient, sc.optional);
      if (got != want) {
        CAPTURE(input);
        REQUIRE(got == want);
      }
    }
  }
}
