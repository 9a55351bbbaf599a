#include "torcal/selftest.hpp"

#include "doctest.h"

using namespace torcal;

TEST_CASE("identical seeds give byte-identical acceptance reports") {
  selftest::Options opt;
  opt.quick = true;
  opt.jobs = 2;
  opt.seed = 7;
  auto r1 = selftest::run_acceptance(opt);
  auto r2 = selftest::run_acceptance(opt);
  CHECK(selftest::report_text(r1) == selftest::report_text(r2));
  CHECK(selftest::all_passed(r1));
}
