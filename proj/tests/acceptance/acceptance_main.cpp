#include "torcal/selftest.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  torcal::selftest::Options opt;
  opt.jobs = 2;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--quick") opt.quick = true;
    if (a == "--seed" && i + 1 < argc) opt.seed = std::stoull(argv[++i]);
    if (a == "--jobs" && i + 1 < argc) opt.jobs = std::stoi(argv[++i]);
  }
  auto results = torcal::selftest::run_acceptance(opt);
  std::fputs(torcal::selftest::report_text(results).c_str(), stdout);
  return torcal::selftest::all_passed(results) ? 0 : 1;
}
