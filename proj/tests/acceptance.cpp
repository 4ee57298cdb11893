// Copyright 2026 The semiflat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance runner: one PASS/FAIL line per criterion.  Arguments, if
// any, are row keys to restrict the run.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "semiflat/reproduce.hpp"

int main(int argc, char** argv) {
  semiflat::ReproOptions opts;
  for (int i = 1; i < argc; ++i) {
    opts.only.emplace_back(argv[i]);
  }
  std::vector<semiflat::ReproRow> rows;
  try {
    rows = semiflat::reproduce(opts);
  } catch (std::exception const& e) {
    std::printf("FAIL acceptance: %s\n", e.what());
    return 1;
  }
  int    failed = 0;
  double total  = 0;
  for (auto const& r : rows) {
    total += r.seconds;
    failed += r.passed ? 0 : 1;
    std::printf("%s criterion %d: %s [%s; %s] (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.criterion,
                r.claim.c_str(), r.method.c_str(), r.caps.c_str(), r.seconds);
    for (auto const& d : r.details) {
      std::printf("    %s\n", d.c_str());
    }
    for (auto const& f : r.failures) {
      std::printf("    failure: %s\n", f.c_str());
    }
  }
  std::printf("%zu criteria, %d failed, %.1fs\n", rows.size(), failed, total);
  return failed == 0 ? 0 : 1;
}
