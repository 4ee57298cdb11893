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


#include "doctest.h"
#include "semiflat/properties.hpp"

using namespace semiflat;

TEST_CASE("exactness properties on small catalog semirings") {
  for (char const* id : {"boolean", "zmod:4", "truncation:3"}) {
    for (auto const& t : exactness_suite(catalog_semiring(id))) {
      INFO(id << ": " << t.name << (t.examples.empty() ? "" : " first: " + t.examples.front()));
      CHECK(t.violations == 0);
    }
  }
}

TEST_CASE("every tally sees instances on chain(3)") {
  for (auto const& t : exactness_suite(chain_semiring(3))) {
    INFO(t.name);
    CHECK(t.passed());
  }
}
