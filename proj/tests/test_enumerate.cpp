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
#include "semiflat/enumerate.hpp"

using namespace semiflat;

TEST_CASE("commutative monoids up to isomorphism") {
  // 1, 2, 5, 19, 78 commutative monoids of orders 1..5
  std::vector<std::size_t> expected{1, 2, 5, 19, 78};
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(enumerate_monoids(n).size() == expected[n - 1]);
  }
}

TEST_CASE("Boolean semimodules are finite lattices") {
  // lattices with 1..5 elements: 1, 1, 1, 2, 5
  auto mods = enumerate_semimodules(boolean_semiring(), Side::left, 5);
  std::vector<std::size_t> by_size(6, 0);
  for (auto const& m : mods) {
    ++by_size[m->size()];
  }
  CHECK(by_size == std::vector<std::size_t>{0, 1, 1, 1, 2, 5});
}

TEST_CASE("modules over Z/4 are groups of exponent dividing 4") {
  auto mods = enumerate_semimodules(zmod_semiring(4), Side::right, 4);
  CHECK(mods.size() == 4);
  for (auto const& m : mods) {
    CHECK(is_cancellative(*m));
  }
  auto z6 = enumerate_semimodules(zmod_semiring(6), Side::left, 4);
  // 0, Z/2, Z/3, Z/2 x Z/2
  CHECK(z6.size() == 4);
}

TEST_CASE("enumerated semimodules are valid and pairwise non-isomorphic") {
  for (auto const& id : {"chain:3", "truncation:3", "product:zmod:2*chain:2"}) {
    auto s = catalog_semiring(id);
    for (auto side : {Side::left, Side::right}) {
      auto mods = enumerate_semimodules(s, side, 3);
      for (std::size_t i = 0; i < mods.size(); ++i) {
        auto const& m = *mods[i];
        CHECK(semimodule_axiom_failures(s.get(), side, m.size(), m.add_table(), m.action_table())
                  .empty());
        for (std::size_t j = i + 1; j < mods.size(); ++j) {
          CHECK_FALSE(find_isomorphism(mods[i], mods[j]).has_value());
        }
      }
      // the regular module appears
      auto reg   = regular_module(s, side);
      bool found = false;
      for (auto const& m : mods) {
        found = found || find_isomorphism(m, reg).has_value();
      }
      if (s->size() <= 3) {
        CHECK(found);
      }
    }
  }
}
