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
#include "semiflat/flatness.hpp"
#include "support.hpp"

using namespace semiflat;
using semiflat::testing::sub;
using semiflat::testing::zmod_over;

namespace {
  void all_flat(FlatnessVerdict const& v) {
    CHECK(v.m_flat == Tri::yes);
    CHECK(v.i_flat == Tri::yes);
    CHECK(v.e_flat == Tri::yes);
  }

  Subset mask(std::size_t n, std::vector<Elem> const& elems) { return subset_of(n, elems); }
}  // namespace

TEST_CASE("the regular module is flat relative to every target") {
  auto const s = chain_semiring(3);
  auto const f = regular_module(s, Side::right);
  for (auto const& m : enumerate_semimodules(s, Side::left, 4)) {
    INFO(m->name());
    auto const v = flatness_wrt(f, m);
    all_flat(v);
    CHECK(v.routes_agree);
    CHECK(v.cause.empty());
  }
}

TEST_CASE("Z/2 is not flat relative to Z/4") {
  auto const f = zmod_over(2, 4, Side::right);
  auto const m = regular_module(zmod_semiring(4), Side::left);
  auto const v = flatness_wrt(f, m);
  CHECK(v.m_flat == Tri::no);
  CHECK(v.i_flat == Tri::no);
  CHECK(v.e_flat == Tri::no);
  CHECK(v.e_flat_ses == Tri::no);
  CHECK(v.routes_agree);
  REQUIRE(v.m_witness.has_value());
  CHECK(v.m_witness->members == std::vector<Elem>{0, 2});
  CHECK(v.subsemimodules == 3);
  CHECK(v.inclusions_hold());

  SUBCASE("single routes") {
    CHECK(flatness_wrt(f, m, {}, Route::ses).e_flat == Tri::no);
    CHECK(flatness_wrt(f, m, {}, Route::definition).e_flat_ses == Tri::inconclusive);
  }
}

TEST_CASE("direct sums are flat exactly when the summands are") {
  auto const s  = zmod_semiring(4);
  auto const m  = regular_module(s, Side::left);
  auto const sr = regular_module(s, Side::right);
  auto const z2 = zmod_over(2, 4, Side::right);
  TensorConfig cfg;
  cfg.cap = 32;
  CHECK(flatness_wrt(direct_sum(sr, z2).module, m, cfg).m_flat == Tri::no);
  auto const z2l = zmod_over(2, 4, Side::left);
  all_flat(flatness_wrt(direct_sum(sr, sr).module, z2l, cfg));
  CHECK(flatness_wrt(direct_sum(sr, z2).module, z2l, cfg).m_flat == Tri::yes);
}

TEST_CASE("mixed sides are rejected") {
  auto const m = regular_module(zmod_semiring(4), Side::left);
  CHECK_THROWS_AS(flatness_wrt(m, m), EndpointMismatch);
  CHECK_THROWS_AS(s_flatness(m), EndpointMismatch);
}

TEST_CASE("S-flatness through theta_I") {
  SUBCASE("the regular module") {
    auto const v = s_flatness(regular_module(zmod_semiring(4), Side::right));
    all_flat(v);
    CHECK(v.criterion_agrees == true);
  }
  SUBCASE("Z/2 over Z/4") {
    auto const v = s_flatness(zmod_over(2, 4, Side::right));
    CHECK(v.m_flat == Tri::no);
    CHECK(v.i_flat == Tri::no);
    CHECK(v.e_flat == Tri::no);
    REQUIRE(v.m_witness.has_value());
    CHECK(v.m_witness->members == std::vector<Elem>{0, 2});
    CHECK(v.criterion_agrees == true);
  }
  SUBCASE("chain(3) over itself") {
    auto const v = s_flatness(regular_module(chain_semiring(3), Side::right));
    CHECK(v.subsemimodules == 3);
    all_flat(v);
    CHECK(v.criterion_agrees == true);
  }
}

TEST_CASE("K n FI against KI") {
  SUBCASE("Z/4 with K = I = {0,2}") {
    auto const f = regular_module(zmod_semiring(4), Side::right);
    auto const r = ideal_intersection_check(sub(f, {0, 2}), mask(4, {0, 2}));
    CHECK(r.ki == mask(4, {0}));
    CHECK(r.fi == mask(4, {0, 2}));
    CHECK(r.k_cap_fi == mask(4, {0, 2}));
    CHECK_FALSE(r.equal);
  }
  SUBCASE("chain(3) with K = I = {0,a}") {
    auto const s = chain_semiring(3);
    auto const f = regular_module(s, Side::right);
    auto const a = s->element("1");
    auto const r = ideal_intersection_check(sub(f, {0, a}), mask(3, {0, a}));
    CHECK(r.ki == mask(3, {0, a}));
    CHECK(r.k_cap_fi == r.ki);
    CHECK(r.equal);
  }
  SUBCASE("K = 0") {
    auto const s = chain_semiring(4);
    auto const f = regular_module(s, Side::right);
    for (auto const& ideal : left_ideals(s)) {
      CHECK(ideal_intersection_check(sub(f, {0}), ideal).equal);
    }
  }
}

TEST_CASE("flatness survey") {
  SUBCASE("Z/4") {
    auto const sv = flatness_survey(zmod_semiring(4), 4);
    CHECK(sv.passed());
    CHECK(sv.skipped.empty());
    bool saw_z2 = false, saw_s = false;
    for (auto const& c : sv.subjects) {
      if (c.subject->size() == 2) {
        saw_z2 = true;
        CHECK(c.m_flat == Tri::no);
      }
      if (find_isomorphism(c.subject, regular_module(zmod_semiring(4), Side::right))) {
        saw_s = true;
        CHECK(c.e_flat == Tri::yes);
      }
    }
    CHECK(saw_z2);
    CHECK(saw_s);
  }
  SUBCASE("Boolean semiring") {
    auto const sv = flatness_survey(boolean_semiring(), 3);
    CHECK(sv.passed());
    CHECK(sv.e_implies_i.violations == 0);
    CHECK(sv.free_flat.instances > 0);
  }
}

TEST_CASE("closure properties on small semirings") {
  for (char const* id : {"boolean", "zmod:4", "chain:3"}) {
    for (auto const& t : check_flat_closure(catalog_semiring(id), 4)) {
      INFO(id << ": " << t.name);
      CHECK(t.passed());
    }
  }
}
