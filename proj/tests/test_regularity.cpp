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
#include "semiflat/error.hpp"
#include "semiflat/regularity.hpp"

using namespace semiflat;

namespace {
  Subset ideal_of(Semiring const& s, std::vector<std::string> const& labels) {
    Subset out(s.size(), false);
    for (auto const& l : labels) {
      out[s.element(l)] = true;
    }
    return out;
  }
}  // namespace

TEST_CASE("regularity profiles") {
  SUBCASE("chain(4) is von Neumann regular") {
    auto const p = regularity_profile(chain_semiring(4));
    CHECK(p.vn_regular);
    for (auto const& w : p.vn_witness) {
      CHECK(w.has_value());
    }
  }
  SUBCASE("Z/4 is not") {
    auto const s = zmod_semiring(4);
    auto const p = regularity_profile(s);
    CHECK_FALSE(p.vn_regular);
    CHECK_FALSE(p.vn_witness[s->element("2")].has_value());
    CHECK(p.left_subtractive);
    CHECK(p.right_subtractive);
  }
  SUBCASE("chain(3)") {
    auto const p = regularity_profile(chain_semiring(3));
    CHECK(p.vn_regular);
    CHECK(p.additively_regular);
    CHECK(p.left_subtractive);
    CHECK(p.right_subtractive);
    CHECK(p.left_bezout);
    CHECK(p.right_bezout);
    CHECK(p.left_ideals == 3);
    REQUIRE(p.abc.has_value());
    CHECK(p.abc->all());
  }
  SUBCASE("truncated naturals are not subtractive") {
    auto const s = truncation_semiring(3);
    auto const p = regularity_profile(s);
    CHECK_FALSE(p.left_subtractive);
    CHECK(p.left_offending == ideal_of(*s, {"0", "2"}));
  }
}

TEST_CASE("idempotent generators characterise regularity") {
  for (auto const& id : catalog_examples()) {
    auto const s = catalog_semiring(id);
    if (s->size() > 10) {
      continue;
    }
    auto const p = regularity_profile(s);
    INFO(id);
    CHECK(p.vn_regular == p.left_idempotent_principal);
    CHECK(p.vn_regular == p.right_idempotent_principal);
    if (id.rfind("zmod:", 0) == 0) {
      CHECK(p.left_subtractive);
      CHECK(p.right_subtractive);
    }
    if (p.abc && p.abc->all() && p.vn_regular) {
      CHECK(p.left_bezout);
      CHECK(p.right_bezout);
    }
    if (p.additively_regular && p.abc) {
      for (Elem a = 0; a < s->size(); ++a) {
        CHECK(star_inverse(*s, star_inverse(*s, a)) == a);
      }
    }
  }
}

TEST_CASE("star inverses") {
  auto const c = chain_semiring(4);
  for (Elem a = 0; a < c->size(); ++a) {
    CHECK(star_inverse(*c, a) == a);
  }
  auto const z = zmod_semiring(4);
  CHECK(star_inverse(*z, 0) == 0);
  CHECK(star_inverse(*z, z->element("1")) == z->element("3"));
  CHECK(star_inverse(*z, z->element("2")) == z->element("2"));
  CHECK_THROWS_AS(star_inverse(*truncation_semiring(3), 1), NotAdditivelyRegular);
}

TEST_CASE("ABC conditions") {
  CHECK(check_abc(*chain_semiring(3)).all());
  CHECK(check_abc(*zmod_semiring(4)).all());
  auto const rd = catalog_semiring("product:zmod:2*chain:2");
  CHECK(check_abc(*rd).all());
  auto const p = regularity_profile(rd);
  CHECK(p.vn_regular);
  CHECK(p.left_bezout);
}

TEST_CASE("direct summands") {
  SUBCASE("chain(3): Sa is not a summand") {
    auto const s = chain_semiring(3);
    auto const d = is_direct_summand(s, ideal_of(*s, {"0", "1"}), Side::left);
    CHECK_FALSE(d.holds);
    CHECK(d.candidates == 3);
  }
  SUBCASE("Z/6: {0,2,4} with complement {0,3}") {
    auto const s = zmod_semiring(6);
    auto const d = is_direct_summand(s, ideal_of(*s, {"0", "2", "4"}), Side::left);
    REQUIRE(d.holds);
    CHECK(*d.complement == ideal_of(*s, {"0", "3"}));
  }
  SUBCASE("S itself") {
    auto const s = chain_semiring(4);
    auto const d = is_direct_summand(s, Subset(4, true), Side::right);
    REQUIRE(d.holds);
    CHECK(*d.complement == ideal_of(*s, {"0"}));
  }
}

TEST_CASE("matrix regularity") {
  SUBCASE("a non-regular matrix over chain(4)") {
    auto const s = chain_semiring(4);
    auto const a = matrix_from_labels(*s, {{"0", "1"}, {"2", "3"}});
    auto const r = matrix_regularity_scan(s, 2, std::vector<Matrix>{a});
    CHECK(r.searched == 256);
    REQUIRE(r.non_regular.size() == 1);
    CHECK(matrix_label(*s, 2, r.non_regular[0]) == "[[0,1],[2,3]]");
    CHECK(r.base_vn_regular);
  }
  SUBCASE("the identity is regular") {
    auto const s  = chain_semiring(4);
    auto const id = matrix_from_labels(*s, {{"3", "0"}, {"0", "3"}});
    auto const r  = matrix_regularity_scan(s, 2, std::vector<Matrix>{id});
    CHECK(r.non_regular.empty());
    REQUIRE(r.witnesses[0].has_value());
  }
  SUBCASE("M_2(F_2) is regular") {
    auto const r = matrix_regularity_scan(zmod_semiring(2), 2);
    CHECK(r.complete);
    CHECK(r.scanned == 16);
    CHECK(r.matrix_vn_regular);
    CHECK(r.implication_holds);
  }
  SUBCASE("M_2(chain(4)) is not") {
    auto const r = matrix_regularity_scan(chain_semiring(4), 2);
    CHECK_FALSE(r.matrix_vn_regular);
    CHECK(r.implication_holds);
  }
  SUBCASE("M_2(Z/4) is not, nor is Z/4") {
    auto const r = matrix_regularity_scan(zmod_semiring(4), 2);
    CHECK_FALSE(r.matrix_vn_regular);
    CHECK_FALSE(r.base_vn_regular);
  }
  SUBCASE("caps") {
    CHECK_THROWS_AS(matrix_regularity_scan(chain_semiring(4), 3), SizeCapExceeded);
  }
}

TEST_CASE("sflatvon harness") {
  SUBCASE("Z/4 yields Z/2 at size 2") {
    auto const r = sflatvon_harness(zmod_semiring(4));
    CHECK(r.verdict == HarnessVerdict::witness_found);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->subject->size() == 2);
    CHECK(r.witness->m_flat == Tri::no);
    CHECK(r.witness->i_flat == Tri::no);
  }
  SUBCASE("chain(3) is regular") {
    auto const r = sflatvon_harness(chain_semiring(3));
    CHECK(r.verdict == HarnessVerdict::premise_fails);
    CHECK(r.vn_regular);
  }
  SUBCASE("truncated naturals are not subtractive") {
    auto const r = sflatvon_harness(truncation_semiring(3));
    CHECK(r.verdict == HarnessVerdict::premise_fails);
    CHECK_FALSE(r.subtractive);
  }
}

TEST_CASE("Bezout regular semirings") {
  SUBCASE("chain(3) at bound 4") {
    auto const r = bez_neumann_check(chain_semiring(3), 4);
    CHECK(r.passed());
    CHECK(r.normally_generated > 0);
    CHECK(r.confirmed == r.normally_generated);
  }
  SUBCASE("chain(4) at bound 3") {
    auto const r = bez_neumann_check(chain_semiring(4), 3);
    CHECK(r.passed());
    CHECK(r.inconclusive == 0);
  }
  SUBCASE("Z/4") {
    auto const r = bez_neumann_check(zmod_semiring(4), 4);
    CHECK_FALSE(r.premise());
    CHECK(r.modules == 0);
  }
}

TEST_CASE("mirrored modules") {
  auto const m = regular_module(chain_semiring(3), Side::left);
  auto const r = mirror(m);
  CHECK(r->side() == Side::right);
  CHECK(r->size() == 3);
  CHECK_THROWS_AS(mirror(r), EndpointMismatch);
}
