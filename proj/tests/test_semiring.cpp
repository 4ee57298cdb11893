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


#include <random>

#include "doctest.h"
#include "semiflat/semiring.hpp"

using namespace semiflat;

namespace {
  Semiring::Rows rows(Semiring const& s, bool mul) {
    Semiring::Rows out(s.size(), std::vector<Elem>(s.size()));
    for (Elem a = 0; a < s.size(); ++a) {
      for (Elem b = 0; b < s.size(); ++b) {
        out[a][b] = mul ? s.times(a, b) : s.plus(a, b);
      }
    }
    return out;
  }

  bool valid(Semiring const& s) {
    return semiring_axiom_failures(s.size(), s.add_table(), s.mul_table(), 0, 1)
        .empty();
  }
}  // namespace

TEST_CASE("boolean tables validate") {
  auto b = Semiring::from_tables("B", {{0, 1}, {1, 1}}, {{0, 0}, {0, 1}});
  CHECK(b.size() == 2);
  CHECK(b.plus(1, 1) == 1);
  CHECK(b.same_tables(*boolean_semiring()));
}

TEST_CASE("ring tables validate") {
  auto z = zmod_semiring(4);
  CHECK_NOTHROW(Semiring::from_tables("z4", rows(*z, false), rows(*z, true)));
  // Z/2 with 1+1=0 is a ring, hence valid
  CHECK_NOTHROW(Semiring::from_tables("z2", {{0, 1}, {1, 0}}, {{0, 0}, {0, 1}}));
}

TEST_CASE("non-commutative addition is rejected with its witness") {
  Semiring::Rows add = {{0, 1, 2}, {1, 1, 2}, {2, 1, 2}};
  Semiring::Rows mul = {{0, 0, 0}, {0, 1, 2}, {0, 2, 2}};
  try {
    (void) Semiring::from_tables("bad", add, mul);
    FAIL("expected AxiomViolation");
  } catch (AxiomViolation const& e) {
    CHECK(e.axiom() == "additive-commutativity");
    CHECK(e.witness() == std::vector<Elem>{1, 2});
  }
}

TEST_CASE("malformed tables") {
  CHECK_THROWS_AS(Semiring::from_tables("x", {{0, 1}}, {{0, 0}, {0, 1}}), SizeMismatch);
  CHECK_THROWS_AS(Semiring::from_tables("x", {{0, 1}, {1, 5}}, {{0, 0}, {0, 1}}),
                  SizeMismatch);
  CHECK_THROWS_AS(Semiring::from_tables("x", {{0}}, {{0}}), SizeMismatch);
}

TEST_CASE("non-zero identity indices are normalised") {
  // Boolean semiring written with zero at index 1 and one at index 0.
  auto b = Semiring::from_tables("B", {{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, 1, 0);
  CHECK(b.same_tables(*boolean_semiring()));
  CHECK(b.label(0) == "1");
}

TEST_CASE("catalog semirings are valid") {
  for (auto const& id : catalog_examples()) {
    auto s = catalog_semiring(id);
    INFO(id);
    CHECK(valid(*s));
  }
}

TEST_CASE("chain semirings") {
  auto c4 = catalog_semiring("chain:4");
  CHECK(c4->size() == 4);
  for (Elem a = 0; a < 4; ++a) {
    for (Elem b = 0; b < 4; ++b) {
      int const va = std::stoi(c4->label(a)), vb = std::stoi(c4->label(b));
      CHECK(std::stoi(c4->label(c4->plus(a, b))) == std::max(va, vb));
      CHECK(std::stoi(c4->label(c4->times(a, b))) == std::min(va, vb));
    }
  }
  CHECK(c4->label(1) == "3");
  auto c3 = chain_semiring(3);
  CHECK(c3->size() == 3);
  CHECK(c3->is_additively_idempotent());
}

TEST_CASE("truncation semiring") {
  auto n3 = truncation_semiring(3);
  CHECK(valid(*n3));
  Elem const two = n3->element("2"), one = n3->element("1");
  CHECK(n3->plus(one, two) == two);
  CHECK(n3->times(two, two) == two);
  CHECK(n3->plus(one, one) == two);
}

TEST_CASE("matrix semirings") {
  auto c4 = chain_semiring(4);
  auto m  = matrix_semiring(*c4, 2);
  CHECK(m->size() == 256);
  CHECK(matrix_semiring(*boolean_semiring(), 2)->size() == 16);
  CHECK_THROWS_AS(matrix_semiring(*c4, 3), SizeCapExceeded);
  CHECK(catalog_semiring("matrix:chain:4:2")->size() == 256);

  // naive triple loop over entries on random pairs
  std::mt19937                       rng(7);
  std::uniform_int_distribution<Elem> pick(0, 255);
  for (int trial = 0; trial < 100; ++trial) {
    Elem a = pick(rng), b = pick(rng);
    auto ea = matrix_entries(*c4, 2, a), eb = matrix_entries(*c4, 2, b);
    auto ep = matrix_entries(*c4, 2, m->times(a, b));
    auto es = matrix_entries(*c4, 2, m->plus(a, b));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        Elem acc = 0;
        for (std::size_t k = 0; k < 2; ++k) {
          acc = c4->plus(acc, c4->times(ea[i * 2 + k], eb[k * 2 + j]));
        }
        CHECK(ep[i * 2 + j] == acc);
        CHECK(es[i * 2 + j] == c4->plus(ea[i * 2 + j], eb[i * 2 + j]));
      }
    }
  }
  auto id = matrix_entries(*c4, 2, 1);
  CHECK(id == std::vector<Elem>{1, 0, 0, 1});
  CHECK(matrix_entries(*c4, 2, 0) == std::vector<Elem>{0, 0, 0, 0});
}

TEST_CASE("opposite semirings") {
  auto b = boolean_semiring();
  CHECK(opposite_semiring(*b)->same_tables(*b));
  CHECK(opposite_semiring(*chain_semiring(3))->same_tables(*chain_semiring(3)));
  auto m  = matrix_semiring(*chain_semiring(4), 2);
  auto op = opposite_semiring(*m);
  CHECK(valid(*op));
  for (Elem a = 0; a < m->size(); a += 7) {
    for (Elem b2 = 0; b2 < m->size(); b2 += 5) {
      CHECK(op->times(a, b2) == m->times(b2, a));
    }
  }
  CHECK(opposite_semiring(*op)->same_tables(*m));
}

TEST_CASE("products") {
  auto s = catalog_semiring("product:zmod:2*chain:2");
  CHECK(s->size() == 4);
  CHECK(valid(*s));
  for (auto const& a : {"boolean", "chain:3", "truncation:3"}) {
    for (auto const& b : {"zmod:2", "chain:2", "truncation:2"}) {
      auto p = product_semiring(*catalog_semiring(a), *catalog_semiring(b));
      CHECK(valid(*p));
    }
  }
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(catalog_semiring("chain:1"), BadParams);
  CHECK_THROWS_AS(catalog_semiring("nosuch:3"), UnknownReference);
  CHECK_THROWS_AS(catalog_semiring("zmod:x"), BadParams);
}
