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


#include <algorithm>
#include <set>

#include "doctest.h"
#include "semiflat/semimodule.hpp"
#include "support.hpp"

using namespace semiflat;
using semiflat::testing::sub;
using semiflat::testing::zmod_over;

namespace {
  std::set<std::set<std::string>> label_sets(std::vector<SubSemimodule> const& subs) {
    std::set<std::set<std::string>> out;
    for (auto const& s : subs) {
      std::set<std::string> ls;
      for (auto e : s.elements()) {
        ls.insert(s.parent->label(e));
      }
      out.insert(ls);
    }
    return out;
  }

  // All subsets closed under the operations, by brute force over masks.
  std::size_t brute_subsemimodules(Semimodule const& m) {
    std::size_t found = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m.size()); ++mask) {
      Subset s(m.size());
      for (Elem e = 0; e < m.size(); ++e) {
        s[e] = (mask >> e) & 1;
      }
      found += is_subsemimodule(m, s);
    }
    return found;
  }
}  // namespace

TEST_CASE("validate regular and quotient modules") {
  for (auto const& id : {"boolean", "chain:3", "zmod:4", "truncation:3"}) {
    auto s = catalog_semiring(id);
    for (auto side : {Side::left, Side::right}) {
      auto m = regular_module(s, side);
      CHECK(semimodule_axiom_failures(
                s.get(), side, m->size(), m->add_table(), m->action_table())
                .empty());
    }
  }
  auto z2 = zmod_over(2, 4, Side::right);
  CHECK(z2->size() == 2);
}

TEST_CASE("unitality violation") {
  auto b = boolean_semiring();
  Semimodule::Rows add    = {{0, 1}, {1, 1}};
  Semimodule::Rows action = {{0, 0}, {0, 0}};
  try {
    (void) Semimodule::from_tables(b, Side::left, add, action);
    FAIL("expected AxiomViolation");
  } catch (AxiomViolation const& e) {
    CHECK(e.axiom() == "unitality");
    CHECK(e.witness() == std::vector<Elem>{1});
  }
}

TEST_CASE("identity element moved to index zero") {
  auto b = boolean_semiring();
  // join semilattice {top, bottom} written with bottom at index 1
  Semimodule::Rows add    = {{0, 0}, {0, 1}};
  Semimodule::Rows action = {{1, 1}, {0, 1}};
  auto             m      = Semimodule::from_tables(b, Side::left, add, action);
  CHECK(m.label(0) == "1");
  CHECK(m.plus(1, 1) == 1);
}

TEST_CASE("free modules and direct sums") {
  auto b  = boolean_semiring();
  auto f  = free_semimodule(b, 2, Side::left);
  CHECK(f.module->size() == 4);
  CHECK(free_semimodule(chain_semiring(3), 1, Side::right).module->size() == 3);
  CHECK(free_semimodule(zmod_semiring(4), 2, Side::right).module->size() == 16);
  CHECK_THROWS_AS(free_semimodule(zmod_semiring(4), 7, Side::right), SizeCapExceeded);

  auto bb = direct_sum(regular_module(b, Side::left), regular_module(b, Side::left));
  CHECK(find_isomorphism(bb.module, f.module).has_value());
  for (std::size_t i = 0; i < 2; ++i) {
    auto pi = compose(f.projections[i], f.injections[i]);
    CHECK(pi == Morphism::identity(regular_module(b, Side::left)));
  }
  auto m  = regular_module(chain_semiring(3), Side::right);
  auto m0 = direct_sum(m, zero_module(m->base(), Side::right));
  CHECK(find_isomorphism(m0.module, m).has_value());
  CHECK(compose(bb.pi_first, bb.iota_first).map() == std::vector<Elem>{0, 1});
}

TEST_CASE("subsemimodule closure") {
  auto c3 = regular_module(chain_semiring(3), Side::left);
  Elem a  = c3->base()->element("1");
  CHECK(subsemimodule_closure(c3, {}).elements() == std::vector<Elem>{0});
  CHECK(subsemimodule_closure(c3, std::vector<Elem>{a}).elements()
        == std::vector<Elem>{0, a});
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  CHECK(subsemimodule_closure(z4, std::vector<Elem>{2}).elements()
        == std::vector<Elem>{0, 2});
}

TEST_CASE("subsemimodule enumeration") {
  auto b = regular_module(boolean_semiring(), Side::left);
  CHECK(enumerate_subsemimodules(b).size() == 2);
  auto c3 = regular_module(chain_semiring(3), Side::left);
  CHECK(label_sets(enumerate_subsemimodules(c3))
        == std::set<std::set<std::string>>{{"0"}, {"0", "1"}, {"0", "1", "2"}});
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  CHECK(label_sets(enumerate_subsemimodules(z4))
        == std::set<std::set<std::string>>{{"0"}, {"0", "2"}, {"0", "1", "2", "3"}});
  for (auto const& id : {"boolean", "chain:4", "truncation:3", "zmod:6"}) {
    auto m = regular_module(catalog_semiring(id), Side::right);
    CHECK(enumerate_subsemimodules(m).size() == brute_subsemimodules(*m));
  }
  auto big = free_semimodule(chain_semiring(3), 3, Side::left).module;
  CHECK_THROWS_AS(enumerate_subsemimodules(big), SizeCapExceeded);
}

TEST_CASE("subtractive closure") {
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  CHECK(is_subtractive(sub(z4, {0, 2})));
  auto n3  = regular_module(truncation_semiring(3), Side::left);
  Elem two = n3->base()->element("2");
  auto l   = SubSemimodule{n3, subset_of(3, std::vector<Elem>{0, two})};
  CHECK(subtractive_closure(l).size() == 3);
  CHECK_FALSE(is_subtractive(l));
  auto c3 = regular_module(chain_semiring(3), Side::left);
  Elem a  = c3->base()->element("1");
  CHECK(is_subtractive(SubSemimodule{c3, subset_of(3, std::vector<Elem>{0, a})}));
}

TEST_CASE("subtractive closure is a closure operator") {
  for (auto const& id : {"boolean", "chain:3", "truncation:3", "zmod:4", "chain:4"}) {
    auto m    = regular_module(catalog_semiring(id), Side::left);
    auto subs = enumerate_subsemimodules(m);
    for (auto const& l : subs) {
      auto c = subtractive_closure(l);
      CHECK(is_subset(l.members, c.members));
      CHECK(is_subsemimodule(*m, c.members));
      CHECK(subtractive_closure(c) == c);
      for (auto const& l2 : subs) {
        if (is_subset(l.members, l2.members)) {
          CHECK(is_subset(c.members, subtractive_closure(l2).members));
        }
      }
    }
  }
}

TEST_CASE("cancellative elements") {
  CHECK(is_cancellative(*regular_module(zmod_semiring(4), Side::left)));
  auto b = cancellative_elements(*regular_module(boolean_semiring(), Side::left));
  CHECK(elements_of(b) == std::vector<Elem>{0});
  auto n = cancellative_elements(*regular_module(truncation_semiring(3), Side::left));
  CHECK(elements_of(n) == std::vector<Elem>{0});
}

TEST_CASE("congruences and quotients") {
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  CHECK(congruence_from_pairs(z4, {}).classes == 4);
  std::vector<std::pair<Elem, Elem>> p{{0, 2}};
  auto c = congruence_from_pairs(z4, p);
  CHECK(c.classes == 2);
  CHECK(c.class_of[0] == c.class_of[2]);
  CHECK(c.class_of[1] == c.class_of[3]);
  auto q = quotient(c);
  CHECK(find_isomorphism(q.module, zmod_over(2, 4, Side::left)).has_value());

  auto b = regular_module(boolean_semiring(), Side::left);
  std::vector<std::pair<Elem, Elem>> all{{0, 1}};
  CHECK(quotient(congruence_from_pairs(b, all)).module->size() == 1);
  CHECK(quotient(congruence_from_pairs(b, {})).module->size() == 2);

  // a partition that is not a congruence
  auto n3   = regular_module(truncation_semiring(3), Side::left);
  auto bad  = make_congruence(n3, std::vector<Elem>{0, 1, 0});
  CHECK_THROWS_AS(quotient(bad), IllDefined);
}

TEST_CASE("Bourne quotients") {
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  auto q  = bourne_quotient(sub(z4, {0, 2}));
  CHECK(find_isomorphism(q.module, zmod_over(2, 4, Side::left)).has_value());

  auto c3 = regular_module(chain_semiring(3), Side::left);
  Elem a  = c3->base()->element("1");
  auto qc = bourne_quotient(SubSemimodule{c3, subset_of(3, std::vector<Elem>{0, a})});
  CHECK(qc.module->size() == 2);
  CHECK(qc.projection(a) == 0);
  CHECK(qc.projection(1) != 0);

  auto n3 = regular_module(truncation_semiring(3), Side::left);
  auto qn = bourne_quotient(
      SubSemimodule{n3, subset_of(3, std::vector<Elem>{0, n3->base()->element("2")})});
  CHECK(qn.module->size() == 1);
}

TEST_CASE("Bourne projection kernels are subtractive closures") {
  for (auto const& id : {"boolean", "chain:3", "truncation:3", "zmod:4", "zmod:6"}) {
    auto m = regular_module(catalog_semiring(id), Side::right);
    for (auto const& l : enumerate_subsemimodules(m)) {
      auto q = bourne_quotient(l);
      auto p = classify_morphism(q.projection);
      CHECK(p.k_normal);
      CHECK(p.i_normal);
      CHECK(p.surjective);
      CHECK(p.kernel == subtractive_closure(l));
    }
  }
}

TEST_CASE("cancellative hulls") {
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  CHECK(cancellative_hull(z4).module->size() == 4);
  CHECK(cancellative_hull(regular_module(boolean_semiring(), Side::left)).module->size()
        == 1);
  CHECK(cancellative_hull(regular_module(truncation_semiring(3), Side::left))
            .module->size()
        == 1);
  for (auto const& id : {"chain:3", "truncation:4", "zmod:6", "product:zmod:3*chain:2"}) {
    auto m = regular_module(catalog_semiring(id), Side::left);
    auto h = cancellative_hull(m);
    CHECK(is_cancellative(*h.module));
    CHECK(cancellative_hull(h.module).module->size() == h.module->size());
  }
}

TEST_CASE("morphism classification") {
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  auto p  = classify_morphism(Morphism::identity(z4));
  CHECK((p.normal && p.injective && p.surjective));

  auto n3  = regular_module(truncation_semiring(3), Side::left);
  Elem two = n3->base()->element("2");
  auto l   = as_module(SubSemimodule{n3, subset_of(3, std::vector<Elem>{0, two})});
  auto pl  = classify_morphism(l.inclusion);
  CHECK(pl.k_normal);
  CHECK_FALSE(pl.i_normal);
  CHECK(pl.image_closure.size() == 3);

  auto z2 = zmod_over(2, 4, Side::left);
  auto r  = Morphism(z4, z2, {0, 1, 0, 1});
  auto pr = classify_morphism(r);
  CHECK((pr.normal && pr.surjective && !pr.injective));
  CHECK(pr.kernel.elements() == std::vector<Elem>{0, 2});

  CHECK_THROWS_AS(Morphism(z4, z2, {0, 1, 1, 1}), IllDefined);
  CHECK_THROWS_AS(Morphism(z4, regular_module(zmod_semiring(4), Side::right), {0, 1, 2, 3}),
                  EndpointMismatch);
}

TEST_CASE("pullbacks") {
  auto z4 = regular_module(zmod_semiring(4), Side::left);
  auto z2 = zmod_over(2, 4, Side::left);
  auto g  = Morphism(z4, z2, {0, 1, 0, 1});
  auto pb = pullback(Morphism::identity(z2), g);
  CHECK(find_isomorphism(pb.module, z4).has_value());
  auto zero = as_module(SubSemimodule{z2, subset_of(2, std::vector<Elem>{0})});
  auto pk   = pullback(zero.inclusion, g);
  CHECK(pk.module->size() == 2);
  CHECK(image(pk.g_prime).elements() == std::vector<Elem>{0, 2});
  CHECK(classify_morphism(pk.g_prime).injective);
}

TEST_CASE("normal generation") {
  auto z4 = regular_module(zmod_semiring(4), Side::right);
  CHECK(is_normally_generated(z4, 1).found);
  auto z2 = zmod_over(2, 4, Side::right);
  auto ng = is_normally_generated(z2, 1);
  CHECK(ng.found);
  CHECK(ng.generators == std::vector<Elem>{1});
  CHECK(is_normally_generated(zero_module(zmod_semiring(4), Side::right), 1).found);
}

TEST_CASE("retracts of free modules") {
  auto z4 = regular_module(zmod_semiring(4), Side::right);
  auto r  = is_retract_of_free(z4, 1);
  CHECK(r.found);
  CHECK(r.rank == 1);
  CHECK(compose(*r.theta, *r.psi) == Morphism::identity(z4));
  CHECK_FALSE(is_retract_of_free(zmod_over(2, 4, Side::right), 2).found);
  CHECK(is_retract_of_free(free_semimodule(boolean_semiring(), 2, Side::right).module, 2)
            .found);
}

TEST_CASE("morphism enumeration matches brute force") {
  auto c3 = regular_module(chain_semiring(3), Side::left);
  auto f2 = free_semimodule(boolean_semiring(), 2, Side::left).module;
  auto b  = regular_module(boolean_semiring(), Side::left);
  for (auto const& [dom, cod] : {std::pair{f2, b}, std::pair{b, f2}, std::pair{f2, f2}}) {
    std::size_t enumerated = 0, brute = 0;
    for_each_morphism(dom, cod, [&](auto const&) { return ++enumerated, true; });
    std::vector<Elem> map(dom->size(), 0);
    std::function<void(Elem)> rec = [&](Elem i) {
      if (i == dom->size()) {
        brute += !linearity_failure(*dom, *cod, map).has_value();
        return;
      }
      for (Elem y = 0; y < cod->size(); ++y) {
        map[i] = y;
        rec(i + 1);
      }
    };
    rec(0);
    CHECK(enumerated == brute);
  }
  (void) c3;
}
