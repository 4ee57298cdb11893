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
#include "semiflat/exactness.hpp"
#include "semiflat/tensor.hpp"
#include "support.hpp"

using namespace semiflat;
using semiflat::testing::sub;
using semiflat::testing::zmod_over;

namespace {
  ModulePtr z4() { return regular_module(zmod_semiring(4), Side::left); }

  Morphism times2(ModulePtr const& m) { return Morphism(m, m, {0, 2, 0, 2}); }

  Morphism inverse(Morphism const& f) {
    std::vector<Elem> inv(f.cod()->size());
    for (Elem x = 0; x < f.dom()->size(); ++x) {
      inv[f(x)] = x;
    }
    return Morphism(f.cod(), f.dom(), inv);
  }

  Morphism forget(Morphism const& f) {
    return Morphism(underlying_monoid(f.dom()), underlying_monoid(f.cod()), f.map());
  }

  bool is_identity(Morphism const& f) {
    for (Elem x = 0; x < f.dom()->size(); ++x) {
      if (f(x) != x) {
        return false;
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("exactness at the first node is injectivity") {
  auto const m   = z4();
  auto const l   = as_module(sub(m, {0, 2}));
  auto const seq = Sequence{{from_zero(l.module), l.inclusion, Morphism::zero(m, m)}};
  auto const v   = classify_sequence(seq);
  REQUIRE(v.nodes.size() == 2);
  CHECK(v.nodes[0].exact);
  CHECK(v.nodes[0].proper_exact);

  // A non-injective map fails at the same node.
  auto const t   = times2(m);
  auto const bad = classify_pair(from_zero(m), t);
  CHECK_FALSE(bad.proper_exact);
  CHECK(bad.proper_witness == Elem{2});
}

TEST_CASE("semi-exact but not proper-exact") {
  auto const n3  = regular_module(truncation_semiring(3), Side::left);
  auto const two = n3->base()->element("2");
  auto const l   = sub(n3, {0, two});
  auto const q   = bourne_quotient(l);
  auto const v   = classify_pair(as_module(l).inclusion, q.projection);
  CHECK(v.chain_complex);
  CHECK(v.semi_exact);
  CHECK_FALSE(v.proper_exact);
  CHECK_FALSE(v.exact);
  CHECK(v.proper_witness == n3->base()->element("1"));
  CHECK(kernel(q.projection).size() == 3);
}

TEST_CASE("multiplication by two on Z/4") {
  auto const m = z4();
  auto const v = classify_pair(times2(m), times2(m));
  CHECK(v.chain_complex);
  CHECK(v.proper_exact);
  CHECK(v.semi_exact);
  CHECK(v.g_k_normal);
  CHECK(v.exact);
}

TEST_CASE("a non-chain complex reports a witness") {
  auto const m  = z4();
  auto const id = Morphism::identity(m);
  auto const v  = classify_pair(id, id);
  CHECK_FALSE(v.chain_complex);
  CHECK(v.chain_witness == Elem{1});
}

TEST_CASE("endpoint mismatch") {
  auto const m = z4();
  auto const n = zmod_over(2, 4, Side::left);
  CHECK_THROWS_AS(classify_pair(Morphism::identity(m), Morphism::identity(n)),
                  EndpointMismatch);
}

TEST_CASE("short exact sequences") {
  auto const m = z4();
  auto const n = zmod_over(2, 4, Side::left);
  auto const l = as_module(sub(m, {0, 2}));
  auto const g = Morphism(m, n, {0, 1, 0, 1});

  auto const v = is_short_exact(l.inclusion, g);
  CHECK(v.holds);
  CHECK(v.f_normal);
  CHECK(v.g_normal);
  REQUIRE(v.kernel_iso.has_value());
  REQUIRE(v.cokernel_iso.has_value());
  CHECK(v.cokernel_iso->dom()->size() == 2);

  auto const four = Sequence{{from_zero(l.module), l.inclusion, g, to_zero(n)}};
  CHECK(is_short_exact(four).holds);
  CHECK_THROWS_AS(is_short_exact(Sequence{{g}}), ShapeError);
}

TEST_CASE("truncated naturals modulo a non-subtractive ideal") {
  auto const n3 = regular_module(truncation_semiring(3), Side::left);
  auto const l  = sub(n3, {0, n3->base()->element("2")});
  auto const v  = is_short_exact(as_module(l).inclusion, bourne_quotient(l).projection);
  CHECK_FALSE(v.holds);
  CHECK(v.f_injective);
  CHECK(v.g_surjective);
  CHECK_FALSE(v.proper_exact);
}

TEST_CASE("split sequences are short exact") {
  auto const s = chain_semiring(3);
  auto const l = regular_module(s, Side::left);
  auto const d = direct_sum(l, regular_module(s, Side::left));
  CHECK(is_short_exact(d.iota_first, d.pi_second).holds);
  CHECK(is_short_exact(from_zero(l), Morphism::identity(l)).holds);
  CHECK(is_short_exact(Morphism::identity(l), to_zero(l)).holds);
}

TEST_CASE("canonical sequences") {
  SUBCASE("Z/4 by {0,2}") {
    auto const m   = z4();
    auto const seq = canonical_ses(sub(m, {0, 2}));
    REQUIRE(seq.maps.size() == 4);
    CHECK(seq.maps[2].cod()->size() == 2);
    CHECK(is_short_exact(seq).holds);
  }
  SUBCASE("chain(3) by {0,a} is Boolean") {
    auto const s   = chain_semiring(3);
    auto const m   = regular_module(s, Side::left);
    auto const seq = canonical_ses(sub(m, {0, s->element("1")}));
    auto const quo = seq.maps[2].cod();
    CHECK(quo->size() == 2);
    CHECK(is_short_exact(seq).holds);
    auto const b = regular_module(boolean_semiring(), Side::left);
    CHECK(underlying_monoid(quo)->same_structure(*underlying_monoid(b)));
  }
  SUBCASE("zero subsemimodule") {
    auto const m   = regular_module(chain_semiring(3), Side::left);
    auto const seq = canonical_ses(sub(m, {0}));
    CHECK(seq.maps[1].dom()->size() == 1);
    CHECK(seq.maps[2].cod()->size() == 3);
    CHECK(is_short_exact(seq).holds);
  }
  SUBCASE("non-subtractive subsemimodule") {
    auto const m = regular_module(truncation_semiring(3), Side::left);
    CHECK_THROWS_AS(canonical_ses(sub(m, {0, m->base()->element("2")})), NotSubtractive);
  }
}

TEST_CASE("induced cokernel maps") {
  auto const m   = z4();
  auto const seq = canonical_ses(sub(m, {0, 2}));
  auto const& i  = seq.maps[1];
  auto const& p  = seq.maps[2];

  SUBCASE("identity diagram") {
    auto const r = induced_cokernel_map(
        {i, p, i, p, Morphism::identity(i.dom()), Morphism::identity(m)});
    CHECK(is_identity(r.h));
    CHECK(r.iso_premise);
    CHECK(r.h_bijective);
    CHECK(r.cancellation_premise);
    CHECK(r.g_injective);
  }
  SUBCASE("isomorphic middle column") {
    auto const g = Morphism(m, m, {0, 3, 2, 1});
    auto const f = Morphism::identity(i.dom());
    auto const r = induced_cokernel_map({i, p, i, p, f, g});
    CHECK(r.iso_premise);
    CHECK(r.h_bijective);
  }
  SUBCASE("non-commuting square") {
    auto const g = Morphism::zero(m, m);
    auto const f = Morphism::identity(i.dom());
    CHECK_THROWS_AS(induced_cokernel_map({i, p, i, p, f, g}), HypothesisFailure);
  }
  SUBCASE("tensoring a pullback by the regular module") {
    // U -> N is the pullback leg over g : M -> N, tensored with S.
    auto const s  = chain_semiring(3);
    auto const mm = regular_module(s, Side::left);
    auto const n  = bourne_quotient(sub(mm, {0, s->element("1")}));
    auto const u  = as_module(sub(n.module, {0}));
    auto const pb = pullback(u.inclusion, n.projection);
    auto const pm = canonical_ses(image(pb.g_prime));
    auto const  top_i = forget(pm.maps[1]);
    auto const  top_p = forget(pm.maps[2]);

    auto const sr  = regular_module(s, Side::right);
    auto const t_l = tensor(sr, pm.maps[1].dom());
    auto const t_m = tensor(sr, pm.maps[1].cod());
    auto const t_q = tensor(sr, pm.maps[2].cod());
    auto const j   = induced_tensor_map(t_l, t_m, pm.maps[1]);
    auto const q   = induced_tensor_map(t_m, t_q, pm.maps[2]);
    auto const f   = inverse(theta_left_module(t_l));
    auto const g   = inverse(theta_left_module(t_m));
    auto const r   = induced_cokernel_map({top_i, top_p, j, q, f, g});
    CHECK(r.iso_premise);
    CHECK(r.h_bijective);
    CHECK(is_identity(compose(theta_left_module(t_q), r.h)));
  }
}
