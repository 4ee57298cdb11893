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


#include "semiflat/exactness.hpp"

#include <algorithm>

namespace semiflat {

  namespace {
    bool same_object(ModulePtr const& a, ModulePtr const& b) {
      return a == b || a->same_structure(*b);
    }

    bool bijective(Morphism const& f) {
      auto p = classify_morphism(f);
      return p.injective && p.surjective;
    }

    std::optional<Elem> first_difference(Subset const& a, Subset const& b) {
      for (Elem e = 0; e < a.size(); ++e) {
        if (a[e] != b[e]) {
          return e;
        }
      }
      return std::nullopt;
    }
  }  // namespace

  NodeVerdict classify_pair(Morphism const& f, Morphism const& g) {
    if (!same_object(f.cod(), g.dom())) {
      throw EndpointMismatch("sequence maps do not compose");
    }
    NodeVerdict v;
    for (Elem l = 0; l < f.dom()->size(); ++l) {
      if (g(f(l)) != 0) {
        v.chain_witness = l;
        break;
      }
    }
    v.chain_complex    = !v.chain_witness;
    auto const img     = image(f);
    auto const ker     = kernel(g);
    auto const closure = subtractive_closure(img);
    v.proper_witness   = first_difference(img.members, ker.members);
    v.semi_witness     = first_difference(closure.members, ker.members);
    v.proper_exact     = !v.proper_witness;
    v.semi_exact       = !v.semi_witness;
    v.k_witness        = classify_morphism(g).k_witness;
    v.g_k_normal       = !v.k_witness;
    v.exact            = v.proper_exact && v.g_k_normal;
    return v;
  }

  SequenceVerdict classify_sequence(Sequence const& seq) {
    SequenceVerdict out;
    for (std::size_t i = 0; i + 1 < seq.maps.size(); ++i) {
      auto v = classify_pair(seq.maps[i], seq.maps[i + 1]);
      out.chain_complex &= v.chain_complex;
      out.proper_exact &= v.proper_exact;
      out.semi_exact &= v.semi_exact;
      out.exact &= v.exact;
      out.nodes.push_back(std::move(v));
    }
    return out;
  }

  Morphism from_zero(ModulePtr const& target) {
    return Morphism::zero(zero_module(target->base(), target->side()), target);
  }

  Morphism to_zero(ModulePtr const& source) {
    return Morphism::zero(source, zero_module(source->base(), source->side()));
  }

  std::optional<Morphism> kernel_iso(Morphism const& f, Morphism const& g) {
    if (!same_object(f.cod(), g.dom())) {
      throw EndpointMismatch("sequence maps do not compose");
    }
    auto const ker = kernel(g);
    auto const inc = as_module(ker);
    auto const pf  = classify_morphism(f);
    if (!pf.injective || !(pf.image == ker)) {
      return std::nullopt;
    }
    std::vector<Elem> index(f.cod()->size(), 0);
    auto const        elems = ker.elements();
    for (Elem i = 0; i < elems.size(); ++i) {
      index[elems[i]] = i;
    }
    std::vector<Elem> map(f.dom()->size());
    for (Elem l = 0; l < map.size(); ++l) {
      map[l] = index[f(l)];
    }
    return Morphism(f.dom(), inc.module, std::move(map));
  }

  std::optional<Morphism> cokernel_iso(Morphism const& f, Morphism const& g) {
    if (!same_object(f.cod(), g.dom())) {
      throw EndpointMismatch("sequence maps do not compose");
    }
    auto const        q = bourne_quotient(image(f));
    std::size_t const n = q.module->size();
    constexpr Elem    unset = UINT32_MAX;
    std::vector<Elem> map(n, unset);
    for (Elem m = 0; m < g.dom()->size(); ++m) {
      Elem& slot = map[q.projection(m)];
      if (slot == unset) {
        slot = g(m);
      } else if (slot != g(m)) {
        return std::nullopt;
      }
    }
    Morphism h(q.module, g.cod(), std::move(map));
    if (!bijective(h)) {
      return std::nullopt;
    }
    return h;
  }

  ShortExactVerdict is_short_exact(Morphism const& f, Morphism const& g) {
    if (!same_object(f.cod(), g.dom())) {
      throw EndpointMismatch("sequence maps do not compose");
    }
    ShortExactVerdict v;
    auto const        pf = classify_morphism(f);
    auto const        pg = classify_morphism(g);
    v.f_injective        = pf.injective;
    v.proper_exact       = pf.image == pg.kernel;
    v.g_surjective       = pg.surjective;
    v.g_k_normal         = pg.k_normal;
    v.f_normal           = pf.normal;
    v.g_normal           = pg.normal;
    v.holds = v.f_injective && v.proper_exact && v.g_surjective && v.g_k_normal;
    if (v.holds) {
      v.kernel_iso   = kernel_iso(f, g);
      v.cokernel_iso = cokernel_iso(f, g);
      if (!v.f_normal || !v.g_normal || !v.kernel_iso || !v.cokernel_iso) {
        throw CertificationFailure(
            "short exact sequence without normal maps or canonical isomorphisms");
      }
    }
    return v;
  }

  ShortExactVerdict is_short_exact(Sequence const& seq) {
    auto const& m = seq.maps;
    if (m.size() == 2) {
      return is_short_exact(m[0], m[1]);
    }
    if (m.size() != 4 || m[0].dom()->size() != 1 || m[3].cod()->size() != 1) {
      throw ShapeError("expected 0 -> L -> M -> N -> 0");
    }
    if (!same_object(m[0].cod(), m[1].dom()) || !same_object(m[2].cod(), m[3].dom())) {
      throw EndpointMismatch("sequence maps do not compose");
    }
    return is_short_exact(m[1], m[2]);
  }

  Sequence canonical_ses(SubSemimodule const& l) {
    if (!is_subtractive(l)) {
      throw NotSubtractive("canonical sequence needs a subtractive subsemimodule");
    }
    auto inc = as_module(l);
    auto q   = bourne_quotient(l);
    return Sequence{{from_zero(inc.module), inc.inclusion, q.projection, to_zero(q.module)}};
  }

  InducedCokernelMap induced_cokernel_map(CokernelDiagram const& d) {
    if (!same_object(d.i.cod(), d.p.dom()) || !same_object(d.j.cod(), d.q.dom())
        || !same_object(d.f.dom(), d.i.dom()) || !same_object(d.f.cod(), d.j.dom())
        || !same_object(d.g.dom(), d.i.cod()) || !same_object(d.g.cod(), d.j.cod())) {
      throw EndpointMismatch("diagram objects do not match");
    }
    if (compose(d.g, d.i) != compose(d.j, d.f)) {
      throw HypothesisFailure("left square does not commute");
    }
    if (!classify_pair(d.i, d.p).semi_exact) {
      throw HypothesisFailure("first row is not semi-exact");
    }
    if (!classify_pair(d.j, d.q).semi_exact) {
      throw HypothesisFailure("second row is not semi-exact");
    }
    auto const pp = classify_morphism(d.p);
    if (!pp.surjective || !pp.normal) {
      throw HypothesisFailure("p is not a normal epimorphism");
    }
    constexpr Elem    unset = UINT32_MAX;
    std::vector<Elem> map(d.p.cod()->size(), unset);
    std::vector<Elem> first(map.size(), unset);
    for (Elem a = 0; a < d.p.dom()->size(); ++a) {
      Elem const image = d.q(d.g(a));
      Elem&      slot  = map[d.p(a)];
      if (slot == unset) {
        slot           = image;
        first[d.p(a)] = a;
      } else if (slot != image) {
        throw IllDefined("induced cokernel map", {first[d.p(a)], a});
      }
    }
    InducedCokernelMap out;
    out.h = Morphism(d.p.cod(), d.q.cod(), std::move(map));

    auto const pq = classify_morphism(d.q);
    auto const pf = classify_morphism(d.f);
    auto const pg = classify_morphism(d.g);
    auto const ph = classify_morphism(out.h);
    auto const pj = classify_morphism(d.j);
    out.h_injective = ph.injective;
    out.h_bijective = ph.injective && ph.surjective;
    out.g_injective = pg.injective;
    out.injectivity_premise
        = pq.surjective && pq.normal && pf.surjective && pg.injective;
    out.iso_premise = out.injectivity_premise && pg.surjective;
    out.cancellation_premise = is_cancellative(*d.g.dom()) && is_cancellative(*d.g.cod())
                               && pj.injective && pf.injective && ph.injective;
    return out;
  }

}  // namespace semiflat
