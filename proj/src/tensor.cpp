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


#include "semiflat/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "semiflat/detail/union_find.hpp"
#include "semiflat/exactness.hpp"

namespace semiflat {

  namespace {
    using Mask = std::uint64_t;

    std::size_t binomial_sum(std::size_t n, std::size_t k, std::size_t limit) {
      std::size_t total = 0, term = 1;
      for (std::size_t i = 0; i <= std::min(n, k); ++i) {
        total += term;
        if (total > limit) {
          return total;
        }
        term = term * (n - i) / (i + 1);
      }
      return total;
    }

    // Generators are the pure tensors (f, m) with f, m non-zero, numbered
    // lexicographically.  A universe element is a set of generators.
    class Engine {
     public:
      Engine(Semimodule const& f, Semimodule const& m, std::size_t cap)
          : _f(f), _m(m), _cols(m.size() - 1), _cap(cap) {
        _gens = (f.size() - 1) * _cols;
      }

      std::size_t gens() const { return _gens; }
      Elem        f_of(std::size_t g) const { return static_cast<Elem>(g / _cols + 1); }
      Elem        m_of(std::size_t g) const { return static_cast<Elem>(g % _cols + 1); }

      std::optional<std::size_t> gen(Elem f, Elem m) const {
        if (f == 0 || m == 0) {
          return std::nullopt;
        }
        return (f - 1) * _cols + (m - 1);
      }

      // Adds generator g to u and merges coordinate-sharing pairs, least
      // pair first, until the result is a set of at most cap generators.
      Mask insert(Mask u, std::size_t g) const {
        Mask const bit = Mask{1} << g;
        if (!(u & bit) && static_cast<std::size_t>(std::popcount(u)) < _cap) {
          return u | bit;
        }
        std::vector<std::size_t> list;
        for (Mask rest = u; rest; rest &= rest - 1) {
          list.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
        }
        list.insert(std::upper_bound(list.begin(), list.end(), g), g);
        while (!settled(list)) {
          merge_least(list);
        }
        Mask out = 0;
        for (auto x : list) {
          out |= Mask{1} << x;
        }
        return out;
      }

     private:
      bool settled(std::vector<std::size_t> const& list) const {
        if (list.size() > _cap) {
          return false;
        }
        return std::adjacent_find(list.begin(), list.end()) == list.end();
      }

      void merge_least(std::vector<std::size_t>& list) const {
        for (std::size_t i = 0; i < list.size(); ++i) {
          for (std::size_t j = i + 1; j < list.size(); ++j) {
            Elem const fa = f_of(list[i]), ma = m_of(list[i]);
            Elem const fb = f_of(list[j]), mb = m_of(list[j]);
            std::optional<std::size_t> merged;
            if (ma == mb) {
              merged = gen(_f.plus(fa, fb), ma);
            } else if (fa == fb) {
              merged = gen(fa, _m.plus(ma, mb));
            } else {
              continue;
            }
            list.erase(list.begin() + static_cast<std::ptrdiff_t>(j));
            list.erase(list.begin() + static_cast<std::ptrdiff_t>(i));
            if (merged) {
              list.insert(std::upper_bound(list.begin(), list.end(), *merged), *merged);
            }
            return;
          }
        }
        // more than cap generators always share a coordinate
        throw std::logic_error("tensor reduction found no mergeable pair");
      }

      Semimodule const& _f;
      Semimodule const& _m;
      std::size_t       _cols;
      std::size_t       _cap;
      std::size_t       _gens = 0;
    };

    std::string pure_label(Semimodule const& f, Semimodule const& m, Elem x, Elem y) {
      return f.label(x) + "(x)" + m.label(y);
    }

    Elem sum_of_pure(TensorProduct const&                       t,
                     std::vector<std::pair<Elem, Elem>> const& terms) {
      Elem acc = 0;
      for (auto [x, y] : terms) {
        acc = t.monoid->plus(acc, t.pure(x, y));
      }
      return acc;
    }

    void check_factors(ModulePtr const& f, ModulePtr const& m) {
      if (f->side() != Side::right || m->side() != Side::left) {
        throw EndpointMismatch("tensor needs a right and a left semimodule");
      }
      if (!f->base()->same_tables(*m->base())) {
        throw EndpointMismatch("tensor factors over different semirings");
      }
    }

    std::string first_pure_failure(TensorProduct const& t) {
      auto const& f = *t.left;
      auto const& m = *t.right;
      auto const& q = *t.monoid;
      for (Elem x = 0; x < f.size(); ++x) {
        if (t.pure(x, 0) != 0) {
          return "pure tensor with zero right factor is non-zero";
        }
      }
      for (Elem y = 0; y < m.size(); ++y) {
        if (t.pure(0, y) != 0) {
          return "pure tensor with zero left factor is non-zero";
        }
      }
      for (Elem x = 0; x < f.size(); ++x) {
        for (Elem x2 = 0; x2 < f.size(); ++x2) {
          for (Elem y = 0; y < m.size(); ++y) {
            if (t.pure(f.plus(x, x2), y) != q.plus(t.pure(x, y), t.pure(x2, y))) {
              return "pure tensors not additive in the left factor";
            }
          }
        }
      }
      for (Elem x = 0; x < f.size(); ++x) {
        for (Elem y = 0; y < m.size(); ++y) {
          for (Elem y2 = 0; y2 < m.size(); ++y2) {
            if (t.pure(x, m.plus(y, y2)) != q.plus(t.pure(x, y), t.pure(x, y2))) {
              return "pure tensors not additive in the right factor";
            }
          }
          for (Elem s = 0; s < f.scalars(); ++s) {
            if (t.pure(f.act(s, x), y) != t.pure(x, m.act(s, y))) {
              return "pure tensors not balanced";
            }
          }
        }
      }
      Subset generated = subset_of(q.size(), t.pure_table);
      generated[0]     = true;
      for (bool grew = true; grew;) {
        grew = false;
        for (Elem a = 0; a < q.size(); ++a) {
          for (Elem b = 0; b < q.size() && generated[a]; ++b) {
            if (generated[b] && !generated[q.plus(a, b)]) {
              generated[q.plus(a, b)] = true;
              grew                    = true;
            }
          }
        }
      }
      if (count(generated) != q.size()) {
        return "monoid not generated by pure tensors";
      }
      return "";
    }
  }  // namespace

  TensorProduct tensor(ModulePtr const& f, ModulePtr const& m, TensorConfig const& config) {
    check_factors(f, m);
    if (f->size() * m->size() > config.cap) {
      throw SizeCapExceeded("tensor product factors", f->size() * m->size(), config.cap);
    }
    std::size_t const cap = std::min(f->size(), m->size()) - 1 + config.slack;
    Engine            engine(*f, *m, cap);
    std::size_t const ng = engine.gens();
    if (ng > 64) {
      throw SizeCapExceeded("tensor generators", ng, 64);
    }
    std::size_t const expected = binomial_sum(ng, cap, config.universe_cap);
    if (expected > config.universe_cap) {
      throw SizeCapExceeded("tensor universe", expected, config.universe_cap);
    }

    // Universe: all generator sets of size <= cap, by size then lexicographically.
    std::vector<Mask>                  universe{0};
    std::unordered_map<Mask, Elem>     index{{0, 0}};
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (std::size_t size = 1; size <= std::min(cap, ng); ++size) {
      std::vector<std::vector<std::size_t>> next;
      for (auto const& combo : frontier) {
        std::size_t const start = combo.empty() ? 0 : combo.back() + 1;
        for (std::size_t g = start; g < ng; ++g) {
          auto c = combo;
          c.push_back(g);
          Mask mask = 0;
          for (auto x : c) {
            mask |= Mask{1} << x;
          }
          index.emplace(mask, static_cast<Elem>(universe.size()));
          universe.push_back(mask);
          next.push_back(std::move(c));
        }
      }
      frontier = std::move(next);
    }
    std::size_t const n = universe.size();

    // translate[g * n + u] is the universe index of u + (generator g).
    std::vector<Elem> translate(ng * n);
    for (std::size_t g = 0; g < ng; ++g) {
      for (Elem u = 0; u < n; ++u) {
        translate[g * n + u] = index.at(engine.insert(universe[u], g));
      }
    }
    auto apply = [&](std::optional<std::size_t> g, Elem u) {
      return g ? translate[*g * n + u] : u;
    };

    detail::UnionFind               uf(n);
    std::deque<std::pair<Elem, Elem>> pending;
    auto relate = [&](Elem a, Elem b) {
      if (a != b) {
        pending.emplace_back(a, b);
      }
    };
    std::size_t const nf = f->size(), nm = m->size(), ns = f->scalars();
    for (Elem y = 1; y < nm; ++y) {
      for (Elem x = 1; x < nf; ++x) {
        for (Elem x2 = x; x2 < nf; ++x2) {
          relate(apply(engine.gen(x2, y), apply(engine.gen(x, y), 0)),
                 apply(engine.gen(f->plus(x, x2), y), 0));
        }
      }
    }
    for (Elem x = 1; x < nf; ++x) {
      for (Elem y = 1; y < nm; ++y) {
        for (Elem y2 = y; y2 < nm; ++y2) {
          relate(apply(engine.gen(x, y2), apply(engine.gen(x, y), 0)),
                 apply(engine.gen(x, m->plus(y, y2)), 0));
        }
        for (Elem s = 0; s < ns; ++s) {
          relate(apply(engine.gen(f->act(s, x), y), 0),
                 apply(engine.gen(x, m->act(s, y)), 0));
        }
      }
    }
    for (Elem u = 0; u < n; ++u) {
      for (std::size_t g = 0; g < ng; ++g) {
        for (std::size_t h = g + 1; h < ng; ++h) {
          relate(translate[h * n + translate[g * n + u]],
                 translate[g * n + translate[h * n + u]]);
        }
      }
    }
    while (!pending.empty()) {
      auto [a, b] = pending.front();
      pending.pop_front();
      if (uf.unite(a, b)) {
        for (std::size_t g = 0; g < ng; ++g) {
          relate(translate[g * n + a], translate[g * n + b]);
        }
      }
    }

    std::size_t q = 0;
    auto const  cls = uf.classes(&q);
    std::vector<Elem> rep(q, UINT32_MAX);
    for (Elem u = 0; u < n; ++u) {
      if (rep[cls[u]] == UINT32_MAX) {
        rep[cls[u]] = u;
      }
    }

    TensorProduct t;
    t.left     = f;
    t.right    = m;
    t.universe = n;
    t.cap_used = cap;
    t.representatives.resize(q);
    std::vector<std::string> labels(q);
    for (Elem c = 0; c < q; ++c) {
      for (Mask rest = universe[rep[c]]; rest; rest &= rest - 1) {
        auto g = static_cast<std::size_t>(std::countr_zero(rest));
        t.representatives[c].emplace_back(engine.f_of(g), engine.m_of(g));
        labels[c] += (labels[c].empty() ? "" : "+")
                     + pure_label(*f, *m, engine.f_of(g), engine.m_of(g));
      }
      if (labels[c].empty()) {
        labels[c] = "0";
      }
    }
    std::vector<Elem> add(q * q);
    for (Elem x = 0; x < q; ++x) {
      for (Elem y = 0; y < q; ++y) {
        Elem u = rep[x];
        for (Mask rest = universe[rep[y]]; rest; rest &= rest - 1) {
          u = translate[static_cast<std::size_t>(std::countr_zero(rest)) * n + u];
        }
        add[x * q + y] = cls[u];
      }
    }
    t.pure_table.assign(nf * nm, 0);
    for (Elem x = 0; x < nf; ++x) {
      for (Elem y = 0; y < nm; ++y) {
        t.pure_table[x * nm + y] = cls[apply(engine.gen(x, y), 0)];
      }
    }

    // Addition is well defined on classes iff translation by each
    // generator is, given an associative table.
    for (std::size_t g = 0; g < ng && t.failure.empty(); ++g) {
      Elem const cg = cls[translate[g * n]];
      for (Elem u = 0; u < n; ++u) {
        if (cls[translate[g * n + u]] != add[cls[u] * q + cg]) {
          t.failure = "quotient addition depends on representatives";
          break;
        }
      }
    }
    if (t.failure.empty()) {
      auto failures = semimodule_axiom_failures(nullptr, Side::none, q, add, {});
      if (!failures.empty()) {
        t.failure = "quotient monoid violates " + failures.front().axiom;
      }
    }
    t.monoid = share(Semimodule::from_normalized(nullptr,
                                                 Side::none,
                                                 q,
                                                 std::move(add),
                                                 {},
                                                 f->name() + "(x)" + m->name(),
                                                 std::move(labels)));
    if (t.failure.empty()) {
      t.failure = first_pure_failure(t);
    }
    t.certified = t.failure.empty();
    return t;
  }

  Morphism induced_tensor_map(TensorProduct const& fl,
                              TensorProduct const& fm,
                              Morphism const&      phi) {
    if (!fl.left->same_structure(*fm.left) || !phi.dom()->same_structure(*fl.right)
        || !phi.cod()->same_structure(*fm.right)) {
      throw EndpointMismatch("induced tensor map endpoints do not match");
    }
    std::vector<Elem> map(fl.size());
    for (Elem c = 0; c < fl.size(); ++c) {
      auto terms = fl.representatives[c];
      for (auto& [x, y] : terms) {
        y = phi(y);
      }
      map[c] = sum_of_pure(fm, terms);
    }
    for (Elem x = 0; x < fl.left->size(); ++x) {
      for (Elem y = 0; y < fl.right->size(); ++y) {
        if (map[fl.pure(x, y)] != fm.pure(x, phi(y))) {
          throw IllDefined("induced tensor map on pure tensors", {x, y});
        }
      }
    }
    return Morphism(fl.monoid, fm.monoid, std::move(map));
  }

  Morphism induced_tensor_map(Morphism const&      psi,
                              TensorProduct const& fm,
                              TensorProduct const& gm) {
    if (!fm.right->same_structure(*gm.right) || !psi.dom()->same_structure(*fm.left)
        || !psi.cod()->same_structure(*gm.left)) {
      throw EndpointMismatch("induced tensor map endpoints do not match");
    }
    std::vector<Elem> map(fm.size());
    for (Elem c = 0; c < fm.size(); ++c) {
      auto terms = fm.representatives[c];
      for (auto& [x, y] : terms) {
        x = psi(x);
      }
      map[c] = sum_of_pure(gm, terms);
    }
    for (Elem x = 0; x < fm.left->size(); ++x) {
      for (Elem y = 0; y < fm.right->size(); ++y) {
        if (map[fm.pure(x, y)] != gm.pure(psi(x), y)) {
          throw IllDefined("induced tensor map on pure tensors", {x, y});
        }
      }
    }
    return Morphism(fm.monoid, gm.monoid, std::move(map));
  }

  namespace {
    Morphism theta_map(TensorProduct const& t,
                       ModulePtr const&     target,
                       bool                 module_on_left) {
      auto const        codomain = underlying_monoid(target);
      std::vector<Elem> map(t.size());
      for (Elem c = 0; c < t.size(); ++c) {
        Elem acc = 0;
        for (auto [x, y] : t.representatives[c]) {
          acc = target->plus(acc, module_on_left ? target->act(y, x) : target->act(x, y));
        }
        map[c] = acc;
      }
      Morphism theta = [&] {
        try {
          return Morphism(t.monoid, codomain, std::move(map));
        } catch (IllDefined const& e) {
          throw CertificationFailure(std::string("theta is not additive: ") + e.what());
        }
      }();
      auto const p = classify_morphism(theta);
      if (!p.injective || !p.surjective) {
        throw CertificationFailure("theta is not bijective on " + t.monoid->name());
      }
      return theta;
    }

    bool is_regular(ModulePtr const& m, Side side) {
      return m->size() == m->scalars()
             && m->same_structure(*regular_module(m->base(), side));
    }
  }  // namespace

  Morphism theta_module(TensorProduct const& ms) {
    if (!is_regular(ms.right, Side::left)) {
      throw BadParams("theta needs S as the right factor");
    }
    return theta_map(ms, ms.left, true);
  }

  Morphism theta_left_module(TensorProduct const& sm) {
    if (!is_regular(sm.left, Side::right)) {
      throw BadParams("theta needs S as the left factor");
    }
    return theta_map(sm, sm.right, false);
  }

  SubSemimodule product_submonoid(ModulePtr const& a, Subset const& ideal) {
    Subset members(a->size(), false);
    members[0] = true;
    for (Elem s = 0; s < ideal.size(); ++s) {
      if (ideal[s]) {
        for (Elem x = 0; x < a->size(); ++x) {
          members[a->act(s, x)] = true;
        }
      }
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (Elem x = 0; x < a->size(); ++x) {
        for (Elem y = 0; y < a->size() && members[x]; ++y) {
          if (members[y] && !members[a->plus(x, y)]) {
            members[a->plus(x, y)] = true;
            grew                   = true;
          }
        }
      }
    }
    return SubSemimodule{a, std::move(members)};
  }

  ThetaIdeal theta_ideal(TensorProduct const& ai, SubSemimodule const& ideal) {
    auto const& a     = ai.left;
    auto const  elems = ideal.elements();
    if (ai.right->size() != elems.size()) {
      throw EndpointMismatch("tensor factor is not the given ideal");
    }
    std::vector<Elem> map(ai.size());
    for (Elem c = 0; c < ai.size(); ++c) {
      Elem acc = 0;
      for (auto [x, k] : ai.representatives[c]) {
        acc = a->plus(acc, a->act(elems[k], x));
      }
      map[c] = acc;
    }
    ThetaIdeal out{Morphism(ai.monoid, underlying_monoid(a), std::move(map)),
                   product_submonoid(a, ideal.members)};
    auto const p = classify_morphism(out.theta);
    if (!(p.image.members == out.ai.members)) {
      throw CertificationFailure("theta_I is not onto AI");
    }
    out.injective      = p.injective;
    out.ai_subtractive = is_subtractive(out.ai);
    return out;
  }

  Quotient takahashi_tensor(TensorProduct const& t) {
    return cancellative_hull(t.monoid);
  }

  std::optional<Morphism> sum_distribution(TensorProduct const& f_sum,
                                           TensorProduct const& fm,
                                           TensorProduct const& fn,
                                           DirectSum const&     sum) {
    auto const        target = direct_sum(fm.monoid, fn.monoid);
    std::size_t const b      = fn.size();
    std::vector<Elem> map(f_sum.size());
    for (Elem c = 0; c < f_sum.size(); ++c) {
      Elem x = 0, y = 0;
      for (auto [u, v] : f_sum.representatives[c]) {
        x = fm.monoid->plus(x, fm.pure(u, sum.pi_first(v)));
        y = fn.monoid->plus(y, fn.pure(u, sum.pi_second(v)));
      }
      map[c] = x * static_cast<Elem>(b) + y;
    }
    if (linearity_failure(*f_sum.monoid, *target.module, map)) {
      return std::nullopt;
    }
    Morphism   h = Morphism::trusted(f_sum.monoid, target.module, std::move(map));
    auto const p = classify_morphism(h);
    if (!p.injective || !p.surjective) {
      return std::nullopt;
    }
    return h;
  }

  OracleReport verify_tensor_oracles(ModulePtr const&    f,
                                     ModulePtr const&    m,
                                     ModulePtr const&    n,
                                     TensorConfig const& config) {
    TensorCache cache(config);
    return verify_tensor_oracles(f, m, n, cache);
  }

  OracleReport verify_tensor_oracles(ModulePtr const& f,
                                     ModulePtr const& m,
                                     ModulePtr const& n,
                                     TensorCache&     cache) {
    OracleReport report;
    auto         get = [&](ModulePtr const& x) -> TensorProduct const& {
      auto const& t = cache.get(f, x);
      report.uncertified += !t.certified;
      return t;
    };
    auto const s = regular_module(f->base(), Side::left);
    try {
      auto const& fs = get(s);
      if (!fs.certified) {
        throw CertificationFailure(fs.failure);
      }
      (void) theta_module(fs);
    } catch (CertificationFailure const& e) {
      report.theta_ok = false;
      report.failures.push_back(std::string("theta: ") + e.what());
    }

    auto const& fm  = get(m);
    auto const& fn  = get(n);
    auto const  sum = direct_sum(m, n);
    if (f->size() * sum.module->size() <= cache.config().cap) {
      auto const& fsum = get(sum.module);
      if (!fsum.certified || !fm.certified || !fn.certified
          || !sum_distribution(fsum, fm, fn, sum)) {
        report.sum_ok = false;
        report.failures.push_back("direct sum distribution");
      }
    } else {
      report.skipped.push_back("direct sum distribution: over tensor cap");
    }

    for (auto const& l : enumerate_subsemimodules(m)) {
      auto const  inc = as_module(l);
      auto const  q   = bourne_quotient(l);
      auto const& fl  = get(inc.module);
      auto const& fq  = get(q.module);
      bool        ok  = fl.certified && fq.certified && fm.certified;
      if (ok) {
        auto const fi = cache.tensored(f, inc.inclusion);
        auto const fp = cache.tensored(f, q.projection);
        ok            = cokernel_iso(fi, fp).has_value();
      }
      if (!ok) {
        report.cokernel_ok = false;
        report.failures.push_back("cokernel preservation at " + inc.module->name());
      }
    }
    return report;
  }

  TensorProduct const& TensorCache::get(ModulePtr const& f, ModulePtr const& m) {
    Key key{f.get(),
            {m->add_table().begin(), m->add_table().end()},
            {m->action_table().begin(), m->action_table().end()}};
    auto it = _cache.find(key);
    if (it == _cache.end()) {
      it = _cache.emplace(std::move(key), tensor(f, m, _config)).first;
    }
    return it->second;
  }

  // Cached tensors may be over structurally equal copies of dom and cod;
  // rebase phi onto them.
  Morphism TensorCache::tensored(ModulePtr const& f, Morphism const& phi) {
    auto const& a = get(f, phi.dom());
    auto const& b = get(f, phi.cod());
    return induced_tensor_map(a, b, Morphism::trusted(a.right, b.right, phi.map()));
  }

}  // namespace semiflat
