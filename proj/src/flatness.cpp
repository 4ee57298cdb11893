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


#include "semiflat/flatness.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "semiflat/enumerate.hpp"
#include "semiflat/error.hpp"
#include "semiflat/exactness.hpp"

namespace semiflat {

  char const* to_string(Tri t) noexcept {
    switch (t) {
      case Tri::no: return "false";
      case Tri::yes: return "true";
      case Tri::inconclusive: return "inconclusive";
    }
    return "?";
  }

  Tri tri_and(Tri a, Tri b) noexcept {
    if (a == Tri::no || b == Tri::no) {
      return Tri::no;
    }
    if (a == Tri::inconclusive || b == Tri::inconclusive) {
      return Tri::inconclusive;
    }
    return Tri::yes;
  }

  namespace {
    bool decided(Tri t) { return t != Tri::inconclusive; }

    bool fits(TensorCache const& c, std::size_t f, std::size_t m) {
      return f * m <= c.config().cap;
    }

    // a decided => b decided and equal to yes when a is yes.
    bool implies(Tri a, Tri b) { return a != Tri::yes || b != Tri::no; }

    // Failures win over undecided instances.
    struct Accumulator {
      bool                       failed    = false;
      bool                       undecided = false;
      std::optional<FlatWitness> witness;

      void fail(Subset const& l, std::string reason) {
        if (!failed) {
          failed  = true;
          witness = FlatWitness{elements_of(l), std::move(reason)};
        }
      }
      Tri verdict() const {
        return failed ? Tri::no : undecided ? Tri::inconclusive : Tri::yes;
      }
    };

    std::string collision(Morphism const& h) {
      for (Elem x = 0; x < h.dom()->size(); ++x) {
        for (Elem y = x + 1; y < h.dom()->size(); ++y) {
          if (h(x) == h(y)) {
            return h.dom()->label(x) + " and " + h.dom()->label(y) + " have the same image";
          }
        }
      }
      return "not injective";
    }

    std::string members_label(Semimodule const& m, std::vector<Elem> const& elems) {
      std::string s = "{";
      for (std::size_t k = 0; k < elems.size(); ++k) {
        s += (k ? "," : "") + m.label(elems[k]);
      }
      return s + "}";
    }

    std::string pair_name(ModulePtr const& f, ModulePtr const& m) {
      return f->name() + " vs " + m->name();
    }

    // Closure of `seed` under addition in m.
    Subset additive_closure(Semimodule const& m, Subset seed) {
      seed[0] = true;
      for (bool grew = true; grew;) {
        grew = false;
        for (Elem x = 0; x < m.size(); ++x) {
          for (Elem y = 0; y < m.size() && seed[x]; ++y) {
            if (seed[y] && !seed[m.plus(x, y)]) {
              seed[m.plus(x, y)] = true;
              grew               = true;
            }
          }
        }
      }
      return seed;
    }

    // sub is subtractive inside `within`: m in within, l and m + l in sub
    // force m into sub.
    bool subtractive_within(Semimodule const& m, Subset const& within, Subset const& sub) {
      for (Elem x = 0; x < m.size(); ++x) {
        if (!within[x] || sub[x]) {
          continue;
        }
        for (Elem l = 0; l < m.size(); ++l) {
          if (sub[l] && sub[m.plus(x, l)]) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace

  bool FlatnessVerdict::inclusions_hold() const noexcept {
    return implies(e_flat, i_flat) && implies(m_flat, i_flat);
  }

  FlatnessVerdict flatness_wrt(ModulePtr const& f,
                               ModulePtr const& m,
                               TensorCache&     cache,
                               Route            route) {
    FlatnessVerdict v;
    v.subject = f;
    v.target  = m;
    v.routes.push_back("m,i: injectivity over all subsemimodules");
    if (route != Route::ses) {
      v.routes.push_back("e: normal monomorphism over subtractive subsemimodules");
    }
    if (route != Route::definition) {
      v.routes.push_back("e: tensored canonical short exact sequences");
    }
    auto const& fm = cache.get(f, m);
    Accumulator mf, inf, edef, eses;
    auto undecided = [&](bool subtractive, std::string const& why) {
      mf.undecided = true;
      if (subtractive) {
        inf.undecided = edef.undecided = eses.undecided = true;
      }
      if (v.cause.empty()) {
        v.cause = why;
      }
    };
    for (auto const& l : enumerate_subsemimodules(m)) {
      ++v.subsemimodules;
      bool const sub = is_subtractive(l);
      v.subtractive += sub;
      auto const  inc = as_module(l);
      auto const& fl  = cache.get(f, inc.module);
      if (!fl.certified || !fm.certified) {
        undecided(sub, "uncertified tensor: " + (fl.certified ? fm.failure : fl.failure));
        continue;
      }
      auto const h = cache.tensored(f, inc.inclusion);
      auto const p = classify_morphism(h);
      if (!p.injective) {
        auto const why = "F(x)L -> F(x)M: " + collision(h);
        mf.fail(l.members, why);
        if (sub) {
          inf.fail(l.members, why);
        }
      }
      if (!sub) {
        continue;
      }
      if (route != Route::ses && p.injective && !p.i_normal) {
        edef.fail(l.members,
                  "image of F(x)L is not subtractive; missing "
                      + h.cod()->label(*p.i_witness));
      } else if (route != Route::ses && !p.injective) {
        edef.fail(l.members, "F(x)L -> F(x)M is not injective");
      }
      if (route != Route::definition) {
        auto const  q  = bourne_quotient(l);
        auto const& fq = cache.get(f, q.module);
        if (!fq.certified) {
          eses.undecided = true;
          if (v.cause.empty()) {
            v.cause = "uncertified tensor: " + fq.failure;
          }
          continue;
        }
        auto const fp  = cache.tensored(f, q.projection);
        auto const seq = classify_sequence(Sequence{{from_zero(h.dom()), h, fp, to_zero(fp.cod())}});
        if (!seq.exact) {
          std::size_t node = 0;
          while (node + 1 < seq.nodes.size() && seq.nodes[node].exact) {
            ++node;
          }
          static char const* const where[] = {"F(x)L", "F(x)M", "F(x)(M/L)"};
          eses.fail(l.members, std::string("tensored sequence not exact at ") + where[node]);
        }
      }
    }
    v.m_flat            = mf.verdict();
    v.i_flat            = inf.verdict();
    v.m_witness         = mf.witness;
    v.i_witness         = inf.witness;
    v.e_flat_definition = route == Route::ses ? Tri::inconclusive : edef.verdict();
    v.e_flat_ses        = route == Route::definition ? Tri::inconclusive : eses.verdict();
    if (route == Route::ses) {
      v.e_flat    = v.e_flat_ses;
      v.e_witness = eses.witness;
    } else {
      v.e_flat    = v.e_flat_definition;
      v.e_witness = edef.witness;
    }
    if (route == Route::both && decided(v.e_flat_definition) && decided(v.e_flat_ses)) {
      v.routes_agree = v.e_flat_definition == v.e_flat_ses;
    }
    return v;
  }

  FlatnessVerdict flatness_wrt(ModulePtr const&    f,
                               ModulePtr const&    m,
                               TensorConfig const& config,
                               Route               route) {
    TensorCache cache(config);
    return flatness_wrt(f, m, cache, route);
  }

  std::vector<Subset> left_ideals(SemiringPtr const& s) {
    std::vector<Subset> out;
    for (auto const& i : enumerate_subsemimodules(regular_module(s, Side::left))) {
      out.push_back(i.members);
    }
    return out;
  }

  FlatnessVerdict s_flatness(ModulePtr const& a, TensorCache& cache) {
    if (a->side() != Side::right) {
      throw EndpointMismatch("S-flatness needs a right semimodule");
    }
    auto const      s = regular_module(a->base(), Side::left);
    FlatnessVerdict v;
    v.subject = a;
    v.target  = s;
    v.routes.push_back("theta_I : A(x)I -> AI over left ideals I");
    Accumulator mf, inf, ef;
    for (auto const& ideal : enumerate_subsemimodules(s)) {
      ++v.subsemimodules;
      bool const sub = is_subtractive(ideal);
      v.subtractive += sub;
      auto const& t = cache.get(a, as_module(ideal).module);
      if (!t.certified) {
        mf.undecided = true;
        if (sub) {
          inf.undecided = ef.undecided = true;
        }
        if (v.cause.empty()) {
          v.cause = "uncertified tensor: " + t.failure;
        }
        continue;
      }
      auto const th = theta_ideal(t, ideal);
      if (!th.injective) {
        auto const why = "theta_I is not injective: " + collision(th.theta);
        mf.fail(ideal.members, why);
        if (sub) {
          inf.fail(ideal.members, why);
          ef.fail(ideal.members, why);
        }
      } else if (sub && !th.ai_subtractive) {
        ef.fail(ideal.members,
                "AI = " + members_label(*a, th.ai.elements()) + " is not subtractive in A");
      }
    }
    v.m_flat    = mf.verdict();
    v.i_flat    = inf.verdict();
    v.e_flat    = ef.verdict();
    v.m_witness = mf.witness;
    v.i_witness = inf.witness;
    v.e_witness = ef.witness;

    auto const def   = flatness_wrt(a, s, cache);
    auto       agree = [](Tri x, Tri y) { return !decided(x) || !decided(y) || x == y; };
    v.criterion_agrees = agree(v.m_flat, def.m_flat) && agree(v.i_flat, def.i_flat)
                         && agree(v.e_flat, def.e_flat);
    v.e_flat_definition = def.e_flat_definition;
    v.e_flat_ses        = def.e_flat_ses;
    v.routes_agree      = def.routes_agree;
    if (v.cause.empty()) {
      v.cause = def.cause;
    }
    return v;
  }

  FlatnessVerdict s_flatness(ModulePtr const& a, TensorConfig const& config) {
    TensorCache cache(config);
    return s_flatness(a, cache);
  }

  IdealIntersection ideal_intersection_check(SubSemimodule const& k, Subset const& ideal) {
    auto const& f = *k.parent;
    Subset      ki(f.size(), false), fi(f.size(), false);
    for (Elem s = 0; s < ideal.size(); ++s) {
      if (!ideal[s]) {
        continue;
      }
      for (Elem x = 0; x < f.size(); ++x) {
        fi[f.act(s, x)] = true;
        if (k.members[x]) {
          ki[f.act(s, x)] = true;
        }
      }
    }
    IdealIntersection out;
    out.ki       = additive_closure(f, std::move(ki));
    out.fi       = additive_closure(f, std::move(fi));
    out.k_cap_fi = Subset(f.size(), false);
    for (Elem x = 0; x < f.size(); ++x) {
      out.k_cap_fi[x] = k.members[x] && out.fi[x];
    }
    out.equal = out.k_cap_fi == out.ki;
    return out;
  }

  bool FlatnessSurvey::passed() const {
    return e_implies_i.passed() && m_implies_i.passed() && route_agreement.violations == 0
           && criterion_agreement.violations == 0 && certified.violations == 0
           && free_flat.passed();
  }

  FlatnessSurvey flatness_survey(SemiringPtr const&  base,
                                 std::size_t         bound,
                                 TensorConfig const& config) {
    FlatnessSurvey out;
    out.base                     = base;
    out.bound                    = bound;
    out.e_implies_i.name         = "e-flat => i-flat";
    out.m_implies_i.name         = "m-flat => i-flat";
    out.route_agreement.name     = "e-flat: normal-monomorphism route = sequence route";
    out.criterion_agreement.name = "S-flatness: theta_I criterion = definition";
    out.certified.name           = "tensors certified";
    out.free_flat.name           = "free modules are e-flat and m-flat";

    auto const  targets  = enumerate_semimodules(base, Side::left, bound);
    auto const  subjects = enumerate_semimodules(base, Side::right, bound);
    TensorCache cache(config);
    out.targets = targets.size();

    std::map<std::string, std::size_t> strict_seen;
    auto strict = [&](bool hit, char const* kind, ModulePtr const& f, ModulePtr const& m) {
      if (hit && strict_seen[kind]++ < 3) {
        out.strictness.push_back(std::string(kind) + ": " + pair_name(f, m));
      }
    };

    for (auto const& f : subjects) {
      SubjectClasses cls;
      cls.subject = f;
      for (auto const& m : targets) {
        if (!fits(cache, f->size(), m->size())) {
          out.skipped.push_back(pair_name(f, m));
          continue;
        }
        auto const v  = flatness_wrt(f, m, cache);
        auto const at = pair_name(f, m);
        ++out.pairs;
        out.certified.record(v.cause.empty(), at + " " + v.cause);
        if (!v.cause.empty()) {
          ++out.inconclusive;
        }
        if (decided(v.e_flat) && decided(v.i_flat)) {
          out.e_implies_i.record(implies(v.e_flat, v.i_flat), at);
        }
        if (decided(v.m_flat) && decided(v.i_flat)) {
          out.m_implies_i.record(implies(v.m_flat, v.i_flat), at);
        }
        if (decided(v.e_flat_definition) && decided(v.e_flat_ses)) {
          out.route_agreement.record(v.routes_agree, at);
        }
        cls.m_flat = tri_and(cls.m_flat, v.m_flat);
        cls.i_flat = tri_and(cls.i_flat, v.i_flat);
        cls.e_flat = tri_and(cls.e_flat, v.e_flat);
        strict(v.i_flat == Tri::yes && v.e_flat == Tri::no, "i-not-e", f, m);
        strict(v.i_flat == Tri::yes && v.m_flat == Tri::no, "i-not-m", f, m);
        strict(v.e_flat == Tri::yes && v.m_flat == Tri::no, "e-not-m", f, m);
        strict(v.m_flat == Tri::yes && v.e_flat == Tri::no, "m-not-e", f, m);
      }
      if (fits(cache, f->size(), base->size())) {
        cls.s_flat = s_flatness(f, cache);
        out.criterion_agreement.record(cls.s_flat->criterion_agrees.value_or(true), f->name());
      } else {
        out.skipped.push_back("S-flatness of " + f->name());
      }
      out.subjects.push_back(std::move(cls));
    }

    for (std::size_t rank = 1;; ++rank) {
      std::size_t size = 1;
      for (std::size_t k = 0; k < rank; ++k) {
        size *= base->size();
      }
      // S itself is always surveyed; higher ranks only within the bound.
      if (rank > 1 && size > bound) {
        break;
      }
      auto const free = free_semimodule(base, rank, Side::right).module;
      for (auto const& m : targets) {
        if (!fits(cache, free->size(), m->size())) {
          continue;
        }
        auto const v = flatness_wrt(free, m, cache);
        if (decided(v.e_flat) && decided(v.m_flat)) {
          out.free_flat.record(v.e_flat == Tri::yes && v.m_flat == Tri::yes,
                               pair_name(free, m));
        }
      }
    }
    return out;
  }

  namespace {
    // Flatness verdicts keyed like the tensor cache.
    class VerdictCache {
     public:
      explicit VerdictCache(TensorCache& tensors) : _tensors(tensors) {}

      FlatnessVerdict const& relative(ModulePtr const& f, ModulePtr const& m) {
        Key key{f.get(),
                {m->add_table().begin(), m->add_table().end()},
                {m->action_table().begin(), m->action_table().end()}};
        auto it = _rel.find(key);
        if (it == _rel.end()) {
          it = _rel.emplace(std::move(key), flatness_wrt(f, m, _tensors)).first;
        }
        return it->second;
      }

      FlatnessVerdict const& over_s(ModulePtr const& a) {
        auto it = _s.find(a.get());
        if (it == _s.end()) {
          it = _s.emplace(a.get(), s_flatness(a, _tensors)).first;
        }
        return it->second;
      }

      TensorCache& tensors() { return _tensors; }

     private:
      using Key = std::tuple<Semimodule const*, std::vector<Elem>, std::vector<Elem>>;
      TensorCache&                                      _tensors;
      std::map<Key, FlatnessVerdict>                    _rel;
      std::map<Semimodule const*, FlatnessVerdict>      _s;
    };

    std::array<Tri, 3> kinds(FlatnessVerdict const& v) { return {v.m_flat, v.i_flat, v.e_flat}; }

  }  // namespace

  std::vector<PropertyTally> check_flat_closure(SemiringPtr const&  base,
                                                std::size_t         bound,
                                                TensorConfig const& config) {
    std::vector<PropertyTally> t(7);
    t[0].name = "F1 (+) F2 is M-x-flat iff F1 and F2 are";
    t[1].name = "retracts of M-x-flat modules are M-x-flat";
    t[2].name = "M-x-flat passes to subtractive L <= M";
    t[3].name = "M-m-flat and M-i-flat pass to M/L";
    t[4].name = "F and F/K S-flat with KI subtractive in K give K n FI = KI";
    t[5].name = "K n FI = KI for all I makes F/K S-m-flat";
    t[6].name = "K n FI = KI (and FI subtractive) on subtractive I makes F/K S-i-flat (S-e-flat)";

    TensorCache  tensors(config);
    VerdictCache cache(tensors);
    ModuleFamily right(base, Side::right, bound);
    auto const   targets  = enumerate_semimodules(base, Side::left, bound);
    auto const&  subjects = right.modules();
    auto const   sreg     = regular_module(base, Side::left);
    auto const   ideals   = enumerate_subsemimodules(sreg);

    auto compare = [](PropertyTally& tally, Tri got, Tri want, std::string const& at) {
      if (decided(got) && decided(want)) {
        tally.record(got == want, at);
      }
    };

    // Direct sums of pairs of non-zero modules.
    for (std::size_t a = 0; a < subjects.size(); ++a) {
      for (std::size_t b = a; b < subjects.size(); ++b) {
        auto const& f1 = subjects[a];
        auto const& f2 = subjects[b];
        if (f1->size() < 2 || f2->size() < 2) {
          continue;
        }
        auto const sum = direct_sum(f1, f2).module;
        for (auto const& m : targets) {
          if (!fits(tensors, sum->size(), m->size())) {
            continue;
          }
          auto const whole = kinds(cache.relative(sum, m));
          auto const one   = kinds(cache.relative(f1, m));
          auto const two   = kinds(cache.relative(f2, m));
          for (std::size_t x = 0; x < 3; ++x) {
            compare(t[0], whole[x], tri_and(one[x], two[x]), sum->name() + " vs " + m->name());
          }
        }
      }
    }

    // Retract pairs R -psi-> F -theta-> R with theta . psi = id.
    for (std::size_t r = 0; r < subjects.size(); ++r) {
      for (std::size_t f = 0; f < subjects.size(); ++f) {
        auto const& small = subjects[r];
        auto const& big   = subjects[f];
        if (r == f || small->size() < 2 || small->size() > big->size()) {
          continue;
        }
        bool found = false;
        for (auto const& psi : right.hom(r, f)) {
          if (!classify_morphism(psi).injective) {
            continue;
          }
          // theta must send psi(a) back to a.
          std::vector<std::optional<Elem>> back(big->size());
          for (Elem x = 0; x < small->size(); ++x) {
            back[psi(x)] = x;
          }
          for_each_morphism(
              big,
              small,
              [&](std::vector<Elem> const&) {
                found = true;
                return false;
              },
              [&](Elem x, Elem y) { return !back[x] || *back[x] == y; });
          if (found) {
            break;
          }
        }
        if (!found) {
          continue;
        }
        for (auto const& m : targets) {
          if (!fits(tensors, big->size(), m->size())) {
            continue;
          }
          auto const outer = kinds(cache.relative(big, m));
          auto const inner = kinds(cache.relative(small, m));
          for (std::size_t x = 0; x < 3; ++x) {
            if (outer[x] == Tri::yes && decided(inner[x])) {
              t[1].record(inner[x] == Tri::yes,
                          small->name() + " retract of " + big->name() + " vs " + m->name());
            }
          }
        }
      }
    }

    // Canonical sequences 0 -> L -> M -> M/L -> 0.
    for (auto const& f : subjects) {
      for (auto const& m : targets) {
        if (!fits(tensors, f->size(), m->size())) {
          continue;
        }
        auto const whole = kinds(cache.relative(f, m));
        for (auto const& l : enumerate_subsemimodules(m)) {
          if (!is_subtractive(l)) {
            continue;
          }
          auto const at    = f->name() + " vs " + m->name() + " L=" + members_label(*m, l.elements());
          auto const lower = kinds(cache.relative(f, as_module(l).module));
          auto const upper = kinds(cache.relative(f, bourne_quotient(l).module));
          for (std::size_t x = 0; x < 3; ++x) {
            if (whole[x] == Tri::yes && decided(lower[x])) {
              t[2].record(lower[x] == Tri::yes, at);
            }
          }
          for (std::size_t x = 0; x < 2; ++x) {
            if (whole[x] == Tri::yes && decided(upper[x])) {
              t[3].record(upper[x] == Tri::yes, at);
            }
          }
        }
      }
    }

    // K n FI = KI over subtractive K <= F.
    for (auto const& f : subjects) {
      if (!fits(tensors, f->size(), base->size())) {
        continue;
      }
      auto const& sf = cache.over_s(f);
      for (auto const& k : enumerate_subsemimodules(f)) {
        if (!is_subtractive(k)) {
          continue;
        }
        auto const& sq = cache.over_s(bourne_quotient(k).module);
        auto const  at = f->name() + " K=" + members_label(*f, k.elements());
        bool        all_equal = true, sub_equal = true, sub_fi = true;
        for (auto const& ideal : ideals) {
          auto const r      = ideal_intersection_check(k, ideal.members);
          bool const sub_i  = is_subtractive(ideal);
          bool const ki_sub = subtractive_within(*f, k.members, r.ki);
          all_equal         = all_equal && r.equal;
          if (sub_i) {
            sub_equal = sub_equal && r.equal;
            sub_fi    = sub_fi && is_subtractive(*f, r.fi);
          }
          if (ki_sub && sf.m_flat == Tri::yes && sq.m_flat == Tri::yes) {
            t[4].record(r.equal, at + " I=" + members_label(*sreg, elements_of(ideal.members)));
          } else if (ki_sub && sub_i && sf.i_flat == Tri::yes && sq.i_flat == Tri::yes) {
            t[4].record(r.equal, at);
          }
        }
        if (sf.m_flat == Tri::yes && all_equal && decided(sq.m_flat)) {
          t[5].record(sq.m_flat == Tri::yes, at);
        }
        if (sf.i_flat == Tri::yes && sub_equal && decided(sq.i_flat)) {
          t[6].record(sq.i_flat == Tri::yes, at);
          if (sub_fi && decided(sq.e_flat)) {
            t[6].record(sq.e_flat == Tri::yes, at + " (e)");
          }
        }
      }
    }
    return t;
  }

}  // namespace semiflat
