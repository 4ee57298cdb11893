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


#include "semiflat/properties.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "semiflat/enumerate.hpp"
#include "semiflat/exactness.hpp"

namespace semiflat {

  void PropertyTally::record(bool holds, std::string const& where) {
    ++instances;
    if (!holds) {
      ++violations;
      if (examples.size() < 5) {
        examples.push_back(where);
      }
    }
  }

  ModuleFamily::ModuleFamily(SemiringPtr base, Side side, std::size_t max_size)
      : _base(base), _side(side), _modules(enumerate_semimodules(base, side, max_size)) {}

  std::vector<ModulePtr> ModuleFamily::up_to(std::size_t size) const {
    std::vector<ModulePtr> out;
    for (auto const& m : _modules) {
      if (m->size() <= size) {
        out.push_back(m);
      }
    }
    return out;
  }

  std::vector<Morphism> const& ModuleFamily::hom(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    auto it  = _hom.find(key);
    if (it == _hom.end()) {
      std::vector<Morphism> maps;
      for_each_morphism(_modules[i], _modules[j], [&](std::vector<Elem> const& map) {
        maps.push_back(Morphism::trusted(_modules[i], _modules[j], map));
        return true;
      });
      it = _hom.emplace(key, std::move(maps)).first;
    }
    return it->second;
  }

  namespace {
    std::string describe(Morphism const& f) {
      std::ostringstream out;
      out << f.dom()->name() << "->" << f.cod()->name() << " [";
      for (std::size_t i = 0; i < f.map().size(); ++i) {
        out << (i ? " " : "") << f.map()[i];
      }
      out << "]";
      return out.str();
    }

    std::string describe(Morphism const& f, Morphism const& g) {
      return describe(f) + " ; " + describe(g);
    }

    std::vector<std::size_t> indices_up_to(ModuleFamily const& fam, std::size_t size) {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < fam.modules().size(); ++i) {
        if (fam.modules()[i]->size() <= size) {
          out.push_back(i);
        }
      }
      return out;
    }

    bool is_normal_epi(MorphismProfile const& p) { return p.surjective && p.normal; }

    // Rows A' -i-> A -p-> A'' that are semi-exact at A with p a normal
    // epimorphism: Bourne projections by every subsemimodule, and kernels
    // of normal epimorphisms onto family members.
    struct Row {
      Morphism i, p;
    };

    std::vector<Row> rows_at(ModuleFamily& fam, std::size_t a, std::size_t outer) {
      std::vector<Row> rows;
      auto const&      m = fam.modules()[a];
      for (auto const& l : enumerate_subsemimodules(m)) {
        auto inc = as_module(l);
        rows.push_back(Row{inc.inclusion, bourne_quotient(l).projection});
      }
      for (auto n : indices_up_to(fam, outer)) {
        for (auto const& p : fam.hom(a, n)) {
          if (is_normal_epi(classify_morphism(p))) {
            rows.push_back(Row{as_module(kernel(p)).inclusion, p});
          }
        }
      }
      return rows;
    }
  }  // namespace

  std::vector<PropertyTally> check_exactness_characterizations(ModuleFamily&      fam,
                                                               SweepConfig const& cfg) {
    std::vector<PropertyTally> t(9);
    t[0].name = "0->L->M exact iff f injective";
    t[1].name = "M->N->0 exact iff g surjective";
    t[2].name = "0->L->M->N proper-exact with f normal iff L = Ker g";
    t[3].name = "0->L->M->N semi-exact with f normal iff L = Ker g";
    t[4].name = "0->L->M->N exact iff L = Ker g and g k-normal";
    t[5].name = "L->M->N->0 semi-exact with g normal iff N = M/f(L)";
    t[6].name = "L->M->N->0 exact iff N = M/f(L) and f i-normal";
    t[7].name = "0->L->M->N->0 exact iff L = Ker g and N = M/L";
    t[8].name = "short exact iff f injective, f(L) = Ker g, g k-normal epi; then f, g normal";
    auto const outer = indices_up_to(fam, cfg.outer_size);
    auto const mids  = indices_up_to(fam, cfg.max_size);
    for (auto li : outer) {
      for (auto mi : mids) {
        for (auto ni : outer) {
          for (auto const& f : fam.hom(li, mi)) {
            auto const pf = classify_morphism(f);
            auto const zl = classify_pair(from_zero(f.dom()), f);
            for (auto const& g : fam.hom(mi, ni)) {
              auto const pg   = classify_morphism(g);
              auto const mid  = classify_pair(f, g);
              auto const zn   = classify_pair(g, to_zero(g.cod()));
              bool const kiso = kernel_iso(f, g).has_value();
              bool const ciso = cokernel_iso(f, g).has_value();
              auto const at   = describe(f, g);
              t[0].record(zl.exact == pf.injective, at);
              t[1].record(zn.exact == pg.surjective, at);
              t[2].record((zl.proper_exact && mid.proper_exact && pf.normal) == kiso, at);
              t[3].record((zl.semi_exact && mid.semi_exact && pf.normal) == kiso, at);
              t[4].record((zl.exact && mid.exact) == (kiso && pg.k_normal), at);
              t[5].record((mid.semi_exact && zn.semi_exact && pg.normal) == ciso, at);
              t[6].record((mid.exact && zn.exact) == (ciso && pf.i_normal), at);
              bool const ses = zl.exact && mid.exact && zn.exact;
              t[7].record(ses == (kiso && ciso), at);
              bool const direct
                  = pf.injective && pf.image == pg.kernel && pg.surjective && pg.k_normal;
              bool consistent = ses == direct && (!ses || (pf.normal && pg.normal));
              if (ses) {
                consistent = consistent && is_short_exact(f, g).holds;
              }
              t[8].record(consistent, at);
            }
          }
        }
      }
    }
    return t;
  }

  std::vector<PropertyTally> check_composition_normality(ModuleFamily&      fam,
                                                         SweepConfig const& cfg) {
    std::vector<PropertyTally> t(6);
    t[0].name = "g injective: f k-normal iff g.f k-normal";
    t[1].name = "g injective: g.f i-normal (normal) implies f i-normal (normal)";
    t[2].name = "g injective and i-normal: f i-normal (normal) iff g.f is";
    t[3].name = "f surjective: g i-normal iff g.f i-normal";
    t[4].name = "f surjective: g.f k-normal (normal) implies g k-normal (normal)";
    t[5].name = "f surjective and k-normal: g k-normal (normal) iff g.f is";
    auto const outer = indices_up_to(fam, cfg.outer_size);
    auto const mids  = indices_up_to(fam, cfg.max_size);
    for (auto li : outer) {
      for (auto mi : mids) {
        for (auto ni : outer) {
          for (auto const& f : fam.hom(li, mi)) {
            auto const pf = classify_morphism(f);
            for (auto const& g : fam.hom(mi, ni)) {
              auto const pg  = classify_morphism(g);
              auto const pgf = classify_morphism(compose(g, f));
              auto const at  = describe(f, g);
              if (pg.injective) {
                t[0].record(pf.k_normal == pgf.k_normal, at);
                t[1].record((!pgf.i_normal || pf.i_normal) && (!pgf.normal || pf.normal), at);
                if (pg.i_normal) {
                  t[2].record(pf.i_normal == pgf.i_normal && pf.normal == pgf.normal, at);
                }
              }
              if (pf.surjective) {
                t[3].record(pg.i_normal == pgf.i_normal, at);
                t[4].record((!pgf.k_normal || pg.k_normal) && (!pgf.normal || pg.normal), at);
                if (pf.k_normal) {
                  t[5].record(pg.k_normal == pgf.k_normal && pg.normal == pgf.normal, at);
                }
              }
            }
          }
        }
      }
    }
    return t;
  }

  PropertyTally check_sum_normality(ModuleFamily& fam, SweepConfig const& cfg) {
    PropertyTally t;
    t.name = "f (+) g normal (k-, i-normal) iff f and g are";
    std::vector<Morphism> maps;
    auto const            outer = indices_up_to(fam, cfg.sum_size);
    for (auto i : outer) {
      for (auto j : outer) {
        for (auto const& f : fam.hom(i, j)) {
          maps.push_back(f);
        }
      }
    }
    std::vector<MorphismProfile> profiles;
    for (auto const& f : maps) {
      profiles.push_back(classify_morphism(f));
    }
    for (std::size_t a = 0; a < maps.size(); ++a) {
      for (std::size_t b = 0; b < maps.size(); ++b) {
        auto const& pa = profiles[a];
        auto const& pb = profiles[b];
        auto const  ps = classify_morphism(direct_sum_map(maps[a], maps[b]));
        t.record(ps.normal == (pa.normal && pb.normal)
                     && ps.k_normal == (pa.k_normal && pb.k_normal)
                     && ps.i_normal == (pa.i_normal && pb.i_normal),
                 describe(maps[a], maps[b]));
      }
    }
    return t;
  }

  PropertyTally check_pullback_claims(ModuleFamily& fam, SweepConfig const& cfg) {
    PropertyTally t;
    t.name = "pullback of U <= N along g: g' injective, normal when U subtractive";
    for (auto mi : indices_up_to(fam, cfg.max_size)) {
      for (auto ni : indices_up_to(fam, cfg.outer_size)) {
        for (auto const& g : fam.hom(mi, ni)) {
          auto const pg = classify_morphism(g);
          if (!pg.surjective || !pg.k_normal) {
            continue;
          }
          for (auto const& u : enumerate_subsemimodules(g.cod())) {
            auto const inc = as_module(u);
            auto const pb  = pullback(inc.inclusion, g);
            auto const pp  = classify_morphism(pb.g_prime);
            bool ok = pp.injective
                      && compose(g, pb.g_prime) == compose(inc.inclusion, pb.iota_prime);
            if (is_subtractive(u)) {
              ok = ok && pp.normal;
            }
            t.record(ok, describe(g) + " U=" + inc.module->name());
          }
        }
      }
    }
    return t;
  }

  std::vector<PropertyTally> check_cokernel_maps(ModuleFamily&      fam,
                                                 SweepConfig const& cfg) {
    std::vector<PropertyTally> t(4);
    t[0].name = "induced cokernel map exists, commutes and is unique";
    t[1].name = "q normal epi, f onto, g injective: h injective";
    t[2].name = "q normal epi, f onto, g bijective: h bijective";
    t[3].name = "A, B cancellative, j, f, h injective: g injective";
    auto const                              outer = indices_up_to(fam, cfg.outer_size);
    std::map<std::size_t, std::vector<Row>> rows;
    for (auto a : outer) {
      rows.emplace(a, rows_at(fam, a, cfg.outer_size));
    }
    for (auto a : outer) {
      for (auto b : outer) {
        for (auto const& g : fam.hom(a, b)) {
          for (auto const& top : rows.at(a)) {
            for (auto const& bottom : rows.at(b)) {
              // f is g restricted to A'; it exists when g(A') lies in B'
              std::vector<Elem> preimage(bottom.i.cod()->size(), UINT32_MAX);
              for (Elem x = 0; x < bottom.i.dom()->size(); ++x) {
                preimage[bottom.i(x)] = x;
              }
              std::vector<Elem> fmap(top.i.dom()->size());
              bool              fits = true;
              for (Elem x = 0; x < fmap.size() && fits; ++x) {
                fmap[x] = preimage[g(top.i(x))];
                fits    = fmap[x] != UINT32_MAX;
              }
              if (!fits) {
                continue;
              }
              auto const f  = Morphism::trusted(top.i.dom(), bottom.i.dom(), std::move(fmap));
              auto const at = describe(g) + " rows " + describe(top.i, top.p) + " / "
                              + describe(bottom.i, bottom.p);
              try {
                auto const r = induced_cokernel_map({top.i, top.p, bottom.i, bottom.p, f, g});
                t[0].record(compose(r.h, top.p) == compose(bottom.p, g), at);
                if (r.injectivity_premise) {
                  t[1].record(r.h_injective, at);
                }
                if (r.iso_premise) {
                  t[2].record(r.h_bijective, at);
                }
                if (r.cancellation_premise) {
                  t[3].record(r.g_injective, at);
                }
              } catch (Error const& e) {
                t[0].record(false, at + ": " + e.what());
              }
            }
          }
        }
      }
    }
    return t;
  }


  std::vector<PropertyTally> check_tensor_right_exactness(ModuleFamily&      left,
                                                          ModuleFamily&      right,
                                                          SweepConfig const& cfg) {
    std::vector<PropertyTally> t(4);
    t[0].name = "G (x) g is a normal epimorphism for normal epimorphisms g";
    t[1].name = "semi-exact L->M->N->0 with g normal stays so after G (x) -";
    t[2].name = "exact L->M->N->0 with G (x) f i-normal stays exact";
    t[3].name = "tensors in the sweep certified";
    TensorCache cache(cfg.tensor);
    for (auto const& g : right.modules()) {
      for (std::size_t mi = 0; mi < left.modules().size(); ++mi) {
        auto const& m = left.modules()[mi];
        if (m->size() > cfg.max_size || g->size() * m->size() > cfg.tensor.cap) {
          continue;
        }
        for (auto const& row : rows_at(left, mi, cfg.outer_size)) {
          auto const at = g->name() + " (x) " + describe(row.i, row.p);
          auto const& tl = cache.get(g, row.i.dom());
          auto const& tm = cache.get(g, row.i.cod());
          auto const& tn = cache.get(g, row.p.cod());
          bool const  certified = tl.certified && tm.certified && tn.certified;
          t[3].record(certified, at);
          if (!certified) {
            continue;
          }
          auto const gi  = cache.tensored(g, row.i);
          auto const gp  = cache.tensored(g, row.p);
          auto const pgp = classify_morphism(gp);
          t[0].record(is_normal_epi(pgp), at);
          auto const node = classify_pair(gi, gp);
          auto const end  = classify_pair(gp, to_zero(gp.cod()));
          t[1].record(node.semi_exact && end.semi_exact && pgp.normal, at);
          if (classify_pair(row.i, row.p).exact && classify_morphism(gi).i_normal) {
            t[2].record(node.exact && end.exact, at);
          }
        }
      }
    }
    return t;
  }

  std::vector<PropertyTally> exactness_suite(SemiringPtr const& base,
                                             SweepConfig const& cfg) {
    auto const    size = std::max(cfg.max_size, cfg.outer_size);
    ModuleFamily  left(base, Side::left, size);
    ModuleFamily  right(base, Side::right, size);
    std::vector<PropertyTally> out;
    auto append = [&out](std::vector<PropertyTally> v) {
      for (auto& t : v) {
        out.push_back(std::move(t));
      }
    };
    append(check_exactness_characterizations(left, cfg));
    append(check_composition_normality(left, cfg));
    out.push_back(check_sum_normality(left, cfg));
    out.push_back(check_pullback_claims(left, cfg));
    append(check_cokernel_maps(left, cfg));
    append(check_tensor_right_exactness(left, right, cfg));
    return out;
  }

}  // namespace semiflat
