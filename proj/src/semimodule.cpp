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


#include "semiflat/semimodule.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "semiflat/detail/union_find.hpp"

namespace semiflat {

  char const* to_string(Side side) noexcept {
    switch (side) {
      case Side::left: return "left";
      case Side::right: return "right";
      case Side::none: return "monoid";
    }
    return "?";
  }

  std::vector<Elem> elements_of(Subset const& s) {
    std::vector<Elem> out;
    for (Elem e = 0; e < s.size(); ++e) {
      if (s[e]) {
        out.push_back(e);
      }
    }
    return out;
  }

  Subset subset_of(std::size_t n, std::span<Elem const> elems) {
    Subset out(n, false);
    for (auto e : elems) {
      out.at(e) = true;
    }
    return out;
  }

  std::size_t count(Subset const& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
  }

  bool is_subset(Subset const& a, Subset const& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] && !b[i]) {
        return false;
      }
    }
    return true;
  }

  namespace {
    std::vector<std::string> numeric_labels(std::size_t n) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::to_string(i));
      }
      return out;
    }

    std::vector<Elem> flatten(Semimodule::Rows const& rows,
                              std::size_t             width,
                              std::size_t             bound,
                              char const*             what) {
      std::vector<Elem> out;
      for (auto const& row : rows) {
        if (row.size() != width) {
          throw SizeMismatch(std::string(what) + " row has wrong length");
        }
        for (auto e : row) {
          if (e >= bound) {
            throw SizeMismatch(std::string(what) + " entry out of range");
          }
          out.push_back(e);
        }
      }
      return out;
    }

    bool same_semiring(SemiringPtr const& a, SemiringPtr const& b) {
      if (a == b) {
        return true;
      }
      return a && b && a->same_tables(*b);
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Semimodule
  ////////////////////////////////////////////////////////////////////////

  std::vector<AxiomFailure> semimodule_axiom_failures(Semiring const*       base,
                                                      Side                  side,
                                                      std::size_t           n,
                                                      std::span<Elem const> add,
                                                      std::span<Elem const> action) {
    std::vector<AxiomFailure> out;
    auto P = [&](Elem a, Elem b) { return add[a * n + b]; };
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        if (P(a, b) != P(b, a)) {
          out.push_back({"additive-commutativity", {a, b}});
          goto identity;
        }
      }
    }
  identity:
    for (Elem a = 0; a < n; ++a) {
      if (P(0, a) != a) {
        out.push_back({"additive-identity", {a}});
        break;
      }
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        for (Elem c = 0; c < n; ++c) {
          if (P(P(a, b), c) != P(a, P(b, c))) {
            out.push_back({"additive-associativity", {a, b, c}});
            goto scalars;
          }
        }
      }
    }
  scalars:
    if (side == Side::none || base == nullptr) {
      return out;
    }
    std::size_t const k   = base->size();
    auto              act = [&](Elem s, Elem m) { return action[s * n + m]; };
    auto              first = [&](char const* axiom, auto&& holds) {
      for (Elem s = 0; s < k; ++s) {
        for (Elem t = 0; t < k; ++t) {
          for (Elem m = 0; m < n; ++m) {
            if (!holds(s, t, m)) {
              out.push_back({axiom, {s, t, m}});
              return;
            }
          }
        }
      }
    };
    for (Elem m = 0; m < n; ++m) {
      if (act(Semiring::one(), m) != m) {
        out.push_back({"unitality", {m}});
        break;
      }
    }
    for (Elem m = 0; m < n; ++m) {
      if (act(Semiring::zero(), m) != 0) {
        out.push_back({"zero-scalar", {m}});
        break;
      }
    }
    for (Elem s = 0; s < k; ++s) {
      if (act(s, 0) != 0) {
        out.push_back({"zero-element", {s}});
        break;
      }
    }
    first("scalar-distributivity", [&](Elem s, Elem t, Elem m) {
      return act(base->plus(s, t), m) == P(act(s, m), act(t, m));
    });
    for (Elem s = 0; s < k; ++s) {
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          if (act(s, P(a, b)) != P(act(s, a), act(s, b))) {
            out.push_back({"element-distributivity", {s, a, b}});
            goto compat;
          }
        }
      }
    }
  compat:
    first("action-compatibility", [&](Elem s, Elem t, Elem m) {
      Elem const st = base->times(s, t);
      return side == Side::left ? act(st, m) == act(s, act(t, m))
                                : act(st, m) == act(t, act(s, m));
    });
    return out;
  }

  Semimodule Semimodule::from_tables(SemiringPtr base,
                                     Side        side,
                                     Rows const& add,
                                     Rows const& action,
                                     std::string name) {
    std::size_t const n = add.size();
    if (n == 0) {
      throw SizeMismatch("a semimodule needs at least one element");
    }
    if (side != Side::none && !base) {
      throw BadParams("a semimodule needs a base semiring");
    }
    std::size_t const k = side == Side::none ? 0 : base->size();
    if (action.size() != k) {
      throw SizeMismatch("action table needs one row per scalar");
    }
    auto flat_add    = flatten(add, n, n, "addition");
    auto flat_action = flatten(action, n, n, "action");

    // Move the additive identity to index 0.
    std::optional<Elem> zero;
    for (Elem e = 0; e < n && !zero; ++e) {
      bool neutral = true;
      for (Elem x = 0; x < n && neutral; ++x) {
        neutral = flat_add[e * n + x] == x && flat_add[x * n + e] == x;
      }
      if (neutral) {
        zero = e;
      }
    }
    if (!zero) {
      throw AxiomViolation("additive-identity", {});
    }
    std::vector<Elem> order{*zero}, inverse(n);
    for (Elem e = 0; e < n; ++e) {
      if (e != *zero) {
        order.push_back(e);
      }
    }
    for (Elem i = 0; i < n; ++i) {
      inverse[order[i]] = i;
    }
    std::vector<Elem> norm_add(n * n), norm_action(k * n);
    for (Elem i = 0; i < n; ++i) {
      for (Elem j = 0; j < n; ++j) {
        norm_add[i * n + j] = inverse[flat_add[order[i] * n + order[j]]];
      }
      for (Elem s = 0; s < k; ++s) {
        norm_action[s * n + i] = inverse[flat_action[s * n + order[i]]];
      }
    }
    auto failures
        = semimodule_axiom_failures(base.get(), side, n, norm_add, norm_action);
    if (!failures.empty()) {
      auto w = failures.front().witness;
      // report element witnesses in the caller's numbering
      if (failures.front().axiom.find("additive") == 0
          || failures.front().axiom == "unitality"
          || failures.front().axiom == "zero-scalar") {
        for (auto& e : w) {
          e = order[e];
        }
      }
      throw AxiomViolation(failures.front().axiom, w);
    }
    std::vector<std::string> labels;
    for (auto e : order) {
      labels.push_back(std::to_string(e));
    }
    return from_normalized(std::move(base),
                           side,
                           n,
                           std::move(norm_add),
                           std::move(norm_action),
                           std::move(name),
                           std::move(labels));
  }

  Semimodule Semimodule::monoid(Rows const& add, std::string name) {
    return from_tables(nullptr, Side::none, add, {}, std::move(name));
  }

  Semimodule Semimodule::from_normalized(SemiringPtr              base,
                                         Side                     side,
                                         std::size_t              n,
                                         std::vector<Elem>        add,
                                         std::vector<Elem>        action,
                                         std::string              name,
                                         std::vector<std::string> labels) {
    Semimodule m;
    m._base   = side == Side::none ? nullptr : std::move(base);
    m._side   = side;
    m._n      = n;
    m._add    = std::move(add);
    m._action = side == Side::none ? std::vector<Elem>{} : std::move(action);
    m._name   = std::move(name);
    m._labels = labels.empty() ? numeric_labels(n) : std::move(labels);
    return m;
  }

  bool Semimodule::compatible_with(Semimodule const& other) const noexcept {
    if (_side != other._side) {
      return false;
    }
    return _side == Side::none || same_semiring(_base, other._base);
  }

  bool Semimodule::same_structure(Semimodule const& other) const noexcept {
    return compatible_with(other) && _n == other._n && _add == other._add
           && _action == other._action;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphism
  ////////////////////////////////////////////////////////////////////////

  std::optional<AxiomFailure> linearity_failure(Semimodule const&     dom,
                                                Semimodule const&     cod,
                                                std::span<Elem const> map) {
    if (map.size() != dom.size()) {
      return AxiomFailure{"totality", {}};
    }
    for (Elem e = 0; e < dom.size(); ++e) {
      if (map[e] >= cod.size()) {
        return AxiomFailure{"range", {e}};
      }
    }
    if (map[0] != 0) {
      return AxiomFailure{"preserves-zero", {0}};
    }
    for (Elem a = 0; a < dom.size(); ++a) {
      for (Elem b = a; b < dom.size(); ++b) {
        if (map[dom.plus(a, b)] != cod.plus(map[a], map[b])) {
          return AxiomFailure{"additivity", {a, b}};
        }
      }
    }
    for (Elem s = 0; s < dom.scalars(); ++s) {
      for (Elem a = 0; a < dom.size(); ++a) {
        if (map[dom.act(s, a)] != cod.act(s, map[a])) {
          return AxiomFailure{"scalar-compatibility", {s, a}};
        }
      }
    }
    return std::nullopt;
  }

  Morphism::Morphism(ModulePtr dom, ModulePtr cod, std::vector<Elem> map)
      : _dom(std::move(dom)), _cod(std::move(cod)), _map(std::move(map)) {
    if (!_dom->compatible_with(*_cod)) {
      throw EndpointMismatch("morphism between incompatible structures");
    }
    if (auto failure = linearity_failure(*_dom, *_cod, _map)) {
      throw IllDefined("map is not linear: " + failure->axiom, failure->witness);
    }
  }

  Morphism Morphism::trusted(ModulePtr dom, ModulePtr cod, std::vector<Elem> map) {
    Morphism f;
    f._dom = std::move(dom);
    f._cod = std::move(cod);
    f._map = std::move(map);
    return f;
  }

  Morphism Morphism::identity(ModulePtr m) {
    std::vector<Elem> map(m->size());
    for (Elem e = 0; e < map.size(); ++e) {
      map[e] = e;
    }
    return trusted(m, m, std::move(map));
  }

  Morphism Morphism::zero(ModulePtr dom, ModulePtr cod) {
    if (!dom->compatible_with(*cod)) {
      throw EndpointMismatch("zero map between incompatible structures");
    }
    std::vector<Elem> map(dom->size(), 0);
    return trusted(std::move(dom), std::move(cod), std::move(map));
  }

  Morphism compose(Morphism const& g, Morphism const& f) {
    if (f.cod() != g.dom() && !f.cod()->same_structure(*g.dom())) {
      throw EndpointMismatch("cannot compose: codomain differs from domain");
    }
    std::vector<Elem> map(f.dom()->size());
    for (Elem e = 0; e < map.size(); ++e) {
      map[e] = g(f(e));
    }
    return Morphism::trusted(f.dom(), g.cod(), std::move(map));
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  ModulePtr regular_module(SemiringPtr base, Side side) {
    if (side == Side::none) {
      throw BadParams("regular module needs a side");
    }
    std::size_t const n = base->size();
    std::vector<Elem> add(base->add_table().begin(), base->add_table().end());
    std::vector<Elem> action(n * n);
    for (Elem s = 0; s < n; ++s) {
      for (Elem m = 0; m < n; ++m) {
        action[s * n + m] = side == Side::left ? base->times(s, m) : base->times(m, s);
      }
    }
    auto labels = base->labels();
    auto name   = std::string(side == Side::left ? "left:" : "right:") + base->name();
    return share(Semimodule::from_normalized(std::move(base),
                                             side,
                                             n,
                                             std::move(add),
                                             std::move(action),
                                             std::move(name),
                                             std::move(labels)));
  }

  ModulePtr underlying_monoid(ModulePtr const& m) {
    if (m->is_plain_monoid()) {
      return m;
    }
    return share(Semimodule::from_normalized(nullptr,
                                             Side::none,
                                             m->size(),
                                             {m->add_table().begin(), m->add_table().end()},
                                             {},
                                             m->name(),
                                             m->labels()));
  }

  ModulePtr zero_module(SemiringPtr base, Side side) {
    std::size_t const k = side == Side::none ? 0 : base->size();
    return share(Semimodule::from_normalized(
        std::move(base), side, 1, {0}, std::vector<Elem>(k, 0), "0", {"0"}));
  }

  FreeModule free_semimodule(SemiringPtr base,
                             std::size_t rank,
                             Side        side,
                             std::size_t cap) {
    if (side == Side::none) {
      throw BadParams("free module needs a side");
    }
    std::size_t const k = base->size();
    std::size_t       n = 1;
    for (std::size_t i = 0; i < rank; ++i) {
      n *= k;
      if (n > cap) {
        throw SizeCapExceeded("free semimodule", n, cap);
      }
    }
    auto digits = [&](std::size_t code) {
      std::vector<Elem> out(rank);
      for (std::size_t i = rank; i-- > 0;) {
        out[i] = static_cast<Elem>(code % k);
        code /= k;
      }
      return out;
    };
    auto encode = [&](std::vector<Elem> const& d) {
      std::size_t code = 0;
      for (auto x : d) {
        code = code * k + x;
      }
      return static_cast<Elem>(code);
    };
    std::vector<std::vector<Elem>> coords(n);
    for (std::size_t c = 0; c < n; ++c) {
      coords[c] = digits(c);
    }
    std::vector<Elem>        add(n * n), action(k * n), tmp(rank);
    std::vector<std::string> labels(n);
    for (Elem a = 0; a < n; ++a) {
      std::string lbl = "(";
      for (std::size_t i = 0; i < rank; ++i) {
        lbl += (i ? "," : "") + base->label(coords[a][i]);
      }
      labels[a] = lbl + ")";
      for (Elem b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < rank; ++i) {
          tmp[i] = base->plus(coords[a][i], coords[b][i]);
        }
        add[a * n + b] = encode(tmp);
      }
      for (Elem s = 0; s < k; ++s) {
        for (std::size_t i = 0; i < rank; ++i) {
          tmp[i] = side == Side::left ? base->times(s, coords[a][i])
                                      : base->times(coords[a][i], s);
        }
        action[s * n + a] = encode(tmp);
      }
    }
    FreeModule out;
    out.module = share(Semimodule::from_normalized(
        base,
        side,
        n,
        std::move(add),
        std::move(action),
        "free:" + std::to_string(rank) + ":" + to_string(side) + ":" + base->name(),
        std::move(labels)));
    auto s = regular_module(base, side);
    for (std::size_t i = 0; i < rank; ++i) {
      std::vector<Elem> inj(k), proj(n);
      for (Elem x = 0; x < k; ++x) {
        std::vector<Elem> d(rank, 0);
        d[i]   = x;
        inj[x] = encode(d);
      }
      for (Elem a = 0; a < n; ++a) {
        proj[a] = coords[a][i];
      }
      out.injections.push_back(Morphism::trusted(s, out.module, std::move(inj)));
      out.projections.push_back(Morphism::trusted(out.module, s, std::move(proj)));
    }
    return out;
  }

  DirectSum direct_sum(ModulePtr const& m, ModulePtr const& n, std::size_t cap) {
    if (!m->compatible_with(*n)) {
      throw EndpointMismatch("direct sum of incompatible structures");
    }
    std::size_t const a = m->size(), b = n->size(), size = a * b;
    if (size > cap) {
      throw SizeCapExceeded("direct sum", size, cap);
    }
    std::size_t const k = m->scalars();
    std::vector<Elem> add(size * size), action(k * size);
    std::vector<std::string> labels(size);
    for (Elem x = 0; x < size; ++x) {
      labels[x] = "(" + m->label(x / b) + "," + n->label(x % b) + ")";
      for (Elem y = 0; y < size; ++y) {
        add[x * size + y] = m->plus(x / b, y / b) * b + n->plus(x % b, y % b);
      }
      for (Elem s = 0; s < k; ++s) {
        action[s * size + x] = m->act(s, x / b) * b + n->act(s, x % b);
      }
    }
    auto sum = share(Semimodule::from_normalized(m->base(),
                                                 m->side(),
                                                 size,
                                                 std::move(add),
                                                 std::move(action),
                                                 "(" + m->name() + "+" + n->name() + ")",
                                                 std::move(labels)));
    std::vector<Elem> i1(a), i2(b), p1(size), p2(size);
    for (Elem x = 0; x < a; ++x) {
      i1[x] = x * b;
    }
    for (Elem y = 0; y < b; ++y) {
      i2[y] = y;
    }
    for (Elem z = 0; z < size; ++z) {
      p1[z] = z / b;
      p2[z] = z % b;
    }
    return DirectSum{sum,
                     Morphism::trusted(m, sum, std::move(i1)),
                     Morphism::trusted(n, sum, std::move(i2)),
                     Morphism::trusted(sum, m, std::move(p1)),
                     Morphism::trusted(sum, n, std::move(p2))};
  }

  Morphism direct_sum_map(Morphism const& f, Morphism const& g) {
    auto dom = direct_sum(f.dom(), g.dom());
    auto cod = direct_sum(f.cod(), g.cod());
    std::size_t const b = g.dom()->size(), d = g.cod()->size();
    std::vector<Elem> map(dom.module->size());
    for (Elem z = 0; z < map.size(); ++z) {
      map[z] = f(z / b) * d + g(z % b);
    }
    return Morphism::trusted(dom.module, cod.module, std::move(map));
  }

  ////////////////////////////////////////////////////////////////////////
  // Subsemimodules
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void close_in_place(Semimodule const& m, Subset& members) {
      std::vector<Elem> list = elements_of(members);
      if (!members[0]) {
        members[0] = true;
        list.push_back(0);
      }
      std::deque<Elem> todo(list.begin(), list.end());
      auto add = [&](Elem e) {
        if (!members[e]) {
          members[e] = true;
          list.push_back(e);
          todo.push_back(e);
        }
      };
      while (!todo.empty()) {
        Elem x = todo.front();
        todo.pop_front();
        for (std::size_t i = 0; i < list.size(); ++i) {
          add(m.plus(x, list[i]));
        }
        for (Elem s = 0; s < m.scalars(); ++s) {
          add(m.act(s, x));
        }
      }
    }
  }  // namespace

  bool is_subsemimodule(Semimodule const& m, Subset const& s) {
    if (s.size() != m.size() || !s[0]) {
      return false;
    }
    for (Elem a = 0; a < m.size(); ++a) {
      if (!s[a]) {
        continue;
      }
      for (Elem b = 0; b < m.size(); ++b) {
        if (s[b] && !s[m.plus(a, b)]) {
          return false;
        }
      }
      for (Elem t = 0; t < m.scalars(); ++t) {
        if (!s[m.act(t, a)]) {
          return false;
        }
      }
    }
    return true;
  }

  SubSemimodule subsemimodule_closure(ModulePtr const& m, std::span<Elem const> seed) {
    Subset members = subset_of(m->size(), seed);
    close_in_place(*m, members);
    return SubSemimodule{m, std::move(members)};
  }

  SubSemimodule whole(ModulePtr const& m) {
    return SubSemimodule{m, Subset(m->size(), true)};
  }

  std::vector<SubSemimodule> enumerate_subsemimodules(ModulePtr const& m,
                                                      std::size_t      cap) {
    if (m->size() > cap) {
      throw SizeCapExceeded("subsemimodule enumeration", m->size(), cap);
    }
    std::set<Subset>   seen;
    std::deque<Subset> todo;
    Subset             bottom(m->size(), false);
    close_in_place(*m, bottom);
    seen.insert(bottom);
    todo.push_back(bottom);
    while (!todo.empty()) {
      Subset current = todo.front();
      todo.pop_front();
      for (Elem e = 0; e < m->size(); ++e) {
        if (current[e]) {
          continue;
        }
        Subset next = current;
        next[e]     = true;
        close_in_place(*m, next);
        if (seen.insert(next).second) {
          todo.push_back(std::move(next));
        }
      }
    }
    std::vector<SubSemimodule> out;
    for (auto const& s : seen) {
      out.push_back(SubSemimodule{m, s});
    }
    std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
      auto cx = count(x.members), cy = count(y.members);
      if (cx != cy) {
        return cx < cy;
      }
      return elements_of(x.members) < elements_of(y.members);
    });
    return out;
  }

  Inclusion as_module(SubSemimodule const& l) {
    auto const&       m     = *l.parent;
    std::vector<Elem> elems = l.elements();
    std::vector<Elem> index(m.size(), 0);
    for (Elem i = 0; i < elems.size(); ++i) {
      index[elems[i]] = i;
    }
    std::size_t const n = elems.size(), k = m.scalars();
    std::vector<Elem> add(n * n), action(k * n);
    std::vector<std::string> labels;
    for (Elem i = 0; i < n; ++i) {
      labels.push_back(m.label(elems[i]));
      for (Elem j = 0; j < n; ++j) {
        add[i * n + j] = index[m.plus(elems[i], elems[j])];
      }
      for (Elem s = 0; s < k; ++s) {
        action[s * n + i] = index[m.act(s, elems[i])];
      }
    }
    std::string name = "sub(" + m.name() + "){";
    for (std::size_t i = 0; i < n; ++i) {
      name += (i ? "," : "") + m.label(elems[i]);
    }
    auto sub = share(Semimodule::from_normalized(m.base(),
                                                 m.side(),
                                                 n,
                                                 std::move(add),
                                                 std::move(action),
                                                 name + "}",
                                                 std::move(labels)));
    return Inclusion{sub, Morphism::trusted(sub, l.parent, elems)};
  }

  Subset subtractive_closure(Semimodule const& m, Subset const& l) {
    Subset            out(m.size(), false);
    std::vector<Elem> members = elements_of(l);
    for (Elem x = 0; x < m.size(); ++x) {
      for (auto a : members) {
        if (l[m.plus(x, a)]) {
          out[x] = true;
          break;
        }
      }
    }
    return out;
  }

  SubSemimodule subtractive_closure(SubSemimodule const& l) {
    return SubSemimodule{l.parent, subtractive_closure(*l.parent, l.members)};
  }

  bool is_subtractive(Semimodule const& m, Subset const& l) {
    return subtractive_closure(m, l) == l;
  }

  bool is_subtractive(SubSemimodule const& l) {
    return is_subtractive(*l.parent, l.members);
  }

  Subset cancellative_elements(Semimodule const& m) {
    Subset out(m.size(), true);
    for (Elem x = 0; x < m.size(); ++x) {
      std::vector<bool> hit(m.size(), false);
      for (Elem y = 0; y < m.size(); ++y) {
        Elem v = m.plus(x, y);
        if (hit[v]) {
          out[x] = false;
          break;
        }
        hit[v] = true;
      }
    }
    return out;
  }

  bool is_cancellative(Semimodule const& m) {
    auto k = cancellative_elements(m);
    return std::all_of(k.begin(), k.end(), [](bool b) { return b; });
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruences and quotients
  ////////////////////////////////////////////////////////////////////////

  Congruence make_congruence(ModulePtr const& m, std::span<Elem const> class_of) {
    std::map<Elem, Elem> renumber;
    Congruence           c{m, std::vector<Elem>(class_of.size()), 0};
    for (Elem e = 0; e < class_of.size(); ++e) {
      auto [it, fresh] = renumber.emplace(class_of[e], static_cast<Elem>(renumber.size()));
      c.class_of[e]    = it->second;
    }
    c.classes = renumber.size();
    return c;
  }

  Congruence congruence_from_pairs(ModulePtr const&                       m,
                                   std::span<std::pair<Elem, Elem> const> pairs) {
    detail::UnionFind                 uf(m->size());
    std::deque<std::pair<Elem, Elem>> todo;
    auto merge = [&](Elem a, Elem b) {
      if (uf.unite(a, b)) {
        todo.emplace_back(a, b);
      }
    };
    for (auto [a, b] : pairs) {
      merge(a, b);
    }
    while (!todo.empty()) {
      auto [a, b] = todo.front();
      todo.pop_front();
      for (Elem t = 0; t < m->size(); ++t) {
        merge(m->plus(a, t), m->plus(b, t));
      }
      for (Elem s = 0; s < m->scalars(); ++s) {
        merge(m->act(s, a), m->act(s, b));
      }
    }
    std::size_t n = 0;
    auto        classes = uf.classes(&n);
    return Congruence{m, std::vector<Elem>(classes.begin(), classes.end()), n};
  }

  Quotient quotient(Congruence const& c) {
    auto const&       m = *c.parent;
    std::size_t const q = c.classes, k = m.scalars();
    std::vector<Elem> rep(q, UINT32_MAX);
    std::vector<std::string> labels(q);
    for (Elem e = 0; e < m.size(); ++e) {
      auto cls = c.class_of[e];
      if (rep[cls] == UINT32_MAX) {
        rep[cls] = e;
      }
      labels[cls] += (labels[cls].empty() ? "[" : ",") + m.label(e);
    }
    for (auto& l : labels) {
      l += "]";
    }
    std::vector<Elem> add(q * q), action(k * q);
    for (Elem x = 0; x < q; ++x) {
      for (Elem y = 0; y < q; ++y) {
        add[x * q + y] = c.class_of[m.plus(rep[x], rep[y])];
      }
      for (Elem s = 0; s < k; ++s) {
        action[s * q + x] = c.class_of[m.act(s, rep[x])];
      }
    }
    for (Elem a = 0; a < m.size(); ++a) {
      for (Elem b = 0; b < m.size(); ++b) {
        if (add[c.class_of[a] * q + c.class_of[b]] != c.class_of[m.plus(a, b)]) {
          throw IllDefined("quotient addition", {a, b});
        }
      }
      for (Elem s = 0; s < k; ++s) {
        if (action[s * q + c.class_of[a]] != c.class_of[m.act(s, a)]) {
          throw IllDefined("quotient action", {s, a});
        }
      }
    }
    auto module = share(Semimodule::from_normalized(m.base(),
                                                    m.side(),
                                                    q,
                                                    std::move(add),
                                                    std::move(action),
                                                    m.name() + "/~",
                                                    std::move(labels)));
    return Quotient{module, Morphism::trusted(c.parent, module, c.class_of)};
  }

  Quotient bourne_quotient(SubSemimodule const& l) {
    auto const&       m = *l.parent;
    detail::UnionFind uf(m.size());
    std::vector<Elem> first(m.size(), UINT32_MAX);
    auto const        members = l.elements();
    for (Elem x = 0; x < m.size(); ++x) {
      for (auto a : members) {
        Elem v = m.plus(x, a);
        if (first[v] == UINT32_MAX) {
          first[v] = x;
        } else {
          uf.unite(first[v], x);
        }
      }
    }
    std::size_t n = 0;
    auto        classes = uf.classes(&n);
    auto        q = quotient(Congruence{l.parent, {classes.begin(), classes.end()}, n});
    return q;
  }

  Quotient cancellative_hull(ModulePtr const& m) {
    detail::UnionFind uf(m->size());
    for (Elem k = 0; k < m->size(); ++k) {
      std::vector<Elem> first(m->size(), UINT32_MAX);
      for (Elem x = 0; x < m->size(); ++x) {
        Elem v = m->plus(x, k);
        if (first[v] == UINT32_MAX) {
          first[v] = x;
        } else {
          uf.unite(first[v], x);
        }
      }
    }
    std::size_t n = 0;
    auto        classes = uf.classes(&n);
    return quotient(Congruence{m, {classes.begin(), classes.end()}, n});
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphism classification
  ////////////////////////////////////////////////////////////////////////

  SubSemimodule kernel(Morphism const& f) {
    Subset k(f.dom()->size(), false);
    for (Elem e = 0; e < k.size(); ++e) {
      k[e] = f(e) == 0;
    }
    return SubSemimodule{f.dom(), std::move(k)};
  }

  SubSemimodule image(Morphism const& f) {
    Subset im(f.cod()->size(), false);
    for (auto e : f.map()) {
      im[e] = true;
    }
    return SubSemimodule{f.cod(), std::move(im)};
  }

  namespace {
    std::optional<std::pair<Elem, Elem>> k_normal_witness(Morphism const& f,
                                                          Subset const&   ker) {
      auto const&       m    = *f.dom();
      auto const        kers = elements_of(ker);
      std::size_t const n    = m.size();
      std::vector<std::vector<bool>> shifted(n);
      auto shifts = [&](Elem x) -> std::vector<bool> const& {
        if (shifted[x].empty()) {
          shifted[x].assign(n, false);
          for (auto k : kers) {
            shifted[x][m.plus(x, k)] = true;
          }
        }
        return shifted[x];
      };
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = a + 1; b < n; ++b) {
          if (f(a) != f(b)) {
            continue;
          }
          auto const& sb = shifts(b);
          bool        ok = false;
          for (auto k : kers) {
            if (sb[m.plus(a, k)]) {
              ok = true;
              break;
            }
          }
          if (!ok) {
            return std::make_pair(a, b);
          }
        }
      }
      return std::nullopt;
    }
  }  // namespace

  bool is_k_normal(Morphism const& f) {
    return !k_normal_witness(f, kernel(f).members).has_value();
  }

  MorphismProfile classify_morphism(Morphism const& f) {
    MorphismProfile p;
    p.kernel        = kernel(f);
    p.image         = image(f);
    p.image_closure = subtractive_closure(p.image);
    p.surjective    = count(p.image.members) == f.cod()->size();
    p.injective     = count(p.image.members) == f.dom()->size();
    p.k_witness     = k_normal_witness(f, p.kernel.members);
    p.k_normal      = !p.k_witness.has_value();
    for (Elem e = 0; e < f.cod()->size(); ++e) {
      if (p.image_closure.members[e] && !p.image.members[e]) {
        p.i_witness = e;
        break;
      }
    }
    p.i_normal = !p.i_witness.has_value();
    p.normal   = p.k_normal && p.i_normal;
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pullbacks
  ////////////////////////////////////////////////////////////////////////

  Pullback pullback(Morphism const& iota, Morphism const& g) {
    if (iota.cod() != g.cod() && !iota.cod()->same_structure(*g.cod())) {
      throw EndpointMismatch("pullback needs a common codomain");
    }
    auto const& u = *iota.dom();
    auto const& m = *g.dom();
    Pullback    out;
    std::map<std::pair<Elem, Elem>, Elem> index;
    for (Elem x = 0; x < u.size(); ++x) {
      for (Elem y = 0; y < m.size(); ++y) {
        if (iota(x) == g(y)) {
          index.emplace(std::make_pair(x, y), static_cast<Elem>(out.pairs.size()));
          out.pairs.emplace_back(x, y);
        }
      }
    }
    std::size_t const n = out.pairs.size(), k = m.scalars();
    std::vector<Elem> add(n * n), action(k * n), to_u(n), to_m(n);
    std::vector<std::string> labels(n);
    for (Elem a = 0; a < n; ++a) {
      auto [ua, ma] = out.pairs[a];
      labels[a]     = "(" + u.label(ua) + "," + m.label(ma) + ")";
      to_u[a]       = ua;
      to_m[a]       = ma;
      for (Elem b = 0; b < n; ++b) {
        auto [ub, mb]  = out.pairs[b];
        add[a * n + b] = index.at({u.plus(ua, ub), m.plus(ma, mb)});
      }
      for (Elem s = 0; s < k; ++s) {
        action[s * n + a] = index.at({u.act(s, ua), m.act(s, ma)});
      }
    }
    out.module     = share(Semimodule::from_normalized(m.base(),
                                                   m.side(),
                                                   n,
                                                   std::move(add),
                                                   std::move(action),
                                                   "pullback",
                                                   std::move(labels)));
    out.iota_prime = Morphism::trusted(out.module, iota.dom(), std::move(to_u));
    out.g_prime    = Morphism::trusted(out.module, g.dom(), std::move(to_m));
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphism search
  ////////////////////////////////////////////////////////////////////////

  std::vector<Elem> generating_set(Semimodule const& m) {
    std::vector<Elem> gens;
    Subset            span(m.size(), false);
    close_in_place(m, span);
    for (Elem e = 0; e < m.size(); ++e) {
      if (!span[e]) {
        gens.push_back(e);
        span[e] = true;
        close_in_place(m, span);
      }
    }
    return gens;
  }

  namespace {
    // Extends an assignment on generators to all of dom; false on conflict.
    bool extend(Semimodule const&        dom,
                Semimodule const&        cod,
                std::vector<Elem> const& gens,
                std::vector<Elem> const& images,
                std::vector<Elem>&       val) {
      constexpr Elem unset = UINT32_MAX;
      val.assign(dom.size(), unset);
      std::vector<Elem> known;
      auto assign = [&](Elem x, Elem y) {
        if (val[x] == unset) {
          val[x] = y;
          known.push_back(x);
          return true;
        }
        return val[x] == y;
      };
      assign(0, 0);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!assign(gens[i], images[i])) {
          return false;
        }
      }
      for (std::size_t i = 0; i < known.size(); ++i) {
        Elem const x = known[i];
        for (std::size_t j = 0; j <= i; ++j) {
          Elem const y = known[j];
          if (!assign(dom.plus(x, y), cod.plus(val[x], val[y]))) {
            return false;
          }
        }
        for (Elem s = 0; s < dom.scalars(); ++s) {
          if (!assign(dom.act(s, x), cod.act(s, val[x]))) {
            return false;
          }
        }
      }
      return known.size() == dom.size();
    }
  }  // namespace

  void for_each_morphism(
      ModulePtr const&                                     dom,
      ModulePtr const&                                     cod,
      std::function<bool(std::vector<Elem> const&)> const& visit,
      std::function<bool(Elem, Elem)> const&               allowed) {
    if (!dom->compatible_with(*cod)) {
      throw EndpointMismatch("morphism search between incompatible structures");
    }
    auto const gens = generating_set(*dom);
    std::vector<std::vector<Elem>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (Elem y = 0; y < cod->size(); ++y) {
        if (!allowed || allowed(gens[i], y)) {
          candidates[i].push_back(y);
        }
      }
      if (candidates[i].empty()) {
        return;
      }
    }
    std::vector<std::size_t> pos(gens.size(), 0);
    std::vector<Elem>        images(gens.size()), val;
    while (true) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        images[i] = candidates[i][pos[i]];
      }
      if (extend(*dom, *cod, gens, images, val)
          && !linearity_failure(*dom, *cod, val)) {
        bool ok = true;
        if (allowed) {
          for (Elem e = 0; e < dom->size() && ok; ++e) {
            ok = allowed(e, val[e]);
          }
        }
        if (ok && !visit(val)) {
          return;
        }
      }
      std::size_t i = 0;
      for (; i < gens.size(); ++i) {
        if (++pos[i] < candidates[i].size()) {
          break;
        }
        pos[i] = 0;
      }
      if (i == gens.size()) {
        return;
      }
    }
  }

  namespace {
    // Linear map S^k -> M sending the i-th basis vector to gens[i].
    Morphism from_free(FreeModule const&        free,
                       ModulePtr const&         m,
                       std::vector<Elem> const& gens) {
      auto const&       f = *free.module;
      std::vector<Elem> map(f.size());
      std::size_t const k = m->scalars();
      for (Elem x = 0; x < f.size(); ++x) {
        Elem acc = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          Elem coord = free.projections[i](x);
          acc        = m->plus(acc, m->act(coord, gens[i]));
        }
        map[x] = acc;
      }
      (void) k;
      return Morphism::trusted(free.module, m, std::move(map));
    }

    // Calls visit on every non-decreasing tuple of length len over [0, n).
    template <typename F>
    bool for_each_multiset(std::size_t n, std::size_t len, F&& visit) {
      std::vector<Elem> t(len, 0);
      if (len == 0) {
        return visit(t);
      }
      if (n == 0) {
        return true;
      }
      while (true) {
        if (!visit(t)) {
          return false;
        }
        std::size_t i = len;
        while (i > 0 && t[i - 1] == n - 1) {
          --i;
        }
        if (i == 0) {
          return true;
        }
        ++t[i - 1];
        for (std::size_t j = i; j < len; ++j) {
          t[j] = t[i - 1];
        }
      }
    }
  }  // namespace

  NormalGeneration is_normally_generated(ModulePtr const& m,
                                         std::size_t      gen_bound,
                                         std::size_t      cap) {
    if (m->is_plain_monoid()) {
      throw BadParams("normal generation needs a semimodule");
    }
    if (gen_bound == 0) {
      throw BadParams("generator bound must be at least 1");
    }
    NormalGeneration out;
    out.bound = gen_bound;
    for (std::size_t k = 0; k <= gen_bound && !out.found; ++k) {
      auto free = free_semimodule(m->base(), k, m->side(), cap);
      for_each_multiset(m->size(), k, [&](std::vector<Elem> const& gens) {
        auto pi = from_free(free, m, gens);
        auto p  = classify_morphism(pi);
        if (p.surjective && p.normal) {
          out.found       = true;
          out.generators  = gens;
          out.epimorphism = pi;
          return false;
        }
        return true;
      });
    }
    return out;
  }

  RetractWitness is_retract_of_free(ModulePtr const& m,
                                    std::size_t      rank_bound,
                                    std::size_t      cap) {
    if (m->is_plain_monoid()) {
      throw BadParams("retract search needs a semimodule");
    }
    if (rank_bound == 0) {
      throw BadParams("rank bound must be at least 1");
    }
    RetractWitness out;
    out.bound = rank_bound;
    if (m->size() == 1) {
      // the zero module is the free module of rank 0
      auto free = free_semimodule(m->base(), 0, m->side(), cap);
      out.found = true;
      out.psi   = Morphism::trusted(m, free.module, {0});
      out.theta = Morphism::trusted(free.module, m, {0});
      return out;
    }
    for (std::size_t k = 1; k <= rank_bound && !out.found; ++k) {
      auto free = free_semimodule(m->base(), k, m->side(), cap);
      for_each_multiset(m->size(), k, [&](std::vector<Elem> const& gens) {
        auto theta = from_free(free, m, gens);
        if (!classify_morphism(theta).surjective) {
          return true;
        }
        for_each_morphism(
            m,
            free.module,
            [&](std::vector<Elem> const& psi) {
              out.found = true;
              out.rank  = k;
              out.psi   = Morphism::trusted(m, free.module, psi);
              out.theta = theta;
              return false;
            },
            [&](Elem x, Elem y) { return theta(y) == x; });
        return !out.found;
      });
    }
    return out;
  }

  std::optional<std::vector<Elem>> find_isomorphism(ModulePtr const& m,
                                                    ModulePtr const& n) {
    if (m->size() != n->size() || !m->compatible_with(*n)) {
      return std::nullopt;
    }
    std::optional<std::vector<Elem>> found;
    for_each_morphism(m, n, [&](std::vector<Elem> const& map) {
      std::vector<bool> hit(n->size(), false);
      for (auto y : map) {
        if (hit[y]) {
          return true;
        }
        hit[y] = true;
      }
      found = map;
      return false;
    });
    return found;
  }

}  // namespace semiflat
