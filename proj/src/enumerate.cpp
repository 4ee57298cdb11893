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


#include "semiflat/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

namespace semiflat {

  namespace {
    constexpr std::size_t kMaxEnumerationSize = 6;

    std::vector<Elem> relabelled(Semimodule const& m, std::vector<Elem> const& perm) {
      std::size_t const n = m.size(), k = m.scalars();
      std::vector<Elem> inv(n);
      for (Elem i = 0; i < n; ++i) {
        inv[perm[i]] = i;
      }
      // new element i is old element perm[i]
      std::vector<Elem> out;
      out.reserve(n * n + k * n);
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          out.push_back(inv[m.plus(perm[a], perm[b])]);
        }
      }
      for (Elem s = 0; s < k; ++s) {
        for (Elem a = 0; a < n; ++a) {
          out.push_back(inv[m.act(s, perm[a])]);
        }
      }
      return out;
    }

    // Additive maps M -> M fixing 0, as value arrays.
    std::vector<std::vector<Elem>> endomorphisms(Semimodule const& m) {
      std::vector<std::vector<Elem>> out;
      std::size_t const              n = m.size();
      std::vector<Elem>              map(n, 0);
      std::function<void(Elem)>      rec = [&](Elem i) {
        if (i == n) {
          for (Elem a = 1; a < n; ++a) {
            for (Elem b = a; b < n; ++b) {
              if (map[m.plus(a, b)] != m.plus(map[a], map[b])) {
                return;
              }
            }
          }
          out.push_back(map);
          return;
        }
        for (Elem y = 0; y < n; ++y) {
          map[i] = y;
          rec(i + 1);
        }
      };
      rec(1);
      return out;
    }

    // All semiring (anti-)homomorphisms S -> End(M), as action tables.
    std::vector<std::vector<Elem>> actions(Semiring const&   s,
                                           Semimodule const& m,
                                           Side              side) {
      auto const        ends = endomorphisms(m);
      std::size_t const n = m.size(), k = s.size();
      std::map<std::vector<Elem>, std::size_t> end_index;
      for (std::size_t i = 0; i < ends.size(); ++i) {
        end_index.emplace(ends[i], i);
      }
      auto compose_ends = [&](std::size_t outer, std::size_t inner) {
        std::vector<Elem> r(n);
        for (Elem x = 0; x < n; ++x) {
          r[x] = ends[outer][ends[inner][x]];
        }
        return end_index.at(r);
      };
      auto add_ends = [&](std::size_t a, std::size_t b) {
        std::vector<Elem> r(n);
        for (Elem x = 0; x < n; ++x) {
          r[x] = m.plus(ends[a][x], ends[b][x]);
        }
        return end_index.at(r);
      };
      std::vector<Elem> zero(n, 0), id(n);
      std::iota(id.begin(), id.end(), Elem{0});

      constexpr std::size_t          unset = SIZE_MAX;
      std::vector<std::vector<Elem>> out;
      std::vector<std::size_t>       rho(k, unset);

      // Assigns and propagates sums and products; false on conflict.
      auto propagate = [&](std::vector<std::size_t>& r, Elem s0, std::size_t e0) {
        std::deque<std::pair<Elem, std::size_t>> todo{{s0, e0}};
        while (!todo.empty()) {
          auto [x, e] = todo.front();
          todo.pop_front();
          if (r[x] != unset) {
            if (r[x] != e) {
              return false;
            }
            continue;
          }
          r[x] = e;
          for (Elem y = 0; y < k; ++y) {
            if (r[y] == unset) {
              continue;
            }
            todo.emplace_back(s.plus(x, y), add_ends(r[x], r[y]));
            // left: rho(xy) = rho(x) rho(y); right: rho(xy) = rho(y) rho(x)
            if (side == Side::left) {
              todo.emplace_back(s.times(x, y), compose_ends(r[x], r[y]));
              todo.emplace_back(s.times(y, x), compose_ends(r[y], r[x]));
            } else {
              todo.emplace_back(s.times(x, y), compose_ends(r[y], r[x]));
              todo.emplace_back(s.times(y, x), compose_ends(r[x], r[y]));
            }
          }
        }
        return true;
      };
      if (!propagate(rho, 0, end_index.at(zero)) || !propagate(rho, 1, end_index.at(id))) {
        return out;
      }
      std::function<void(std::vector<std::size_t>)> rec = [&](std::vector<std::size_t> r) {
        auto it = std::find(r.begin(), r.end(), unset);
        if (it == r.end()) {
          std::vector<Elem> table(k * n);
          for (Elem x = 0; x < k; ++x) {
            for (Elem a = 0; a < n; ++a) {
              table[x * n + a] = ends[r[x]][a];
            }
          }
          out.push_back(std::move(table));
          return;
        }
        Elem const x = static_cast<Elem>(it - r.begin());
        for (std::size_t e = 0; e < ends.size(); ++e) {
          auto next = r;
          if (propagate(next, x, e)) {
            rec(std::move(next));
          }
        }
      };
      rec(rho);
      return out;
    }

    std::vector<std::vector<Elem>> perms_fixing_zero(std::size_t n) {
      std::vector<Elem> p(n);
      std::iota(p.begin(), p.end(), Elem{0});
      std::vector<std::vector<Elem>> out;
      do {
        out.push_back(p);
      } while (std::next_permutation(p.begin() + 1, p.end()));
      return out;
    }
  }  // namespace

  std::vector<Elem> canonical_form(Semimodule const& m) {
    std::vector<Elem> best;
    for (auto const& p : perms_fixing_zero(m.size())) {
      auto form = relabelled(m, p);
      if (best.empty() || form < best) {
        best = std::move(form);
      }
    }
    return best;
  }

  std::vector<ModulePtr> enumerate_monoids(std::size_t n) {
    if (n == 0 || n > kMaxEnumerationSize) {
      throw SizeCapExceeded("monoid enumeration", n, kMaxEnumerationSize);
    }
    std::vector<Elem> add(n * n, 0);
    for (Elem a = 0; a < n; ++a) {
      add[a]     = a;
      add[a * n] = a;
    }
    std::vector<std::pair<Elem, Elem>> cells;
    for (Elem a = 1; a < n; ++a) {
      for (Elem b = a; b < n; ++b) {
        cells.emplace_back(a, b);
      }
    }
    // associativity of every triple whose three products are assigned
    auto consistent = [&](std::size_t filled) {
      std::vector<bool> known(n * n, false);
      for (Elem a = 0; a < n; ++a) {
        known[a] = known[a * n] = true;
      }
      for (std::size_t i = 0; i < filled; ++i) {
        auto [a, b]          = cells[i];
        known[a * n + b]     = true;
        known[b * n + a]     = true;
      }
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          if (!known[a * n + b]) {
            continue;
          }
          for (Elem c = 0; c < n; ++c) {
            Elem const ab = add[a * n + b];
            if (!known[b * n + c] || !known[ab * n + c]) {
              continue;
            }
            Elem const bc = add[b * n + c];
            if (known[a * n + bc] && add[ab * n + c] != add[a * n + bc]) {
              return false;
            }
          }
        }
      }
      return true;
    };
    std::map<std::vector<Elem>, ModulePtr> found;
    std::function<void(std::size_t)>       rec = [&](std::size_t i) {
      if (!consistent(i)) {
        return;
      }
      if (i == cells.size()) {
        auto m = Semimodule::from_normalized(nullptr, Side::none, n, add, {});
        auto c = canonical_form(m);
        if (!found.contains(c)) {
          std::vector<Elem> table(c.begin(), c.end());
          found.emplace(c,
                        share(Semimodule::from_normalized(nullptr, Side::none, n, table, {})));
        }
        return;
      }
      auto [a, b] = cells[i];
      for (Elem v = 0; v < n; ++v) {
        add[a * n + b] = add[b * n + a] = v;
        rec(i + 1);
      }
    };
    rec(0);
    std::vector<ModulePtr> out;
    for (auto& [form, m] : found) {
      out.push_back(m);
    }
    return out;
  }

  std::vector<ModulePtr> enumerate_semimodules(SemiringPtr const& base,
                                               Side               side,
                                               std::size_t        max_size) {
    if (side == Side::none) {
      throw BadParams("semimodule enumeration needs a side");
    }
    if (max_size > kMaxEnumerationSize) {
      throw SizeCapExceeded("semimodule enumeration", max_size, kMaxEnumerationSize);
    }
    std::vector<ModulePtr> out;
    std::size_t            counter = 0;
    for (std::size_t n = 1; n <= max_size; ++n) {
      std::map<std::vector<Elem>, ModulePtr> found;
      for (auto const& monoid : enumerate_monoids(n)) {
        std::vector<Elem> add(monoid->add_table().begin(), monoid->add_table().end());
        for (auto& act : actions(*base, *monoid, side)) {
          auto m = Semimodule::from_normalized(base, side, n, add, std::move(act));
          auto c = canonical_form(m);
          if (found.contains(c)) {
            continue;
          }
          std::vector<Elem> a(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n * n));
          std::vector<Elem> s(c.begin() + static_cast<std::ptrdiff_t>(n * n), c.end());
          auto canon = share(
              Semimodule::from_normalized(base, side, n, std::move(a), std::move(s)));
          found.emplace(std::move(c), std::move(canon));
        }
      }
      for (auto& [form, m] : found) {
        auto named = Semimodule::from_normalized(
            base,
            side,
            m->size(),
            {m->add_table().begin(), m->add_table().end()},
            {m->action_table().begin(), m->action_table().end()},
            std::string(to_string(side)) + "#" + std::to_string(counter++) + "/"
                + std::to_string(n) + ":" + base->name());
        out.push_back(share(std::move(named)));
      }
    }
    return out;
  }

}  // namespace semiflat
