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


#pragma once

#include <functional>
#include <string>

#include "semiflat/semimodule.hpp"

namespace semiflat::testing {

  /// Builds and validates a semimodule from closed-form operations.
  inline ModulePtr module_from(SemiringPtr                         base,
                               Side                                side,
                               std::size_t                         n,
                               std::function<Elem(Elem, Elem)>     add,
                               std::function<Elem(Elem, Elem)>     act,
                               std::string                         name = "") {
    Semimodule::Rows a(n, std::vector<Elem>(n)), s;
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        a[x][y] = add(x, y);
      }
    }
    if (side != Side::none) {
      s.assign(base->size(), std::vector<Elem>(n));
      for (Elem k = 0; k < base->size(); ++k) {
        for (Elem x = 0; x < n; ++x) {
          s[k][x] = act(k, x);
        }
      }
    }
    return share(Semimodule::from_tables(base, side, a, s, std::move(name)));
  }

  /// Z/m as a module over Z/n (m divides n) by reduction.
  inline ModulePtr zmod_over(std::size_t m, std::size_t n, Side side) {
    auto base = zmod_semiring(n);
    return module_from(
        base,
        side,
        m,
        [m](Elem x, Elem y) { return static_cast<Elem>((x + y) % m); },
        [m](Elem k, Elem x) { return static_cast<Elem>((k % m) * x % m); },
        "Z/" + std::to_string(m));
  }

  inline SubSemimodule sub(ModulePtr const& m, std::initializer_list<Elem> elems) {
    std::vector<Elem> v(elems);
    return SubSemimodule{m, subset_of(m->size(), v)};
  }

}  // namespace semiflat::testing
