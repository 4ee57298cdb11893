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

#include <cstdint>
#include <numeric>
#include <vector>

namespace semiflat::detail {

  // Disjoint sets with path halving; unite() keeps the smaller index as
  // root so that roots are the least members of their classes.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), std::uint32_t(0));
    }

    std::uint32_t find(std::uint32_t x) noexcept {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    // True if two different classes were merged.
    bool unite(std::uint32_t a, std::uint32_t b) noexcept {
      a = find(a);
      b = find(b);
      if (a == b) {
        return false;
      }
      if (b < a) {
        std::swap(a, b);
      }
      _parent[b] = a;
      return true;
    }

    std::size_t size() const noexcept { return _parent.size(); }

    // Class index per element, numbered by least member.
    std::vector<std::uint32_t> classes(std::size_t* count = nullptr) {
      std::vector<std::uint32_t> id(_parent.size(), UINT32_MAX), out(_parent.size());
      std::uint32_t              next = 0;
      for (std::uint32_t x = 0; x < _parent.size(); ++x) {
        auto r = find(x);
        if (id[r] == UINT32_MAX) {
          id[r] = next++;
        }
        out[x] = id[r];
      }
      if (count != nullptr) {
        *count = next;
      }
      return out;
    }

   private:
    std::vector<std::uint32_t> _parent;
  };

}  // namespace semiflat::detail
