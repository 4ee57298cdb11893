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

#include <cstddef>
#include <vector>

#include "semiflat/semimodule.hpp"

namespace semiflat {

  /// Commutative monoids on {0..n-1} with identity 0, one per isomorphism
  /// class.
  std::vector<ModulePtr> enumerate_monoids(std::size_t n);

  /// Semimodules over `base` on the given side with 1..max_size elements,
  /// one per isomorphism class, ordered by size then canonical form.
  std::vector<ModulePtr> enumerate_semimodules(SemiringPtr const& base,
                                               Side               side,
                                               std::size_t        max_size);

  /// Least relabelling (over permutations fixing 0) of the addition and
  /// action tables; equal forms mean isomorphic structures.
  std::vector<Elem> canonical_form(Semimodule const& m);

}  // namespace semiflat
