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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semiflat/semimodule.hpp"
#include "semiflat/tensor.hpp"

namespace semiflat {

  /// Outcome of checking one family of implications over many instances.
  struct PropertyTally {
    std::string              name;
    std::size_t              instances  = 0;
    std::size_t              violations = 0;
    std::vector<std::string> examples;  // first few violations

    void record(bool holds, std::string const& where);
    bool passed() const { return violations == 0 && instances > 0; }
  };

  /// Semimodules over one semiring up to a size bound, with their
  /// morphism sets computed on demand.
  class ModuleFamily {
   public:
    ModuleFamily(SemiringPtr base, Side side, std::size_t max_size);

    std::vector<ModulePtr> const& modules() const noexcept { return _modules; }
    std::vector<ModulePtr>        up_to(std::size_t size) const;
    SemiringPtr const&            base() const noexcept { return _base; }
    Side                          side() const noexcept { return _side; }

    /// All linear maps modules()[i] -> modules()[j].
    std::vector<Morphism> const& hom(std::size_t i, std::size_t j);

   private:
    SemiringPtr            _base;
    Side                   _side;
    std::vector<ModulePtr> _modules;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>> _hom;
  };

  struct SweepConfig {
    std::size_t  max_size   = 4;  // middle objects
    std::size_t  outer_size = 4;  // end objects of sequences and diagrams
    std::size_t  sum_size   = 3;  // summands in the direct-sum check (pairs grow quadratically)
    TensorConfig tensor{};
  };

  /// Characterisations of exactness at the ends of 0 -> L -> M -> N -> 0,
  /// and of short exact sequences.
  std::vector<PropertyTally> check_exactness_characterizations(ModuleFamily&      fam,
                                                               SweepConfig const& cfg);

  /// Normality of f, g and g . f under injectivity or surjectivity.
  std::vector<PropertyTally> check_composition_normality(ModuleFamily&      fam,
                                                         SweepConfig const& cfg);

  /// f (+) g is (k-, i-)normal iff f and g are.
  PropertyTally check_sum_normality(ModuleFamily& fam, SweepConfig const& cfg);

  /// In the pullback of a subsemimodule U <= N along an epimorphism of a
  /// short exact sequence, g' is injective, and normal when U is
  /// subtractive.
  PropertyTally check_pullback_claims(ModuleFamily& fam, SweepConfig const& cfg);

  /// Induced maps between cokernels of semi-exact rows: existence and
  /// the injectivity clauses.
  std::vector<PropertyTally> check_cokernel_maps(ModuleFamily&      fam,
                                                 SweepConfig const& cfg);

  /// Tensoring with right modules G preserves normal epimorphisms and
  /// semi-exact (exact) right ends.  `left` holds left modules and
  /// `right` the tensoring modules.
  std::vector<PropertyTally> check_tensor_right_exactness(ModuleFamily&      left,
                                                          ModuleFamily&      right,
                                                          SweepConfig const& cfg);

  /// Every check above over left modules of `base`, with right modules
  /// as tensoring factors.
  std::vector<PropertyTally> exactness_suite(SemiringPtr const& base,
                                             SweepConfig const& cfg = {});

}  // namespace semiflat
