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

#include <optional>
#include <string>
#include <vector>

#include "semiflat/properties.hpp"
#include "semiflat/semimodule.hpp"
#include "semiflat/tensor.hpp"

namespace semiflat {

  /// Uncertified tensors make a verdict inconclusive, never false.
  enum class Tri { no, yes, inconclusive };

  char const* to_string(Tri t) noexcept;
  Tri         tri_and(Tri a, Tri b) noexcept;

  enum class Route { definition, ses, both };

  /// A subsemimodule L <= M whose induced map F (x) L -> F (x) M breaks a
  /// flatness condition.
  struct FlatWitness {
    std::vector<Elem> members;  // of L, indexed in M
    std::string       reason;
  };

  struct FlatnessVerdict {
    ModulePtr subject;  // right module F
    ModulePtr target;   // left module M
    Tri m_flat = Tri::inconclusive;
    Tri i_flat = Tri::inconclusive;
    Tri e_flat = Tri::inconclusive;
    /// e-flatness by normal monomorphisms and by tensored canonical
    /// sequences; inconclusive when the route was not run.
    Tri  e_flat_definition = Tri::inconclusive;
    Tri  e_flat_ses        = Tri::inconclusive;
    bool routes_agree      = true;  // compared only where both decided
    /// s_flatness only: the theta_I criterion against the definition.
    std::optional<bool> criterion_agrees;
    std::optional<FlatWitness> m_witness, i_witness, e_witness;
    std::vector<std::string>   routes;  // method tags behind the verdicts
    std::string                cause;   // why something is inconclusive
    std::size_t subsemimodules = 0;
    std::size_t subtractive    = 0;

    /// e => i and m => i wherever both sides are decided.
    bool inclusions_hold() const noexcept;
  };

  /// Flatness of F relative to M, quantified over every L <= M.
  /// SizeCapExceeded propagates from the tensor engine.
  FlatnessVerdict flatness_wrt(ModulePtr const& f,
                               ModulePtr const& m,
                               TensorCache&     cache,
                               Route            route = Route::both);
  FlatnessVerdict flatness_wrt(ModulePtr const&    f,
                               ModulePtr const&    m,
                               TensorConfig const& config = {},
                               Route               route  = Route::both);

  /// Flatness of A relative to S through theta_I : A (x) I -> AI over all
  /// left ideals I, cross-checked against flatness_wrt(A, S).
  FlatnessVerdict s_flatness(ModulePtr const& a, TensorCache& cache);
  FlatnessVerdict s_flatness(ModulePtr const& a, TensorConfig const& config = {});

  struct IdealIntersection {
    Subset ki;        // additive closure of {k i}
    Subset fi;        // additive closure of {f i}
    Subset k_cap_fi;
    bool   equal = false;  // K n FI == KI
  };

  /// K a subtractive subsemimodule of the right module F, I a left ideal.
  IdealIntersection ideal_intersection_check(SubSemimodule const& k, Subset const& ideal);

  /// Left ideals of S, as subsets of S.
  std::vector<Subset> left_ideals(SemiringPtr const& s);

  struct SubjectClasses {
    ModulePtr subject;
    Tri       m_flat = Tri::yes;  // relative to every target in the survey
    Tri       i_flat = Tri::yes;
    Tri       e_flat = Tri::yes;
    std::optional<FlatnessVerdict> s_flat;  // absent when over the cap
  };

  /// Membership of right semimodules in the flat classes relative to all
  /// left semimodules up to the bound.
  struct FlatnessSurvey {
    SemiringPtr                 base;
    std::size_t                 bound = 0;
    std::vector<SubjectClasses> subjects;
    std::size_t                 targets = 0;
    std::size_t                 pairs   = 0;
    PropertyTally e_implies_i;
    PropertyTally m_implies_i;
    PropertyTally route_agreement;      // definition vs sequence route
    PropertyTally criterion_agreement;  // theta_I vs definition over S
    PropertyTally certified;            // tensors certified
    PropertyTally free_flat;            // free modules are e- and m-flat
    /// Pairs separating the classes, e.g. "i-not-e: F vs M".
    std::vector<std::string> strictness;
    std::size_t              inconclusive = 0;
    /// Checks not run because a tensor would exceed the cap.
    std::vector<std::string> skipped;

    bool passed() const;
  };

  FlatnessSurvey flatness_survey(SemiringPtr const&  base,
                                 std::size_t         bound  = 4,
                                 TensorConfig const& config = {});

  /// Direct sums, retracts, canonical sequences and the K n FI = KI
  /// criteria over right modules up to `bound`.  Pairs whose tensors
  /// would exceed the cap are skipped.
  std::vector<PropertyTally> check_flat_closure(SemiringPtr const&  base,
                                                std::size_t         bound  = 4,
                                                TensorConfig const& config = {});

}  // namespace semiflat
