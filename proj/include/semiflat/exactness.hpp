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
#include <utility>
#include <vector>

#include "semiflat/semimodule.hpp"

namespace semiflat {

  /// Verdict at the middle node of L -f-> M -g-> N.
  struct NodeVerdict {
    bool chain_complex = false;  // g . f = 0
    bool proper_exact  = false;  // f(L) = Ker g
    bool semi_exact    = false;  // closure of f(L) = Ker g
    bool g_k_normal    = false;
    bool exact         = false;  // proper_exact and g k-normal

    /// l with g(f(l)) != 0.
    std::optional<Elem> chain_witness;
    /// Element of M in exactly one of f(L) and Ker g.
    std::optional<Elem> proper_witness;
    /// Element of M in exactly one of closure(f(L)) and Ker g.
    std::optional<Elem> semi_witness;
    std::optional<std::pair<Elem, Elem>> k_witness;
  };

  /// Throws EndpointMismatch unless cod(f) and dom(g) agree.
  NodeVerdict classify_pair(Morphism const& f, Morphism const& g);

  /// f_1, ..., f_k with cod(f_i) = dom(f_{i+1}).
  struct Sequence {
    std::vector<Morphism> maps;
  };

  struct SequenceVerdict {
    std::vector<NodeVerdict> nodes;  // one per interior object
    bool chain_complex = true;
    bool proper_exact  = true;
    bool semi_exact    = true;
    bool exact         = true;
  };

  SequenceVerdict classify_sequence(Sequence const& seq);

  /// The zero maps 0 -> target and source -> 0.
  Morphism from_zero(ModulePtr const& target);
  Morphism to_zero(ModulePtr const& source);

  /// f corestricted to Ker g, when that is a bijection L -> Ker g.
  std::optional<Morphism> kernel_iso(Morphism const& f, Morphism const& g);

  /// The map M/f(L) -> N through which g factors, when it exists and is
  /// bijective.  M/f(L) is the Bourne quotient.
  std::optional<Morphism> cokernel_iso(Morphism const& f, Morphism const& g);

  struct ShortExactVerdict {
    bool holds        = false;
    bool f_injective  = false;
    bool proper_exact = false;
    bool g_surjective = false;
    bool g_k_normal   = false;
    bool f_normal     = false;
    bool g_normal     = false;
    std::optional<Morphism> kernel_iso;    // L -> Ker g
    std::optional<Morphism> cokernel_iso;  // M/f(L) -> N
  };

  /// 0 -> L -f-> M -g-> N -> 0.  When it holds, the normality of f and g
  /// and both isomorphisms are certified; a failure throws
  /// CertificationFailure.
  ShortExactVerdict is_short_exact(Morphism const& f, Morphism const& g);

  /// Accepts the four-map form 0 -> L -> M -> N -> 0 or the two-map
  /// form (f, g); throws ShapeError otherwise.
  ShortExactVerdict is_short_exact(Sequence const& seq);

  /// 0 -> L -> M -> M/L -> 0 with the Bourne projection.  Throws
  /// NotSubtractive.
  Sequence canonical_ses(SubSemimodule const& l);

  /// Rows A' -i-> A -p-> A'' and B' -j-> B -q-> B'' with verticals
  /// f: A' -> B' and g: A -> B.
  struct CokernelDiagram {
    Morphism i, p, j, q, f, g;
  };

  struct InducedCokernelMap {
    Morphism h;  // A'' -> B'', h . p = q . g
    /// q normal epi, f surjective and g injective.
    bool injectivity_premise = false;
    bool h_injective         = false;
    /// injectivity premise with g bijective.
    bool iso_premise = false;
    bool h_bijective = false;
    /// A and B cancellative, j, f and h injective.
    bool cancellation_premise = false;
    bool g_injective          = false;
  };

  /// Throws HypothesisFailure when a square does not commute, a row is not
  /// semi-exact or p is not a normal epimorphism, and IllDefined if q . g
  /// is not constant on the fibres of p.
  InducedCokernelMap induced_cokernel_map(CokernelDiagram const& d);

}  // namespace semiflat
