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

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "semiflat/semimodule.hpp"

namespace semiflat {

  /// Default cap on |F|*|M| for a tensor product.
  inline constexpr std::size_t kDefaultTensorCap = 20;
  /// Default number of extra generators allowed in universe elements.
  inline constexpr std::size_t kDefaultSlack = 2;

  struct TensorConfig {
    std::size_t slack = kDefaultSlack;
    std::size_t cap   = kDefaultTensorCap;
    /// Upper bound on the number of generator sets explored.
    std::size_t universe_cap = 1u << 20;
  };

  /// F (x)_S M as a finite commutative monoid.
  ///
  /// Elements of the universe are sets of pure tensors (f, m) with f and m
  /// non-zero and no repeated entry; `representatives[c]` is the least such
  /// set in class c.  Class 0 is zero.
  struct TensorProduct {
    ModulePtr monoid;  // Side::none
    ModulePtr left;    // right S-semimodule F
    ModulePtr right;   // left S-semimodule M
    /// pure[f * |M| + m] is the class of f (x) m.
    std::vector<Elem> pure_table;
    std::vector<std::vector<std::pair<Elem, Elem>>> representatives;
    bool        certified = false;
    std::string failure;  // first failed internal check
    std::size_t universe  = 0;
    std::size_t cap_used  = 0;  // largest generator set allowed

    Elem pure(Elem f, Elem m) const { return pure_table[f * right->size() + m]; }
    std::size_t size() const { return monoid->size(); }
  };

  /// Throws SizeCapExceeded when |F|*|M| exceeds `config.cap` or the
  /// universe outgrows `config.universe_cap`; EndpointMismatch unless F is
  /// a right and M a left semimodule over the same semiring.
  TensorProduct tensor(ModulePtr const&    f,
                       ModulePtr const&    m,
                       TensorConfig const& config = {});

  /// id_F (x) phi : F (x) L -> F (x) M, with the tensors over dom and cod
  /// of phi.  Throws IllDefined if the result is not additive.
  Morphism induced_tensor_map(TensorProduct const& fl,
                              TensorProduct const& fm,
                              Morphism const&      phi);

  /// psi (x) id_M : F (x) M -> F' (x) M.
  Morphism induced_tensor_map(Morphism const&      psi,
                              TensorProduct const& fm,
                              TensorProduct const& gm);

  /// The map m (x) s -> ms on M (x) S for a right module M.  Throws
  /// CertificationFailure unless it is bijective.
  Morphism theta_module(TensorProduct const& ms);
  /// The map s (x) m -> sm on S (x) M for a left module M.
  Morphism theta_left_module(TensorProduct const& sm);

  struct ThetaIdeal {
    Morphism      theta;  // A (x) I -> A, onto AI
    SubSemimodule ai;     // additive closure of {a i}
    bool          injective          = false;
    bool          ai_subtractive     = false;
  };

  /// For a right module A and a left ideal I of S.  `ai` is the tensor
  /// A (x) I where I is seen as a left module.
  ThetaIdeal theta_ideal(TensorProduct const& ai, SubSemimodule const& ideal);

  /// The additive submonoid generated by {a s | a in A, s in I}.
  SubSemimodule product_submonoid(ModulePtr const& a, Subset const& ideal);

  /// The cancellative hull of F (x) M.
  Quotient takahashi_tensor(TensorProduct const& t);

  struct OracleReport {
    bool theta_ok    = true;
    bool sum_ok      = true;
    bool cokernel_ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> skipped;
    std::size_t uncertified = 0;  // tensors consulted that failed certification
    bool passed() const { return theta_ok && sum_ok && cokernel_ok; }
  };

  /// Checks F (x) S ~= F, F (x) (M + N) ~= F (x) M + F (x) N by the
  /// canonical map, and F (x) (M/L) ~= Coker(F (x) iota) for every
  /// subsemimodule L of M.
  OracleReport verify_tensor_oracles(ModulePtr const&    f,
                                     ModulePtr const&    m,
                                     ModulePtr const&    n,
                                     TensorConfig const& config = {});

  /// The map F (x) (M + N) -> (F (x) M) + (F (x) N); nullopt if the
  /// canonical map is not an isomorphism.
  std::optional<Morphism> sum_distribution(TensorProduct const& f_sum,
                                           TensorProduct const& fm,
                                           TensorProduct const& fn,
                                           DirectSum const&     sum);

  /// Memoises F (x) M by the identity of F and the tables of M, so that
  /// structurally equal subsemimodules share one tensor.
  class TensorCache {
   public:
    explicit TensorCache(TensorConfig config = {}) : _config(config) {}

    /// Propagates SizeCapExceeded from `tensor`.
    TensorProduct const& get(ModulePtr const& f, ModulePtr const& m);

    /// id_F (x) phi between the cached tensors of dom and cod.
    Morphism tensored(ModulePtr const& f, Morphism const& phi);

    TensorConfig const& config() const noexcept { return _config; }
    std::size_t         size() const noexcept { return _cache.size(); }

   private:
    using Key = std::tuple<Semimodule const*, std::vector<Elem>, std::vector<Elem>>;
    TensorConfig                 _config;
    std::map<Key, TensorProduct> _cache;
  };

  /// As above, sharing tensors through `cache`.
  OracleReport verify_tensor_oracles(ModulePtr const& f,
                                     ModulePtr const& m,
                                     ModulePtr const& n,
                                     TensorCache&     cache);

  /// Normality profile of a monoid map.
  inline MorphismProfile monoid_map_classify(Morphism const& h) {
    return classify_morphism(h);
  }

}  // namespace semiflat
