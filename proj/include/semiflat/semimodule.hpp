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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semiflat/error.hpp"
#include "semiflat/semiring.hpp"

namespace semiflat {

  /// Default cap on |M| for exhaustive subsemimodule enumeration.
  inline constexpr std::size_t kDefaultEnumCap = 10;
  /// Default cap on the carrier of free modules and direct sums.
  inline constexpr std::size_t kDefaultModuleCap = 4096;

  /// Which side the scalars act on.  `none` marks a plain commutative
  /// monoid (a semimodule over the non-negative integers), which lets the
  /// same machinery classify maps between tensor products.
  enum class Side { left, right, none };

  char const* to_string(Side side) noexcept;

  /// Membership mask over the carrier of some structure.
  using Subset = std::vector<bool>;

  std::vector<Elem> elements_of(Subset const& s);
  Subset            subset_of(std::size_t n, std::span<Elem const> elems);
  std::size_t       count(Subset const& s);
  bool              is_subset(Subset const& a, Subset const& b);

  /// A finite left or right semimodule, or a plain commutative monoid.
  ///
  /// The additive identity is index 0.  `act(s, m)` is s*m for left
  /// modules and m*s for right modules; the table is stored the same way
  /// for both sides.
  class Semimodule {
   public:
    using Rows = std::vector<std::vector<Elem>>;

    /// Validates the tables exhaustively; the additive identity is moved to
    /// index 0.  `action` has one row per scalar and one column per element.
    static Semimodule from_tables(SemiringPtr base,
                                  Side        side,
                                  Rows const& add,
                                  Rows const& action,
                                  std::string name = "");

    static Semimodule monoid(Rows const& add, std::string name = "");

    /// Trusted constructor: tables are assumed valid with zero at index 0.
    static Semimodule from_normalized(SemiringPtr              base,
                                      Side                     side,
                                      std::size_t              n,
                                      std::vector<Elem>        add,
                                      std::vector<Elem>        action,
                                      std::string              name   = "",
                                      std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return _n; }
    Side        side() const noexcept { return _side; }
    bool        is_plain_monoid() const noexcept { return _side == Side::none; }
    SemiringPtr const& base() const noexcept { return _base; }
    std::size_t scalars() const noexcept { return _base ? _base->size() : 0; }

    Elem plus(Elem a, Elem b) const noexcept { return _add[a * _n + b]; }
    Elem act(Elem s, Elem m) const noexcept { return _action[s * _n + m]; }

    std::span<Elem const> add_table() const noexcept { return _add; }
    std::span<Elem const> action_table() const noexcept { return _action; }

    std::string const& name() const noexcept { return _name; }
    std::string const& label(Elem e) const { return _labels.at(e); }
    std::vector<std::string> const& labels() const noexcept { return _labels; }

    /// Same side, same scalar tables and identical structure tables.
    bool same_structure(Semimodule const& other) const noexcept;

    /// Compatible scalars: both plain, or same side over equal semirings.
    bool compatible_with(Semimodule const& other) const noexcept;

   private:
    Semimodule() = default;

    SemiringPtr              _base;
    Side                     _side = Side::none;
    std::size_t              _n    = 0;
    std::vector<Elem>        _add;
    std::vector<Elem>        _action;
    std::string              _name;
    std::vector<std::string> _labels;
  };

  using ModulePtr = std::shared_ptr<Semimodule const>;

  inline ModulePtr share(Semimodule m) {
    return std::make_shared<Semimodule const>(std::move(m));
  }

  std::vector<AxiomFailure> semimodule_axiom_failures(Semiring const*       base,
                                                      Side                  side,
                                                      std::size_t           n,
                                                      std::span<Elem const> add,
                                                      std::span<Elem const> action);

  /// A linear map between compatible structures.
  class Morphism {
   public:
    /// Checks compatibility, totality and linearity; throws IllDefined.
    Morphism(ModulePtr dom, ModulePtr cod, std::vector<Elem> map);

    /// Skips the linearity check.
    static Morphism trusted(ModulePtr dom, ModulePtr cod, std::vector<Elem> map);

    static Morphism identity(ModulePtr m);
    static Morphism zero(ModulePtr dom, ModulePtr cod);

    ModulePtr const&         dom() const noexcept { return _dom; }
    ModulePtr const&         cod() const noexcept { return _cod; }
    std::vector<Elem> const& map() const noexcept { return _map; }
    Elem operator()(Elem e) const noexcept { return _map[e]; }

    bool operator==(Morphism const& other) const noexcept {
      return _map == other._map;
    }

    /// Empty placeholder; only valid as an assignment target.
    Morphism() = default;

   private:
    ModulePtr         _dom;
    ModulePtr         _cod;
    std::vector<Elem> _map;
  };

  /// g after f.  Throws EndpointMismatch unless cod(f) and dom(g) agree.
  Morphism compose(Morphism const& g, Morphism const& f);

  /// First failure of linearity, if any.
  std::optional<AxiomFailure> linearity_failure(Semimodule const&     dom,
                                                Semimodule const&     cod,
                                                std::span<Elem const> map);

  struct SubSemimodule {
    ModulePtr parent;
    Subset    members;

    bool              contains(Elem e) const { return members[e]; }
    std::size_t       size() const { return count(members); }
    std::vector<Elem> elements() const { return elements_of(members); }
    bool operator==(SubSemimodule const& other) const {
      return members == other.members;
    }
  };

  /// A congruence given by a class index per element.  Class 0 contains
  /// zero; classes are numbered by their least element.
  struct Congruence {
    ModulePtr         parent;
    std::vector<Elem> class_of;
    std::size_t       classes = 0;
  };

  struct Quotient {
    ModulePtr module;
    Morphism  projection;
  };

  struct Inclusion {
    ModulePtr module;
    Morphism  inclusion;
  };

  struct DirectSum {
    ModulePtr module;
    Morphism  iota_first, iota_second, pi_first, pi_second;
  };

  struct FreeModule {
    ModulePtr             module;
    std::vector<Morphism> injections;
    std::vector<Morphism> projections;
  };

  struct MorphismProfile {
    SubSemimodule kernel;
    SubSemimodule image;          // raw f(dom)
    SubSemimodule image_closure;  // subtractive closure of f(dom)
    bool          injective  = false;
    bool          surjective = false;
    bool          k_normal   = false;
    bool          i_normal   = false;
    bool          normal     = false;
    /// (m, m') with f(m) = f(m') and no kernel elements balancing them.
    std::optional<std::pair<Elem, Elem>> k_witness;
    /// Element of the closure of the image that is not in the image.
    std::optional<Elem> i_witness;
  };

  struct Pullback {
    ModulePtr module;
    Morphism  iota_prime;  // P -> U
    Morphism  g_prime;     // P -> M
    /// Element pairs (u, m) of P, indexed like P's carrier.
    std::vector<std::pair<Elem, Elem>> pairs;
  };

  struct NormalGeneration {
    bool                    found = false;
    std::vector<Elem>       generators;
    std::optional<Morphism> epimorphism;
    std::size_t             bound = 0;
  };

  struct RetractWitness {
    bool                    found = false;
    std::size_t             rank  = 0;
    std::optional<Morphism> psi;    // M -> S^k
    std::optional<Morphism> theta;  // S^k -> M, theta . psi = id
    std::size_t             bound = 0;
  };

  ModulePtr regular_module(SemiringPtr base, Side side);
  /// The additive monoid of `m` with the action forgotten.
  ModulePtr underlying_monoid(ModulePtr const& m);
  ModulePtr zero_module(SemiringPtr base, Side side);
  FreeModule free_semimodule(SemiringPtr base,
                             std::size_t rank,
                             Side        side,
                             std::size_t cap = kDefaultModuleCap);
  DirectSum  direct_sum(ModulePtr const& m,
                        ModulePtr const& n,
                        std::size_t      cap = kDefaultModuleCap);
  /// f (+) g between the direct sums of the domains and codomains.
  Morphism direct_sum_map(Morphism const& f, Morphism const& g);

  SubSemimodule subsemimodule_closure(ModulePtr const& m, std::span<Elem const> seed);
  SubSemimodule whole(ModulePtr const& m);
  std::vector<SubSemimodule> enumerate_subsemimodules(
      ModulePtr const& m,
      std::size_t      cap = kDefaultEnumCap);
  bool is_subsemimodule(Semimodule const& m, Subset const& s);

  /// Restricts the structure of `l.parent` to the members of `l`.
  Inclusion as_module(SubSemimodule const& l);

  /// {m | m + l = l' for some l, l' in L}.  Works on any subset L.
  Subset subtractive_closure(Semimodule const& m, Subset const& l);
  SubSemimodule subtractive_closure(SubSemimodule const& l);
  bool is_subtractive(SubSemimodule const& l);
  bool is_subtractive(Semimodule const& m, Subset const& l);

  Subset cancellative_elements(Semimodule const& m);
  bool   is_cancellative(Semimodule const& m);

  Congruence congruence_from_pairs(ModulePtr const&                         m,
                                   std::span<std::pair<Elem, Elem> const> pairs);
  /// Class-index vector -> canonical Congruence (validity not checked).
  Congruence make_congruence(ModulePtr const& m, std::span<Elem const> class_of);

  /// Quotient by a congruence; throws IllDefined if operations on classes
  /// depend on the representative.
  Quotient quotient(Congruence const& c);
  /// M/L via m ~ m' iff m + l = m' + l' for some l, l' in L.
  Quotient bourne_quotient(SubSemimodule const& l);
  /// c(M): quotient by m ~ m' iff m + k = m' + k for some k.
  Quotient cancellative_hull(ModulePtr const& m);

  SubSemimodule   kernel(Morphism const& f);
  SubSemimodule   image(Morphism const& f);
  bool            is_k_normal(Morphism const& f);
  MorphismProfile classify_morphism(Morphism const& f);

  /// Pullback of an injective iota: U -> N along g: M -> N.
  Pullback pullback(Morphism const& iota, Morphism const& g);

  /// Visits every linear map dom -> cod.  `allowed`, when given, restricts
  /// the image of each element; the visitor returns false to stop.
  void for_each_morphism(
      ModulePtr const&                                 dom,
      ModulePtr const&                                 cod,
      std::function<bool(std::vector<Elem> const&)> const& visit,
      std::function<bool(Elem, Elem)> const&           allowed = {});

  /// Greedy generating set in index order.
  std::vector<Elem> generating_set(Semimodule const& m);

  NormalGeneration is_normally_generated(ModulePtr const& m,
                                         std::size_t      gen_bound,
                                         std::size_t      cap = kDefaultModuleCap);
  RetractWitness   is_retract_of_free(ModulePtr const& m,
                                      std::size_t      rank_bound,
                                      std::size_t      cap = kDefaultModuleCap);

  /// An isomorphism m -> n if one exists (backtracking over bijections).
  std::optional<std::vector<Elem>> find_isomorphism(ModulePtr const& m,
                                                    ModulePtr const& n);

}  // namespace semiflat
