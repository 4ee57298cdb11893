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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semiflat/error.hpp"

namespace semiflat {

  /// Default cap on the number of elements of an eagerly materialised
  /// matrix semiring.
  inline constexpr std::size_t kDefaultMatrixCap = 4096;

  struct AxiomFailure {
    std::string       axiom;
    std::vector<Elem> witness;
  };

  /// A finite semiring given by its addition and multiplication tables.
  ///
  /// Elements are the dense indices 0..size()-1 with zero at index 0 and
  /// one at index 1.  Every element carries a printable label; catalog
  /// semirings use the labels of their textbook presentation (so `chain:4`
  /// has index 1 labelled "3").  Instances are immutable and are normally
  /// shared through SemiringPtr.
  class Semiring {
   public:
    using Rows = std::vector<std::vector<Elem>>;

    /// Validates raw tables exhaustively and normalises them so that
    /// `zero` becomes index 0 and `one` index 1.  Throws SizeMismatch on
    /// malformed tables and AxiomViolation for the first failed law.
    static Semiring from_tables(std::string              name,
                                Rows const&              add,
                                Rows const&              mul,
                                Elem                     zero   = 0,
                                Elem                     one    = 1,
                                std::vector<std::string> labels = {});

    /// Trusted constructor for tables already in normal form.  Only use
    /// it for structures built from validated pieces.
    static Semiring from_normalized(std::string              name,
                                    std::size_t              n,
                                    std::vector<Elem>        add,
                                    std::vector<Elem>        mul,
                                    std::vector<std::string> labels);

    std::size_t size() const noexcept { return _n; }
    std::string const& name() const noexcept { return _name; }

    Elem plus(Elem a, Elem b) const noexcept { return _add[a * _n + b]; }
    Elem times(Elem a, Elem b) const noexcept { return _mul[a * _n + b]; }

    static constexpr Elem zero() noexcept { return 0; }
    static constexpr Elem one() noexcept { return 1; }

    std::span<Elem const> add_table() const noexcept { return _add; }
    std::span<Elem const> mul_table() const noexcept { return _mul; }

    std::string const& label(Elem e) const { return _labels.at(e); }
    std::vector<std::string> const& labels() const noexcept { return _labels; }

    /// Index of the element with the given label; throws BadParams.
    Elem element(std::string_view label) const;

    bool is_commutative() const noexcept;
    bool is_additively_idempotent() const noexcept;

    /// Structural equality of the tables (names and labels are ignored).
    bool same_tables(Semiring const& other) const noexcept {
      return _n == other._n && _add == other._add && _mul == other._mul;
    }

   private:
    Semiring() = default;

    std::string              _name;
    std::size_t              _n = 0;
    std::vector<Elem>        _add;
    std::vector<Elem>        _mul;
    std::vector<std::string> _labels;
  };

  using SemiringPtr = std::shared_ptr<Semiring const>;

  /// Every failed semiring law over all triples (lowest witness first per
  /// law).  Tables are flat n*n arrays; an empty result means valid.
  std::vector<AxiomFailure> semiring_axiom_failures(std::size_t           n,
                                                    std::span<Elem const> add,
                                                    std::span<Elem const> mul,
                                                    Elem                  zero,
                                                    Elem                  one);

  SemiringPtr boolean_semiring();
  /// ({0 < 1 < ... < n-1}, max, 0, min, n-1).
  SemiringPtr chain_semiring(std::size_t n);
  /// N_k = ({0..k-1}, min(a+b, k-1), min(ab, k-1)).
  SemiringPtr truncation_semiring(std::size_t k);
  SemiringPtr zmod_semiring(std::size_t n);
  SemiringPtr product_semiring(Semiring const& s, Semiring const& t);
  /// All n*n matrices over `s`.  Element i encodes the row-major entry
  /// tuple; see matrix_entries().
  SemiringPtr matrix_semiring(Semiring const& s,
                              std::size_t     n,
                              std::size_t     cap = kDefaultMatrixCap);
  SemiringPtr opposite_semiring(Semiring const& s);

  /// Row-major entries (indices of the base semiring) of element `e` of
  /// matrix_semiring(base, n).
  std::vector<Elem> matrix_entries(Semiring const& base, std::size_t n, Elem e);

  /// Resolves catalog ids such as `boolean`, `chain:4`, `truncation:3`,
  /// `zmod:6`, `matrix:chain:4:2`, `product:zmod:2*chain:2` and
  /// `opposite:<id>`.  Throws UnknownReference or BadParams.
  SemiringPtr catalog_semiring(std::string_view id,
                               std::size_t matrix_cap = kDefaultMatrixCap);

  /// Representative ids listed by `semiflat catalog list`.
  std::vector<std::string> catalog_examples();

}  // namespace semiflat
