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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semiflat/flatness.hpp"
#include "semiflat/semimodule.hpp"
#include "semiflat/semiring.hpp"

namespace semiflat {

  struct AbcVerdict {
    bool a = false;  // x(x + x') = x + x'
    bool b = false;  // x(y + y') = (y + y')x
    bool c = false;  // x + x(y + y') = x
    /// First (x, y) breaking the corresponding condition.
    std::optional<std::pair<Elem, Elem>> a_witness, b_witness, c_witness;
    bool all() const noexcept { return a && b && c; }
  };

  struct RegularityProfile {
    SemiringPtr semiring;
    bool vn_regular = false;
    /// s with a = asa, per a.
    std::vector<std::optional<Elem>> vn_witness;
    bool additively_regular = false;
    /// b with a + b + a = a, per a.
    std::vector<std::optional<Elem>> additive_witness;
    bool left_subtractive  = false;
    bool right_subtractive = false;
    std::optional<Subset> left_offending, right_offending;  // non-subtractive ideals
    /// Every ideal of a finite semiring is finitely generated, so Bezout
    /// reduces to every one-sided ideal being principal.
    bool left_bezout  = false;
    bool right_bezout = false;
    std::optional<Subset> left_nonprincipal, right_nonprincipal;
    /// Every principal left (right) ideal is Se (eS) with e idempotent.
    bool left_idempotent_principal  = false;
    bool right_idempotent_principal = false;
    std::size_t left_ideals  = 0;
    std::size_t right_ideals = 0;
    /// Present when star inverses exist and are unique.
    std::optional<AbcVerdict> abc;
  };

  RegularityProfile regularity_profile(SemiringPtr const& s);

  /// The unique b with a + b + a = a and b + a + b = b.  Throws
  /// NotAdditivelyRegular when none exists and NonUnique when several do.
  Elem star_inverse(Semiring const& s, Elem a);

  /// Throws like star_inverse for the first element lacking a unique one.
  AbcVerdict check_abc(Semiring const& s);

  /// Ideals of S on one side, as subsets of S.
  std::vector<Subset> one_sided_ideals(SemiringPtr const& s, Side side);
  Subset              principal_ideal(Semiring const& s, Elem c, Side side);

  struct DirectSummand {
    bool                  holds = false;
    std::optional<Subset> complement;  // J with I (+) J -> S bijective
    std::size_t           candidates = 0;
  };

  /// Whether (i, j) -> i + j is an isomorphism I (+) J -> S for some
  /// ideal J on the same side.
  DirectSummand is_direct_summand(SemiringPtr const& s, Subset const& ideal, Side side);

  using Matrix = std::vector<Elem>;  // row-major entries of the base

  Matrix      matrix_from_labels(Semiring const&                              s,
                                 std::vector<std::vector<std::string>> const& rows);
  std::string matrix_label(Semiring const& s, std::size_t n, Matrix const& a);

  struct MatrixScan {
    std::size_t n       = 0;
    std::size_t scanned = 0;  // matrices A examined
    std::size_t searched = 0; // candidates B per A
    bool        complete = false;  // every A of M_n(S) examined
    std::vector<Matrix> non_regular;
    /// B with ABA = A for each regular A of an explicit list.
    std::vector<std::optional<Matrix>> witnesses;
    bool base_vn_regular   = false;
    bool matrix_vn_regular = false;  // meaningful when complete
    /// M_n(S) regular => S regular; vacuous unless complete.
    bool implication_holds = true;
  };

  inline constexpr std::size_t kDefaultScanCap = std::size_t{1} << 26;

  /// Brute force over B for ABA = A.  Without `elements` every A is
  /// scanned, which throws SizeCapExceeded when |S|^(2n^2) > cap.
  MatrixScan matrix_regularity_scan(SemiringPtr const&                 s,
                                    std::size_t                        n,
                                    std::optional<std::vector<Matrix>> elements = std::nullopt,
                                    std::size_t                        cap = kDefaultScanCap);

  enum class HarnessVerdict { witness_found, no_witness_within_bound, premise_fails };
  char const* to_string(HarnessVerdict v) noexcept;

  struct SflatvonReport {
    HarnessVerdict  verdict = HarnessVerdict::premise_fails;
    bool            subtractive = false;
    bool            vn_regular  = false;
    std::string     note;
    std::size_t     bound    = 0;
    std::size_t     searched = 0;
    /// A module that is not S-e-flat, with its verdict.
    std::optional<FlatnessVerdict> witness;
    Side            witness_side = Side::right;
  };

  /// Searches for the module the contrapositive predicts when S is
  /// subtractive and not von Neumann regular.
  SflatvonReport sflatvon_harness(SemiringPtr const&  s,
                                  std::size_t         bound  = 4,
                                  TensorConfig const& config = {});

  struct BezNeumannReport {
    bool        premise_left  = false;  // left Bezout and regular: right modules
    bool        premise_right = false;  // right Bezout and regular: left modules
    std::size_t bound            = 0;
    std::size_t modules          = 0;
    std::size_t normally_generated = 0;
    std::size_t confirmed        = 0;
    std::size_t inconclusive     = 0;
    std::vector<std::string> refutations;
    bool premise() const noexcept { return premise_left || premise_right; }
    bool passed() const noexcept { return premise() && refutations.empty(); }
  };

  /// Every normally S-generated module up to `bound` must be S-m-flat.
  BezNeumannReport bez_neumann_check(SemiringPtr const&  s,
                                     std::size_t         bound  = 4,
                                     TensorConfig const& config = {});

  /// A left S-semimodule read as a right module over the opposite semiring.
  ModulePtr mirror(ModulePtr const& m);

}  // namespace semiflat
