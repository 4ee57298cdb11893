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


#include "semiflat/regularity.hpp"

#include <algorithm>

#include "semiflat/enumerate.hpp"
#include "semiflat/error.hpp"

namespace semiflat {

  namespace {
    Elem mul(Semiring const& s, Elem a, Elem b) { return s.times(a, b); }

    std::string subset_label(Semiring const& s, Subset const& x) {
      std::string out = "{";
      bool        first = true;
      for (Elem e = 0; e < x.size(); ++e) {
        if (x[e]) {
          out += (first ? "" : ",") + s.label(e);
          first = false;
        }
      }
      return out + "}";
    }

    bool principal(Semiring const& s, Subset const& ideal, Side side) {
      for (Elem c = 0; c < s.size(); ++c) {
        if (ideal[c] && principal_ideal(s, c, side) == ideal) {
          return true;
        }
      }
      return false;
    }

    bool idempotent_principal(Semiring const& s, Side side) {
      for (Elem a = 0; a < s.size(); ++a) {
        auto const target = principal_ideal(s, a, side);
        bool       found  = false;
        for (Elem e = 0; e < s.size() && !found; ++e) {
          found = mul(s, e, e) == e && principal_ideal(s, e, side) == target;
        }
        if (!found) {
          return false;
        }
      }
      return true;
    }

    // Decodes index `code` into n*n base-k digits, least significant last.
    Matrix decode(std::size_t code, std::size_t k, std::size_t cells) {
      Matrix m(cells);
      for (std::size_t c = cells; c-- > 0;) {
        m[c] = static_cast<Elem>(code % k);
        code /= k;
      }
      return m;
    }

    Matrix product(Semiring const& s, std::size_t n, Matrix const& a, Matrix const& b) {
      Matrix c(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Elem acc = 0;
          for (std::size_t l = 0; l < n; ++l) {
            acc = s.plus(acc, s.times(a[i * n + l], b[l * n + j]));
          }
          c[i * n + j] = acc;
        }
      }
      return c;
    }

    std::size_t power(std::size_t base, std::size_t exp, std::size_t cap) {
      std::size_t r = 1;
      for (std::size_t k = 0; k < exp; ++k) {
        if (r > cap / std::max<std::size_t>(base, 1)) {
          return cap + 1;
        }
        r *= base;
      }
      return r;
    }

    bool fits(TensorConfig const& c, std::size_t f, std::size_t s) { return f * s <= c.cap; }
  }  // namespace

  Subset principal_ideal(Semiring const& s, Elem c, Side side) {
    Subset out(s.size(), false);
    for (Elem t = 0; t < s.size(); ++t) {
      out[side == Side::left ? mul(s, t, c) : mul(s, c, t)] = true;
    }
    return out;
  }

  std::vector<Subset> one_sided_ideals(SemiringPtr const& s, Side side) {
    std::vector<Subset> out;
    for (auto const& i : enumerate_subsemimodules(regular_module(s, side))) {
      out.push_back(i.members);
    }
    return out;
  }

  Elem star_inverse(Semiring const& s, Elem a) {
    std::vector<Elem> found;
    for (Elem b = 0; b < s.size(); ++b) {
      if (s.plus(s.plus(a, b), a) == a && s.plus(s.plus(b, a), b) == b) {
        found.push_back(b);
      }
    }
    if (found.empty()) {
      throw NotAdditivelyRegular("no star inverse for " + s.label(a));
    }
    if (found.size() > 1) {
      found.insert(found.begin(), a);
      throw NonUnique("star inverse of " + s.label(a), found);
    }
    return found.front();
  }

  AbcVerdict check_abc(Semiring const& s) {
    std::vector<Elem> star(s.size());
    for (Elem a = 0; a < s.size(); ++a) {
      star[a] = star_inverse(s, a);
    }
    AbcVerdict v;
    v.a = v.b = v.c = true;
    for (Elem x = 0; x < s.size(); ++x) {
      auto const xx = s.plus(x, star[x]);
      if (v.a && mul(s, x, xx) != xx) {
        v.a         = false;
        v.a_witness = std::pair{x, x};
      }
      for (Elem y = 0; y < s.size(); ++y) {
        auto const yy = s.plus(y, star[y]);
        if (v.b && mul(s, x, yy) != mul(s, yy, x)) {
          v.b         = false;
          v.b_witness = std::pair{x, y};
        }
        if (v.c && s.plus(x, mul(s, x, yy)) != x) {
          v.c         = false;
          v.c_witness = std::pair{x, y};
        }
      }
    }
    return v;
  }

  RegularityProfile regularity_profile(SemiringPtr const& sp) {
    auto const&       s = *sp;
    RegularityProfile p;
    p.semiring = sp;
    p.vn_witness.resize(s.size());
    p.additive_witness.resize(s.size());
    for (Elem a = 0; a < s.size(); ++a) {
      for (Elem t = 0; t < s.size() && !p.vn_witness[a]; ++t) {
        if (mul(s, mul(s, a, t), a) == a) {
          p.vn_witness[a] = t;
        }
      }
      for (Elem b = 0; b < s.size() && !p.additive_witness[a]; ++b) {
        if (s.plus(s.plus(a, b), a) == a) {
          p.additive_witness[a] = b;
        }
      }
    }
    auto all = [](auto const& w) {
      return std::all_of(w.begin(), w.end(), [](auto const& x) { return x.has_value(); });
    };
    p.vn_regular         = all(p.vn_witness);
    p.additively_regular = all(p.additive_witness);

    auto scan = [&](Side side, bool& subtractive, std::optional<Subset>& offending, bool& bezout,
                    std::optional<Subset>& nonprincipal, std::size_t& count) {
      auto const m  = regular_module(sp, side);
      subtractive   = true;
      bezout        = true;
      count         = 0;
      for (auto const& ideal : enumerate_subsemimodules(m)) {
        ++count;
        if (subtractive && !is_subtractive(ideal)) {
          subtractive = false;
          offending   = ideal.members;
        }
        if (bezout && !principal(s, ideal.members, side)) {
          bezout       = false;
          nonprincipal = ideal.members;
        }
      }
    };
    scan(Side::left, p.left_subtractive, p.left_offending, p.left_bezout, p.left_nonprincipal,
         p.left_ideals);
    scan(Side::right, p.right_subtractive, p.right_offending, p.right_bezout,
         p.right_nonprincipal, p.right_ideals);
    p.left_idempotent_principal  = idempotent_principal(s, Side::left);
    p.right_idempotent_principal = idempotent_principal(s, Side::right);
    if (p.additively_regular) {
      try {
        p.abc = check_abc(s);
      } catch (NonUnique const&) {
        // Star inverses are not unique; the conditions are undefined.
      }
    }
    return p;
  }

  DirectSummand is_direct_summand(SemiringPtr const& s, Subset const& ideal, Side side) {
    DirectSummand out;
    std::size_t const ni = count(ideal);
    for (auto const& j : one_sided_ideals(s, side)) {
      ++out.candidates;
      if (ni * count(j) != s->size()) {
        continue;
      }
      Subset hit(s->size(), false);
      bool   injective = true;
      for (Elem a = 0; a < s->size() && injective; ++a) {
        for (Elem b = 0; b < s->size() && injective; ++b) {
          if (ideal[a] && j[b]) {
            auto const c = s->plus(a, b);
            injective    = !hit[c];
            hit[c]       = true;
          }
        }
      }
      if (injective) {
        out.holds      = true;
        out.complement = j;
        return out;
      }
    }
    return out;
  }

  Matrix matrix_from_labels(Semiring const& s, std::vector<std::vector<std::string>> const& rows) {
    Matrix m;
    for (auto const& row : rows) {
      if (row.size() != rows.size()) {
        throw ShapeError("matrix must be square");
      }
      for (auto const& label : row) {
        m.push_back(s.element(label));
      }
    }
    return m;
  }

  std::string matrix_label(Semiring const& s, std::size_t n, Matrix const& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < n; ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < n; ++j) {
        out += (j ? "," : "") + s.label(a[i * n + j]);
      }
      out += "]";
    }
    return out + "]";
  }

  MatrixScan matrix_regularity_scan(SemiringPtr const&                 sp,
                                    std::size_t                        n,
                                    std::optional<std::vector<Matrix>> elements,
                                    std::size_t                        cap) {
    if (n == 0) {
      throw BadParams("matrix size must be positive");
    }
    auto const&       s     = *sp;
    std::size_t const cells = n * n;
    std::size_t const total = power(s.size(), cells, cap);
    if (total > cap) {
      throw SizeCapExceeded("matrix semiring", total, cap);
    }
    MatrixScan out;
    out.n               = n;
    out.searched        = total;
    out.base_vn_regular = regularity_profile(sp).vn_regular;
    out.complete        = !elements.has_value();
    if (!elements) {
      if (total > cap / total) {
        throw SizeCapExceeded("matrix scan pairs", total * total, cap);
      }
      elements.emplace();
      for (std::size_t code = 0; code < total; ++code) {
        elements->push_back(decode(code, s.size(), cells));
      }
    }
    std::vector<Matrix> all_b;
    all_b.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
      all_b.push_back(decode(code, s.size(), cells));
    }
    for (auto const& a : *elements) {
      if (a.size() != cells) {
        throw ShapeError("matrix has the wrong number of entries");
      }
      ++out.scanned;
      std::optional<Matrix> witness;
      for (auto const& b : all_b) {
        if (product(s, n, product(s, n, a, b), a) == a) {
          witness = b;
          break;
        }
      }
      if (!witness) {
        out.non_regular.push_back(a);
      }
      if (!out.complete) {
        out.witnesses.push_back(std::move(witness));
      }
    }
    out.matrix_vn_regular = out.complete && out.non_regular.empty();
    out.implication_holds = !out.matrix_vn_regular || out.base_vn_regular;
    return out;
  }

  char const* to_string(HarnessVerdict v) noexcept {
    switch (v) {
      case HarnessVerdict::witness_found: return "witness-found";
      case HarnessVerdict::no_witness_within_bound: return "no-witness-within-bound";
      case HarnessVerdict::premise_fails: return "premise-fails";
    }
    return "?";
  }

  ModulePtr mirror(ModulePtr const& m) {
    if (m->side() != Side::left) {
      throw EndpointMismatch("mirror expects a left semimodule");
    }
    auto const add = m->add_table();
    auto const act = m->action_table();
    return share(Semimodule::from_normalized(opposite_semiring(*m->base()),
                                             Side::right,
                                             m->size(),
                                             {add.begin(), add.end()},
                                             {act.begin(), act.end()},
                                             m->name() + "^op",
                                             m->labels()));
  }

  SflatvonReport sflatvon_harness(SemiringPtr const& s, std::size_t bound, TensorConfig const& config) {
    SflatvonReport out;
    out.bound        = bound;
    auto const prof  = regularity_profile(s);
    out.subtractive  = prof.left_subtractive && prof.right_subtractive;
    out.vn_regular   = prof.vn_regular;
    if (!out.subtractive) {
      auto const& bad = prof.left_offending ? prof.left_offending : prof.right_offending;
      out.note = "not subtractive: ideal " + subset_label(*s, *bad) + " is not subtractive";
      return out;
    }
    if (out.vn_regular) {
      out.note = "von Neumann regular: the contrapositive has nothing to find";
      return out;
    }
    TensorCache cache(config);
    auto        search = [&](std::vector<ModulePtr> const& modules, Side side, bool flip) {
      for (auto const& m : modules) {
        auto const a = flip ? mirror(m) : m;
        if (!fits(config, a->size(), s->size())) {
          continue;
        }
        ++out.searched;
        auto v = s_flatness(a, cache);
        if (v.e_flat == Tri::no) {
          out.verdict      = HarnessVerdict::witness_found;
          out.witness      = std::move(v);
          out.witness_side = side;
          return true;
        }
      }
      return false;
    };
    if (search(enumerate_semimodules(s, Side::right, bound), Side::right, false)
        || search(enumerate_semimodules(s, Side::left, bound), Side::left, true)) {
      out.note = "subtractive, not regular; found a module that is not S-e-flat";
      return out;
    }
    out.verdict = HarnessVerdict::no_witness_within_bound;
    out.note    = "every searched module is S-e-flat; the bound is too small to decide";
    return out;
  }

  BezNeumannReport bez_neumann_check(SemiringPtr const& s, std::size_t bound, TensorConfig const& config) {
    BezNeumannReport out;
    out.bound         = bound;
    auto const prof   = regularity_profile(s);
    out.premise_left  = prof.left_bezout && prof.vn_regular;
    out.premise_right = prof.right_bezout && prof.vn_regular;
    TensorCache cache(config);
    auto        check = [&](std::vector<ModulePtr> const& modules, bool flip) {
      for (auto const& m : modules) {
        ++out.modules;
        auto const a = flip ? mirror(m) : m;
        if (!fits(config, a->size(), s->size())) {
          ++out.inconclusive;
          continue;
        }
        if (!is_normally_generated(a, a->size()).found) {
          continue;
        }
        ++out.normally_generated;
        auto const v = s_flatness(a, cache);
        if (v.m_flat == Tri::yes) {
          ++out.confirmed;
        } else if (v.m_flat == Tri::no) {
          out.refutations.push_back(m->name());
        } else {
          ++out.inconclusive;
        }
      }
    };
    if (out.premise_left) {
      check(enumerate_semimodules(s, Side::right, bound), false);
    }
    if (out.premise_right) {
      check(enumerate_semimodules(s, Side::left, bound), true);
    }
    return out;
  }

}  // namespace semiflat
