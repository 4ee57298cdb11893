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


#include "semiflat/semiring.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <utility>

namespace semiflat {

  namespace {

    // new index -> old index, with zero first and one second.
    std::vector<Elem> normal_order(std::size_t n, Elem zero, Elem one) {
      std::vector<Elem> order{zero, one};
      for (Elem e = 0; e < n; ++e) {
        if (e != zero && e != one) {
          order.push_back(e);
        }
      }
      return order;
    }

    std::vector<Elem> permute_table(std::size_t              n,
                                    std::span<Elem const>    table,
                                    std::vector<Elem> const& order) {
      std::vector<Elem> inverse(n);
      for (Elem i = 0; i < n; ++i) {
        inverse[order[i]] = i;
      }
      std::vector<Elem> out(n * n);
      for (Elem i = 0; i < n; ++i) {
        for (Elem j = 0; j < n; ++j) {
          out[i * n + j] = inverse[table[order[i] * n + order[j]]];
        }
      }
      return out;
    }

    std::vector<std::string> numeric_labels(std::size_t n) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::to_string(i));
      }
      return out;
    }

    // Builds a semiring from tables over "codes" 0..n-1 whose zero and one
    // are known to be correct; only reindexes.
    SemiringPtr normalize_trusted(std::string              name,
                                  std::size_t              n,
                                  std::vector<Elem> const& add,
                                  std::vector<Elem> const& mul,
                                  Elem                     zero,
                                  Elem                     one,
                                  std::vector<std::string> labels) {
      auto order = normal_order(n, zero, one);
      std::vector<std::string> new_labels(n);
      for (Elem i = 0; i < n; ++i) {
        new_labels[i] = labels[order[i]];
      }
      return std::make_shared<Semiring const>(
          Semiring::from_normalized(std::move(name),
                                    n,
                                    permute_table(n, add, order),
                                    permute_table(n, mul, order),
                                    std::move(new_labels)));
    }

    std::size_t parse_size(std::string_view text, std::string_view id) {
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw BadParams("expected a positive integer in catalog id '"
                        + std::string(id) + "'");
      }
      return value;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Semiring
  ////////////////////////////////////////////////////////////////////////

  Semiring Semiring::from_tables(std::string              name,
                                 Rows const&              add,
                                 Rows const&              mul,
                                 Elem                     zero,
                                 Elem                     one,
                                 std::vector<std::string> labels) {
    std::size_t const n = add.size();
    if (n < 2) {
      throw SizeMismatch("a semiring needs at least 2 elements");
    }
    if (mul.size() != n) {
      throw SizeMismatch("addition and multiplication tables differ in size");
    }
    std::vector<Elem> flat_add, flat_mul;
    for (std::size_t i = 0; i < n; ++i) {
      if (add[i].size() != n || mul[i].size() != n) {
        throw SizeMismatch("table row " + std::to_string(i) + " has wrong length");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (add[i][j] >= n || mul[i][j] >= n) {
          throw SizeMismatch("table entry out of range at row "
                             + std::to_string(i));
        }
        flat_add.push_back(add[i][j]);
        flat_mul.push_back(mul[i][j]);
      }
    }
    if (zero >= n || one >= n) {
      throw SizeMismatch("zero/one index out of range");
    }
    if (labels.empty()) {
      labels = numeric_labels(n);
    } else if (labels.size() != n) {
      throw SizeMismatch("label count differs from size");
    }
    auto failures = semiring_axiom_failures(n, flat_add, flat_mul, zero, one);
    if (!failures.empty()) {
      throw AxiomViolation(failures.front().axiom, failures.front().witness);
    }
    return *normalize_trusted(
        std::move(name), n, flat_add, flat_mul, zero, one, std::move(labels));
  }

  Semiring Semiring::from_normalized(std::string              name,
                                     std::size_t              n,
                                     std::vector<Elem>        add,
                                     std::vector<Elem>        mul,
                                     std::vector<std::string> labels) {
    Semiring s;
    s._name   = std::move(name);
    s._n      = n;
    s._add    = std::move(add);
    s._mul    = std::move(mul);
    s._labels = labels.empty() ? numeric_labels(n) : std::move(labels);
    return s;
  }

  Elem Semiring::element(std::string_view label) const {
    auto it = std::find(_labels.begin(), _labels.end(), label);
    if (it == _labels.end()) {
      throw BadParams("no element labelled '" + std::string(label) + "' in "
                      + _name);
    }
    return static_cast<Elem>(it - _labels.begin());
  }

  bool Semiring::is_commutative() const noexcept {
    for (Elem a = 0; a < _n; ++a) {
      for (Elem b = a + 1; b < _n; ++b) {
        if (times(a, b) != times(b, a)) {
          return false;
        }
      }
    }
    return true;
  }

  bool Semiring::is_additively_idempotent() const noexcept {
    for (Elem a = 0; a < _n; ++a) {
      if (plus(a, a) != a) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  std::vector<AxiomFailure> semiring_axiom_failures(std::size_t           n,
                                                    std::span<Elem const> add,
                                                    std::span<Elem const> mul,
                                                    Elem                  zero,
                                                    Elem                  one) {
    std::vector<AxiomFailure> out;
    auto P = [&](Elem a, Elem b) { return add[a * n + b]; };
    auto T = [&](Elem a, Elem b) { return mul[a * n + b]; };
    auto first_pair = [&](char const* axiom, auto&& holds) {
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          if (!holds(a, b)) {
            out.push_back({axiom, {a, b}});
            return;
          }
        }
      }
    };
    auto first_triple = [&](char const* axiom, auto&& holds) {
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          for (Elem c = 0; c < n; ++c) {
            if (!holds(a, b, c)) {
              out.push_back({axiom, {a, b, c}});
              return;
            }
          }
        }
      }
    };

    if (zero == one) {
      out.push_back({"zero-neq-one", {zero}});
    }
    first_pair("additive-commutativity",
               [&](Elem a, Elem b) { return P(a, b) == P(b, a); });
    for (Elem a = 0; a < n; ++a) {
      if (P(a, zero) != a || P(zero, a) != a) {
        out.push_back({"additive-identity", {a}});
        break;
      }
    }
    first_triple("additive-associativity", [&](Elem a, Elem b, Elem c) {
      return P(P(a, b), c) == P(a, P(b, c));
    });
    for (Elem a = 0; a < n; ++a) {
      if (T(a, one) != a || T(one, a) != a) {
        out.push_back({"multiplicative-identity", {a}});
        break;
      }
    }
    first_triple("multiplicative-associativity", [&](Elem a, Elem b, Elem c) {
      return T(T(a, b), c) == T(a, T(b, c));
    });
    for (Elem a = 0; a < n; ++a) {
      if (T(a, zero) != zero || T(zero, a) != zero) {
        out.push_back({"zero-absorption", {a}});
        break;
      }
    }
    first_triple("left-distributivity", [&](Elem a, Elem b, Elem c) {
      return T(a, P(b, c)) == P(T(a, b), T(a, c));
    });
    first_triple("right-distributivity", [&](Elem a, Elem b, Elem c) {
      return T(P(a, b), c) == P(T(a, c), T(b, c));
    });
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Catalog
  ////////////////////////////////////////////////////////////////////////

  SemiringPtr boolean_semiring() {
    return std::make_shared<Semiring const>(Semiring::from_normalized(
        "boolean", 2, {0, 1, 1, 1}, {0, 0, 0, 1}, {"0", "1"}));
  }

  SemiringPtr chain_semiring(std::size_t n) {
    if (n < 2) {
      throw BadParams("chain needs n >= 2");
    }
    std::vector<Elem> add(n * n), mul(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        add[a * n + b] = std::max(a, b);
        mul[a * n + b] = std::min(a, b);
      }
    }
    return normalize_trusted("chain:" + std::to_string(n),
                             n,
                             add,
                             mul,
                             0,
                             static_cast<Elem>(n - 1),
                             numeric_labels(n));
  }

  SemiringPtr truncation_semiring(std::size_t k) {
    if (k < 2) {
      throw BadParams("truncation needs k >= 2");
    }
    std::vector<Elem> add(k * k), mul(k * k);
    auto const top = static_cast<Elem>(k - 1);
    for (Elem a = 0; a < k; ++a) {
      for (Elem b = 0; b < k; ++b) {
        add[a * k + b] = std::min<Elem>(a + b, top);
        mul[a * k + b] = std::min<Elem>(a * b, top);
      }
    }
    return normalize_trusted(
        "truncation:" + std::to_string(k), k, add, mul, 0, 1, numeric_labels(k));
  }

  SemiringPtr zmod_semiring(std::size_t n) {
    if (n < 2) {
      throw BadParams("zmod needs n >= 2");
    }
    std::vector<Elem> add(n * n), mul(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        add[a * n + b] = static_cast<Elem>((a + b) % n);
        mul[a * n + b] = static_cast<Elem>((a * b) % n);
      }
    }
    return normalize_trusted(
        "zmod:" + std::to_string(n), n, add, mul, 0, 1, numeric_labels(n));
  }

  SemiringPtr product_semiring(Semiring const& s, Semiring const& t) {
    std::size_t const ns = s.size(), nt = t.size(), n = ns * nt;
    std::vector<Elem>        add(n * n), mul(n * n);
    std::vector<std::string> labels(n);
    for (Elem a = 0; a < n; ++a) {
      labels[a] = "(" + s.label(a / nt) + "," + t.label(a % nt) + ")";
      for (Elem b = 0; b < n; ++b) {
        Elem const as = a / nt, at = a % nt, bs = b / nt, bt = b % nt;
        add[a * n + b] = s.plus(as, bs) * nt + t.plus(at, bt);
        mul[a * n + b] = s.times(as, bs) * nt + t.times(at, bt);
      }
    }
    return normalize_trusted("product:" + s.name() + "*" + t.name(),
                             n,
                             add,
                             mul,
                             0,
                             static_cast<Elem>(nt + 1),
                             std::move(labels));
  }

  namespace {
    std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
      std::size_t out = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        out *= base;
        if (out > cap) {
          return cap + 1;
        }
      }
      return out;
    }

    std::vector<Elem> decode(std::size_t code, std::size_t base, std::size_t len) {
      std::vector<Elem> out(len);
      for (std::size_t i = len; i-- > 0;) {
        out[i] = static_cast<Elem>(code % base);
        code /= base;
      }
      return out;
    }

    std::size_t encode(std::vector<Elem> const& entries, std::size_t base) {
      std::size_t code = 0;
      for (auto e : entries) {
        code = code * base + e;
      }
      return code;
    }

    std::size_t identity_code(std::size_t base, std::size_t n) {
      std::vector<Elem> id(n * n, Semiring::zero());
      for (std::size_t i = 0; i < n; ++i) {
        id[i * n + i] = Semiring::one();
      }
      return encode(id, base);
    }
  }  // namespace

  SemiringPtr matrix_semiring(Semiring const& s, std::size_t n, std::size_t cap) {
    if (n == 0) {
      throw BadParams("matrix dimension must be positive");
    }
    std::size_t const k     = s.size();
    std::size_t const count = checked_power(k, n * n, cap);
    if (count > cap) {
      throw SizeCapExceeded("matrix semiring", count, cap);
    }
    std::vector<std::vector<Elem>> entries(count);
    for (std::size_t c = 0; c < count; ++c) {
      entries[c] = decode(c, k, n * n);
    }
    std::vector<Elem>        add(count * count), mul(count * count);
    std::vector<std::string> labels(count);
    std::vector<Elem>        tmp(n * n);
    for (std::size_t a = 0; a < count; ++a) {
      auto const& A = entries[a];
      std::string lbl = "[";
      for (std::size_t i = 0; i < n; ++i) {
        lbl += i ? ",[" : "[";
        for (std::size_t j = 0; j < n; ++j) {
          lbl += (j ? "," : "") + s.label(A[i * n + j]);
        }
        lbl += "]";
      }
      labels[a] = lbl + "]";
      for (std::size_t b = 0; b < count; ++b) {
        auto const& B = entries[b];
        for (std::size_t i = 0; i < n * n; ++i) {
          tmp[i] = s.plus(A[i], B[i]);
        }
        add[a * count + b] = static_cast<Elem>(encode(tmp, k));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            Elem acc = Semiring::zero();
            for (std::size_t l = 0; l < n; ++l) {
              acc = s.plus(acc, s.times(A[i * n + l], B[l * n + j]));
            }
            tmp[i * n + j] = acc;
          }
        }
        mul[a * count + b] = static_cast<Elem>(encode(tmp, k));
      }
    }
    return normalize_trusted("matrix:" + s.name() + ":" + std::to_string(n),
                             count,
                             add,
                             mul,
                             0,
                             static_cast<Elem>(identity_code(k, n)),
                             std::move(labels));
  }

  std::vector<Elem> matrix_entries(Semiring const& base, std::size_t n, Elem e) {
    std::size_t const id = identity_code(base.size(), n);
    std::size_t       code;
    if (e == 0) {
      code = 0;
    } else if (e == 1) {
      code = id;
    } else {
      code = (e - 1 < id) ? e - 1 : e;
    }
    return decode(code, base.size(), n * n);
  }

  SemiringPtr opposite_semiring(Semiring const& s) {
    std::size_t const n = s.size();
    std::vector<Elem> add(s.add_table().begin(), s.add_table().end());
    std::vector<Elem> mul(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        mul[a * n + b] = s.times(b, a);
      }
    }
    std::string name = s.name().rfind("opposite:", 0) == 0
                           ? s.name().substr(9)
                           : "opposite:" + s.name();
    return std::make_shared<Semiring const>(Semiring::from_normalized(
        std::move(name), n, std::move(add), std::move(mul), s.labels()));
  }

  SemiringPtr catalog_semiring(std::string_view id, std::size_t matrix_cap) {
    auto colon = id.find(':');
    auto kind  = id.substr(0, colon);
    auto rest  = colon == std::string_view::npos ? std::string_view{}
                                                 : id.substr(colon + 1);
    if (kind == "boolean" && rest.empty()) {
      return boolean_semiring();
    } else if (kind == "chain") {
      return chain_semiring(parse_size(rest, id));
    } else if (kind == "truncation") {
      return truncation_semiring(parse_size(rest, id));
    } else if (kind == "zmod") {
      return zmod_semiring(parse_size(rest, id));
    } else if (kind == "matrix") {
      auto last = rest.rfind(':');
      if (last == std::string_view::npos) {
        throw BadParams("matrix id needs the form matrix:<id>:<n>");
      }
      auto base = catalog_semiring(rest.substr(0, last), matrix_cap);
      return matrix_semiring(*base, parse_size(rest.substr(last + 1), id), matrix_cap);
    } else if (kind == "product") {
      auto star = rest.find('*');
      if (star == std::string_view::npos) {
        throw BadParams("product id needs the form product:<id>*<id>");
      }
      auto s = catalog_semiring(rest.substr(0, star), matrix_cap);
      auto t = catalog_semiring(rest.substr(star + 1), matrix_cap);
      return product_semiring(*s, *t);
    } else if (kind == "opposite") {
      return opposite_semiring(*catalog_semiring(rest, matrix_cap));
    }
    throw UnknownReference(std::string(id));
  }

  std::vector<std::string> catalog_examples() {
    return {"boolean",
            "chain:3",
            "chain:4",
            "truncation:3",
            "zmod:4",
            "zmod:6",
            "product:zmod:2*chain:2",
            "matrix:boolean:2",
            "matrix:chain:4:2",
            "opposite:matrix:chain:4:2"};
  }

}  // namespace semiflat
