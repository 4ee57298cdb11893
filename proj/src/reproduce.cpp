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


#include "semiflat/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "semiflat/enumerate.hpp"
#include "semiflat/error.hpp"
#include "semiflat/exactness.hpp"
#include "semiflat/flatness.hpp"
#include "semiflat/properties.hpp"
#include "semiflat/regularity.hpp"

namespace semiflat {

  namespace {
    // Semirings of the flatness and exactness sweeps.
    std::vector<std::string> const kSweep = {
        "boolean", "chain:3", "chain:4", "truncation:3", "zmod:4", "zmod:6"};

    // Catalog semirings with at most five elements.
    std::vector<std::string> const kSmall = {"boolean",      "chain:3",      "chain:4",
                                             "chain:5",      "truncation:3", "truncation:4",
                                             "truncation:5", "zmod:2",       "zmod:3",
                                             "zmod:4",       "zmod:5",       "product:zmod:2*chain:2"};

    std::string str(std::size_t n) { return std::to_string(n); }

    std::string tally_line(PropertyTally const& t) {
      return t.name + ": " + str(t.instances) + " instances, " + str(t.violations) + " violations";
    }

    class Context {
     public:
      explicit Context(ReproOptions const& o) : opts(o) {}

      SemiringPtr resolve(std::string const& id) const {
        auto it = opts.overrides.find(id);
        return it != opts.overrides.end() ? it->second : catalog_semiring(id);
      }

      // Large enough that S-flatness of every module up to the bound fits.
      TensorConfig survey_config(SemiringPtr const& s) const {
        auto cfg = opts.tensor;
        cfg.cap  = std::max(cfg.cap, opts.bound * std::max(opts.bound, s->size()));
        return cfg;
      }

      FlatnessSurvey const& survey(std::string const& id) {
        auto it = _surveys.find(id);
        if (it == _surveys.end()) {
          auto const s = resolve(id);
          it = _surveys.emplace(id, flatness_survey(s, opts.bound, survey_config(s))).first;
        }
        return it->second;
      }

      ReproOptions const& opts;

     private:
      std::map<std::string, FlatnessSurvey> _surveys;
    };

    void require(ReproRow& row, bool ok, std::string const& what) {
      if (!ok) {
        row.failures.push_back(what);
      }
    }

    void require_tally(ReproRow& row, PropertyTally const& t, std::string const& where, bool need_instances = true) {
      row.details.push_back(where + ": " + tally_line(t));
      if (t.violations) {
        row.failures.push_back(where + ": " + t.name + " violated at " + t.examples.front());
      }
      if (need_instances && t.instances == 0) {
        row.failures.push_back(where + ": " + t.name + " has no instances");
      }
    }

    void matrix_row(Context& cx, ReproRow& row) {
      auto const s    = cx.resolve("chain:4");
      auto const a    = matrix_from_labels(*s, {{"0", "1"}, {"2", "3"}});
      auto const scan = matrix_regularity_scan(s, 2, std::vector<Matrix>{a});
      auto const prof = regularity_profile(s);
      row.details.push_back("A = " + matrix_label(*s, 2, a) + ", candidates B searched: "
                            + str(scan.searched));
      require(row, scan.searched == 256, "expected 256 candidate matrices");
      require(row, scan.non_regular.size() == 1, "a B with ABA = A was found");
      for (Elem x = 0; x < s->size(); ++x) {
        auto const w = prof.vn_witness[x];
        row.details.push_back("a = " + s->label(x) + ": "
                              + (w ? "a s a = a with s = " + s->label(*w) : "no witness"));
      }
      require(row, prof.vn_regular && s->size() == 4, "chain(4) is not von Neumann regular");
    }

    void chain3_row(Context& cx, ReproRow& row) {
      auto const s    = cx.resolve("chain:3");
      auto const prof = regularity_profile(s);
      auto const a    = s->element("1");
      auto const sa   = principal_ideal(*s, a, Side::left);
      require(row, prof.vn_regular, "chain(3) is not von Neumann regular");
      require(row, prof.additively_regular, "chain(3) is not additively regular");
      require(row, count(sa) == 2 && sa[0] && sa[a], "Sa differs from {0,a}");
      for (Side side : {Side::left, Side::right}) {
        auto const d = is_direct_summand(s, sa, side);
        row.details.push_back(std::string(to_string(side)) + " complements tried: "
                              + str(d.candidates) + ", summand: " + (d.holds ? "yes" : "no"));
        require(row, d.candidates == 3, "expected three candidate ideals");
        require(row, !d.holds, "Sa is a direct summand");
      }
    }

    void theta_row(Context& cx, ReproRow& row) {
      std::size_t pairs = 0;
      for (auto const& id : kSmall) {
        auto const s = cx.resolve(id);
        if (s->size() > 5) {
          continue;
        }
        auto const  top = std::min<std::size_t>(5, cx.opts.tensor.cap / s->size());
        TensorCache cache(cx.opts.tensor);
        std::size_t here = 0;
        auto        check = [&](ModulePtr const& m, bool right) {
          ++here;
          try {
            auto const& t = right ? cache.get(m, regular_module(s, Side::left))
                                  : cache.get(regular_module(s, Side::right), m);
            (void) (right ? theta_module(t) : theta_left_module(t));
          } catch (Error const& e) {
            row.failures.push_back(id + " " + m->name() + ": " + e.what());
          }
        };
        for (auto const& m : enumerate_semimodules(s, Side::right, top)) {
          check(m, true);
        }
        for (auto const& m : enumerate_semimodules(s, Side::left, top)) {
          check(m, false);
        }
        row.details.push_back(id + ": " + str(here) + " modules up to size " + str(top));
        pairs += here;
      }
      require(row, pairs > 0, "no pairs checked");
    }

    void z4_row(Context& cx, ReproRow& row) {
      auto const s    = cx.resolve("zmod:4");
      auto const prof = regularity_profile(s);
      require(row, prof.left_subtractive && prof.right_subtractive, "Z/4 is not subtractive");
      require(row, !prof.vn_regular, "Z/4 is von Neumann regular");
      ModulePtr z2;
      for (auto const& m : enumerate_semimodules(s, Side::right, 2)) {
        if (m->size() == 2) {
          z2 = m;
        }
      }
      require(row, z2 != nullptr, "no right module of size 2");
      if (z2) {
        auto const v = s_flatness(z2, cx.opts.tensor);
        row.details.push_back(std::string("Z/2: S-m-flat ") + to_string(v.m_flat) + ", S-i-flat "
                              + to_string(v.i_flat) + ", S-e-flat " + to_string(v.e_flat));
        require(row, v.m_flat == Tri::no && v.i_flat == Tri::no && v.e_flat == Tri::no,
                "Z/2 is flat in some sense");
        auto const two = subset_of(4, std::vector<Elem>{0, s->element("2")});
        require(row, v.m_witness && subset_of(4, v.m_witness->members) == two,
                "theta_I does not fail at I = {0,2}");
        if (v.m_witness) {
          row.details.push_back("witness: " + v.m_witness->reason);
        }
      }
      auto const h = sflatvon_harness(s, cx.opts.bound, cx.opts.tensor);
      row.details.push_back(std::string("harness: ") + to_string(h.verdict) + " after "
                            + str(h.searched) + " modules");
      require(row, h.verdict == HarnessVerdict::witness_found, "harness found no witness");
      require(row, h.witness && h.witness->subject->size() == 2, "witness is not of size 2");
    }

    void inclusion_row(Context& cx, ReproRow& row) {
      for (auto const& id : kSweep) {
        auto const& sv = cx.survey(id);
        require_tally(row, sv.e_implies_i, id);
        require_tally(row, sv.m_implies_i, id);
        require(row, sv.e_implies_i.instances == sv.pairs && sv.m_implies_i.instances == sv.pairs,
                id + ": undecided pairs");
        require(row, sv.skipped.empty(), id + ": pairs skipped");
      }
    }

    void route_row(Context& cx, ReproRow& row) {
      for (auto const& id : kSweep) {
        auto const& sv = cx.survey(id);
        require_tally(row, sv.route_agreement, id);
        require_tally(row, sv.criterion_agreement, id);
        require(row, sv.route_agreement.instances == sv.pairs, id + ": undecided pairs");
        require(row, sv.criterion_agreement.instances == sv.subjects.size(),
                id + ": S-flatness skipped");
        for (auto const& w : sv.strictness) {
          row.details.push_back(id + " strictness: " + w);
        }
      }
    }

    void closure_row(Context& cx, ReproRow& row) {
      for (auto const& id : kSweep) {
        auto const s = cx.resolve(id);
        auto const t = check_flat_closure(s, cx.opts.bound, cx.survey_config(s));
        for (std::size_t k = 0; k < t.size(); ++k) {
          require_tally(row, t[k], id, k < 2);
        }
      }
    }

    void oracle_row(Context& cx, ReproRow& row) {
      std::size_t checked = 0, uncertified = 0, skipped = 0;
      for (auto const& id : kSweep) {
        auto const s = cx.resolve(id);
        // Sums M (+) N reach 2|M|; cap 24 admits them for |F| <= 3, and
        // for |F| = 4 when |M| <= 3.  Larger sums take minutes each.
        auto cfg = cx.survey_config(s);
        cfg.cap  = std::max<std::size_t>(cfg.cap, 24);
        TensorCache cache(cfg);
        auto const  left  = enumerate_semimodules(s, Side::left, cx.opts.bound);
        auto const  right = enumerate_semimodules(s, Side::right, cx.opts.bound);
        std::vector<ModulePtr> partners;
        for (auto const& n : left) {
          if (n->size() == 2) {
            partners.push_back(n);
          }
        }
        std::size_t k = 0;
        for (auto const& f : right) {
          for (auto const& m : left) {
            auto const& n = partners.empty() ? m : partners[k++ % partners.size()];
            auto const  r = verify_tensor_oracles(f, m, n, cache);
            ++checked;
            uncertified += r.uncertified;
            skipped += r.skipped.size();
            for (auto const& why : r.failures) {
              row.failures.push_back(id + " " + f->name() + " (x) " + m->name() + ": " + why);
            }
          }
        }
      }
      row.details.push_back(str(checked) + " factor pairs checked, " + str(skipped)
                            + " sum checks over the cap, " + str(uncertified)
                            + " uncertified tensors");
      require(row, checked > 0, "nothing checked");
      require(row, uncertified == 0, "tensors failed certification");
    }

    void bezout_row(Context& cx, ReproRow& row) {
      for (auto const& id : {"chain:3", "chain:4"}) {
        auto const s    = cx.resolve(id);
        auto const prof = regularity_profile(s);
        bool const abc  = prof.abc && prof.abc->all();
        require(row, abc, std::string(id) + ": ABC conditions fail");
        require(row, prof.left_bezout && prof.right_bezout, std::string(id) + ": not Bezout");
        auto const r = bez_neumann_check(s, cx.opts.bound, cx.opts.tensor);
        row.details.push_back(std::string(id) + ": " + str(r.normally_generated)
                              + " normally generated of " + str(r.modules) + ", "
                              + str(r.confirmed) + " S-m-flat, " + str(r.refutations.size())
                              + " refutations");
        require(row, r.premise(), std::string(id) + ": premise fails");
        require(row, r.refutations.empty(), std::string(id) + ": refuted at " +
                                                (r.refutations.empty() ? "" : r.refutations.front()));
        require(row, r.inconclusive == 0 && r.normally_generated > 0,
                std::string(id) + ": inconclusive or empty");
      }
    }

    void exactness_row(Context& cx, ReproRow& row) {
      SweepConfig cfg;
      cfg.max_size   = cx.opts.bound;
      cfg.outer_size = cx.opts.bound;
      cfg.tensor     = cx.opts.tensor;
      for (auto const& id : kSweep) {
        for (auto const& t : exactness_suite(cx.resolve(id), cfg)) {
          require_tally(row, t, id, false);
        }
      }
    }

    struct RowSpec {
      char const* key;
      int         criterion;
      char const* claim;
      char const* method;
      char const* caps;
      void (*run)(Context&, ReproRow&);
    };

    RowSpec const kRows[] = {
        {"matrix", 1, "A = [[0,1],[2,3]] over chain(4) is not regular; chain(4) itself is regular",
         "brute force over all B and all s", "n = 2, 256 candidates", matrix_row},
        {"chain3", 2, "chain(3) is regular and additively regular; Sa is no direct summand",
         "exhaustive over all one-sided ideals", "3 ideals per side", chain3_row},
        {"theta", 3, "M (x) S and S (x) M are isomorphic to M via the action",
         "certified tensor, bijectivity of the induced map", "|S|,|M| <= 5, |S||M| <= 20",
         theta_row},
        {"z4", 4, "Z/4 is subtractive, not regular; Z/2 is not S-m/i/e-flat",
         "theta_I criterion and the contrapositive harness", "modules up to the bound", z4_row},
        {"inclusions", 5, "e-flat => i-flat and m-flat => i-flat",
         "definition route over all pairs", "|F|,|M| <= bound", inclusion_row},
        {"routes", 6, "e-flat routes agree; theta_I criterion matches the definition",
         "normal monomorphisms vs tensored sequences; theta_I vs definition",
         "|F|,|M| <= bound", route_row},
        {"closure", 7, "direct sums and retracts preserve relative flatness",
         "exhaustive over modules, retract pairs and canonical sequences",
         "|F||M| within the tensor cap", closure_row},
        {"oracles", 8, "tensor oracles hold and every tensor is certified",
         "theta, direct-sum distribution and cokernel preservation", "|F|,|M| <= bound; sums within cap 24",
         oracle_row},
        {"bezout", 9, "chain(3), chain(4) satisfy ABC, are Bezout; normally generated modules are S-m-flat",
         "star inverses, ideal scan, normal generation search", "modules up to the bound",
         bezout_row},
        {"exactness", 10, "exactness and normality characterisations, pullbacks, cokernel maps, right exactness",
         "exhaustive over generated morphism families", "modules up to the bound", exactness_row},
    };
  }  // namespace

  std::vector<std::string> reproduce_row_keys() {
    std::vector<std::string> out;
    for (auto const& r : kRows) {
      out.emplace_back(r.key);
    }
    return out;
  }

  std::vector<ReproRow> reproduce(ReproOptions const& options) {
    auto const keys = reproduce_row_keys();
    for (auto const& k : options.only) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        throw UnknownReference(k);
      }
    }
    Context               cx(options);
    std::vector<ReproRow> out;
    for (auto const& spec : kRows) {
      if (!options.only.empty()
          && std::find(options.only.begin(), options.only.end(), spec.key) == options.only.end()) {
        continue;
      }
      ReproRow row;
      row.key       = spec.key;
      row.criterion = spec.criterion;
      row.claim     = spec.claim;
      row.method    = spec.method;
      row.caps      = std::string(spec.caps) + "; bound " + str(options.bound) + ", tensor cap "
                 + str(options.tensor.cap) + ", slack " + str(options.tensor.slack);
      auto const t0 = std::chrono::steady_clock::now();
      try {
        spec.run(cx, row);
      } catch (std::exception const& e) {
        row.failures.push_back(std::string("error: ") + e.what());
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.passed  = row.failures.empty();
      out.push_back(std::move(row));
    }
    return out;
  }

}  // namespace semiflat
