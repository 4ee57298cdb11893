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


#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "semiflat/enumerate.hpp"
#include "semiflat/error.hpp"
#include "semiflat/exactness.hpp"
#include "semiflat/flatness.hpp"
#include "semiflat/properties.hpp"
#include "semiflat/regularity.hpp"
#include "semiflat/reproduce.hpp"
#include "semiflat/workspace.hpp"

namespace semiflat {

  using nlohmann::json;

  char const* to_string(Status s) noexcept {
    switch (s) {
      case Status::ok: return "ok";
      case Status::violations: return "violations";
      case Status::inconclusive: return "inconclusive";
      case Status::error: return "error";
    }
    return "?";
  }

  int AnalysisReport::exit_code() const noexcept {
    bool error = false, inconclusive = false;
    for (auto const& e : entries) {
      if (e.status == Status::violations) {
        return 2;
      }
      error        = error || e.status == Status::error;
      inconclusive = inconclusive || e.status == Status::inconclusive;
    }
    return error ? 4 : inconclusive ? 3 : 0;
  }

  namespace {

    std::string str(std::size_t n) { return std::to_string(n); }

    // Raises the status; the order is ok < inconclusive < violations.
    void raise(Status& s, Status to) {
      auto rank = [](Status x) { return x == Status::violations ? 2 : x == Status::inconclusive ? 1 : 0; };
      if (rank(to) > rank(s)) {
        s = to;
      }
    }

    std::string caps_label(Caps const& c) {
      return "tensor_cap=" + str(c.tensor_cap) + " slack=" + str(c.slack)
           + " enum_cap=" + str(c.enum_cap) + " bound=" + str(c.module_size_bound);
    }

    json labels_of(Semimodule const& m, std::vector<Elem> const& elems) {
      json out = json::array();
      for (auto e : elems) {
        out.push_back(m.label(e));
      }
      return out;
    }

    std::string set_label(json const& labels) {
      std::string out = "{";
      for (std::size_t i = 0; i < labels.size(); ++i) {
        out += (i ? "," : "") + labels[i].get<std::string>();
      }
      return out + "}";
    }

    json ideal_json(Semiring const& s, std::optional<Subset> const& x) {
      if (!x) {
        return nullptr;
      }
      json out = json::array();
      for (Elem e = 0; e < s.size(); ++e) {
        if ((*x)[e]) {
          out.push_back(s.label(e));
        }
      }
      return out;
    }

    json tally_json(PropertyTally const& t) {
      return {{"name", t.name},
              {"instances", t.instances},
              {"violations", t.violations},
              {"examples", t.examples}};
    }

    std::string tally_line(PropertyTally const& t) {
      return t.name + ": " + str(t.instances) + " instances, " + str(t.violations) + " violations";
    }

    void check_enum(Caps const& caps, Semimodule const& m, char const* what) {
      if (m.size() > caps.enum_cap) {
        throw SizeCapExceeded(what, m.size(), caps.enum_cap);
      }
    }

    // Per-kind runners fill data, lines, method and status.
    struct Ctx {
      WorkspaceConfig const& config;
      json const&            p;
      AnalysisEntry&         out;
      RunOptions const&      options;

      std::string text(char const* key) const { return p.at(key).get<std::string>(); }
      bool flag(char const* key) const { return p.value(key, false); }
      void line(std::string s) { out.lines.push_back(std::move(s)); }
      Caps const& caps() const { return config.caps; }
    };

    json verdict_json(FlatnessVerdict const& v, std::string const& subject, std::string const& target) {
      auto witness = [&](std::optional<FlatWitness> const& w) -> json {
        if (!w) {
          return nullptr;
        }
        return {{"members", labels_of(*v.target, w->members)}, {"reason", w->reason}};
      };
      json out = {{"subject", subject},
                  {"target", target},
                  {"m_flat", to_string(v.m_flat)},
                  {"i_flat", to_string(v.i_flat)},
                  {"e_flat", to_string(v.e_flat)},
                  {"e_flat_definition", to_string(v.e_flat_definition)},
                  {"e_flat_ses", to_string(v.e_flat_ses)},
                  {"routes_agree", v.routes_agree},
                  {"inclusions_hold", v.inclusions_hold()},
                  {"subsemimodules", v.subsemimodules},
                  {"subtractive", v.subtractive},
                  {"routes", v.routes},
                  {"witnesses",
                   {{"m", witness(v.m_witness)}, {"i", witness(v.i_witness)}, {"e", witness(v.e_witness)}}}};
      out["criterion_agrees"] = v.criterion_agrees ? json(*v.criterion_agrees) : json(nullptr);
      out["cause"]            = v.cause.empty() ? json(nullptr) : json(v.cause);
      return out;
    }

    Status verdict_status(FlatnessVerdict const& v) {
      if (!v.inclusions_hold() || !v.routes_agree || v.criterion_agrees == false) {
        return Status::violations;
      }
      for (auto t : {v.m_flat, v.i_flat, v.e_flat}) {
        if (t == Tri::inconclusive) {
          return Status::inconclusive;
        }
      }
      return Status::ok;
    }

    void verdict_lines(Ctx& c, json const& v) {
      c.line(v["subject"].get<std::string>() + " vs " + v["target"].get<std::string>()
             + ": m-flat " + v["m_flat"].get<std::string>() + ", i-flat "
             + v["i_flat"].get<std::string>() + ", e-flat " + v["e_flat"].get<std::string>()
             + " (definition " + v["e_flat_definition"].get<std::string>() + ", ses "
             + v["e_flat_ses"].get<std::string>() + ")");
      for (char const* k : {"m", "i", "e"}) {
        auto const& w = v["witnesses"][k];
        if (!w.is_null()) {
          c.line(std::string("  ") + k + "-witness L = " + set_label(w["members"]) + ": "
                 + w["reason"].get<std::string>());
        }
      }
      if (!v["cause"].is_null()) {
        c.line("  inconclusive: " + v["cause"].get<std::string>());
      }
    }

    void run_validate(Ctx& c) {
      c.out.method = "exhaustive axiom checks while parsing";
      json semirings = json::array(), modules = json::array(), maps = json::array();
      for (auto const& [id, s] : c.config.semirings) {
        semirings.push_back({{"id", id},
                             {"size", s->size()},
                             {"commutative", s->is_commutative()},
                             {"additively_idempotent", s->is_additively_idempotent()}});
        c.line("semiring " + id + ": " + str(s->size()) + " elements");
      }
      for (auto const& [id, m] : c.config.modules) {
        modules.push_back({{"id", id}, {"side", to_string(m->side())}, {"size", m->size()}});
        c.line(std::string(to_string(m->side())) + " semimodule " + id + ": " + str(m->size())
               + " elements");
      }
      for (auto const& [id, f] : c.config.morphisms) {
        auto const prof = classify_morphism(f);
        maps.push_back({{"id", id},
                        {"injective", prof.injective},
                        {"surjective", prof.surjective},
                        {"k_normal", prof.k_normal},
                        {"i_normal", prof.i_normal}});
        c.line("morphism " + id + ": " + (prof.injective ? "injective" : "not injective") + ", "
               + (prof.surjective ? "surjective" : "not surjective") + ", "
               + (prof.normal ? "normal" : "not normal"));
      }
      c.out.data = {{"semirings", semirings},
                    {"semimodules", modules},
                    {"morphisms", maps},
                    {"analyses", c.config.analyses.size()}};
    }

    void run_regularity(Ctx& c) {
      auto const id = c.text("semiring");
      auto const s  = c.config.semiring(id);
      auto const r  = regularity_profile(s);
      c.out.method  = "exhaustive search over S";

      auto witnesses = [&](std::vector<std::optional<Elem>> const& w) {
        json out = json::object();
        for (Elem a = 0; a < s->size(); ++a) {
          out[s->label(a)] = w[a] ? json(s->label(*w[a])) : json(nullptr);
        }
        return out;
      };
      json d = {{"semiring", id},
                {"size", s->size()},
                {"vn_regular", r.vn_regular},
                {"vn_witness", witnesses(r.vn_witness)},
                {"additively_regular", r.additively_regular},
                {"additive_witness", witnesses(r.additive_witness)},
                {"left_subtractive", r.left_subtractive},
                {"right_subtractive", r.right_subtractive},
                {"left_offending", ideal_json(*s, r.left_offending)},
                {"right_offending", ideal_json(*s, r.right_offending)},
                {"left_bezout", r.left_bezout},
                {"right_bezout", r.right_bezout},
                {"left_nonprincipal", ideal_json(*s, r.left_nonprincipal)},
                {"right_nonprincipal", ideal_json(*s, r.right_nonprincipal)},
                {"left_idempotent_principal", r.left_idempotent_principal},
                {"right_idempotent_principal", r.right_idempotent_principal},
                {"left_ideals", r.left_ideals},
                {"right_ideals", r.right_ideals}};
      if (r.abc) {
        d["abc"] = {{"a", r.abc->a}, {"b", r.abc->b}, {"c", r.abc->c}};
      } else {
        d["abc"] = nullptr;
      }

      auto yn = [](bool b) { return b ? "yes" : "no"; };
      c.line("regularity of " + id + " (" + str(s->size()) + " elements)");
      c.line("  element  vN witness  additive witness");
      for (Elem a = 0; a < s->size(); ++a) {
        auto cell = [&](std::optional<Elem> const& w) { return w ? s->label(*w) : std::string("-"); };
        std::ostringstream row;
        row << "  " << s->label(a);
        row << std::string(9 - std::min<std::size_t>(8, s->label(a).size()), ' ') << cell(r.vn_witness[a]);
        row << std::string(12 - std::min<std::size_t>(11, cell(r.vn_witness[a]).size()), ' ')
            << cell(r.additive_witness[a]);
        c.line(row.str());
      }
      c.line(std::string("  von Neumann regular: ") + yn(r.vn_regular) + ", additively regular: "
             + yn(r.additively_regular));
      c.line(std::string("  subtractive: left ") + yn(r.left_subtractive) + ", right "
             + yn(r.right_subtractive) + "; Bezout: left " + yn(r.left_bezout) + ", right "
             + yn(r.right_bezout));
      c.line("  ideals: " + str(r.left_ideals) + " left, " + str(r.right_ideals) + " right");
      if (r.abc) {
        c.line(std::string("  conditions A/B/C: ") + yn(r.abc->a) + "/" + yn(r.abc->b) + "/"
               + yn(r.abc->c));
      }

      if (auto it = c.p.find("matrix_scan"); it != c.p.end()) {
        auto const n = it->at("n").get<std::size_t>();
        std::optional<std::vector<Matrix>> elements;
        if (auto m = it->find("matrices"); m != it->end()) {
          elements.emplace();
          for (auto const& a : *m) {
            elements->push_back(matrix_from_labels(*s, a.get<std::vector<std::vector<std::string>>>()));
          }
        }
        auto const scan = matrix_regularity_scan(s, n, elements);
        json non_regular = json::array();
        for (auto const& a : scan.non_regular) {
          non_regular.push_back(matrix_label(*s, n, a));
        }
        json witnesses = json::array();
        for (auto const& w : scan.witnesses) {
          witnesses.push_back(w ? json(matrix_label(*s, n, *w)) : json(nullptr));
        }
        d["matrix_scan"] = {{"n", n},
                            {"scanned", scan.scanned},
                            {"searched", scan.searched},
                            {"complete", scan.complete},
                            {"non_regular", non_regular},
                            {"witnesses", witnesses},
                            {"base_vn_regular", scan.base_vn_regular},
                            {"matrix_vn_regular", scan.complete ? json(scan.matrix_vn_regular) : json(nullptr)},
                            {"implication_holds", scan.implication_holds}};
        c.out.method += "; matrix scan over all " + str(scan.searched) + " candidates";
        c.line("  M_" + str(n) + ": " + str(scan.scanned) + " matrices scanned, " + str(scan.non_regular.size())
               + " not regular (" + str(scan.searched) + " candidates each)");
        if (elements) {
          for (std::size_t i = 0; i < elements->size(); ++i) {
            auto const& w = scan.witnesses[i];
            c.line("    " + matrix_label(*s, n, (*elements)[i])
                   + (w ? ": regular, B = " + matrix_label(*s, n, *w) : ": no B with ABA = A"));
          }
        } else {
          for (std::size_t i = 0; i < std::min<std::size_t>(scan.non_regular.size(), 8); ++i) {
            c.line("    not regular: " + non_regular[i].get<std::string>());
          }
        }
        if (!scan.implication_holds) {
          c.line("  VIOLATION: M_n(S) regular but S is not");
          raise(c.out.status, Status::violations);
        }
      }

      auto const bound = c.caps().module_size_bound;
      if (c.flag("sflatvon")) {
        auto const h = sflatvon_harness(s, bound, c.caps().tensor());
        d["sflatvon"] = {{"verdict", to_string(h.verdict)},
                         {"subtractive", h.subtractive},
                         {"vn_regular", h.vn_regular},
                         {"note", h.note},
                         {"bound", h.bound},
                         {"searched", h.searched},
                         {"witness",
                          h.witness ? verdict_json(*h.witness, h.witness->subject->name(), h.witness->target->name())
                                    : json(nullptr)},
                         {"witness_side", to_string(h.witness_side)}};
        c.line(std::string("  flat-implies-regular harness: ") + to_string(h.verdict) + " (" + h.note + ")");
        if (h.verdict == HarnessVerdict::no_witness_within_bound) {
          raise(c.out.status, Status::inconclusive);
        }
      }
      if (c.flag("bez_neumann")) {
        auto const b = bez_neumann_check(s, bound, c.caps().tensor());
        d["bez_neumann"] = {{"premise_left", b.premise_left},
                            {"premise_right", b.premise_right},
                            {"bound", b.bound},
                            {"modules", b.modules},
                            {"normally_generated", b.normally_generated},
                            {"confirmed", b.confirmed},
                            {"inconclusive", b.inconclusive},
                            {"refutations", b.refutations}};
        c.line("  Bezout check: premise " + std::string(yn(b.premise())) + ", " + str(b.modules)
               + " modules, " + str(b.normally_generated) + " normally generated, " + str(b.confirmed)
               + " S-m-flat, " + str(b.inconclusive) + " inconclusive, " + str(b.refutations.size())
               + " refutations");
        if (!b.refutations.empty()) {
          raise(c.out.status, Status::violations);
        } else if (b.inconclusive > 0) {
          raise(c.out.status, Status::inconclusive);
        }
      }
      c.out.data = std::move(d);
    }

    Route route_of(json const& p) {
      auto const r = p.value("route", std::string("both"));
      return r == "definition" ? Route::definition : r == "ses" ? Route::ses : Route::both;
    }

    std::string route_method(Route r) {
      switch (r) {
        case Route::definition: return "definition route";
        case Route::ses: return "exact-sequence route";
        case Route::both: return "definition and exact-sequence routes";
      }
      return "";
    }

    void run_flatness(Ctx& c) {
      auto const subject = c.text("subject");
      auto const target  = c.text("target");
      auto const f       = c.config.module(subject);
      auto const route   = route_of(c.p);
      TensorCache cache(c.caps().tensor());
      c.out.method = route_method(route);

      if (target == "S") {
        check_enum(c.caps(), *regular_module(f->base(), Side::left), "S");
        auto const v = s_flatness(f, cache);
        auto       j = verdict_json(v, subject, "S");
        verdict_lines(c, j);
        c.out.method = "definition route and ideal criterion over S";
        c.out.status = verdict_status(v);
        c.out.data   = std::move(j);
        return;
      }
      std::vector<std::pair<std::string, ModulePtr>> targets;
      if (target == "all") {
        for (auto const& m : enumerate_semimodules(f->base(), Side::left, c.caps().module_size_bound)) {
          targets.emplace_back(m->name(), m);
        }
      } else {
        targets.emplace_back(target, c.config.module(target));
      }

      json   verdicts = json::array();
      std::size_t over_cap = 0;
      for (auto const& [name, m] : targets) {
        check_enum(c.caps(), *m, "target");
        FlatnessVerdict v;
        try {
          v = flatness_wrt(f, m, cache, route);
        } catch (SizeCapExceeded const& e) {
          if (targets.size() == 1) {
            throw;
          }
          ++over_cap;
          raise(c.out.status, Status::inconclusive);
          verdicts.push_back({{"subject", subject}, {"target", name}, {"skipped", e.what()}});
          continue;
        }
        auto j = verdict_json(v, subject, name);
        if (targets.size() == 1 || v.m_flat != Tri::yes || v.i_flat != Tri::yes || v.e_flat != Tri::yes) {
          verdict_lines(c, j);
        }
        raise(c.out.status, verdict_status(v));
        verdicts.push_back(std::move(j));
      }
      if (targets.size() == 1) {
        c.out.data = verdicts[0];
        return;
      }
      std::size_t flat = 0;
      for (auto const& v : verdicts) {
        flat += v.value("m_flat", "") == "true" && v.value("i_flat", "") == "true" && v.value("e_flat", "") == "true";
      }
      c.line(subject + ": flat in every sense against " + str(flat) + " of " + str(targets.size())
             + " targets" + (over_cap ? ", " + str(over_cap) + " over the tensor cap" : ""));
      c.out.data = {{"subject", subject},
                    {"targets", targets.size()},
                    {"flat_against", flat},
                    {"over_cap", over_cap},
                    {"verdicts", verdicts}};
    }

    void run_s_flatness(Ctx& c) {
      auto const id = c.text("module");
      auto const f  = c.config.module(id);
      check_enum(c.caps(), *regular_module(f->base(), Side::left), "S");
      auto const v = s_flatness(f, c.caps().tensor());
      auto       j = verdict_json(v, id, "S");
      verdict_lines(c, j);
      c.out.method = "definition route and ideal criterion over S";
      c.out.status = verdict_status(v);
      c.out.data   = std::move(j);
    }

    void run_survey(Ctx& c) {
      auto const id = c.text("semiring");
      auto const sv = flatness_survey(c.config.semiring(id), c.caps().module_size_bound, c.caps().tensor());
      json subjects = json::array();
      for (auto const& sc : sv.subjects) {
        json j = {{"subject", sc.subject->name()},
                  {"m_flat", to_string(sc.m_flat)},
                  {"i_flat", to_string(sc.i_flat)},
                  {"e_flat", to_string(sc.e_flat)}};
        j["s_flat"] = sc.s_flat ? json({{"m_flat", to_string(sc.s_flat->m_flat)},
                                        {"i_flat", to_string(sc.s_flat->i_flat)},
                                        {"e_flat", to_string(sc.s_flat->e_flat)}})
                                : json(nullptr);
        subjects.push_back(std::move(j));
      }
      json tallies = json::array();
      for (auto const* t : {&sv.e_implies_i, &sv.m_implies_i, &sv.route_agreement,
                            &sv.criterion_agreement, &sv.certified, &sv.free_flat}) {
        tallies.push_back(tally_json(*t));
        c.line(tally_line(*t));
      }
      c.line(str(sv.subjects.size()) + " subjects, " + str(sv.targets) + " targets, " + str(sv.pairs)
             + " pairs, " + str(sv.inconclusive) + " inconclusive, " + str(sv.skipped.size()) + " skipped");
      for (auto const& s : sv.strictness) {
        c.line("strict: " + s);
      }
      c.out.method = "exhaustive sweep; definition and exact-sequence routes; ideal criterion over S";
      c.out.data   = {{"semiring", id},
                      {"bound", sv.bound},
                      {"targets", sv.targets},
                      {"pairs", sv.pairs},
                      {"subjects", subjects},
                      {"tallies", tallies},
                      {"strictness", sv.strictness},
                      {"inconclusive", sv.inconclusive},
                      {"skipped", sv.skipped}};
      if (!sv.passed()) {
        raise(c.out.status, Status::violations);
      } else if (sv.inconclusive > 0 || !sv.skipped.empty()) {
        raise(c.out.status, Status::inconclusive);
      }
    }

    json class_labels(TensorProduct const& t) {
      json out = json::array();
      for (auto const& reps : t.representatives) {
        std::string s;
        for (auto const& [f, m] : reps) {
          s += (s.empty() ? "" : " + ") + t.left->label(f) + "(x)" + t.right->label(m);
        }
        out.push_back(s.empty() ? "0" : s);
      }
      return out;
    }

    void run_tensor(Ctx& c) {
      auto const fid = c.text("right"), mid = c.text("left");
      auto const f = c.config.module(fid), m = c.config.module(mid);
      auto const t = tensor(f, m, c.caps().tensor());
      json pure = json::array();
      for (Elem a = 0; a < f->size(); ++a) {
        json row = json::array();
        for (Elem b = 0; b < m->size(); ++b) {
          row.push_back(t.pure(a, b));
        }
        pure.push_back(std::move(row));
      }
      auto const classes = class_labels(t);
      c.out.method = "generator-set universe with congruence closure, certified";
      c.out.data   = {{"right", fid},
                      {"left", mid},
                      {"size", t.size()},
                      {"certified", t.certified},
                      {"failure", t.failure.empty() ? json(nullptr) : json(t.failure)},
                      {"universe", t.universe},
                      {"cap_used", t.cap_used},
                      {"classes", classes},
                      {"pure", pure}};
      c.line(fid + " (x) " + mid + ": " + str(t.size()) + " elements, "
             + (t.certified ? "certified" : "NOT certified: " + t.failure));
      for (std::size_t i = 0; i < classes.size(); ++i) {
        c.line("  [" + str(i) + "] " + classes[i].get<std::string>());
      }
      if (!t.certified) {
        raise(c.out.status, Status::inconclusive);
      }
      if (auto it = c.p.find("oracles"); it != c.p.end()) {
        auto const nid = it->get<std::string>();
        auto const r   = verify_tensor_oracles(f, m, c.config.module(nid), c.caps().tensor());
        c.out.data["oracles"] = {{"with", nid},
                                 {"theta_ok", r.theta_ok},
                                 {"sum_ok", r.sum_ok},
                                 {"cokernel_ok", r.cokernel_ok},
                                 {"failures", r.failures},
                                 {"skipped", r.skipped},
                                 {"uncertified", r.uncertified}};
        c.line(std::string("  oracles: theta ") + (r.theta_ok ? "ok" : "FAIL") + ", sums "
               + (r.sum_ok ? "ok" : "FAIL") + ", cokernels " + (r.cokernel_ok ? "ok" : "FAIL") + ", "
               + str(r.skipped.size()) + " skipped");
        for (auto const& f : r.failures) {
          c.line("  failure: " + f);
        }
        if (!r.passed()) {
          raise(c.out.status, Status::violations);
        } else if (r.uncertified > 0 || !r.skipped.empty()) {
          raise(c.out.status, Status::inconclusive);
        }
      }
    }

    void run_sequence(Ctx& c) {
      Sequence seq;
      auto const ids = c.p.at("maps").get<std::vector<std::string>>();
      for (auto const& id : ids) {
        seq.maps.push_back(c.config.morphism(id));
      }
      auto const v = classify_sequence(seq);
      json nodes = json::array();
      for (std::size_t i = 0; i < v.nodes.size(); ++i) {
        auto const& n = v.nodes[i];
        nodes.push_back({{"between", {ids[i], ids[i + 1]}},
                         {"chain_complex", n.chain_complex},
                         {"proper_exact", n.proper_exact},
                         {"semi_exact", n.semi_exact},
                         {"g_k_normal", n.g_k_normal},
                         {"exact", n.exact}});
        c.line(ids[i] + " -> " + ids[i + 1] + ": " + (n.exact ? "exact" : n.proper_exact ? "proper-exact" : n.semi_exact ? "semi-exact" : n.chain_complex ? "complex only" : "not a complex"));
      }
      c.out.method = "element-wise kernel and image comparison";
      c.out.data   = {{"maps", ids},
                      {"nodes", nodes},
                      {"chain_complex", v.chain_complex},
                      {"proper_exact", v.proper_exact},
                      {"semi_exact", v.semi_exact},
                      {"exact", v.exact}};
      if (ids.size() == 2) {
        auto const s = is_short_exact(seq.maps[0], seq.maps[1]);
        c.out.data["short_exact"] = {{"holds", s.holds},
                                     {"f_injective", s.f_injective},
                                     {"proper_exact", s.proper_exact},
                                     {"g_surjective", s.g_surjective},
                                     {"g_k_normal", s.g_k_normal},
                                     {"f_normal", s.f_normal},
                                     {"g_normal", s.g_normal}};
        c.line(std::string("short exact: ") + (s.holds ? "yes" : "no"));
      }
    }

    void run_tallies(Ctx& c, std::vector<PropertyTally> const& tallies) {
      json out = json::array();
      for (auto const& t : tallies) {
        out.push_back(tally_json(t));
        c.line(tally_line(t));
        for (auto const& e : t.examples) {
          c.line("  violation: " + e);
        }
        if (t.violations > 0) {
          raise(c.out.status, Status::violations);
        }
      }
      c.out.data = {{"semiring", c.text("semiring")}, {"tallies", out}};
    }

    void run_exactness(Ctx& c) {
      auto const b = c.caps().module_size_bound;
      SweepConfig cfg{b, b, std::min<std::size_t>(b, 3), c.caps().tensor()};
      c.out.method = "exhaustive over modules, subsemimodules and generated morphisms";
      run_tallies(c, exactness_suite(c.config.semiring(c.text("semiring")), cfg));
    }

    void run_closure(Ctx& c) {
      c.out.method = "exhaustive over module pairs and retractions";
      run_tallies(c, check_flat_closure(c.config.semiring(c.text("semiring")),
                                        c.caps().module_size_bound, c.caps().tensor()));
    }

    void run_reproduce(Ctx& c) {
      ReproOptions o;
      o.tensor = c.caps().tensor();
      o.bound  = c.caps().module_size_bound;
      o.only   = c.p.value("only", std::vector<std::string>{});
      if (auto it = c.p.find("override"); it != c.p.end()) {
        for (auto const& [k, v] : it->items()) {
          o.overrides[k] = c.config.semiring(v.get<std::string>());
        }
      }
      json rows = json::array();
      for (auto const& r : reproduce(o)) {
        json j = {{"key", r.key},
                  {"criterion", r.criterion},
                  {"claim", r.claim},
                  {"method", r.method},
                  {"caps", r.caps},
                  {"passed", r.passed},
                  {"details", r.details},
                  {"failures", r.failures}};
        if (c.options.timing) {
          j["seconds"] = r.seconds;
        }
        rows.push_back(std::move(j));
        c.line(std::string(r.passed ? "PASS" : "FAIL") + "  " + r.key + "  " + r.claim);
        c.line("      method: " + r.method + "; caps: " + r.caps);
        for (auto const& d : r.details) {
          c.line("      " + d);
        }
        for (auto const& f : r.failures) {
          c.line("      failure: " + f);
        }
        if (!r.passed) {
          raise(c.out.status, Status::violations);
        }
      }
      c.out.method = "per-row, see rows";
      c.out.data   = {{"rows", rows}};
    }

    std::string error_kind(std::exception const& e) {
      if (dynamic_cast<SizeCapExceeded const*>(&e)) return "size_cap_exceeded";
      if (dynamic_cast<UnknownReference const*>(&e)) return "unknown_reference";
      if (dynamic_cast<AxiomViolation const*>(&e)) return "axiom_violation";
      if (dynamic_cast<EndpointMismatch const*>(&e)) return "endpoint_mismatch";
      if (dynamic_cast<HypothesisFailure const*>(&e)) return "hypothesis_failure";
      if (dynamic_cast<NotSubtractive const*>(&e)) return "not_subtractive";
      if (dynamic_cast<CertificationFailure const*>(&e)) return "certification_failure";
      if (dynamic_cast<Error const*>(&e)) return "error";
      return "internal";
    }

  }  // namespace

  AnalysisEntry run_one(WorkspaceConfig const& config,
                        AnalysisRequest const& request,
                        RunOptions const&      options) {
    AnalysisEntry out;
    out.kind  = request.kind;
    out.label = request.label;
    out.caps  = caps_label(config.caps);
    Ctx  c{config, request.params, out, options};
    auto start = std::chrono::steady_clock::now();
    try {
      auto const& k = request.kind;
      if (k == "validate") run_validate(c);
      else if (k == "regularity") run_regularity(c);
      else if (k == "flatness") run_flatness(c);
      else if (k == "s_flatness") run_s_flatness(c);
      else if (k == "survey") run_survey(c);
      else if (k == "tensor") run_tensor(c);
      else if (k == "sequence") run_sequence(c);
      else if (k == "exactness_suite") run_exactness(c);
      else if (k == "closure") run_closure(c);
      else if (k == "reproduce") run_reproduce(c);
      else throw UnknownReference(k);
    } catch (std::exception const& e) {
      out.status = Status::error;
      out.data   = {{"error", error_kind(e)}, {"message", e.what()}};
      out.lines  = {"error (" + error_kind(e) + "): " + e.what()};
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

  AnalysisReport run(WorkspaceConfig const& config, RunOptions const& options) {
    AnalysisReport report;
    report.timing = options.timing;
    report.entries.resize(config.analyses.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < config.analyses.size();) {
        report.entries[i]       = run_one(config, config.analyses[i], options);
        report.entries[i].index = i;
      }
    };
    auto const jobs = std::max<std::size_t>(1, std::min(options.jobs, config.analyses.size()));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
      t.join();
    }

    // ordered reduction: the entries vector is already in request order
    for (auto const& e : report.entries) {
      if (e.status == Status::error) {
        if (report.status == Status::ok || report.status == Status::inconclusive) {
          report.status = Status::error;
        }
      } else if (e.status == Status::violations) {
        report.status = Status::violations;
      } else if (e.status == Status::inconclusive && report.status == Status::ok) {
        report.status = Status::inconclusive;
      }
    }
    return report;
  }

  std::string render_text(AnalysisReport const& report) {
    std::ostringstream out;
    out << "semiflat report (schema " << kSchemaVersion << ")\n";
    if (report.entries.empty()) {
      out << "no analyses requested\n";
    }
    for (auto const& e : report.entries) {
      out << "\n[" << e.index << "] " << e.kind << " " << e.label << ": " << to_string(e.status) << "\n";
      if (!e.method.empty()) {
        out << "  method: " << e.method << "\n";
      }
      out << "  caps: " << e.caps << "\n";
      for (auto const& l : e.lines) {
        out << "  " << l << "\n";
      }
      if (report.timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", e.seconds);
        out << "  time: " << buf << "s\n";
      }
    }
    out << "\noverall: " << to_string(report.status) << " (exit " << report.exit_code() << ")\n";
    return out.str();
  }

  std::string render_structured(AnalysisReport const& report) {
    json entries = json::array();
    for (auto const& e : report.entries) {
      json j = {{"index", e.index},
                {"kind", e.kind},
                {"label", e.label},
                {"status", to_string(e.status)},
                {"method", e.method},
                {"caps", e.caps},
                {"data", e.data}};
      if (report.timing) {
        j["seconds"] = e.seconds;
      }
      entries.push_back(std::move(j));
    }
    json doc = {{"schema_version", kSchemaVersion},
                {"status", to_string(report.status)},
                {"exit_code", report.exit_code()},
                {"entries", entries}};
    return doc.dump(2) + "\n";
  }

}  // namespace semiflat
