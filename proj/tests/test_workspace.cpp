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


#include "doctest.h"
#include "semiflat/workspace.hpp"

using namespace semiflat;
using nlohmann::json;

namespace {
  AnalysisReport run_text(std::string const& text, RunOptions const& o = {}) {
    return run(parse_workspace_text(text), o);
  }
}  // namespace

TEST_CASE("a file declaring chain:4 and a matrix scan is a valid config") {
  auto const c = parse_workspace_text(R"({
    "schema_version": 1,
    "semirings": ["chain:4"],
    "analyses": [{"kind": "regularity", "semiring": "chain:4", "matrix_scan": {"n": 2}}]
  })");
  REQUIRE(c.analyses.size() == 1);
  CHECK(c.analyses[0].label == "regularity#0");
  CHECK(c.semirings.count("chain:4") == 1);
  CHECK(c.caps.tensor_cap == kDefaultTensorCap);
}

TEST_CASE("undefined references are rejected while parsing") {
  CHECK_THROWS_AS(parse_workspace_text(R"({"analyses": [{"kind": "s_flatness", "module": "M"}]})"),
                  UnknownReference);
  CHECK_THROWS_AS(parse_workspace_text(R"({"analyses": [{"kind": "survey", "semiring": "chain:x"}]})"),
                  UnknownReference);
  CHECK_THROWS_AS(parse_workspace_text(R"({"morphisms": [{"id": "f", "dom": "left:chain:3",
                                            "cod": "left:nope", "map": [0, 1, 2]}]})"),
                  UnknownReference);
  CHECK_THROWS_AS(parse_workspace_text(R"({"analyses": [{"kind": "reproduce", "only": ["nope"]}]})"),
                  UnknownReference);
}

TEST_CASE("caps must be positive") {
  CHECK_THROWS_AS(parse_workspace_text(R"({"caps": {"tensor_cap": -1}})"), BadCaps);
  CHECK_THROWS_AS(parse_workspace_text(R"({"caps": {"module_size_bound": 0}})"), BadCaps);
  CHECK_THROWS_AS(parse_workspace_text(R"({"caps": {"enum_cap": 11}})"), BadCaps);
  CHECK_NOTHROW(parse_workspace_text(R"({"caps": {"slack": 0}})"));
}

TEST_CASE("syntax errors carry the line") {
  try {
    parse_workspace_text("{\n  \"analyses\": [\n    {\"kind\": }\n  ]\n}");
    FAIL("expected ParseError");
  } catch (ParseError const& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_workspace_text(R"({"analyses": [{"kind": "frobnicate"}]})");
    FAIL("expected ParseError");
  } catch (ParseError const& e) {
    CHECK(e.line() == 0);
    CHECK(std::string(e.what()).find("analyses[0].kind") != std::string::npos);
  }
}

TEST_CASE("table semirings and modules are validated") {
  // max-plus on {0,1} without an absorbing zero
  CHECK_THROWS_AS(parse_workspace_text(R"({"semirings": [{"id": "T",
                    "add": [[0, 1], [1, 1]], "mul": [[0, 1], [1, 1]]}]})"),
                  AxiomViolation);
  auto const c = parse_workspace_text(R"({
    "semirings": [{"id": "B", "add": [[0, 1], [1, 1]], "mul": [[0, 0], [0, 1]]}],
    "semimodules": [{"id": "V", "base": "B", "side": "right", "size": 2,
                     "add": [[0, 1], [1, 1]], "action": [[0, 0], [0, 1]]}]
  })");
  CHECK(c.module("V")->size() == 2);
  CHECK(c.module("V")->side() == Side::right);
}

TEST_CASE("module ids resolve through the grammar") {
  WorkspaceConfig c;
  CHECK(c.module("left:zmod:4")->size() == 4);
  CHECK(c.module("free:2:right:boolean")->size() == 4);
  CHECK(c.module("ideal:left:2:zmod:4")->size() == 2);
  CHECK(c.module("quotient:left:2:zmod:4")->size() == 2);
  CHECK(c.module("quotient:right:1:chain:3")->size() == 2);
  CHECK_THROWS_AS(c.module("free:0:left:boolean"), UnknownReference);
  CHECK_THROWS_AS(c.module("ideal:up:2:zmod:4"), UnknownReference);
  CHECK_THROWS_AS(c.module("ideal:left:7:zmod:4"), UnknownReference);
}

TEST_CASE("an empty analysis list gives an empty ok report") {
  auto const r = run_text(R"({"analyses": []})");
  CHECK(r.entries.empty());
  CHECK(r.status == Status::ok);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("regularity of chain(4) renders its profile") {
  auto const r = run_text(R"({"analyses": [{"kind": "regularity", "semiring": "chain:4",
                             "matrix_scan": {"n": 2, "matrices": [[["0", "1"], ["2", "3"]]]}}]})");
  REQUIRE(r.entries.size() == 1);
  auto const& d = r.entries[0].data;
  CHECK(r.entries[0].status == Status::ok);
  CHECK(d["vn_regular"] == true);
  CHECK(d["additively_regular"] == true);
  CHECK(d["vn_witness"]["1"] == "3");
  CHECK(d["matrix_scan"]["searched"] == 256);
  CHECK(d["matrix_scan"]["witnesses"][0].is_null());
  CHECK(render_text(r).find("[[0,1],[2,3]]: no B with ABA = A") != std::string::npos);
}

TEST_CASE("Z/2 is not flat relative to Z/4") {
  auto const r = run_text(R"({"analyses": [{"kind": "flatness",
                             "subject": "quotient:right:2:zmod:4", "target": "left:zmod:4"}]})");
  auto const& d = r.entries.at(0).data;
  CHECK(r.entries[0].status == Status::ok);
  CHECK(d["m_flat"] == "false");
  CHECK(d["i_flat"] == "false");
  CHECK(d["e_flat"] == "false");
  CHECK(d["witnesses"]["m"]["members"] == json({"0", "2"}));
  CHECK(d["routes_agree"] == true);
  CHECK(d["inclusions_hold"] == true);
}

TEST_CASE("one failing analysis does not abort the batch") {
  auto const r = run_text(R"({"analyses": [
      {"kind": "tensor", "right": "right:zmod:6", "left": "left:zmod:6"},
      {"kind": "regularity", "semiring": "chain:3"}]})");
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].status == Status::error);
  CHECK(r.entries[0].data["error"] == "size_cap_exceeded");
  CHECK(r.entries[1].status == Status::ok);
  CHECK(r.status == Status::error);
  CHECK(r.exit_code() == 4);
}

TEST_CASE("reports are deterministic across runs and job counts") {
  auto const text = R"({"caps": {"module_size_bound": 3}, "analyses": [
      {"kind": "survey", "semiring": "boolean"},
      {"kind": "flatness", "subject": "right:chain:3", "target": "all"},
      {"kind": "tensor", "right": "free:2:right:boolean", "left": "left:boolean"},
      {"kind": "closure", "semiring": "boolean"}]})";
  auto const a = render_structured(run_text(text));
  auto const b = render_structured(run_text(text, {false, 4}));
  CHECK(a == b);
  CHECK(a.find("seconds") == std::string::npos);
  CHECK(render_structured(run_text(text, {true, 1})).find("seconds") != std::string::npos);
  auto const doc = json::parse(a);
  auto const& all = doc["entries"][1]["data"];
  CHECK(all["targets"].get<int>() > 0);
  CHECK(all["flat_against"] == all["targets"]);  // the regular module is flat
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["status"] == "ok");
  for (auto const& e : doc["entries"]) {
    CHECK(!e["method"].get<std::string>().empty());
    CHECK(!e["caps"].get<std::string>().empty());
  }
}

TEST_CASE("an injected table bug turns the reproduction row red") {
  auto const r = run_text(R"({"analyses": [{"kind": "reproduce", "only": ["matrix"],
                             "override": {"chain:4": "zmod:4"}}]})");
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].data["rows"].size() == 1);
  CHECK(r.entries[0].data["rows"][0]["passed"] == false);
  CHECK(r.status == Status::violations);
  CHECK(r.exit_code() == 2);

  auto const clean = run_text(R"({"analyses": [{"kind": "reproduce", "only": ["matrix"]}]})");
  CHECK(clean.entries[0].data["rows"][0]["passed"] == true);
  CHECK(clean.exit_code() == 0);
}

TEST_CASE("sequences are classified from declared morphisms") {
  auto const r = run_text(R"({
    "morphisms": [
      {"id": "i", "dom": "ideal:left:2:zmod:4", "cod": "left:zmod:4", "map": {"0": "0", "2": "2"}},
      {"id": "p", "dom": "left:zmod:4", "cod": "quotient:left:2:zmod:4", "map": [0, 1, 0, 1]}],
    "analyses": [{"kind": "sequence", "maps": ["i", "p"]}]})");
  auto const& d = r.entries.at(0).data;
  CHECK(d["exact"] == true);
  CHECK(d["short_exact"]["holds"] == true);
}
