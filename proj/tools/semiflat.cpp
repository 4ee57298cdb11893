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


// semiflat: command-line front end for the workbench.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semiflat/error.hpp"
#include "semiflat/reproduce.hpp"
#include "semiflat/semiring.hpp"
#include "semiflat/workspace.hpp"

namespace {

  using nlohmann::json;
  using namespace semiflat;

  struct Globals {
    std::string               workspace;
    std::string               format = "text";
    std::optional<long long>  bound, cap, slack;
    bool                      timing = false;
    std::size_t               jobs   = 1;
  };

  std::size_t checked(long long v, char const* name) {
    if (v <= 0 && std::string(name) != "slack") {
      throw BadCaps(std::string(name) + " must be positive");
    }
    if (v < 0) {
      throw BadCaps(std::string(name) + " is negative");
    }
    return static_cast<std::size_t>(v);
  }

  WorkspaceConfig load(Globals const& g) {
    auto config = g.workspace.empty() ? WorkspaceConfig{} : parse_workspace(g.workspace);
    if (g.bound) config.caps.module_size_bound = checked(*g.bound, "bound");
    if (g.cap) config.caps.tensor_cap = checked(*g.cap, "cap");
    if (g.slack) config.caps.slack = checked(*g.slack, "slack");
    validate_caps(config.caps);
    return config;
  }

  int emit(Globals const& g, WorkspaceConfig const& config) {
    auto const report = run(config, {g.timing, g.jobs});
    std::cout << (g.format == "structured" ? render_structured(report) : render_text(report));
    return report.exit_code();
  }

  int list_catalog(Globals const& g) {
    json out = json::array();
    for (auto const& id : catalog_examples()) {
      auto const s = catalog_semiring(id);
      out.push_back({{"id", id},
                     {"size", s->size()},
                     {"commutative", s->is_commutative()},
                     {"additively_idempotent", s->is_additively_idempotent()}});
    }
    if (g.format == "structured") {
      std::cout << json{{"schema_version", kSchemaVersion}, {"catalog", out}}.dump(2) << "\n";
      return 0;
    }
    for (auto const& e : out) {
      std::cout << e["id"].get<std::string>() << "  " << e["size"] << " elements"
                << (e["commutative"].get<bool>() ? ", commutative" : "")
                << (e["additively_idempotent"].get<bool>() ? ", additively idempotent" : "") << "\n";
    }
    std::cout << "parametrised: chain:<n>, truncation:<k>, zmod:<n>, product:<id>*<id>, "
                 "matrix:<id>:<n>, opposite:<id>\n";
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for finite semirings and semimodules"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--workspace", g.workspace, "Workspace file (JSON)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--bound", g.bound, "Largest module size in sweeps and harnesses");
  app.add_option("--cap", g.cap, "Largest generator set in the tensor construction");
  app.add_option("--slack", g.slack, "Extra generator-set size beyond the carrier bound");
  app.add_flag("--timing", g.timing, "Include wall-clock times (reports stop being byte-stable)");
  app.add_option("--jobs", g.jobs, "Analyses evaluated concurrently")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Parse and check a workspace");
  auto* analyze  = app.add_subcommand("analyze", "Run every analysis of a workspace");

  auto*       tensor = app.add_subcommand("tensor", "Tensor product of a right and a left semimodule");
  std::string right, left, oracles;
  tensor->add_option("--right", right, "Right semimodule id")->required();
  tensor->add_option("--left", left, "Left semimodule id")->required();
  tensor->add_option("--oracles", oracles, "Also check the oracles against this left semimodule");

  auto*       flatness = app.add_subcommand("flatness", "Flatness of a right semimodule");
  std::string subject, target = "S", route = "both";
  flatness->add_option("--subject", subject, "Right semimodule id")->required();
  flatness->add_option("--target", target, "Left semimodule id, S, or all")->capture_default_str();
  flatness->add_option("--route", route, "e-flatness route")
      ->check(CLI::IsMember({"definition", "ses", "both"}))
      ->capture_default_str();

  auto*                    regularity = app.add_subcommand("regularity", "Regularity profile of a semiring");
  std::string              semiring_id;
  std::optional<std::size_t> matrix_n;
  std::string              matrix;
  bool                     sflatvon = false, bez = false;
  regularity->add_option("--semiring", semiring_id, "Semiring id")->required();
  regularity->add_option("--matrix-scan", matrix_n, "Scan M_n(S) for non-regular elements");
  regularity->add_option("--matrix", matrix, "Only scan this matrix, e.g. [[0,3],[1,2]] (labels)");
  regularity->add_flag("--sflatvon", sflatvon, "Search for a module that is not S-e-flat");
  regularity->add_flag("--bez-neumann", bez, "Check S-m-flatness of normally generated modules");

  auto*                    repro = app.add_subcommand("reproduce-paper", "Run the acceptance suite");
  std::vector<std::string> only, overrides;
  repro->add_option("--only", only, "Row key (repeatable)");
  repro->add_option("--override", overrides, "Replace a catalog semiring: <id>=<id> (fault injection)");

  auto* catalog = app.add_subcommand("catalog", "Catalog semirings");
  auto* list    = catalog->add_subcommand("list", "List representative catalog ids");
  catalog->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? 0 : kInputErrorExit;
  }

  try {
    if (list->parsed()) {
      return list_catalog(g);
    }
    if ((validate->parsed() || analyze->parsed()) && g.workspace.empty()) {
      throw ParseError("--workspace is required", 0);
    }
    auto config = load(g);
    if (validate->parsed()) {
      config.analyses.clear();
      add_analysis(config, {{"kind", "validate"}});
    } else if (tensor->parsed()) {
      json req = {{"kind", "tensor"}, {"right", right}, {"left", left}};
      if (!oracles.empty()) req["oracles"] = oracles;
      config.analyses.clear();
      add_analysis(config, req);
    } else if (flatness->parsed()) {
      config.analyses.clear();
      add_analysis(config, {{"kind", "flatness"}, {"subject", subject}, {"target", target}, {"route", route}});
    } else if (regularity->parsed()) {
      json req = {{"kind", "regularity"}, {"semiring", semiring_id}, {"sflatvon", sflatvon}, {"bez_neumann", bez}};
      if (matrix_n || !matrix.empty()) {
        json scan = {{"n", matrix_n.value_or(0)}};
        if (!matrix.empty()) {
          json rows;
          try {
            rows = json::parse(matrix);
          } catch (json::parse_error const&) {
            throw ParseError("--matrix " + matrix + ": not a nested list", 0);
          }
          if (!rows.is_array()) {
            throw ParseError("--matrix " + matrix + ": not a nested list", 0);
          }
          // accept bare numbers as labels
          for (auto& row : rows) {
            if (!row.is_array()) {
              throw ParseError("--matrix " + matrix + ": not a nested list", 0);
            }
            for (auto& x : row) {
              if (!x.is_string()) x = x.dump();
            }
          }
          if (!matrix_n) scan["n"] = rows.size();
          scan["matrices"] = json::array({rows});
        }
        req["matrix_scan"] = scan;
      }
      config.analyses.clear();
      add_analysis(config, req);
    } else if (repro->parsed()) {
      json req = {{"kind", "reproduce"}, {"only", only}};
      json ov  = json::object();
      for (auto const& o : overrides) {
        auto const eq = o.find('=');
        if (eq == std::string::npos) {
          throw ParseError("--override " + o + ": expected <id>=<id>", 0);
        }
        ov[o.substr(0, eq)] = o.substr(eq + 1);
      }
      req["override"] = ov;
      config.analyses.clear();
      add_analysis(config, req);
    }
    return emit(g, config);
  } catch (UnknownReference const& e) {
    std::cerr << "error: unknown reference " << e.id() << "\n";
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kInputErrorExit;
}
