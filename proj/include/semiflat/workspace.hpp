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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "semiflat/semimodule.hpp"
#include "semiflat/semiring.hpp"
#include "semiflat/tensor.hpp"

namespace semiflat {

  inline constexpr int kSchemaVersion = 1;

  struct Caps {
    std::size_t tensor_cap        = kDefaultTensorCap;
    std::size_t slack             = kDefaultSlack;
    std::size_t enum_cap          = kDefaultEnumCap;  // largest |M| whose subsemimodules are enumerated
    std::size_t module_size_bound = 4;                // sweeps, harnesses and target_all

    TensorConfig tensor() const { return {slack, tensor_cap}; }
  };

  /// One requested operation.  `params` keeps the raw JSON object; it is
  /// checked against the kind while parsing.
  struct AnalysisRequest {
    std::string    kind;
    std::string    label;  // `id` from the file, else "<kind>#<index>"
    nlohmann::json params;
  };

  /// A parsed workspace with every reference resolved.
  ///
  /// Semirings and modules may be named in a file or addressed directly by
  /// id.  Semiring ids are catalog ids.  Module ids follow
  ///
  ///   left:<sid> | right:<sid>              regular module
  ///   free:<n>:<side>:<sid>                 S^n
  ///   ideal:<side>:<label>:<sid>            principal one-sided ideal
  ///   quotient:<side>:<label>:<sid>         regular module over that ideal
  ///
  /// where <label> is an element label of the semiring.
  class WorkspaceConfig {
   public:
    Caps                         caps;
    std::vector<AnalysisRequest> analyses;

    std::map<std::string, SemiringPtr> semirings;  // declared, by id
    std::map<std::string, ModulePtr>   modules;
    std::map<std::string, Morphism>    morphisms;

    /// Throws UnknownReference.
    SemiringPtr semiring(std::string const& id) const;
    ModulePtr   module(std::string const& id) const;
    Morphism    morphism(std::string const& id) const;
  };

  /// Reads and validates a workspace file.  Syntax errors carry the line
  /// of the offending byte; schema errors carry line 0 and a JSON path.
  WorkspaceConfig parse_workspace(std::filesystem::path const& path);
  WorkspaceConfig parse_workspace_text(std::string const& text);

  /// Validates caps and one request, then appends it.  Throws BadCaps,
  /// ParseError or UnknownReference.
  void add_analysis(WorkspaceConfig& config, nlohmann::json const& request);
  void validate_caps(Caps const& caps);

  enum class Status { ok, violations, inconclusive, error };
  char const* to_string(Status s) noexcept;

  struct AnalysisEntry {
    std::size_t              index = 0;
    std::string              kind;
    std::string              label;
    Status                   status = Status::ok;
    std::string              method;  // how the verdicts were reached
    std::string              caps;    // bounds the verdicts depend on
    nlohmann::json           data;    // kind-specific, stable keys
    std::vector<std::string> lines;   // human-readable summary
    double                   seconds = 0;
  };

  struct AnalysisReport {
    std::vector<AnalysisEntry> entries;  // request order
    Status                     status = Status::ok;
    bool                       timing = false;

    /// 2 if any entry found a violation, else 4 if an entry raised an
    /// error, else 3 if something was inconclusive, else 0.
    int exit_code() const noexcept;
  };

  struct RunOptions {
    bool        timing = false;
    std::size_t jobs   = 1;  // entries evaluated concurrently
  };

  /// Runs every request.  An entry that throws is recorded with status
  /// error and the rest still run.
  AnalysisReport run(WorkspaceConfig const& config, RunOptions const& options = {});

  AnalysisEntry run_one(WorkspaceConfig const& config,
                        AnalysisRequest const& request,
                        RunOptions const&      options = {});

  std::string render_text(AnalysisReport const& report);
  std::string render_structured(AnalysisReport const& report);

  /// Exit code for an error that stops a command before any report exists.
  inline constexpr int kInputErrorExit = 4;

}  // namespace semiflat
