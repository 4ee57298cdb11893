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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "semiflat/semiring.hpp"
#include "semiflat/tensor.hpp"

namespace semiflat {

  /// One reproduced claim and its verdict.
  struct ReproRow {
    std::string key;        // stable id accepted by --only
    int         criterion = 0;
    std::string claim;
    std::string method;     // how the verdict was obtained
    std::string caps;       // bounds the verdict depends on
    bool        passed = false;
    std::vector<std::string> details;
    std::vector<std::string> failures;
    double      seconds = 0;
  };

  struct ReproOptions {
    /// Row keys to run; empty means all.  Unknown keys throw
    /// UnknownReference.
    std::vector<std::string> only;
    TensorConfig             tensor{};
    std::size_t              bound = 4;
    /// Replaces catalog semirings by id; used to inject faulty tables.
    std::map<std::string, SemiringPtr> overrides;
  };

  /// Row keys in criterion order.
  std::vector<std::string> reproduce_row_keys();

  std::vector<ReproRow> reproduce(ReproOptions const& options = {});

}  // namespace semiflat
