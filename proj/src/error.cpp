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


#include "semiflat/error.hpp"

#include <utility>

namespace semiflat {

  namespace {
    std::string with_witness(std::string const&       what,
                             std::vector<Elem> const& witness) {
      std::string out = what + " (witness";
      for (auto w : witness) {
        out += ' ';
        out += std::to_string(w);
      }
      return out + ")";
    }
  }  // namespace

  AxiomViolation::AxiomViolation(std::string axiom, std::vector<Elem> witness)
      : Error("axiom violated: " + with_witness(axiom, witness)),
        _axiom(std::move(axiom)),
        _witness(std::move(witness)) {}

  SizeCapExceeded::SizeCapExceeded(std::string what,
                                   std::size_t requested,
                                   std::size_t cap)
      : Error(what + ": size " + std::to_string(requested) + " exceeds cap "
              + std::to_string(cap)),
        _requested(requested),
        _cap(cap) {}

  IllDefined::IllDefined(std::string what, std::vector<Elem> witness)
      : Error("ill-defined: " + with_witness(what, witness)),
        _witness(std::move(witness)) {}

  HypothesisFailure::HypothesisFailure(std::string which)
      : Error("hypothesis failed: " + which), _which(std::move(which)) {}

  NonUnique::NonUnique(std::string what, std::vector<Elem> witness)
      : Error("not unique: " + with_witness(what, witness)),
        _witness(std::move(witness)) {}

  ParseError::ParseError(std::string what, std::size_t line)
      : Error(line == 0 ? "parse error: " + what
                        : "parse error at line " + std::to_string(line) + ": " + what),
        _line(line) {}

  UnknownReference::UnknownReference(std::string id)
      : Error("unknown reference: " + id), _id(std::move(id)) {}

}  // namespace semiflat
