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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiflat {

  /// Index of an element inside a finite carrier.  Zero is always index 0.
  using Elem = std::uint32_t;

  /// Base class of every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// A structure fails one of its axioms.  `axiom` names the law and
  /// `witness` holds the offending element indices (lowest-index first).
  class AxiomViolation : public Error {
   public:
    AxiomViolation(std::string axiom, std::vector<Elem> witness);

    std::string const&       axiom() const noexcept { return _axiom; }
    std::vector<Elem> const& witness() const noexcept { return _witness; }

   private:
    std::string       _axiom;
    std::vector<Elem> _witness;
  };

  class SizeMismatch : public Error {
    using Error::Error;
  };

  class SizeCapExceeded : public Error {
   public:
    SizeCapExceeded(std::string what, std::size_t requested, std::size_t cap);

    std::size_t requested() const noexcept { return _requested; }
    std::size_t cap() const noexcept { return _cap; }

   private:
    std::size_t _requested;
    std::size_t _cap;
  };

  class BadParams : public Error {
    using Error::Error;
  };

  /// An operation on representatives turned out not to be well defined.
  class IllDefined : public Error {
   public:
    IllDefined(std::string what, std::vector<Elem> witness);
    std::vector<Elem> const& witness() const noexcept { return _witness; }

   private:
    std::vector<Elem> _witness;
  };

  class EndpointMismatch : public Error {
    using Error::Error;
  };

  class ShapeError : public Error {
    using Error::Error;
  };

  class NotSubtractive : public Error {
    using Error::Error;
  };

  class HypothesisFailure : public Error {
   public:
    explicit HypothesisFailure(std::string which);
    std::string const& which() const noexcept { return _which; }

   private:
    std::string _which;
  };

  class NotAdditivelyRegular : public Error {
    using Error::Error;
  };

  class NonUnique : public Error {
   public:
    NonUnique(std::string what, std::vector<Elem> witness);
    std::vector<Elem> const& witness() const noexcept { return _witness; }

   private:
    std::vector<Elem> _witness;
  };

  /// Raised when a map that must be bijective by theory is not.  Signals a
  /// defect in the tensor engine rather than bad input.
  class CertificationFailure : public Error {
    using Error::Error;
  };

  /// `line` is 1-based; 0 means the error is not tied to a line.
  class ParseError : public Error {
   public:
    ParseError(std::string what, std::size_t line);
    std::size_t line() const noexcept { return _line; }

   private:
    std::size_t _line;
  };

  class UnknownReference : public Error {
   public:
    explicit UnknownReference(std::string id);
    std::string const& id() const noexcept { return _id; }

   private:
    std::string _id;
  };

  class BadCaps : public Error {
    using Error::Error;
  };

}  // namespace semiflat
