// Copyright 2026 The csg-check Authors
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

#ifndef CSG_ERROR_H_
#define CSG_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace csg {

// Position in a model or property text, 1-based. Line 0 means unknown.
struct SourcePosition {
  int line = 0;
  int column = 0;
};

struct ParseDiagnostic {
  SourcePosition position;
  std::string message;
};

std::string FormatDiagnostic(const ParseDiagnostic& d);

class CsgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or semantic error in a model/property text. Carries every
// diagnostic collected before giving up.
class ParseError : public CsgError {
 public:
  explicit ParseError(std::vector<ParseDiagnostic> diagnostics);
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

// Structurally invalid game (bad distribution, dangling state, ...).
class ModelError : public CsgError {
 public:
  using CsgError::CsgError;
};

// Formula refers to unknown labels/rewards/players or is outside the
// supported fragment.
class FormulaError : public CsgError {
 public:
  using CsgError::CsgError;
};

class UnsupportedError : public FormulaError {
 public:
  using FormulaError::FormulaError;
};

// Stopping-game assumption rejected the model for a property.
class AssumptionError : public CsgError {
 public:
  AssumptionError(int assumption, std::vector<int> states, const std::string& what);
  int assumption() const { return assumption_; }
  const std::vector<int>& states() const { return states_; }

 private:
  int assumption_;
  std::vector<int> states_;
};

class NumericalError : public CsgError {
 public:
  using CsgError::CsgError;
};

}  // namespace csg

#endif  // CSG_ERROR_H_
