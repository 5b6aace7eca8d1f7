// Copyright 2026 The GridSplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRIDSPLIT_ERROR_HPP
#define GRIDSPLIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gridsplit {

enum class ErrorCode {
  // system validation
  DisconnectedGraph,
  DuplicateLine,
  BadReference,
  InsufficientBlackstart,
  InvalidField,
  // numerics
  SingularMatrix,
  NotSymmetric,
  NoConvergence,
  MaxIterations,
  // coherency
  SingularInteriorBlock,
  MissingGeneratorData,
  SingularU1,
  // dispatch
  UnbalancedInjections,
  SingularB,
  LpFailure,
  LoadBoundViolated,
  // search
  TooLarge,
  BadZ,
  // file io
  ParseError,
};

/// All recoverable failures carry a code so callers can map them to
/// exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

/// True for errors caused by bad input data (CLI exit code 1) as opposed
/// to solver-side failures (exit code 2).
bool is_validation_error(ErrorCode code);

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace gridsplit

#endif  // GRIDSPLIT_ERROR_HPP
