// Copyright 2026 The pmmwm Authors
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

#ifndef PMMWM_ERROR_HPP_
#define PMMWM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pmmwm {

enum class ErrorCode {
  kInfeasibleMatching,  // some u-vertex is unmatched
  kEdgeNotFound,
  kIsolatedVertex,
  kInfeasible,
  kPrecondition,
  kParseError,
  kGridExhausted,
  kTooLarge,
  kIo,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasibleMatching: return "InfeasibleMatching";
    case ErrorCode::kEdgeNotFound: return "EdgeNotFound";
    case ErrorCode::kIsolatedVertex: return "IsolatedVertex";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kGridExhausted: return "GridExhausted";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

// Single exception type for the library; `code()` tells callers what went
// wrong without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based line number in the offending file; 0 when not line-specific.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pmmwm

#endif  // PMMWM_ERROR_HPP_
