//  Copyright 2026 The rescript-ifc Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef IFC_PARSER_HPP_
#define IFC_PARSER_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ifc/syntax.hpp"

namespace ifc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, std::string message, std::vector<std::string> expected = {});

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::string& message() const noexcept { return message_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int col_;
  std::string message_;
  std::vector<std::string> expected_;
};

// Nesting beyond this many levels is rejected rather than risking the stack.
inline constexpr int kMaxParseDepth = 400;

/// Parses a whole program. Throws ParseError on the first problem.
ExprPtr parse(std::string_view source);

/// Parses a type annotation (`low`, `ref high`, `(low -> high @ ())`).
/// Purely syntactic: the result may fail `well_formed`.
SecType parse_type(std::string_view source);

}  // namespace ifc

#endif  // IFC_PARSER_HPP_
