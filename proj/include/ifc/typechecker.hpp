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

#ifndef IFC_TYPECHECKER_HPP_
#define IFC_TYPECHECKER_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ifc/syntax.hpp"

namespace ifc {

using TEnv = std::map<std::string, SecType>;

// Γ, pc ⊢ e : type @ effect ▷ out_env
struct Judgment {
  SecType type;
  SecType effect;
  TEnv out_env;

  std::string str() const { return type.str() + " @ " + effect.str(); }
};

// One rule application. Frames are appended when a rule is entered, so the
// vector is the derivation in pre-order; `outcome` is filled in on exit.
struct TraceFrame {
  std::string rule;
  int depth = 0;
  std::string expr;
  SourcePos pos;
  std::string outcome;
  bool failed = false;
};

struct TypeError {
  std::string rule;
  std::string condition;  // side condition as written, e.g. "t3 ⊒ pc"
  SourcePos at;
  std::string detail;     // the instantiated types, e.g. "t3 = Low, pc = High"
  std::vector<TraceFrame> path;  // root to failing rule

  std::string str() const;
};

struct CheckOptions {
  bool record_trace = true;
};

struct CheckResult {
  std::optional<Judgment> judgment;
  std::optional<TypeError> error;
  std::vector<TraceFrame> trace;  // full derivation, empty unless recorded

  bool ok() const noexcept { return judgment.has_value(); }
};

// Syntax-directed checker. pc must be Low or High (std::invalid_argument
// otherwise).
//
// Within a rule, side conditions that mention only the context (pc, Γ, an
// annotation) are tested before the premises are checked. This changes only
// which violation is reported when several apply; it matters for programs
// such as a function definition under a High pc whose body also writes a Low
// reference, where the definition itself is the offending step.
CheckResult check(const TEnv& env, const SecType& pc, const Expr& e, CheckOptions opts = {});

// check(∅, Low, e)
CheckResult check_program(const Expr& e, CheckOptions opts = {});

std::string env_str(const TEnv& env);

}  // namespace ifc

#endif  // IFC_TYPECHECKER_HPP_
