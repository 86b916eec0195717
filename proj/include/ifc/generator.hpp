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

#ifndef IFC_GENERATOR_HPP_
#define IFC_GENERATOR_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ifc/interpreter.hpp"
#include "ifc/rng.hpp"
#include "ifc/typechecker.hpp"

namespace ifc {

struct GenConfig {
  std::uint64_t rng_seed = 42;
  int max_depth = 5;
  int max_for_span = 4;
  std::int64_t int_min = -8;
  std::int64_t int_max = 8;
  std::int64_t fuel = 10000;
  int trials = 1000;
  int max_bindings = 6;
};

// Runtime shape of a variable. Security types do not separate ints from
// bools, so the generator tracks this alongside Γ to keep programs from
// failing on kind mismatches. Generated names carry it as their first letter:
// i int, b bool, u unit, r/c reference to an int, f function on ints,
// k loop index, p parameter (int).
enum class VKind { Int, Bool, Unit, RefInt, Fun };

VKind kind_of_name(const std::string& name);

// Closed lambdas used as values for function-typed bindings, one per type
// gen_tenv may produce.
const std::vector<std::pair<SecType, std::string>>& closure_templates();

// 0..max_bindings bindings over Low, High, ref Low, ref High and the function
// types of closure_templates().
TEnv gen_tenv(const GenConfig& cfg, Rng& rng);

// What the final item of a generated program should be.
enum class GenTarget {
  Any,
  LowResult,  // an expression the checker types Low, ref Low or as a function
};

struct GenStats {
  int statement_retries = 0;
  int program_retries = 0;
  int fallbacks = 0;
};

// A program e with check(tenv, pc, e) accepted. Statements are built from the
// typing rules whose side conditions the current context can meet, and each
// one is confirmed by the checker before it extends the context. After a
// bounded number of rejected attempts the literal `0` is returned.
ExprPtr gen_welltyped(const GenConfig& cfg, Rng& rng, const TEnv& tenv, const SecType& pc,
                      GenTarget target = GenTarget::Any, GenStats* stats = nullptr);

// Two states related by Γ ⊢ s1 =Low s2 (asserted). Low bindings agree, High
// bindings are drawn independently, references get fresh cells, and function
// bindings share one closure.
std::pair<State, State> gen_lowequiv_states(const GenConfig& cfg, Rng& rng, const TEnv& tenv);

}  // namespace ifc

#endif  // IFC_GENERATOR_HPP_
