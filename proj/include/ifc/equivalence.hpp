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

#ifndef IFC_EQUIVALENCE_HPP_
#define IFC_EQUIVALENCE_HPP_

#include <cstdint>

#include "ifc/interpreter.hpp"
#include "ifc/typechecker.hpp"

namespace ifc {

struct EquivConfig {
  int closure_samples = 8;
  // Nesting budget for closure comparison. At 0 closures are related only
  // when they are structurally identical, captured environments included.
  int closure_depth = 2;
  std::uint64_t rng_seed = 0;
  std::int64_t closure_fuel = 2000;
};

// Side channel for the sampling approximation.
struct EquivStats {
  std::int64_t closure_pairs = 0;
  std::int64_t identical = 0;     // resolved by the structural short-circuit
  std::int64_t samples = 0;       // argument pairs run through both closures
  std::int64_t inconclusive = 0;  // samples that ran out of fuel, failed, or were skipped
};

// (v1, s1) ∼_t (v2, s2). Units, ints, bools and locations of matching kind
// are related at High (and at (), treated the same way); at Low ints and
// bools must be equal and locations must hold related contents. A reference
// type is compared at the type it points to. Function types are decided by
// sampling related arguments.
bool value_equiv(const Value& v1, const Store& s1, const Value& v2, const Store& s2,
                 const SecType& t, const EquivConfig& cfg = {}, EquivStats* stats = nullptr);

// Γ ⊢ s1 =Low s2. Low and ref Low bindings must be related at Low, function
// bindings at their function type. A constrained binding missing from either
// environment makes the states unrelated; other bindings impose nothing.
bool low_equiv(const TEnv& tenv, const State& s1, const State& s2, const EquivConfig& cfg = {},
               EquivStats* stats = nullptr);

}  // namespace ifc

#endif  // IFC_EQUIVALENCE_HPP_
