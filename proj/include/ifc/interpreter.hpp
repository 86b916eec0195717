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

#ifndef IFC_INTERPRETER_HPP_
#define IFC_INTERPRETER_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>

#include "ifc/syntax.hpp"

namespace ifc {

using LocId = std::int64_t;

struct Closure;

struct IntV {
  std::int64_t n = 0;
};
struct BoolV {
  bool b = false;
};
struct UnitV {};
struct LocV {
  LocId id = 0;
};
using ClosV = std::shared_ptr<const Closure>;

using Value = std::variant<IntV, BoolV, UnitV, LocV, ClosV>;
using Env = std::map<std::string, Value>;

// (body, parameter, defining environment)
struct Closure {
  ExprPtr body;
  std::string param;
  std::shared_ptr<const Env> env;
};

struct Store {
  std::map<LocId, Value> cells;
  LocId next = 0;

  // new(σ): the next unused location. Does not allocate.
  LocId fresh_loc() const noexcept { return next; }
  LocId alloc(Value v);
  const Value* find(LocId id) const;
};

struct State {
  Env env;
  Store store;
};

enum class RuntimeErrorKind {
  UnboundVar,
  NotAFunction,
  NotABool,
  NotAnInt,
  NotALoc,
  DivByZero,
  ForBoundsInvalid,
};

const char* runtime_error_name(RuntimeErrorKind k);

struct Ok {
  Value value;
  State state;
};
struct RuntimeFailure {
  RuntimeErrorKind kind;
  SourcePos at;
  std::string message;
};
struct FuelExhausted {};

using Outcome = std::variant<Ok, RuntimeFailure, FuelExhausted>;

struct EvalOptions {
  std::int64_t fuel = 10000;
  // Called after every successful rule application with the environment the
  // rule started from and the one its conclusion yields.
  std::function<void(const Expr&, const Env& in, const Env& out)> observer;
};

// Big-step evaluation. Every rule application costs one unit of fuel.
Outcome eval(const Expr& e, const Env& env, const Store& store, std::int64_t fuel);
Outcome eval(const Expr& e, const Env& env, const Store& store, const EvalOptions& opts);

// Runs the body of `c` in its captured environment extended with the
// parameter bound to `arg` (the third premise of application).
Outcome apply_closure(const Closure& c, const Value& arg, const Store& store, std::int64_t fuel);

std::string value_str(const Value& v);
std::string store_str(const Store& s);

// Structural equality; closures compare by body, parameter and captured env.
bool same_value(const Value& a, const Value& b);

inline bool is_int(const Value& v) { return std::holds_alternative<IntV>(v); }
inline bool is_bool(const Value& v) { return std::holds_alternative<BoolV>(v); }
inline bool is_unit(const Value& v) { return std::holds_alternative<UnitV>(v); }
inline bool is_loc(const Value& v) { return std::holds_alternative<LocV>(v); }
inline bool is_closure(const Value& v) { return std::holds_alternative<ClosV>(v); }

}  // namespace ifc

#endif  // IFC_INTERPRETER_HPP_
