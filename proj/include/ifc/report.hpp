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

// JSON encodings shared by the CLI and the Python module. The schemas are
// described in README.md. Nothing here records timings or addresses, so equal
// inputs give byte-identical output.

#ifndef IFC_REPORT_HPP_
#define IFC_REPORT_HPP_

#include <stdexcept>

#include "ifc/harness.hpp"
#include "ifc/interpreter.hpp"
#include "ifc/typechecker.hpp"
#include "json.hpp"

namespace ifc {

using Json = nlohmann::ordered_json;

// Types are written in source syntax ("low", "ref high", "(low -> high @ ())").
Json type_json(const SecType& t);
SecType type_from_json(const Json& j);

Json ast_json(const Expr& e);
// Inverse of ast_json. Throws std::invalid_argument on malformed input.
ExprPtr ast_from_json(const Json& j);

Json tenv_json(const TEnv& env);
Json check_json(const CheckResult& r);

Json value_json(const Value& v);
Json state_json(const State& s);
Json outcome_json(const Outcome& o);

Json trial_json(const TrialResult& t);
Json suite_json(const SuiteReport& r);
Json corpus_json(const CorpusReport& r);

}  // namespace ifc

#endif  // IFC_REPORT_HPP_
