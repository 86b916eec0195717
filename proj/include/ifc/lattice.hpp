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

#ifndef IFC_LATTICE_HPP_
#define IFC_LATTICE_HPP_

#include <optional>
#include <stdexcept>
#include <vector>

#include "ifc/syntax.hpp"

namespace ifc {

struct OrderResult {
  bool comparable = false;  // a ⊑ b or b ⊑ a
  bool holds = false;       // a ⊑ b
};

class LatticeError : public std::runtime_error {
 public:
  enum class Kind { Incomparable, EmptyInput };
  LatticeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// a ⊑ b. Base chain Low ⊑ High ⊑ (); functions compare by parameter
// (covariantly) and result (contravariantly), ignoring the latent effect.
// Reference types are unordered, including with themselves.
bool leq(const SecType& a, const SecType& b);

OrderResult compare(const SecType& a, const SecType& b);

// Least upper / greatest lower bound. A single-element list yields that
// element. Otherwise the bound is folded pairwise; function types combine
// componentwise (params joined, results met, or the dual for meet).
std::optional<SecType> try_join(const std::vector<SecType>& ts);
std::optional<SecType> try_meet(const std::vector<SecType>& ts);
std::optional<SecType> try_join(const SecType& a, const SecType& b);
std::optional<SecType> try_meet(const SecType& a, const SecType& b);

// Throwing forms of the above.
SecType join(const std::vector<SecType>& ts);
SecType meet(const std::vector<SecType>& ts);

}  // namespace ifc

#endif  // IFC_LATTICE_HPP_
