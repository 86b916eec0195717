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

// Every well-formed security type of nesting depth at most 2, with an
// index computed from the structure so lookups need no hashing.
//
//   D0 = {Low, High, ()}                         levels
//   D1 = {Low, High, (), ref Low, ref High} ∪ Fun(D0, D0, D0)         32 types
//   D2 = {Low, High, (), ref Low, ref High} ∪ Fun(D1, D1, D0)       3077 types

#ifndef IFC_TESTS_TYPE_SPACE_HPP_
#define IFC_TESTS_TYPE_SPACE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ifc/syntax.hpp"

namespace ifc::testing {

inline const std::vector<SecType>& levels() {
  static const std::vector<SecType> v = {SecType::low(), SecType::high(), SecType::empty()};
  return v;
}

inline std::optional<int> level_index(const SecType& t) {
  switch (t.kind()) {
    case SecType::Kind::Low: return 0;
    case SecType::Kind::High: return 1;
    case SecType::Kind::Empty: return 2;
    default: return std::nullopt;
  }
}

// Low, High, (), ref Low, ref High at indices 0..4.
inline std::optional<int> base_index(const SecType& t) {
  if (auto l = level_index(t)) return l;
  if (t.is_ref()) return t.inner().is_low() ? 3 : 4;
  return std::nullopt;
}

inline std::optional<int> d1_index(const SecType& t) {
  if (auto b = base_index(t)) return b;
  if (!t.is_fun()) return std::nullopt;
  auto p = level_index(t.param()), r = level_index(t.result()), l = level_index(t.latent());
  if (!p || !r || !l) return std::nullopt;
  return 5 + 9 * *p + 3 * *r + *l;
}

inline std::optional<int> d2_index(const SecType& t) {
  if (auto b = base_index(t)) return b;
  if (!t.is_fun()) return std::nullopt;
  auto p = d1_index(t.param()), r = d1_index(t.result()), l = level_index(t.latent());
  if (!p || !r || !l) return std::nullopt;
  return 5 + (*p * 32 + *r) * 3 + *l;
}

inline std::vector<SecType> bases() {
  return {SecType::low(), SecType::high(), SecType::empty(), SecType::ref(SecType::low()),
          SecType::ref(SecType::high())};
}

inline const std::vector<SecType>& d1() {
  static const std::vector<SecType> v = [] {
    std::vector<SecType> out = bases();
    for (const auto& p : levels())
      for (const auto& r : levels())
        for (const auto& l : levels()) out.push_back(SecType::fun(p, r, l));
    return out;
  }();
  return v;
}

inline const std::vector<SecType>& d2() {
  static const std::vector<SecType> v = [] {
    std::vector<SecType> out = bases();
    for (const auto& p : d1())
      for (const auto& r : d1())
        for (const auto& l : levels()) out.push_back(SecType::fun(p, r, l));
    return out;
  }();
  return v;
}

// Replaces every latent effect by (), the component the order ignores.
inline SecType erase_latent(const SecType& t) {
  if (!t.is_fun()) return t;
  return SecType::fun(erase_latent(t.param()), erase_latent(t.result()), SecType::empty());
}

}  // namespace ifc::testing

#endif  // IFC_TESTS_TYPE_SPACE_HPP_
