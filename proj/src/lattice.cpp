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

#include "ifc/lattice.hpp"

namespace ifc {

namespace {

int rank(const SecType& t) {
  switch (t.kind()) {
    case SecType::Kind::Low: return 0;
    case SecType::Kind::High: return 1;
    case SecType::Kind::Empty: return 2;
    default: return -1;
  }
}

std::optional<SecType> bound2(const SecType& a, const SecType& b, bool upper);

std::optional<SecType> bound_fun(const SecType& a, const SecType& b, bool upper) {
  auto param = bound2(a.param(), b.param(), upper);
  if (!param) return std::nullopt;
  auto result = bound2(a.result(), b.result(), !upper);
  if (!result) return std::nullopt;
  auto latent = bound2(a.latent(), b.latent(), !upper);
  if (!latent) return std::nullopt;
  return SecType::fun(*param, *result, *latent);
}

std::optional<SecType> bound2(const SecType& a, const SecType& b, bool upper) {
  if (a.is_level() && b.is_level()) {
    const bool pick_a = upper ? rank(a) >= rank(b) : rank(a) <= rank(b);
    return pick_a ? a : b;
  }
  if (a.is_fun() && b.is_fun()) return bound_fun(a, b, upper);
  return std::nullopt;
}

std::optional<SecType> fold(const std::vector<SecType>& ts, bool upper) {
  if (ts.empty()) return std::nullopt;
  std::optional<SecType> acc = ts.front();
  for (std::size_t i = 1; i < ts.size() && acc; ++i) acc = bound2(*acc, ts[i], upper);
  return acc;
}

std::string list_str(const std::vector<SecType>& ts) {
  std::string s = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + ts[i].str();
  return s + "}";
}

}  // namespace

bool leq(const SecType& a, const SecType& b) {
  if (a.is_level() && b.is_level()) return rank(a) <= rank(b);
  if (a.is_fun() && b.is_fun()) return leq(a.param(), b.param()) && leq(b.result(), a.result());
  return false;
}

OrderResult compare(const SecType& a, const SecType& b) {
  const bool ab = leq(a, b);
  return {ab || leq(b, a), ab};
}

std::optional<SecType> try_join(const std::vector<SecType>& ts) { return fold(ts, true); }
std::optional<SecType> try_meet(const std::vector<SecType>& ts) { return fold(ts, false); }
std::optional<SecType> try_join(const SecType& a, const SecType& b) { return bound2(a, b, true); }
std::optional<SecType> try_meet(const SecType& a, const SecType& b) { return bound2(a, b, false); }

SecType join(const std::vector<SecType>& ts) {
  if (ts.empty()) throw LatticeError(LatticeError::Kind::EmptyInput, "join of empty set");
  if (auto r = try_join(ts)) return *r;
  throw LatticeError(LatticeError::Kind::Incomparable, "no least upper bound for " + list_str(ts));
}

SecType meet(const std::vector<SecType>& ts) {
  if (ts.empty()) throw LatticeError(LatticeError::Kind::EmptyInput, "meet of empty set");
  if (auto r = try_meet(ts)) return *r;
  throw LatticeError(LatticeError::Kind::Incomparable,
                     "no greatest lower bound for " + list_str(ts));
}

}  // namespace ifc
