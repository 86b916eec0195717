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

#include "ifc/equivalence.hpp"

#include <vector>

#include "ifc/rng.hpp"

namespace ifc {

namespace {

class Comparer {
 public:
  Comparer(const EquivConfig& cfg, EquivStats* stats)
      : cfg_(cfg), stats_(stats ? stats : &scratch_), rng_(cfg.rng_seed) {}

  bool equiv(const Value& v1, const Store& s1, const Value& v2, const Store& s2, const SecType& t,
             int depth) {
    switch (t.kind()) {
      case SecType::Kind::Ref:
        return equiv(v1, s1, v2, s2, t.inner(), depth);
      case SecType::Kind::High:
      case SecType::Kind::Empty:
        return v1.index() == v2.index();
      case SecType::Kind::Low:
        return low(v1, s1, v2, s2);
      case SecType::Kind::Fun:
        return closures(v1, s1, v2, s2, t, depth);
    }
    return false;
  }

 private:
  bool low(const Value& v1, const Store& s1, const Value& v2, const Store& s2) {
    if (v1.index() != v2.index()) return false;
    if (const auto* l1 = std::get_if<LocV>(&v1)) {
      const Value* c1 = s1.find(l1->id);
      const Value* c2 = s2.find(std::get<LocV>(v2).id);
      if (!c1 || !c2) return false;
      // Contents of a location are never themselves locations for
      // well-typed programs; guard against cycles in hand-built stores.
      if (is_loc(*c1) || is_loc(*c2)) return same_value(*c1, *c2);
      return low(*c1, s1, *c2, s2);
    }
    return same_value(v1, v2);
  }

  bool closures(const Value& v1, const Store& s1, const Value& v2, const Store& s2,
                const SecType& t, int depth) {
    const auto* p1 = std::get_if<ClosV>(&v1);
    const auto* p2 = std::get_if<ClosV>(&v2);
    if (!p1 || !p2) return false;
    const Closure& c1 = **p1;
    const Closure& c2 = **p2;
    ++stats_->closure_pairs;

    // The relation only speaks about two instances of the same function text.
    if (c1.param != c2.param || *c1.body != *c2.body) return false;
    if (same_value(v1, v2)) {
      ++stats_->identical;
      return true;
    }
    if (depth <= 0) return false;

    if (c1.env->size() != c2.env->size()) return false;
    for (auto a = c1.env->begin(), b = c2.env->begin(); a != c1.env->end(); ++a, ++b) {
      if (a->first != b->first) return false;
    }

    const SecType& ta = t.param();
    const SecType& tb = t.result();
    for (int i = 0; i < cfg_.closure_samples; ++i) {
      Store st1 = s1;
      Store st2 = s2;
      Value a1, a2;
      std::vector<std::pair<LocId, LocId>> low_cells;
      if (!sample(ta, st1, st2, a1, a2, low_cells)) {
        ++stats_->inconclusive;
        continue;
      }
      ++stats_->samples;
      Outcome o1 = apply_closure(c1, a1, st1, cfg_.closure_fuel);
      Outcome o2 = apply_closure(c2, a2, st2, cfg_.closure_fuel);
      auto* r1 = std::get_if<Ok>(&o1);
      auto* r2 = std::get_if<Ok>(&o2);
      if (!r1 || !r2) {
        ++stats_->inconclusive;
        continue;
      }
      if (!equiv(r1->value, r1->state.store, r2->value, r2->state.store, tb, depth - 1)) return false;
      for (const auto& [l1, l2] : low_cells) {
        if (!low(LocV{l1}, r1->state.store, LocV{l2}, r2->state.store)) return false;
      }
    }
    return true;
  }

  // Draws (a1, a2) related at `t`, allocating cells when t is a reference.
  bool sample(const SecType& t, Store& st1, Store& st2, Value& a1, Value& a2,
              std::vector<std::pair<LocId, LocId>>& low_cells) {
    switch (t.kind()) {
      case SecType::Kind::Low: {
        a1 = a2 = IntV{small()};
        return true;
      }
      case SecType::Kind::High:
      case SecType::Kind::Empty:
        a1 = IntV{small()};
        a2 = IntV{small()};
        return true;
      case SecType::Kind::Ref: {
        const std::int64_t x = small();
        const std::int64_t y = t.inner().is_low() ? x : small();
        const LocId l1 = st1.alloc(IntV{x});
        const LocId l2 = st2.alloc(IntV{y});
        a1 = LocV{l1};
        a2 = LocV{l2};
        if (t.inner().is_low()) low_cells.emplace_back(l1, l2);
        return true;
      }
      case SecType::Kind::Fun:
        return false;
    }
    return false;
  }

  std::int64_t small() { return rng_.range(-8, 8); }

  const EquivConfig& cfg_;
  EquivStats scratch_;
  EquivStats* stats_;
  Rng rng_;
};

}  // namespace

bool value_equiv(const Value& v1, const Store& s1, const Value& v2, const Store& s2,
                 const SecType& t, const EquivConfig& cfg, EquivStats* stats) {
  return Comparer(cfg, stats).equiv(v1, s1, v2, s2, t, cfg.closure_depth);
}

bool low_equiv(const TEnv& tenv, const State& s1, const State& s2, const EquivConfig& cfg,
               EquivStats* stats) {
  Comparer cmp(cfg, stats);
  for (const auto& [x, t] : tenv) {
    const bool constrained = t.is_low() || (t.is_ref() && t.inner().is_low()) || t.is_fun();
    if (!constrained) continue;
    auto i1 = s1.env.find(x);
    auto i2 = s2.env.find(x);
    if (i1 == s1.env.end() || i2 == s2.env.end()) return false;
    const SecType& at = t.is_fun() ? t : SecType::low();
    if (!cmp.equiv(i1->second, s1.store, i2->second, s2.store, at, cfg.closure_depth)) return false;
  }
  return true;
}

}  // namespace ifc
