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

#include "ifc/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ifc/lattice.hpp"
#include "ifc/parser.hpp"
#include "json.hpp"

namespace ifc {

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Soundness: return "soundness";
    case Suite::Lemma1: return "lemma1";
    case Suite::Lemma2: return "lemma2";
    case Suite::Lemma5: return "lemma5";
  }
  return "?";
}

std::optional<Suite> suite_from_name(const std::string& name) {
  for (Suite s : {Suite::Soundness, Suite::Lemma1, Suite::Lemma2, Suite::Lemma5}) {
    if (name == suite_name(s)) return s;
  }
  return std::nullopt;
}

std::uint64_t trial_seed(std::uint64_t master, Suite s, int i) {
  return splitmix64(splitmix64(master ^ (static_cast<std::uint64_t>(s) + 1) * 0x100000001b3ULL) +
                    static_cast<std::uint64_t>(i));
}

namespace {

constexpr int kLemma5Attempts = 20;

EquivConfig equiv_config(std::uint64_t seed) {
  EquivConfig c;
  c.rng_seed = splitmix64(seed ^ 0x5eedULL);
  return c;
}

ExprPtr generate_checked(const GenConfig& cfg, Rng& rng, const TEnv& tenv, const SecType& pc,
                         GenTarget target, GenStats* gen, Judgment& out) {
  ExprPtr e = gen_welltyped(cfg, rng, tenv, pc, target, gen);
  CheckResult r = check(tenv, pc, *e, {false});
  if (!r.ok()) throw std::logic_error("generator produced an ill-typed program: " + pretty_inline(*e));
  out = std::move(*r.judgment);
  return e;
}

std::optional<Discarded> discard_reason(const Outcome& o) {
  if (std::holds_alternative<FuelExhausted>(o)) return Discarded{Discarded::Reason::FuelExhausted, "fuel exhausted"};
  if (const auto* f = std::get_if<RuntimeFailure>(&o)) {
    return Discarded{Discarded::Reason::RuntimeError, std::string(runtime_error_name(f->kind)) + ": " + f->message};
  }
  return std::nullopt;
}

// Evaluates e in two low-equivalent states and hands both results to `judge`.
template <typename Judge>
TrialResult two_runs(std::uint64_t seed, const GenConfig& cfg, Rng& rng, const TEnv& tenv, ExprPtr e,
                     Judge judge) {
  auto [s1, s2] = gen_lowequiv_states(cfg, rng, tenv);
  Outcome o1 = eval(*e, s1.env, s1.store, cfg.fuel);
  Outcome o2 = eval(*e, s2.env, s2.store, cfg.fuel);
  if (auto d = discard_reason(o1)) return {seed, *d};
  if (auto d = discard_reason(o2)) return {seed, *d};
  const Ok& r1 = std::get<Ok>(o1);
  const Ok& r2 = std::get<Ok>(o2);
  if (auto note = judge(r1, r2)) {
    return {seed, Violation{e, tenv, SecType::low(), std::move(s1), std::move(s2), o1, o2, *note}};
  }
  return {seed, Pass{}};
}

// Evaluates e once and requires the final state to be low-equivalent to the
// initial one under the checker's output context.
TrialResult one_run(std::uint64_t seed, const GenConfig& cfg, Rng& rng, const TEnv& tenv, const SecType& pc,
                    ExprPtr e, const Judgment& j, EquivStats* eq) {
  State s = gen_lowequiv_states(cfg, rng, tenv).first;
  Outcome o = eval(*e, s.env, s.store, cfg.fuel);
  if (auto d = discard_reason(o)) return {seed, *d};
  const Ok& r = std::get<Ok>(o);
  if (low_equiv(j.out_env, s, r.state, equiv_config(seed), eq)) return {seed, Pass{}};
  State after = r.state;
  return {seed, Violation{e, tenv, pc, std::move(s), std::move(after), o, FuelExhausted{},
                          "initial and final state differ at a Low observable (effect " + j.effect.str() + ")"}};
}

}  // namespace

TrialResult run_soundness_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq, GenStats* gen) {
  Rng rng(seed);
  const TEnv tenv = gen_tenv(cfg, rng);
  Judgment j;
  ExprPtr e = generate_checked(cfg, rng, tenv, SecType::low(), GenTarget::Any, gen, j);
  return two_runs(seed, cfg, rng, tenv, e, [&](const Ok& r1, const Ok& r2) -> std::optional<std::string> {
    if (low_equiv(j.out_env, r1.state, r2.state, equiv_config(seed), eq)) return std::nullopt;
    return "final states are not low-equivalent under the output context";
  });
}

TrialResult run_lemma1_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq, GenStats* gen) {
  Rng rng(seed);
  const TEnv tenv = gen_tenv(cfg, rng);
  Judgment j;
  ExprPtr e = generate_checked(cfg, rng, tenv, SecType::low(), GenTarget::LowResult, gen, j);
  const SecType& t = j.type;
  const bool selected = t.is_low() || (t.is_ref() && t.inner().is_low()) || t.is_fun();
  if (!selected) {
    // Only reachable through the generator's fallback literal, which is Low.
    throw std::logic_error("lemma1 program has result type " + t.str());
  }
  return two_runs(seed, cfg, rng, tenv, e, [&](const Ok& r1, const Ok& r2) -> std::optional<std::string> {
    if (value_equiv(r1.value, r1.state.store, r2.value, r2.state.store, t, equiv_config(seed), eq)) {
      return std::nullopt;
    }
    return "results " + value_str(r1.value) + " and " + value_str(r2.value) + " are not related at " + t.str();
  });
}

TrialResult run_lemma2_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq, GenStats* gen) {
  Rng rng(seed);
  const TEnv tenv = gen_tenv(cfg, rng);
  Judgment j;
  ExprPtr e = generate_checked(cfg, rng, tenv, SecType::high(), GenTarget::Any, gen, j);
  if (!leq(SecType::high(), j.effect)) throw std::logic_error("high-pc program with effect " + j.effect.str());
  return one_run(seed, cfg, rng, tenv, SecType::high(), e, j, eq);
}

TrialResult run_lemma5_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq, GenStats* gen) {
  Rng rng(seed);
  const TEnv tenv = gen_tenv(cfg, rng);
  // Alternate between programs built for pc Low and programs built for a High
  // pc, which often keep a High effect when checked at Low.
  for (int i = 0; i < kLemma5Attempts; ++i) {
    const SecType built_for = i % 2 == 0 ? SecType::low() : SecType::high();
    ExprPtr e = gen_welltyped(cfg, rng, tenv, built_for, GenTarget::Any, gen);
    CheckResult r = check(tenv, SecType::low(), *e, {false});
    // A High-pc program is not always accepted at Low: loop indices and
    // branch-local bindings can drop to Low and then receive High data.
    if (r.ok() && leq(SecType::high(), r.judgment->effect)) return one_run(seed, cfg, rng, tenv, SecType::low(), e, *r.judgment, eq);
  }
  if (gen) ++gen->fallbacks;
  ExprPtr unit = make_expr(ast::Unit{});
  Judgment j = *check(tenv, SecType::low(), *unit, {false}).judgment;
  return one_run(seed, cfg, rng, tenv, SecType::low(), unit, j, eq);
}

TrialResult run_trial(Suite s, const GenConfig& cfg, std::uint64_t seed, EquivStats* eq, GenStats* gen) {
  switch (s) {
    case Suite::Soundness: return run_soundness_trial(cfg, seed, eq, gen);
    case Suite::Lemma1: return run_lemma1_trial(cfg, seed, eq, gen);
    case Suite::Lemma2: return run_lemma2_trial(cfg, seed, eq, gen);
    case Suite::Lemma5: return run_lemma5_trial(cfg, seed, eq, gen);
  }
  throw std::invalid_argument("unknown suite");
}

SuiteReport run_suite(Suite s, const GenConfig& cfg) {
  SuiteReport rep;
  rep.suite = s;
  rep.seed = cfg.rng_seed;
  rep.trials = std::max(0, cfg.trials);
  for (int i = 0; i < rep.trials; ++i) {
    TrialResult t = run_trial(s, cfg, trial_seed(cfg.rng_seed, s, i), &rep.equiv, &rep.gen);
    if (std::holds_alternative<Pass>(t.outcome)) {
      ++rep.passed;
    } else if (const auto* d = std::get_if<Discarded>(&t.outcome)) {
      ++(d->reason == Discarded::Reason::FuelExhausted ? rep.discarded_fuel : rep.discarded_runtime);
    } else {
      rep.violations.push_back(std::move(t));
    }
  }
  return rep;
}

bool CorpusReport::ok() const {
  if (error) return false;
  for (const auto& r : rows) {
    if (!r.ok) return false;
  }
  return true;
}

CorpusReport run_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  CorpusReport rep;
  rep.dir = dir;
  const fs::path root(dir);

  nlohmann::json expectations;
  {
    std::ifstream in(root / "expectations.json");
    if (!in) {
      rep.error = "cannot read " + (root / "expectations.json").string();
      return rep;
    }
    try {
      in >> expectations;
    } catch (const nlohmann::json::exception& ex) {
      rep.error = std::string("malformed expectations.json: ") + ex.what();
      return rep;
    }
  }
  if (!expectations.is_object()) {
    rep.error = "expectations.json must map file names to expectations";
    return rep;
  }

  for (const auto& [file, exp] : expectations.items()) {
    CorpusRow row;
    row.file = file;
    row.expected_verdict = exp.value("verdict", "");
    row.expected_rule = exp.value("rule", "");
    row.expected_condition = exp.value("condition", "");

    std::ifstream in(root / file, std::ios::binary);
    if (!in) {
      row.verdict = "error";
      row.detail = "missing corpus file";
      rep.rows.push_back(std::move(row));
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      ExprPtr e = parse(buf.str());
      CheckResult r = check_program(*e, {false});
      if (r.ok()) {
        row.verdict = "accept";
        row.detail = r.judgment->str();
      } else {
        row.verdict = "reject";
        row.rule = r.error->rule;
        row.condition = r.error->condition;
        row.detail = r.error->str();
      }
    } catch (const ParseError& pe) {
      row.verdict = "parse-error";
      row.detail = pe.what();
    }
    row.ok = row.verdict == row.expected_verdict;
    if (row.ok && row.expected_verdict == "reject") {
      row.ok = row.rule == row.expected_rule &&
               (row.expected_condition.empty() || row.condition == row.expected_condition);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace ifc
