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

#ifndef IFC_HARNESS_HPP_
#define IFC_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ifc/equivalence.hpp"
#include "ifc/generator.hpp"

namespace ifc {

enum class Suite { Soundness, Lemma1, Lemma2, Lemma5 };

const char* suite_name(Suite s);
std::optional<Suite> suite_from_name(const std::string& name);

struct Pass {};

struct Discarded {
  enum class Reason { FuelExhausted, RuntimeError };
  Reason reason;
  std::string detail;
};

struct Violation {
  ExprPtr program;
  TEnv tenv;
  SecType pc = SecType::low();
  State s1, s2;
  Outcome f1, f2;  // f2 is unused by the single-run lemma suites
  std::string note;
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::variant<Pass, Discarded, Violation> outcome;
};

// One trial, fully determined by `seed`. cfg.rng_seed is ignored.
TrialResult run_soundness_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq = nullptr,
                                GenStats* gen = nullptr);
TrialResult run_lemma1_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq = nullptr,
                             GenStats* gen = nullptr);
TrialResult run_lemma2_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq = nullptr,
                             GenStats* gen = nullptr);
TrialResult run_lemma5_trial(const GenConfig& cfg, std::uint64_t seed, EquivStats* eq = nullptr,
                             GenStats* gen = nullptr);

TrialResult run_trial(Suite s, const GenConfig& cfg, std::uint64_t seed, EquivStats* eq = nullptr,
                      GenStats* gen = nullptr);

// Seed of trial i of suite s under master seed m.
std::uint64_t trial_seed(std::uint64_t master, Suite s, int i);

struct SuiteReport {
  Suite suite = Suite::Soundness;
  std::uint64_t seed = 0;
  int trials = 0;
  int passed = 0;
  int discarded_fuel = 0;
  int discarded_runtime = 0;
  std::vector<TrialResult> violations;  // each holds a Violation
  EquivStats equiv;
  GenStats gen;

  int discarded() const { return discarded_fuel + discarded_runtime; }
  double discard_rate() const { return trials == 0 ? 0.0 : static_cast<double>(discarded()) / trials; }
};

// cfg.trials trials seeded from cfg.rng_seed.
SuiteReport run_suite(Suite s, const GenConfig& cfg);

struct CorpusRow {
  std::string file;
  std::string expected_verdict;  // "accept" or "reject"
  std::string expected_rule;
  std::string expected_condition;
  std::string verdict;  // "accept", "reject", "parse-error" or "error"
  std::string rule;
  std::string condition;
  std::string detail;
  bool ok = false;
};

struct CorpusReport {
  std::string dir;
  std::vector<CorpusRow> rows;
  std::optional<std::string> error;  // unreadable expectations file

  bool ok() const;
};

// Checks every file listed in <dir>/expectations.json under the empty
// context at pc Low.
CorpusReport run_corpus(const std::string& dir);

}  // namespace ifc

#endif  // IFC_HARNESS_HPP_
