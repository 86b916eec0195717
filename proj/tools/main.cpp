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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ifc/harness.hpp"
#include "ifc/parser.hpp"
#include "ifc/report.hpp"

namespace {

#ifndef IFC_DEFAULT_CORPUS
#define IFC_DEFAULT_CORPUS "corpus"
#endif

enum Exit : int {
  kOk = 0,
  kTypeError = 1,
  kParseError = 2,
  kIoError = 3,
  kRuntimeError = 4,
  kFuelExhausted = 5,
  kViolation = 6,
  kUsage = 64,
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

// Reads and parses `path`, printing the failure and setting `code` on error.
ifc::ExprPtr load(const std::string& path, bool json, int& code) {
  auto src = read_file(path);
  if (!src) {
    if (json) {
      std::cout << ifc::Json{{"status", "io-error"}, {"path", path}}.dump(2) << "\n";
    } else {
      std::cerr << "error: cannot read " << path << "\n";
    }
    code = kIoError;
    return nullptr;
  }
  try {
    return ifc::parse(*src);
  } catch (const ifc::ParseError& e) {
    if (json) {
      std::cout << ifc::Json{{"status", "parse-error"}, {"message", e.message()}, {"line", e.line()}, {"col", e.col()}}
                       .dump(2)
                << "\n";
    } else {
      std::cerr << path << ":" << e.what() << "\n";
    }
    code = kParseError;
    return nullptr;
  }
}

void print_trace(const std::vector<ifc::TraceFrame>& trace) {
  for (const auto& f : trace) {
    std::cout << std::string(2 * static_cast<std::size_t>(f.depth), ' ') << f.rule << "  " << f.expr;
    if (!f.outcome.empty()) std::cout << "  ⇒ " << f.outcome;
    std::cout << "\n";
  }
}

void print_type_error(const ifc::TypeError& e) {
  std::cout << "type error: " << e.str() << "\n";
  std::cout << "rule path:\n";
  for (const auto& f : e.path) {
    std::cout << "  " << f.rule;
    if (f.pos.line > 0) std::cout << " [" << f.pos.line << ":" << f.pos.col << "]";
    std::cout << "  " << f.expr << "\n";
  }
}

int cmd_check(const std::string& path, bool json, bool trace) {
  int code = kOk;
  ifc::ExprPtr e = load(path, json, code);
  if (!e) return code;
  ifc::CheckResult r = ifc::check_program(*e, {trace});
  if (json) {
    std::cout << ifc::check_json(r).dump(2) << "\n";
  } else {
    if (trace) print_trace(r.trace);
    if (r.ok()) {
      std::cout << r.judgment->str() << "\n";
    } else {
      print_type_error(*r.error);
    }
  }
  return r.ok() ? kOk : kTypeError;
}

int cmd_run(const std::string& path, std::int64_t fuel, bool unsafe, bool json) {
  int code = kOk;
  ifc::ExprPtr e = load(path, json, code);
  if (!e) return code;
  if (!unsafe) {
    ifc::CheckResult r = ifc::check_program(*e, {false});
    if (!r.ok()) {
      if (json) {
        std::cout << ifc::check_json(r).dump(2) << "\n";
      } else {
        print_type_error(*r.error);
        std::cerr << "refusing to run an ill-typed program (use --unsafe to override)\n";
      }
      return kTypeError;
    }
  }
  ifc::Outcome o = ifc::eval(*e, {}, {}, fuel);
  if (json) std::cout << ifc::outcome_json(o).dump(2) << "\n";
  if (const auto* ok = std::get_if<ifc::Ok>(&o)) {
    if (!json) std::cout << ifc::value_str(ok->value) << "\nstore " << ifc::store_str(ok->state.store) << "\n";
    return kOk;
  }
  if (const auto* f = std::get_if<ifc::RuntimeFailure>(&o)) {
    if (!json) {
      std::cerr << "runtime error: " << ifc::runtime_error_name(f->kind) << ": " << f->message;
      if (f->at.line > 0) std::cerr << " at " << f->at.line << ":" << f->at.col;
      std::cerr << "\n";
    }
    return kRuntimeError;
  }
  if (!json) std::cerr << "fuel exhausted after " << fuel << " steps\n";
  return kFuelExhausted;
}

int cmd_parse(const std::string& path, bool json) {
  int code = kOk;
  ifc::ExprPtr e = load(path, json, code);
  if (!e) return code;
  if (json) {
    std::cout << ifc::ast_json(*e).dump(2) << "\n";
  } else {
    std::cout << ifc::pretty(*e) << "\n";
  }
  return kOk;
}

int cmd_nitest(const ifc::GenConfig& cfg, const std::string& suite, bool json) {
  std::vector<ifc::Suite> suites;
  if (suite == "all") {
    suites = {ifc::Suite::Soundness, ifc::Suite::Lemma1, ifc::Suite::Lemma2, ifc::Suite::Lemma5};
  } else {
    suites = {*ifc::suite_from_name(suite)};
  }

  std::size_t violations = 0;
  ifc::Json reports = ifc::Json::array();
  for (ifc::Suite s : suites) {
    ifc::SuiteReport r = ifc::run_suite(s, cfg);
    violations += r.violations.size();
    if (json) {
      reports.push_back(ifc::suite_json(r));
      continue;
    }
    std::cout << ifc::suite_name(s) << ": " << r.trials << " trials, " << r.passed << " passed, " << r.discarded()
              << " discarded (fuel " << r.discarded_fuel << ", runtime " << r.discarded_runtime << "), "
              << r.violations.size() << " violations\n";
    for (const auto& t : r.violations) {
      const auto& v = std::get<ifc::Violation>(t.outcome);
      std::cout << "  violation (trial seed " << t.seed << "): " << v.note << "\n"
                << "    pc " << v.pc.str() << ", context " << ifc::env_str(v.tenv) << "\n"
                << "    s1 " << ifc::state_json(v.s1).dump() << "\n"
                << "    s2 " << ifc::state_json(v.s2).dump() << "\n";
      std::istringstream prog(ifc::pretty(*v.program));
      for (std::string line; std::getline(prog, line);) std::cout << "    | " << line << "\n";
    }
  }
  if (json) {
    ifc::Json out{{"config",
                   {{"seed", cfg.rng_seed},
                    {"trials", cfg.trials},
                    {"fuel", cfg.fuel},
                    {"max_depth", cfg.max_depth},
                    {"max_for_span", cfg.max_for_span},
                    {"int_range", {cfg.int_min, cfg.int_max}}}},
                  {"suites", reports},
                  {"violations", violations}};
    std::cout << out.dump(2) << "\n";
  }
  return violations == 0 ? kOk : kViolation;
}

int cmd_corpus(const std::string& dir, bool json) {
  ifc::CorpusReport r = ifc::run_corpus(dir);
  if (json) {
    std::cout << ifc::corpus_json(r).dump(2) << "\n";
  } else if (r.error) {
    std::cerr << "error: " << *r.error << "\n";
  } else {
    for (const auto& row : r.rows) {
      std::cout << (row.ok ? "ok   " : "FAIL ") << row.file << "  expected " << row.expected_verdict;
      if (!row.expected_rule.empty()) std::cout << " (" << row.expected_rule << ")";
      std::cout << ", got " << row.verdict;
      if (!row.rule.empty()) std::cout << " (" << row.rule << ": " << row.condition << ")";
      std::cout << "\n";
      if (!row.ok) std::cout << "     " << row.detail << "\n";
    }
  }
  if (r.error) return kIoError;
  return r.ok() ? kOk : kTypeError;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("IFC_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed IFC_SEED\n";
    }
  }
  return 42;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Security type checker, interpreter and non-interference tester"};
  app.name("rescript-ifc");
  app.require_subcommand(1, 1);

  std::string path;
  bool json = false;
  bool trace = false;
  bool unsafe = false;
  std::int64_t fuel = 10000;

  auto* check = app.add_subcommand("check", "Type-check a program under the empty context at pc Low");
  check->add_option("file", path, "Source file")->required();
  check->add_flag("--json", json, "Emit the JSON report");
  check->add_flag("--trace", trace, "Print the full derivation trace");

  auto* run = app.add_subcommand("run", "Evaluate a program from the empty state");
  run->add_option("file", path, "Source file")->required();
  run->add_option("--fuel", fuel, "Evaluation step budget")->check(CLI::NonNegativeNumber);
  run->add_flag("--unsafe", unsafe, "Run even if the program does not type-check");
  run->add_flag("--json", json, "Emit the JSON report");

  ifc::GenConfig cfg;
  cfg.rng_seed = default_seed();
  std::string suite = "all";
  auto* nitest = app.add_subcommand("nitest", "Randomized non-interference testing");
  nitest->add_option("--trials", cfg.trials, "Trials per suite")->check(CLI::NonNegativeNumber);
  nitest->add_option("--seed", cfg.rng_seed, "Master seed (default 42, or $IFC_SEED)");
  nitest->add_option("--fuel", cfg.fuel, "Step budget per evaluation")->check(CLI::PositiveNumber);
  nitest->add_option("--max-depth", cfg.max_depth, "Generator nesting depth")->check(CLI::PositiveNumber);
  nitest->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"soundness", "lemma1", "lemma2", "lemma5", "all"}));
  nitest->add_flag("--json", json, "Emit the JSON report");

  auto* parse = app.add_subcommand("parse", "Print the parsed program");
  parse->add_option("file", path, "Source file")->required();
  parse->add_flag("--json", json, "Dump the AST as JSON");

  std::string corpus_dir = IFC_DEFAULT_CORPUS;
  auto* corpus = app.add_subcommand("corpus", "Check the listing corpus against its expectations");
  corpus->add_option("--corpus", corpus_dir, "Corpus directory");
  corpus->add_flag("--json", json, "Emit the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*check) return cmd_check(path, json, trace);
  if (*run) return cmd_run(path, fuel, unsafe, json);
  if (*nitest) return cmd_nitest(cfg, suite, json);
  if (*parse) return cmd_parse(path, json);
  if (*corpus) return cmd_corpus(corpus_dir, json);
  return kUsage;
}
