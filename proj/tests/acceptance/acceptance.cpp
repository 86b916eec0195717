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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.

#include <bitset>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ifc/harness.hpp"
#include "ifc/lattice.hpp"
#include "ifc/parser.hpp"
#include "ifc/report.hpp"
#include "support/random_ast.hpp"
#include "support/type_space.hpp"

namespace {

using namespace ifc;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kCorpusSeconds = 1.0;
constexpr double kSoundnessSeconds = 120.0;
constexpr double kMaxDiscardRate = 0.30;
constexpr double kLatticeSeconds = 5.0;
constexpr int kSoundnessTrials = 1000;
constexpr std::uint64_t kSoundnessSeed = 42;
constexpr int kLemmaTrials = 500;
constexpr int kRoundTrips = 10000;
constexpr int kFuzzInputs = 10000;
constexpr int kScopeRuns = 2000;
constexpr int kMinControls = 3;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << "s";
  return os.str();
}

Verdict corpus(const std::string& dir) {
  const auto t0 = Clock::now();
  CorpusReport r = run_corpus(dir);
  const double dt = seconds_since(t0);
  if (r.error) return {false, *r.error};
  int listings = 0, controls = 0, wrong = 0;
  std::string bad;
  for (const auto& row : r.rows) {
    if (!row.ok) {
      ++wrong;
      bad += " " + row.file;
      continue;
    }
    if (row.file.rfind("listing", 0) == 0) ++listings;
    if (row.file.rfind("control", 0) == 0 && row.verdict == "accept") ++controls;
  }
  std::ostringstream os;
  os << listings << " listing files, " << controls << " controls, " << wrong << " wrong" << bad << ", "
     << fmt_seconds(dt);
  return {wrong == 0 && controls >= kMinControls && listings >= 9 && dt < kCorpusSeconds, os.str()};
}

Verdict soundness() {
  GenConfig cfg;
  cfg.trials = kSoundnessTrials;
  cfg.rng_seed = kSoundnessSeed;
  const auto t0 = Clock::now();
  SuiteReport r = run_suite(Suite::Soundness, cfg);
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << r.violations.size() << " violations, discard rate " << r.discard_rate() << ", " << fmt_seconds(dt);
  for (const auto& t : r.violations) os << "; violating trial seed " << t.seed;
  return {r.violations.empty() && r.discard_rate() < kMaxDiscardRate && dt < kSoundnessSeconds, os.str()};
}

Verdict lemmas() {
  GenConfig cfg;
  cfg.trials = kLemmaTrials;
  std::ostringstream os;
  bool ok = true;
  for (Suite s : {Suite::Lemma1, Suite::Lemma2, Suite::Lemma5}) {
    SuiteReport r = run_suite(s, cfg);
    ok &= r.violations.empty();
    os << suite_name(s) << " " << r.violations.size() << " violations (" << r.passed << " passed, " << r.discarded()
       << " discarded); ";
  }
  return {ok, os.str()};
}

// References are never ordered, so reflexivity is only expected of types
// without one anywhere inside.
bool mentions_ref(const SecType& t) {
  if (t.is_ref()) return true;
  return t.is_fun() && (mentions_ref(t.param()) || mentions_ref(t.result()));
}

// Order, join and meet over every well-formed type of nesting depth <= 2.
// up[a] is the set {u | a ⊑ u} and down[a] the set {d | d ⊑ a}; the least
// upper bound of a and b is then an element of up[a] ∩ up[b] whose up-set
// contains the whole intersection.
Verdict lattice() {
  constexpr std::size_t N = 3077;
  const auto& ts = testing::d2();
  if (ts.size() != N) return {false, "type space has " + std::to_string(ts.size()) + " elements"};
  const auto t0 = Clock::now();

  std::vector<std::bitset<N>> up(N), down(N);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      if (leq(ts[a], ts[b])) {
        up[a].set(b);
        down[b].set(a);
      }
    }
  }

  long refl = 0, anti = 0, trans = 0, join_bad = 0, meet_bad = 0;
  for (std::size_t a = 0; a < N; ++a) {
    if (!mentions_ref(ts[a]) && !up[a].test(a)) ++refl;
    for (std::size_t b = 0; b < N; ++b) {
      if (up[a].test(b) && up[b].test(a) && testing::erase_latent(ts[a]) != testing::erase_latent(ts[b])) ++anti;
    }
    // a ⊑ b ⊑ c implies a ⊑ c for every c: up[b] ⊆ up[a].
    for (std::size_t b = up[a]._Find_first(); b < N; b = up[a]._Find_next(b)) {
      if ((up[b] & ~up[a]).any()) ++trans;
    }
  }

  auto least = [&](const std::bitset<N>& bounds, const std::vector<std::bitset<N>>& cone) {
    for (std::size_t x = bounds._Find_first(); x < N; x = bounds._Find_next(x)) {
      if ((bounds & ~cone[x]).none()) return true;
    }
    return false;
  };
  auto check = [&](std::size_t a, std::size_t b, const std::optional<SecType>& got,
                   const std::vector<std::bitset<N>>& cone) {
    if (!got) return !least(cone[a] & cone[b], cone);
    auto gi = testing::d2_index(*got);
    return gi && cone[a].test(*gi) && cone[b].test(*gi) && (cone[a] & cone[b] & ~cone[*gi]).none();
  };

  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      if (!check(a, b, try_join(ts[a], ts[b]), up)) ++join_bad;
      if (!check(a, b, try_meet(ts[a], ts[b]), down)) ++meet_bad;
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << N << " types; failures: reflexivity " << refl << ", antisymmetry " << anti << ", transitivity " << trans
     << ", join " << join_bad << ", meet " << meet_bad << "; " << fmt_seconds(dt);
  return {refl + anti + trans + join_bad + meet_bad == 0 && dt < kLatticeSeconds, os.str()};
}

Verdict round_trip() {
  int bad = 0, crashes = 0, accepted = 0;
  std::string first;
  auto trip = [&](const Expr& e) {
    const std::string text = pretty(e);
    try {
      if (*parse(text) == e) return;
    } catch (const ParseError&) {
    }
    if (bad++ == 0) first = text;
  };

  GenConfig cfg;
  Rng rng(2026);
  for (int i = 0; i < kRoundTrips / 2; ++i) {
    const TEnv env = gen_tenv(cfg, rng);
    trip(*gen_welltyped(cfg, rng, env, rng.chance(1, 2) ? SecType::low() : SecType::high()));
  }
  testing::RandomAst untyped(2027);
  for (int i = kRoundTrips / 2; i < kRoundTrips; ++i) trip(*untyped.expr(5));

  Rng bytes(2028);
  static const std::string kAlphabet = "letifwhornx0123456789 \n\t(){};:=!+-*/<>@_.,\"'";
  for (int i = 0; i < kFuzzInputs; ++i) {
    std::string s(static_cast<std::size_t>(bytes.range(0, 64)), '\0');
    for (char& c : s) {
      c = bytes.chance(1, 2) ? static_cast<char>(bytes.range(0, 255))
                             : kAlphabet[static_cast<std::size_t>(bytes.range(0, kAlphabet.size() - 1))];
    }
    try {
      parse(s);
      ++accepted;
    } catch (const ParseError&) {
    } catch (...) {
      ++crashes;
    }
  }
  std::ostringstream os;
  os << kRoundTrips << " round trips, " << bad << " mismatches; " << kFuzzInputs << " byte strings, " << crashes
     << " crashes, " << accepted << " parsed";
  if (!first.empty()) os << "; first mismatch: " << first;
  return {bad == 0 && crashes == 0, os.str()};
}

Verdict goldens() {
  std::ostringstream os;
  bool ok = true;

  // Two names for one cell; a write through one is visible through the other.
  Outcome l4 = eval(*parse("let l = ref(2)\nlet h = l\nh := 4"), {}, {}, 1000);
  const Ok* a = std::get_if<Ok>(&l4);
  const Value* cell = a ? a->state.store.find(0) : nullptr;
  const bool l4_ok = cell && is_int(*cell) && std::get<IntV>(*cell).n == 4 && is_unit(a->value);
  ok &= l4_ok;
  os << "aliasing " << (a ? store_str(a->state.store) : "failed") << "; ";

  // Bodies run for i = 1, 2, 3: s = 0 + 1 + 2 + 3.
  Outcome sum = eval(*parse("let s = ref(0)\nfor i in 1 to 3 { s := !s + i }\n!s"), {}, {}, 1000);
  const Ok* b = std::get_if<Ok>(&sum);
  const bool sum_ok = b && is_int(b->value) && std::get<IntV>(b->value).n == 6;
  ok &= sum_ok;
  os << "for-sum " << (b ? value_str(b->value) : "failed") << "; ";

  auto same_env = [](const Env& x, const Env& y) {
    if (x.size() != y.size()) return false;
    for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j) {
      if (i->first != j->first || !same_value(i->second, j->second)) return false;
    }
    return true;
  };
  long observed = 0, leaked = 0;
  EvalOptions opts;
  opts.observer = [&](const Expr& e, const Env& in, const Env& out) {
    if (!(e.is<ast::If>() || e.is<ast::While>() || e.is<ast::For>() || e.is<ast::Bop>())) return;
    ++observed;
    if (!same_env(in, out)) ++leaked;
  };
  GenConfig cfg;
  opts.fuel = cfg.fuel;
  Rng rng(606);
  for (int i = 0; i < kScopeRuns; ++i) {
    const TEnv env = gen_tenv(cfg, rng);
    ExprPtr e = gen_welltyped(cfg, rng, env, SecType::low());
    const State s = gen_lowequiv_states(cfg, rng, env).first;
    eval(*e, s.env, s.store, opts);
  }
  ok &= observed > 0 && leaked == 0;
  os << observed << " If/While/For/Bop steps over " << kScopeRuns << " runs, " << leaked << " changed the environment";
  return {ok, os.str()};
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  pclose(p);
  return out;
}

Verdict determinism(const std::string& cli) {
  const std::string cmd = "'" + cli + "' nitest --trials 200 --seed 7 --json";
  const std::string first = capture(cmd);
  const std::string second = capture(cmd);
  std::ostringstream os;
  os << first.size() << " and " << second.size() << " bytes";
  const bool parsed = !first.empty() && Json::accept(first);
  if (!parsed) os << ", first report is not JSON";
  return {parsed && first == second, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> only;
  std::string corpus_dir = IFC_CORPUS_DIR;
  std::string cli = IFC_CLI_PATH;
  app.add_option("--only", only, "Run only these criteria (1-7)")->check(CLI::Range(1, 7));
  app.add_option("--corpus", corpus_dir, "Corpus directory");
  app.add_option("--cli", cli, "Path to the rescript-ifc executable");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"corpus verdicts", [&] { return corpus(corpus_dir); }},
      {"soundness suite", soundness},
      {"lemma suites", lemmas},
      {"lattice laws", lattice},
      {"parser round trip and fuzz", round_trip},
      {"interpreter goldens", goldens},
      {"nitest determinism", [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    Verdict v = criteria[i].second();
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << n << " " << criteria[i].first << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
