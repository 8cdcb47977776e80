// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtune/cli/cli.hpp"
#include "rtune/ir/concrete.hpp"
#include "rtune/ir/parser.hpp"
#include "rtune/optimizer/optimizer.hpp"
#include "support/domain_fixtures.hpp"

using namespace rtune;
namespace fs = std::filesystem;

namespace {

// Tolerances and limits.
constexpr double kCostEps = 1e-12;
constexpr double kFreqTol = 0.01;
constexpr double kC1Seconds = 1, kC2Seconds = 60, kC3Seconds = 600, kC4Seconds = 10, kC5Seconds = 30;
constexpr double kC6Seconds = 300, kC8Seconds = 120, kC9Seconds = 300, kC10Seconds = 10, kC11Seconds = 60;
constexpr double kC12Seconds = 180;
constexpr std::size_t kMinPrograms = 20, kMaxStatements = 200, kMinPerKind = 70;
constexpr std::size_t kConcreteStates = 2'000'000;
const ResourceBudget kGenerous{BudgetMode::Steps, 5e7};

struct Outcome {
  bool pass = true;
  std::string detail;
};

const fs::path kCorpus = fs::path(RTUNE_SOURCE_DIR) / "corpus";

std::vector<std::pair<std::string, Program>> load_dir(const std::string& sub) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kCorpus / sub)) {
    if (e.path().extension() == ".air") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, Program>> out;
  for (const auto& f : files) out.emplace_back(f.filename().string(), parse_program_file(f.string()));
  return out;
}

const std::vector<std::pair<std::string, Program>>& suite() {
  static const auto s = load_dir("suite");
  return s;
}

std::size_t statement_count(const Program& p) {
  std::size_t n = 0;
  for (const Function& f : p.functions) {
    for (const Block& b : f.blocks) n += b.stmts.size();
  }
  return n;
}

std::set<int> truly_safe(const ConcreteVerdictSet& c, const Program& p) {
  std::set<int> out;
  for (int id : p.assertion_ids()) {
    if (c.verdicts.at(id) == ConcreteVerdict::HoldsOnAllRuns) out.insert(id);
  }
  return out;
}

// Trace checks shared by criteria 2 and 7.
struct TraceStats {
  std::size_t runs = 0;
  std::size_t non_monotone = 0;
  std::size_t phase2_domain_changes = 0;
};
TraceStats g_trace_stats;

void record_trace(const TuneResult& t) {
  ++g_trace_stats.runs;
  for (std::size_t i = 1; i < t.trace.size(); ++i) {
    if (t.trace[i].best > t.trace[i - 1].best) ++g_trace_stats.non_monotone;
  }
  for (const auto& e : t.trace) {
    if (e.phase == Phase::Settings && e.candidate.domains() != t.best.domains()) ++g_trace_stats.phase2_domain_changes;
  }
}

Outcome c1_cost() {
  Outcome v;
  std::ostringstream d;
  const CostValue a = cost(28, 45, 0.35, 1.0);
  const bool exact = std::abs(a.value() - 0.63) <= kCostEps;
  const bool inf = !cost(28, 45, 1.5, 1.0).is_finite();
  const bool ties = cost(28, 45, 0.2, 1.0) < cost(28, 45, 0.3, 1.0) &&
                    cost(27, 45, 0.99, 1.0) < cost(28, 45, 0.0, 1.0) && cost(28, 45, 1.0, 1.0) < cost(28, 45, 1.5, 1.0);
  v.pass = exact && inf && ties;
  d << "cost(28,45,0.35,1)=" << std::setprecision(17) << a.value() << " over-budget=" << (inf ? "inf" : "finite")
    << " ordering=" << (ties ? "ok" : "broken");
  v.detail = d.str();
  return v;
}

Outcome c2_iterations() {
  Outcome v;
  std::ostringstream d;
  const struct {
    int i_dom, i_set;
    std::size_t expected;
  } cases[] = {{5, 10, 40}, {10, 20, 80}};
  std::size_t runs = 0, wrong = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const Program& p = suite()[k].second;
    for (Strategy s : {Strategy::Rs, Strategy::Dars, Strategy::Sa, Strategy::Hc}) {
      for (const auto& c : cases) {
        TunerConfig cfg;
        cfg.budget = {BudgetMode::Steps, 1e6};
        cfg.strategy = s;
        cfg.seed = k;
        cfg.i_dom = c.i_dom;
        cfg.i_set = c.i_set;
        const TuneResult t = optimize(p, cfg);
        record_trace(t);
        ++runs;
        if (t.trace.size() != c.expected) {
          ++wrong;
          d << to_string(s) << " " << c.i_dom << "/" << c.i_set << " gave " << t.trace.size() << "; ";
        }
      }
    }
  }
  v.pass = wrong == 0;
  d << runs << " runs, " << wrong << " with the wrong candidate count";
  v.detail = d.str();
  return v;
}

Outcome c3_soundness() {
  Outcome v;
  std::ostringstream d;
  const auto& progs = suite();
  std::size_t total_stmts_max = 0;
  std::map<AssertionKind, std::size_t> per_kind;
  for (const auto& [name, p] : progs) {
    total_stmts_max = std::max(total_stmts_max, statement_count(p));
    for (AssertionKind k : kAllAssertionKinds) per_kind[k] += p.count_assertions(k);
  }
  bool shape = progs.size() >= kMinPrograms && total_stmts_max <= kMaxStatements;
  for (const auto& [k, n] : per_kind) shape = shape && n >= kMinPerKind;

  std::size_t analyses = 0, safe_claims = 0, contradictions = 0, exhausted = 0;
  std::size_t violated_total = 0;
  const DomainPoset poset = DomainPoset::default_poset();
  const SearchSpace full = SearchSpace::full(poset);
  for (const auto& [name, p] : progs) {
    ConcreteVerdictSet c;
    try {
      c = concrete_run_all(p, kConcreteStates);
    } catch (const ConcreteError& e) {
      shape = false;
      d << name << ": concrete execution failed (" << e.what() << "); ";
      continue;
    }
    violated_total += p.assertion_ids().size() - truly_safe(c, p).size();
    const std::set<int> ok = truly_safe(c, p);
    const auto ids = p.assertion_ids();
    const std::set<int> targets(ids.begin(), ids.end());
    for (const Ingredient& ing : full.ingredients()) {
      ++analyses;
      AnalysisResult r;
      try {
        r = analyze_program(p, ing, targets, kGenerous);
      } catch (const BudgetExceeded&) {
        ++exhausted;
        continue;
      }
      for (const auto& [id, verdict] : r.verdicts) {
        if (verdict != rtune::Verdict::Safe) continue;
        ++safe_claims;
        if (!ok.count(id)) {
          if (contradictions < 5) d << name << " #" << id << " under " << to_string(ing.domain) << "; ";
          ++contradictions;
        }
      }
    }
  }
  v.pass = shape && contradictions == 0;
  d << progs.size() << " programs, max " << total_stmts_max << " statements, per kind";
  for (const auto& [k, n] : per_kind) d << " " << keyword(k) << "=" << n;
  d << "; " << violated_total << " assertions violated concretely; " << analyses << " analyses (" << exhausted
    << " exhausted), " << safe_claims << " safe verdicts, " << contradictions << " contradicted";
  v.detail = d.str();
  return v;
}

Outcome c4_dars() {
  Outcome v;
  const DomainPoset poset = DomainPoset::default_poset();
  const SearchSpace space = SearchSpace::full(poset);
  const std::size_t width = max_antichain(poset, poset.implemented());
  Rng rng(2024);
  std::size_t comparable = 0;
  for (int i = 0; i < 10000; ++i) {
    const Recipe r = generate_dars(1 + i % static_cast<int>(width), poset, space, rng);
    const auto ds = r.domains();
    for (std::size_t a = 0; a < ds.size(); ++a) {
      for (std::size_t b = a + 1; b < ds.size(); ++b) comparable += poset.comparable(ds[a], ds[b]);
    }
  }
  v.pass = comparable == 0;
  v.detail = "10000 recipes of length 1.." + std::to_string(width) + ", " + std::to_string(comparable) +
             " comparable pairs";
  return v;
}

Outcome c5_calibration() {
  Outcome v;
  Rng rng(99);
  std::map<MutationAction, int> n;
  std::size_t idx = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) ++n[draw_action(rng, 3, &idx)];
  const double mod = kDraws - n[MutationAction::Add];
  const double add = n[MutationAction::Add] / double(kDraws), gt = n[MutationAction::ModGt] / mod,
               lt = n[MutationAction::ModLt] / mod, inc = n[MutationAction::ModInc] / mod;
  v.pass = std::abs(add - 0.2) <= kFreqTol && std::abs(gt - 0.5) <= kFreqTol && std::abs(lt - 0.3) <= kFreqTol &&
           std::abs(inc - 0.2) <= kFreqTol;
  std::ostringstream d;
  d << std::fixed << std::setprecision(4) << "ADD=" << add << " GT=" << gt << " LT=" << lt << " INC=" << inc;
  v.detail = d.str();
  return v;
}

Outcome c6_oracle() {
  Outcome v;
  std::ostringstream d;
  const DomainPoset poset = DomainPoset::default_poset();
  const ResourceBudget budget{BudgetMode::Steps, 1e6};
  struct Case {
    std::string program;
    SearchSpace space;
    int max_len;
  };
  SearchSpace widen_space = SearchSpace::defaults_only({DomainId::Intervals, DomainId::Zones});
  widen_space.delay_widen = {1, 4, 16};
  widen_space.narrow_iters = {1, 3};
  widen_space.widen_thresholds = {0, 20};
  std::vector<Case> cases = {
      {"s0.air", SearchSpace::defaults_only({DomainId::Intervals, DomainId::DisInt, DomainId::Zones, DomainId::Bool}),
       3},
      {"s1.air", SearchSpace::defaults_only({DomainId::Intervals, DomainId::Ric, DomainId::Octagons, DomainId::Bool}),
       3},
      {"p00.air", widen_space, 1},
  };
  const auto showcase = load_dir("showcase");
  auto find = [&](const std::string& n) -> const Program& {
    for (const auto& [name, p] : showcase) {
      if (name == n) return p;
    }
    for (const auto& [name, p] : suite()) {
      if (name == n) return p;
    }
    throw std::runtime_error("missing corpus program " + n);
  };
  std::size_t below = 0, above_init = 0;
  for (const Case& c : cases) {
    const Program& p = find(c.program);
    const std::size_t size = count_recipes(c.space, poset, c.max_len);
    const EnumerationResult opt = enumerate_exhaustive(p, c.space, poset, c.max_len, budget);
    bool dars_hit = false;
    for (Strategy s : {Strategy::Rs, Strategy::Dars, Strategy::Sa, Strategy::Hc}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        TunerConfig cfg;
        cfg.budget = budget;
        cfg.strategy = s;
        cfg.seed = seed;
        cfg.l_max = c.max_len;
        cfg.space = c.space;
        const TuneResult t = optimize(p, cfg);
        record_trace(t);
        if (t.best_cost < opt.cost) {
          ++below;
          d << c.program << " " << to_string(s) << " seed " << seed << " found " << summarize(t.best) << " at "
            << t.best_cost.to_string() << "; ";
        }
        if (t.best_cost > t.initial_cost) ++above_init;
        if (s == Strategy::Dars && t.best_cost == opt.cost) dars_hit = true;
      }
    }
    v.pass = v.pass && dars_hit && size <= 200;
    d << c.program << ": " << size << " recipes, optimum " << opt.cost.to_string() << " "
      << summarize(opt.best) << (dars_hit ? "" : " (no dars seed reached it)") << "; ";
  }
  v.pass = v.pass && below == 0 && above_init == 0;
  d << below << " runs below the optimum, " << above_init << " above rec_init";
  v.detail = d.str();
  return v;
}

Outcome c7_monotone() {
  Outcome v;
  v.pass = g_trace_stats.runs > 0 && g_trace_stats.non_monotone == 0 && g_trace_stats.phase2_domain_changes == 0;
  v.detail = std::to_string(g_trace_stats.runs) + " tuner runs, " + std::to_string(g_trace_stats.non_monotone) +
             " best-so-far increases, " + std::to_string(g_trace_stats.phase2_domain_changes) +
             " phase-2 domain changes";
  return v;
}

Outcome c8_chaining() {
  Outcome v;
  std::ostringstream d;
  const DomainPoset poset = DomainPoset::default_poset();
  const SearchSpace space = SearchSpace::full(poset);
  Rng rng(8);
  std::size_t shrink = 0, first_lost = 0, unsound = 0;
  std::map<std::string, std::set<int>> safe_cache;
  for (int i = 0; i < 50; ++i) {
    const auto& [name, p] = suite()[rng.index(suite().size())];
    const Recipe rec = generate_rs(1 + static_cast<int>(rng.index(3)), space, rng);
    if (!safe_cache.count(name)) safe_cache[name] = truly_safe(concrete_run_all(p, kConcreteStates), p);
    std::set<int> prev;
    for (std::size_t k = 1; k <= rec.size(); ++k) {
      Recipe prefix;
      prefix.ingredients.assign(rec.ingredients.begin(), rec.ingredients.begin() + static_cast<long>(k));
      const std::set<int> cur = evaluate(p, prefix, kGenerous).verified();
      if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) ++shrink;
      for (int id : cur) unsound += !safe_cache[name].count(id);
      prev = cur;
    }
    const RecipeOutcome whole = evaluate(p, rec, kGenerous);
    const std::set<int> first = whole.per_ingredient.front().newly_verified;
    const std::set<int> all = whole.verified();
    if (!std::includes(all.begin(), all.end(), first.begin(), first.end())) ++first_lost;
    std::set<int> cumulative;
    for (const auto& step : whole.per_ingredient) cumulative.insert(step.newly_verified.begin(), step.newly_verified.end());
    if (cumulative != all) ++shrink;
  }
  v.pass = shrink == 0 && first_lost == 0 && unsound == 0;
  d << "50 pairs: " << shrink << " decreasing prefixes, " << first_lost << " losing first-ingredient results, "
    << unsound << " verified assertions violated concretely";
  v.detail = d.str();
  return v;
}

Outcome c9_rq() {
  Outcome v;
  std::ostringstream d;
  const auto showcase = load_dir("showcase");
  const DomainPoset poset = DomainPoset::default_poset();
  const Recipe def = default_recipe();
  const Recipe precise = most_precise_recipe(poset);
  std::size_t better = 0;
  for (const auto& [name, p] : showcase) {
    TunerConfig cfg;
    cfg.budget = {BudgetMode::Steps, 1e6};
    const TuneResult t = optimize(p, cfg);
    record_trace(t);
    const std::size_t tv = t.best_outcome.verified().size();
    const std::size_t dv = evaluate(p, def, cfg.budget).verified().size();
    better += tv > dv;
    d << name << " tuned " << tv << " vs def " << dv << "; ";
  }
  const bool a = better == showcase.size();

  // Calibrate: half of the largest most-precise cost in steps.
  double most = 0;
  std::map<std::string, double> mp_steps;
  for (const auto& [name, p] : showcase) {
    mp_steps[name] = evaluate(p, precise, kGenerous).r;
    most = std::max(most, mp_steps[name]);
  }
  const ResourceBudget tight{BudgetMode::Steps, std::floor(most / 2)};
  std::size_t mp_inf = 0, tuned_finite_there = 0;
  for (const auto& [name, p] : showcase) {
    const RecipeOutcome mp = evaluate(p, precise, tight);
    if (mp.cost.is_finite()) continue;
    ++mp_inf;
    TunerConfig cfg;
    cfg.budget = tight;
    const TuneResult t = optimize(p, cfg);
    record_trace(t);
    tuned_finite_there += t.best_cost.is_finite();
  }
  const bool b = mp_inf >= 1 && tuned_finite_there == mp_inf;
  v.pass = a && b;
  d << "steps limit " << tight.limit << ": most-precise exhausts on " << mp_inf << ", tuned finite on "
    << tuned_finite_there;
  v.detail = d.str();
  return v;
}

Outcome c10_gaps() {
  Outcome v;
  const Program branch = parse_program(R"(
fn main {
  block entry { x = havoc(0, 1); br (x == 0) then: a else: b; }
  block a { y = 0; goto join; }
  block b { y = 10; goto join; }
  block join { assert div: y != 5 #1; return; }
}
)");
  const Program loop = parse_program(R"(
fn main {
  block entry { i = 0; goto head; }
  block head { br (i < 10) then: body else: exit; }
  block body { i = i + 1; goto head; }
  block exit { assert overflow: i == 10 #1; return; }
}
)");
  auto verdict = [](const Program& p, DomainId dom, Settings s) {
    return analyze_program(p, Ingredient{dom, s}, {1}, kGenerous).verdicts.at(1);
  };
  std::ostringstream d;
  const bool gap = verdict(branch, DomainId::Intervals, {}) == rtune::Verdict::Warning &&
                   verdict(branch, DomainId::DisInt, {}) == rtune::Verdict::Safe;
  bool narrowing = true, thresholds = true;
  for (int n : Settings::narrow_iters_values()) {
    narrowing = narrowing && verdict(loop, DomainId::Intervals, Settings{1, n, 0, false, true}) == rtune::Verdict::Safe;
  }
  for (int t : {10, 20, 30, 40}) {
    thresholds =
        thresholds && verdict(loop, DomainId::Intervals, Settings{1, 0, t, false, true}) == rtune::Verdict::Safe;
  }
  const bool crude = verdict(loop, DomainId::Intervals, Settings{1, 0, 0, false, true}) == rtune::Verdict::Warning;
  v.pass = gap && narrowing && thresholds && crude;
  d << "disjunction gap " << (gap ? "ok" : "missing") << ", narrowing " << (narrowing ? "ok" : "fails")
    << ", thresholds " << (thresholds ? "ok" : "fails") << ", crude config " << (crude ? "warns" : "proves");
  v.detail = d.str();
  return v;
}

Outcome c11_determinism() {
  Outcome v;
  const fs::path dir = fs::temp_directory_path() / "rtune_acceptance";
  fs::create_directories(dir);
  const std::string prog = (kCorpus / "suite" / "p01.air").string();
  auto run = [&](int k) {
    const std::string rec = (dir / ("tuned" + std::to_string(k) + ".recipe")).string();
    const std::string out = (dir / ("report" + std::to_string(k) + ".json")).string();
    const std::vector<std::string> args = {"rtune",  "tune",   "--program", prog,  "--algo",       "sa",
                                           "--seed", "17",     "--mode",    "steps", "--steps-limit", "1000000",
                                           "--out",  out,      "--recipe-out", rec};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    auto slurp = [](const std::string& f) {
      std::ifstream in(f);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    return std::make_tuple(code, slurp(rec), nlohmann::json::parse(slurp(out)));
  };
  const auto [c1, r1, j1] = run(1);
  const auto [c2, r2, j2] = run(2);
  const bool same_recipe = !r1.empty() && r1 == r2;
  const bool same_trace = j1["details"]["trace"] == j2["details"]["trace"] && !j1["details"]["trace"].empty();
  v.pass = c1 == 0 && c2 == 0 && same_recipe && same_trace;
  v.detail = std::string("exit codes ") + std::to_string(c1) + "/" + std::to_string(c2) + ", recipe files " +
             (same_recipe ? "identical" : "differ") + ", traces " + (same_trace ? "equal" : "differ");
  fs::remove_all(dir);
  return v;
}

// Lattice laws over random states of the three-variable fixture function.

constexpr Int kRadius = 5;
const std::vector<Int> kThresholds{-5, 0, 3, 10};

template <class D>
std::size_t entry_changes(const D& a, const D& b) {
  if constexpr (std::is_same_v<D, ZoneDomain> || std::is_same_v<D, OctagonDomain>) {
    if (a.is_bottom() || b.is_bottom()) return a.is_bottom() != b.is_bottom();
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) n += a.entry(i, j) != b.entry(i, j);
    }
    // Octagon entries come in coherent pairs (i, j) ~ (j^1, i^1).
    if constexpr (std::is_same_v<D, OctagonDomain>) n = (n + 1) / 2;
    return n;
  } else if constexpr (std::is_same_v<D, BoolZoneProduct>) {
    return entry_changes(a.zones(), b.zones()) + !(a.bools() == b.bools());
  } else {
    return a == b ? 0 : 1;
  }
}

template <class D>
constexpr bool is_dbm() {
  return std::is_same_v<D, ZoneDomain> || std::is_same_v<D, OctagonDomain> || std::is_same_v<D, BoolZoneProduct>;
}

template <class D>
std::string lattice_suite(const char* name, std::size_t& failures) {
  const Function f = rtune::testing::small_function();
  const std::size_t vars = f.num_ints() + f.num_bools();
  const std::size_t bound = is_dbm<D>() ? (vars + 1) * (vars + 1) * (kThresholds.size() + 2)
                                        : 2 * vars * (kThresholds.size() + 2);
  std::mt19937_64 rng(12);
  std::size_t fails = 0, worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const D a = rtune::testing::random_state<D>(rng, f);
    const D b = rtune::testing::random_state<D>(rng, f);
    const D j = a.join(b), m = a.meet(b), w = a.widen(b, kThresholds);
    bool ok = a.leq(j) && b.leq(j) && m.leq(a) && m.leq(b) && a.leq(w) && b.leq(w);
    const D lo = a.meet(b);
    const D n = a.narrow(lo);
    ok = ok && lo.leq(n) && n.leq(a);

    // Ascending chain x_{k+1} = x_k widen (x_k join y_k).
    D x = a;
    std::size_t changes = 0;
    for (int k = 0; k < 40; ++k) {
      const D y = rtune::testing::random_state<D>(rng, f);
      const D next = x.widen(x.join(y), kThresholds);
      if (!x.leq(next)) ok = false;
      changes += entry_changes(x, next);
      x = next;
    }
    worst = std::max(worst, changes);
    ok = ok && changes <= bound;

    const Stmt st = rtune::testing::random_stmt(rng);
    D post = a;
    transfer(post, f, st, TransferOptions{});
    Point p{{0, 0, 0, 0}, {0}};
    for (Int px = -kRadius; px <= kRadius && ok; ++px) {
      for (Int py = -kRadius; py <= kRadius && ok; ++py) {
        for (Int pz = -kRadius; pz <= kRadius && ok; ++pz) {
          for (char pb = 0; pb < 2 && ok; ++pb) {
            p.ints = {px, py, pz, 0};
            p.bools = {pb};
            const bool in_a = a.contains(p);
            if ((in_a || b.contains(p)) && !j.contains(p)) ok = false;
            if (in_a && b.contains(p) && !m.contains(p)) ok = false;
            if (!in_a) continue;
            for (const Point& q : rtune::testing::concrete_post(st, p)) ok = ok && post.contains(q);
          }
        }
      }
    }
    fails += !ok;
  }
  failures += fails;
  return std::string(name) + " " + std::to_string(fails) + " failing, chain changes <= " + std::to_string(worst) +
         "/" + std::to_string(bound);
}

Outcome c12_lattice() {
  Outcome v;
  std::size_t failures = 0;
  std::ostringstream d;
  d << lattice_suite<BoolDomain>("bool", failures) << "; ";
  d << lattice_suite<IntervalDomain>("intervals", failures) << "; ";
  d << lattice_suite<RicDomain>("ric", failures) << "; ";
  d << lattice_suite<DisIntDomain>("disInt", failures) << "; ";
  d << lattice_suite<ZoneDomain>("zones", failures) << "; ";
  d << lattice_suite<OctagonDomain>("octagons", failures) << "; ";
  d << lattice_suite<BoolZoneProduct>("prod(bool,zones)", failures);
  v.pass = failures == 0;
  v.detail = d.str();
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "cost function exactness", kC1Seconds, c1_cost},
      {2, "iteration accounting", kC2Seconds, c2_iterations},
      {3, "soundness suite", kC3Seconds, c3_soundness},
      {4, "dars poset property", kC4Seconds, c4_dars},
      {5, "mutation probability calibration", kC5Seconds, c5_calibration},
      {6, "exhaustive oracle bound", kC6Seconds, c6_oracle},
      {8, "chaining monotonicity", kC8Seconds, c8_chaining},
      {9, "tuned vs default and most precise", kC9Seconds, c9_rq},
      {7, "monotone trace", kC2Seconds, c7_monotone},
      {10, "precision gap fixtures", kC10Seconds, c10_gaps},
      {11, "determinism", kC11Seconds, c11_determinism},
      {12, "lattice property suite", kC12Seconds, c12_lattice},
  };
  std::map<int, std::string> lines;
  bool all_pass = true;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.seconds;
    const bool pass = v.pass && in_time;
    all_pass = all_pass && pass;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << " C" << c.id << " " << c.title << " (" << std::fixed << std::setprecision(2)
         << secs << "s, limit " << c.seconds << "s" << (in_time ? "" : " EXCEEDED") << "): " << v.detail;
    lines[c.id] = line.str();
    std::cerr << "  finished C" << c.id << "\n";
  }
  for (const auto& [id, line] : lines) std::cout << line << "\n";
  return all_pass ? 0 : 1;
}
