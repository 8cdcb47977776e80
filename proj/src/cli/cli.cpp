// SPDX-License-Identifier: Apache-2.0
#include "rtune/cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rtune/cli/report.hpp"
#include "rtune/ir/instrument.hpp"
#include "rtune/ir/parser.hpp"

namespace rtune {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string program;
  std::string recipe;
  std::string recipe_out = "tuned.recipe";
  std::string algo = "dars";
  std::string limit = "1s";
  double steps_limit = 1e6;
  std::string mode = "steps";
  std::uint64_t seed = 0;
  int max_len = 3;
  int domain_iters = 5;
  int settings_iters = 10;
  std::string poset;
  int bit_width = 32;
  std::string out;
  std::string kinds;
  bool instrument = false;
  // oracle
  std::string domains;
  bool full_settings = false;
  bool with_tuner = false;
  // replay
  std::string old_program;
  bool retune = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--program", o.program, "program file (.air)")->required();
  cmd->add_option("--limit", o.limit, "wall-clock limit (s, ms, m suffixes)");
  cmd->add_option("--steps-limit", o.steps_limit, "abstract step limit");
  cmd->add_option("--mode", o.mode, "resource mode")->check(CLI::IsMember({"wall", "steps"}));
  cmd->add_option("--poset", o.poset, "domain poset file");
  cmd->add_option("--bit-width", o.bit_width, "integer width for overflow assertions");
  cmd->add_option("--out", o.out, "write the JSON report here instead of standard output");
  cmd->add_option("--kinds", o.kinds, "comma separated assertion kinds to instrument");
  cmd->add_flag("--instrument", o.instrument, "instrument the program before analysis");
}

void add_tuner(CLI::App* cmd, Options& o) {
  cmd->add_option("--algo", o.algo, "search strategy")->check(CLI::IsMember({"rs", "dars", "sa", "hc"}));
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--max-len", o.max_len, "maximum recipe length")->check(CLI::PositiveNumber);
  cmd->add_option("--domain-iters", o.domain_iters, "phase one iterations per length")->check(CLI::PositiveNumber);
  cmd->add_option("--settings-iters", o.settings_iters, "phase two iterations")->check(CLI::NonNegativeNumber);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Context {
  Program program;
  DomainPoset poset = DomainPoset::default_poset();
  ResourceBudget budget;
};

Program load_program(const Options& o, const std::string& path) {
  Program p = parse_program(read_file(path));
  if (o.instrument) {
    std::set<AssertionKind> kinds(std::begin(kAllAssertionKinds), std::end(kAllAssertionKinds));
    if (!o.kinds.empty()) {
      kinds.clear();
      std::stringstream ss(o.kinds);
      std::string k;
      while (std::getline(ss, k, ',')) {
        const auto kind = parse_assertion_kind(k);
        if (!kind) throw UsageError("unknown assertion kind '" + k + "'");
        kinds.insert(*kind);
      }
    }
    try {
      p = instrument(p, kinds, o.bit_width);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return p;
}

Context load_context(const Options& o) {
  Context c;
  c.program = load_program(o, o.program);
  if (!o.poset.empty()) c.poset = DomainPoset::from_file(o.poset);
  if (o.mode == "steps") {
    if (!(o.steps_limit > 0)) throw UsageError("--steps-limit must be positive");
    c.budget = {BudgetMode::Steps, std::floor(o.steps_limit)};
  } else {
    c.budget = {BudgetMode::Wall, parse_duration(o.limit)};
  }
  return c;
}

void check_recipe(const Recipe& r, const DomainPoset& poset) {
  for (DomainId d : r.domains()) {
    if (!has_implementation(d) || (poset.contains(d) && !poset.is_implemented(d))) throw UnimplementedDomain(d);
    if (!poset.contains(d)) throw UsageError(std::string("domain not in poset: ") + to_string(d));
  }
}

TunerConfig tuner_config(const Options& o, const Context& c) {
  TunerConfig cfg;
  cfg.budget = c.budget;
  cfg.l_max = o.max_len;
  cfg.i_dom = o.domain_iters;
  cfg.i_set = o.settings_iters;
  cfg.strategy = *parse_strategy(o.algo);
  cfg.seed = o.seed;
  cfg.poset = c.poset;
  return cfg;
}

RunReport base_report(const std::string& cmd, const Options& o, const Context& c) {
  RunReport r;
  r.command = cmd;
  r.program = o.program;
  r.seed = o.seed;
  r.budget = c.budget;
  return r;
}

nlohmann::json trace_json(const TuneResult& t) {
  nlohmann::json tr = nlohmann::json::array();
  for (const auto& e : t.trace) {
    tr.push_back({{"iteration", e.iteration},
                  {"phase", to_string(e.phase)},
                  {"candidate", summarize(e.candidate)},
                  {"cost", to_json(e.cost)},
                  {"accepted", e.accepted},
                  {"best", to_json(e.best)}});
  }
  return tr;
}

void attach_search(RunReport& r, const TuneResult& t) {
  r.search = TraceSummary{t.iterations_to_best, t.trace.size(), t.total_resource};
  r.details["trace"] = trace_json(t);
  r.details["initial_cost"] = to_json(t.initial_cost);
}

std::string table_line(const std::string& name, const RecipeOutcome& o) {
  std::ostringstream s;
  s << std::left << std::setw(14) << name << std::right << std::setw(9) << (o.w_total - o.w) << " /"
    << std::setw(4) << o.w_total << std::setw(14) << o.r << std::setw(12) << o.cost.to_string();
  return s.str();
}

void emit(const RunReport& r, const Options& o, std::ostream& out, const std::string& table) {
  const std::string doc = to_json(r).dump(2) + "\n";
  if (o.out.empty()) {
    out << doc;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << doc;
  out << table;
}

int cmd_tune(const Options& o, std::ostream& out) {
  const Context c = load_context(o);
  const TuneResult t = optimize(c.program, tuner_config(o, c));
  {
    std::ofstream f(o.recipe_out);
    if (!f) throw UsageError("cannot write " + o.recipe_out);
    f << print_recipe(t.best);
  }
  RunReport r = base_report("tune", o, c);
  r.recipes["tuned"] = t.best;
  r.outcomes["tuned"] = t.best_outcome;
  attach_search(r, t);
  r.details["strategy"] = o.algo;
  r.details["recipe_file"] = o.recipe_out;
  std::ostringstream table;
  table << "best recipe " << summarize(t.best) << "\n" << table_line("tuned", t.best_outcome) << "\n";
  emit(r, o, out, table.str());
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Context c = load_context(o);
  const Recipe rec = o.recipe.empty() ? default_recipe() : load_recipe(o.recipe);
  check_recipe(rec, c.poset);
  const RecipeOutcome res = evaluate(c.program, rec, c.budget);
  RunReport r = base_report("analyze", o, c);
  r.recipes["analyzed"] = rec;
  r.outcomes["analyzed"] = res;
  std::ostringstream table;
  table << "recipe " << summarize(rec) << "\n";
  for (const auto& [id, v] : res.verdicts) table << "  #" << id << " " << to_string(v) << "\n";
  table << "w = " << res.w << "  w_total = " << res.w_total << "  r = " << res.r << "  cost = " << res.cost.to_string()
        << "\n";
  emit(r, o, out, table.str());
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const Context c = load_context(o);
  const Recipe def = default_recipe();
  const Recipe precise = most_precise_recipe(c.poset);
  const TuneResult t = optimize(c.program, tuner_config(o, c));
  const RecipeOutcome def_out = evaluate(c.program, def, c.budget);
  const RecipeOutcome precise_out = evaluate(c.program, precise, c.budget);
  RunReport r = base_report("compare", o, c);
  r.recipes = {{"default", def}, {"tuned", t.best}, {"most_precise", precise}};
  r.outcomes = {{"default", def_out}, {"tuned", t.best_outcome}, {"most_precise", precise_out}};
  attach_search(r, t);
  const auto tv = t.best_outcome.verified(), dv = def_out.verified();
  std::set<int> both, only_tuned, only_default;
  for (int id : tv) (dv.count(id) ? both : only_tuned).insert(id);
  for (int id : dv) {
    if (!tv.count(id)) only_default.insert(id);
  }
  r.details["breakdown"] = {{"both", both}, {"only_tuned", only_tuned}, {"only_default", only_default}};
  std::ostringstream table;
  table << std::left << std::setw(14) << "recipe" << std::right << std::setw(15) << "verified" << std::setw(14)
        << "resource" << std::setw(12) << "cost"
        << "\n"
        << table_line("default", def_out) << "\n"
        << table_line("tuned", t.best_outcome) << "\n"
        << table_line("most_precise", precise_out) << "\n"
        << "both " << both.size() << ", only tuned " << only_tuned.size() << ", only default " << only_default.size()
        << "\n";
  emit(r, o, out, table.str());
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Context c = load_context(o);
  std::vector<DomainId> domains;
  if (o.domains.empty()) {
    domains = c.poset.implemented();
  } else {
    std::stringstream ss(o.domains);
    std::string name;
    while (std::getline(ss, name, ';')) {
      const auto d = parse_domain(name);
      if (!d) throw UsageError("unknown domain '" + name + "'");
      if (!c.poset.is_implemented(*d)) throw UnimplementedDomain(*d);
      domains.push_back(*d);
    }
  }
  SearchSpace space = SearchSpace::defaults_only(domains);
  if (o.full_settings) {
    SearchSpace full = SearchSpace::full(c.poset);
    full.domains = space.domains;
    space = full;
  }
  EnumerationResult best;
  try {
    best = enumerate_exhaustive(c.program, space, c.poset, o.max_len, c.budget);
  } catch (const OptimizerError& e) {
    throw UsageError(e.what());
  }
  RunReport r = base_report("oracle", o, c);
  r.recipes["optimum"] = best.best;
  r.details["optimum_cost"] = to_json(best.cost);
  r.details["space_size"] = best.evaluated;
  std::ostringstream table;
  table << "optimum " << summarize(best.best) << " cost " << best.cost.to_string() << " over " << best.evaluated
        << " recipes\n";
  if (o.with_tuner) {
    TunerConfig cfg = tuner_config(o, c);
    cfg.space = space;
    const TuneResult t = optimize(c.program, cfg);
    r.recipes["tuned"] = t.best;
    r.outcomes["tuned"] = t.best_outcome;
    attach_search(r, t);
    const double gap = t.best_cost.is_finite() && best.cost.is_finite() ? t.best_cost.value() - best.cost.value()
                                                                        : (t.best_cost == best.cost ? 0.0 : INFINITY);
    r.details["gap"] = std::isfinite(gap) ? nlohmann::json(gap) : nlohmann::json("inf");
    // Sampling is with replacement, so even a budget above the space size
    // does not guarantee that the optimum is drawn.
    r.details["optimum_guaranteed"] = false;
    table << "tuned " << summarize(t.best) << " cost " << t.best_cost.to_string() << " gap "
          << r.details["gap"].dump() << " (not guaranteed)\n";
  }
  emit(r, o, out, table.str());
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  if (o.old_program.empty() && !o.retune) throw UsageError("replay needs --old-program or --retune");
  const Context c = load_context(o);
  const Recipe old_recipe = load_recipe(o.recipe);
  check_recipe(old_recipe, c.poset);
  RunReport r = base_report("replay", o, c);
  r.recipes["old"] = old_recipe;
  const RecipeOutcome on_new = evaluate(c.program, old_recipe, c.budget);
  r.outcomes["old_on_new"] = on_new;
  std::size_t reference = 0;
  std::string against;
  if (o.retune) {
    const TuneResult t = optimize(c.program, tuner_config(o, c));
    r.recipes["retuned"] = t.best;
    r.outcomes["retuned_on_new"] = t.best_outcome;
    attach_search(r, t);
    reference = t.best_outcome.verified().size();
    against = "retuned_on_new";
  }
  if (!o.old_program.empty()) {
    const RecipeOutcome on_old = evaluate(load_program(o, o.old_program), old_recipe, c.budget);
    r.outcomes["old_on_old"] = on_old;
    if (!o.retune) {
      reference = on_old.verified().size();
      against = "old_on_old";
    }
  }
  const long diff = static_cast<long>(on_new.verified().size()) - static_cast<long>(reference);
  const double tolerance = std::max(1.0, 0.01 * static_cast<double>(reference));
  const std::string cls =
      std::abs(static_cast<double>(diff)) <= tolerance ? "equal" : (diff > 0 ? "positive" : "negative");
  r.details["diff"] = diff;
  r.details["reference"] = against;
  r.details["classification"] = cls;
  std::ostringstream table;
  table << "old recipe verifies " << on_new.verified().size() << " on the new version, " << against << " "
        << reference << ": diff " << diff << " (" << cls << ")\n";
  emit(r, o, out, table.str());
  return kExitOk;
}

}  // namespace

double parse_duration(const std::string& text) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("invalid duration '" + text + "'");
  }
  const std::string unit = text.substr(pos);
  if (unit == "ms") {
    v /= 1000;
  } else if (unit == "m") {
    v *= 60;
  } else if (!unit.empty() && unit != "s") {
    throw UsageError("invalid duration '" + text + "'");
  }
  if (!(v > 0)) throw UsageError("duration must be positive");
  return v;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tunes abstract interpreter recipes to a program and a resource budget", "rtune"};
  app.require_subcommand(1);
  Options o;
  auto* tune = app.add_subcommand("tune", "search for a low-cost recipe");
  add_common(tune, o);
  add_tuner(tune, o);
  tune->add_option("--recipe-out", o.recipe_out, "where to write the best recipe");
  auto* analyze = app.add_subcommand("analyze", "evaluate one recipe");
  add_common(analyze, o);
  analyze->add_option("--recipe", o.recipe, "recipe file (default: prod(bool,zones) with default settings)");
  auto* compare = app.add_subcommand("compare", "default vs tuned vs most precise recipe");
  add_common(compare, o);
  add_tuner(compare, o);
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum over a restricted space");
  add_common(oracle, o);
  add_tuner(oracle, o);
  oracle->add_option("--domains", o.domains, "semicolon separated domains of the space");
  oracle->add_flag("--full-settings", o.full_settings, "all setting values instead of defaults only");
  oracle->add_flag("--with-tuner", o.with_tuner, "also run the tuner on the space and report the gap");
  auto* replay = app.add_subcommand("replay", "evaluate an old recipe on a new program version");
  add_common(replay, o);
  add_tuner(replay, o);
  replay->add_option("--recipe", o.recipe, "recipe tuned for the old version")->required();
  replay->add_option("--old-program", o.old_program, "the old program version");
  replay->add_flag("--retune", o.retune, "also tune for the new version and compare against it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    if (tune->parsed()) return cmd_tune(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
    return cmd_replay(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ProgramError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RecipeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PosetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnimplementedDomain& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OptimizerError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace rtune
