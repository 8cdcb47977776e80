// SPDX-License-Identifier: Apache-2.0
#include "rtune/analyzer/analyzer.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace rtune {

const std::vector<int>& Settings::delay_widen_values() {
  static const std::vector<int> v{1, 2, 4, 8, 16};
  return v;
}
const std::vector<int>& Settings::narrow_iters_values() {
  static const std::vector<int> v{1, 2, 3, 4};
  return v;
}
const std::vector<int>& Settings::widen_thresholds_values() {
  static const std::vector<int> v{0, 10, 20, 30, 40};
  return v;
}

bool Settings::valid() const {
  auto in = [](const std::vector<int>& vs, int x) { return std::find(vs.begin(), vs.end(), x) != vs.end(); };
  return in(delay_widen_values(), delay_widen) && in(narrow_iters_values(), narrow_iters) &&
         in(widen_thresholds_values(), widen_thresholds);
}

const char* to_string(Verdict v) { return v == Verdict::Safe ? "safe" : "warning"; }

namespace {

void for_each_condition(const Function& f, const std::function<void(const BoolExpr&)>& fn) {
  for (const Block& b : f.blocks) {
    for (const Stmt& s : b.stmts) {
      if (const auto* a = std::get_if<stmt::Assume>(&s)) fn(a->cond);
      if (const auto* a = std::get_if<stmt::Assert>(&s)) fn(a->cond);
      if (const auto* a = std::get_if<stmt::BoolAssign>(&s)) fn(a->expr);
    }
    if (const auto* br = std::get_if<term::Branch>(&b.term)) fn(br->cond);
  }
}

void collect_cmp_constants(const BoolExpr& e, std::set<Int>& out) {
  if (e.kind == BoolExpr::Kind::Cmp) {
    for (Int c : comparison_constants(e)) out.insert(c);
  }
  for (const BoolExpr& a : e.args) collect_cmp_constants(a, out);
}

}  // namespace

std::vector<Int> collect_thresholds(const Program& p, int n) {
  std::set<Int> constants;
  for (const Function& f : p.functions) {
    for_each_condition(f, [&](const BoolExpr& e) { collect_cmp_constants(e, constants); });
    for (const Block& b : f.blocks) {
      for (const Stmt& s : b.stmts) {
        if (const auto* h = std::get_if<stmt::Havoc>(&s)) {
          if (h->lo.is_finite()) constants.insert(h->lo.value());
          if (h->hi.is_finite()) constants.insert(h->hi.value());
        }
      }
    }
  }
  std::vector<Int> v(constants.begin(), constants.end());
  std::stable_sort(v.begin(), v.end(), [](Int a, Int b) {
    const auto ma = a < 0 ? -static_cast<__int128>(a) : a, mb = b < 0 ? -static_cast<__int128>(b) : b;
    return ma != mb ? ma < mb : a < b;
  });
  if (n < 0) n = 0;
  if (v.size() > static_cast<std::size_t>(n)) v.resize(static_cast<std::size_t>(n));
  std::sort(v.begin(), v.end());
  return v;
}

std::set<int> assertion_ids(const Function& f) {
  std::set<int> ids;
  for (const Block& b : f.blocks) {
    for (const Stmt& s : b.stmts) {
      if (const auto* a = std::get_if<stmt::Assert>(&s)) ids.insert(a->id);
    }
  }
  return ids;
}

namespace {

struct Cfg {
  std::vector<std::uint32_t> rpo;
  std::vector<std::size_t> order;  // block -> position in rpo, npos when unreachable
  std::vector<std::vector<std::uint32_t>> preds;
  std::vector<char> head;
};

Cfg build_cfg(const Function& f) {
  const std::size_t n = f.blocks.size();
  Cfg g;
  g.order.assign(n, static_cast<std::size_t>(-1));
  g.preds.assign(n, {});
  g.head.assign(n, 0);
  std::vector<char> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::uint32_t> post;
  // Iterative DFS keeping successor cursors.
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{f.entry, 0}};
  std::vector<std::vector<std::uint32_t>> succ(n);
  for (std::uint32_t b = 0; b < n; ++b) succ[b] = f.successors(b);
  state[f.entry] = 1;
  while (!stack.empty()) {
    auto& [b, i] = stack.back();
    if (i < succ[b].size()) {
      const std::uint32_t s = succ[b][i++];
      if (state[s] == 1) g.head[s] = 1;
      if (state[s] == 0) {
        state[s] = 1;
        stack.emplace_back(s, 0);
      }
      continue;
    }
    state[b] = 2;
    post.push_back(b);
    stack.pop_back();
  }
  g.rpo.assign(post.rbegin(), post.rend());
  for (std::size_t i = 0; i < g.rpo.size(); ++i) g.order[g.rpo[i]] = i;
  for (std::uint32_t b : g.rpo) {
    for (std::uint32_t s : succ[b]) g.preds[s].push_back(b);
  }
  return g;
}

template <class D>
class Engine {
 public:
  Engine(const Function& f, const Ingredient& ing, Thresholds t, ResourceMeter& meter)
      : f_(f), set_(ing.settings), thresholds_(t), meter_(meter), cfg_(build_cfg(f)), opt_{ing.settings.smashing} {}

  AnalysisResult run(const std::set<int>& targets, bool keep) {
    const std::size_t n = f_.blocks.size();
    in_.assign(n, D::bottom(layout_of(f_)));
    forward();
    for (int k = 0; k < set_.narrow_iters; ++k) narrow_pass();

    AnalysisResult r;
    std::vector<std::vector<D>> points(n);
    for (std::uint32_t b : cfg_.rpo) {
      D s = in_[b];
      const Block& blk = f_.blocks[b];
      points[b].reserve(blk.stmts.size() + 1);
      for (std::uint32_t i = 0; i < blk.stmts.size(); ++i) {
        points[b].push_back(s);
        if (const auto* a = std::get_if<stmt::Assert>(&blk.stmts[i]); a && targets.count(a->id)) {
          r.verdicts[a->id] = entails(s, a->cond) ? Verdict::Safe : Verdict::Warning;
          sites_[a->id] = {b, i};
        }
        step(s, blk.stmts[i]);
      }
      points[b].push_back(s);
    }
    for (int id : targets) {
      if (!r.verdicts.count(id)) r.verdicts[id] = Verdict::Safe;  // unreachable
    }
    if (set_.backward) {
      for (auto& [id, v] : r.verdicts) {
        if (v == Verdict::Warning && sites_.count(id) && refute(id, points)) v = Verdict::Safe;
      }
    }
    if (keep) {
      for (std::uint32_t b : cfg_.rpo) {
        for (std::uint32_t i = 0; i < points[b].size(); ++i) r.invariants.emplace(ProgramPoint{b, i}, AbstractState(points[b][i]));
      }
    }
    return r;
  }

 private:
  void step(D& s, const Stmt& st) {
    meter_.tick();
    transfer(s, f_, st, opt_);
  }

  D block_out(std::uint32_t b) {
    D s = in_[b];
    for (const Stmt& st : f_.blocks[b].stmts) {
      if (s.is_bottom()) break;
      step(s, st);
    }
    return s;
  }

  /// State flowing along b -> succ given the block's out state.
  D edge(std::uint32_t b, const D& out, std::uint32_t succ) {
    const auto* br = std::get_if<term::Branch>(&f_.blocks[b].term);
    if (!br || out.is_bottom()) return out;
    if (br->then_target == succ && br->else_target == succ) return out;
    meter_.tick();
    D s = out;
    assume(s, br->cond, br->then_target == succ);
    return s;
  }

  D incoming(std::uint32_t b, const std::vector<D>& outs) {
    D acc = b == f_.entry ? entry_state<D>(f_) : D::bottom(layout_of(f_));
    for (std::uint32_t p : cfg_.preds[b]) {
      if (!outs[p].is_bottom()) acc = acc.join(edge(p, outs[p], b));
    }
    return acc;
  }

  void forward() {
    const std::size_t n = f_.blocks.size();
    std::vector<D> outs(n, D::bottom(layout_of(f_)));
    std::vector<int> updates(n, 0);
    std::vector<char> visited(n, 0);
    std::set<std::size_t> work{cfg_.order[f_.entry]};
    while (!work.empty()) {
      const std::uint32_t b = cfg_.rpo[*work.begin()];
      work.erase(work.begin());
      D nw = incoming(b, outs);
      if (visited[b] && nw.leq(in_[b])) continue;
      if (cfg_.head[b]) {
        nw = updates[b] < set_.delay_widen ? in_[b].join(nw) : in_[b].widen(nw, thresholds_);
        ++updates[b];
      }
      visited[b] = 1;
      in_[b] = std::move(nw);
      outs[b] = block_out(b);
      for (std::uint32_t s : f_.successors(b)) work.insert(cfg_.order[s]);
    }
  }

  void narrow_pass() {
    const std::size_t n = f_.blocks.size();
    std::vector<D> outs(n, D::bottom(layout_of(f_)));
    for (std::uint32_t b : cfg_.rpo) outs[b] = block_out(b);
    for (std::uint32_t b : cfg_.rpo) {
      const D nw = in_[b].meet(incoming(b, outs));
      in_[b] = cfg_.head[b] ? in_[b].narrow(nw) : nw;
      outs[b] = block_out(b);
    }
  }

  /// Backward from the violation of assertion `id`, restricted to forward
  /// invariants; true when no entry state can reach the violation.
  bool refute(int id, const std::vector<std::vector<D>>& points) {
    const auto [ab, ai] = sites_.at(id);
    const auto& cond = std::get<stmt::Assert>(f_.blocks[ab].stmts[ai]).cond;
    D seed = points[ab][ai];
    assume(seed, cond, false);
    if (seed.is_bottom()) return true;

    const std::size_t n = f_.blocks.size();
    const VarLayout l = layout_of(f_);
    std::vector<D> pre(n, D::bottom(l));
    std::vector<int> updates(n, 0);
    std::vector<char> visited(n, 0);
    // Post order visits successors before predecessors.
    std::set<std::size_t, std::greater<>> work{cfg_.order[ab]};
    while (!work.empty()) {
      const std::uint32_t b = cfg_.rpo[*work.begin()];
      work.erase(work.begin());
      const Block& blk = f_.blocks[b];
      D s = D::bottom(l);
      const auto* br = std::get_if<term::Branch>(&blk.term);
      for (std::uint32_t succ : f_.successors(b)) {
        if (pre[succ].is_bottom()) continue;
        D e = pre[succ];
        if (br && !(br->then_target == succ && br->else_target == succ)) {
          meter_.tick();
          assume(e, br->cond, br->then_target == succ);
        }
        s = s.join(e);
      }
      s = s.meet(points[b].back());
      for (std::uint32_t i = static_cast<std::uint32_t>(blk.stmts.size()); i-- > 0;) {
        if (!s.is_bottom()) {
          meter_.tick();
          backward_transfer(s, f_, blk.stmts[i], opt_);
          s = s.meet(points[b][i]);
        }
        if (b == ab && i == ai) s = s.join(seed);
      }
      if (visited[b] && s.leq(pre[b])) continue;
      if (cfg_.head[b]) {
        s = updates[b] < set_.delay_widen ? pre[b].join(s) : pre[b].widen(s, thresholds_);
        ++updates[b];
      }
      visited[b] = 1;
      pre[b] = std::move(s);
      for (std::uint32_t p : cfg_.preds[b]) work.insert(cfg_.order[p]);
    }
    return pre[f_.entry].meet(entry_state<D>(f_)).is_bottom();
  }

  const Function& f_;
  Settings set_;
  Thresholds thresholds_;
  ResourceMeter& meter_;
  Cfg cfg_;
  TransferOptions opt_;
  std::vector<D> in_;
  std::map<int, ProgramPoint> sites_;
};

}  // namespace

AnalysisResult analyze(const Function& f, const Ingredient& ing, const std::set<int>& targets, Thresholds thresholds,
                       ResourceMeter& meter, const AnalyzeOptions& opt) {
  const auto start_steps = meter.steps();
  const double start_time = meter.seconds();
  AnalysisResult r = with_domain(ing.domain, [&](auto tag) {
    using D = typename decltype(tag)::type;
    return Engine<D>(f, ing, thresholds, meter).run(targets, opt.keep_invariants);
  });
  r.steps = meter.steps() - start_steps;
  r.wall_time = meter.seconds() - start_time;
  return r;
}

AnalysisResult analyze_program(const Program& p, const Ingredient& ing, const std::set<int>& targets,
                               ResourceMeter& meter) {
  const std::vector<Int> t = collect_thresholds(p, ing.settings.widen_thresholds);
  AnalysisResult total;
  for (const Function& f : p.functions) {
    std::set<int> mine;
    for (int id : assertion_ids(f)) {
      if (targets.count(id)) mine.insert(id);
    }
    if (mine.empty()) continue;
    AnalysisResult r = analyze(f, ing, mine, t, meter);
    total.verdicts.insert(r.verdicts.begin(), r.verdicts.end());
    total.steps += r.steps;
    total.wall_time += r.wall_time;
  }
  return total;
}

AnalysisResult analyze_program(const Program& p, const Ingredient& ing, const std::set<int>& targets,
                               const ResourceBudget& budget) {
  ResourceMeter meter(budget);
  return analyze_program(p, ing, targets, meter);
}

}  // namespace rtune
