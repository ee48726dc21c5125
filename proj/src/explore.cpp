#include "sdnmc/explore.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <mutex>
#include <stdexcept>

#include "sdnmc/monitors.hpp"

namespace sdnmc {

std::string to_string(ExploreMode m) {
  return m == ExploreMode::Full ? "full" : "property";
}

ExploreMode mode_from_string(const std::string& s) {
  if (s == "full") return ExploreMode::Full;
  if (s == "property") return ExploreMode::Property;
  throw std::runtime_error("unknown exploration mode: " + s);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Frame {
  Config cfg;
  std::vector<Move> enabled;
  std::set<Move> sleep;
  std::set<Move> backtrack;
  std::set<Move> done;
  bool initialized = false;
  bool frozen = false;  // parallel mode: root owned by the coordinator

  Move chosen{};
  StepSummary summary;           // of the edge executed out of this frame
  std::set<int> hb;              // stack depths causally before the edge
  std::map<Move, StepSummary> sims;  // move summaries computed at this state
  int node_serial = -1;
};

class Engine {
 public:
  Engine(const ExplorationOptions& opts, bool reduce,
         std::atomic<bool>* external_stop)
      : opts_(opts), reduce_(reduce), external_stop_(external_stop) {}

  ExplorationResult res;
  std::set<Move> root_requests;     // parallel: backtrack points for the root
  bool root_request_all = false;

  void run(Config initial) {
    push_frame(std::move(initial), {});
    loop();
  }

  // Parallel worker entry: explore the subtree under `edge` taken at `root`.
  void run_subtree(const Config& root_cfg, const std::vector<Move>& root_enabled,
                   const Move& edge, const StepSummary& edge_summary,
                   std::set<Move> child_sleep) {
    Frame root;
    root.cfg = root_cfg;
    root.enabled = root_enabled;
    root.initialized = true;
    root.frozen = true;
    root.chosen = edge;
    root.summary = edge_summary;
    root.node_serial = next_serial_++;
    stack_.push_back(std::move(root));
    Config child = macro_step(stack_[0].cfg, edge);
    if (check_edge_violation(stack_[0].summary, edge)) return;
    push_frame(std::move(child), std::move(child_sleep));
    loop();
  }

 private:
  const ExplorationOptions& opts_;
  bool reduce_;
  std::atomic<bool>* external_stop_;
  std::vector<Frame> stack_;
  int next_serial_ = 0;
  bool stop_ = false;

  bool stopping() const {
    return stop_ || (external_stop_ != nullptr && external_stop_->load());
  }

  void push_frame(Config cfg, std::set<Move> sleep) {
    Frame f;
    f.cfg = std::move(cfg);
    f.sleep = std::move(sleep);
    stack_.push_back(std::move(f));
  }

  size_t depth() const { return stack_.size() - 1; }

  std::vector<Move> path_moves() const {
    std::vector<Move> out;
    for (size_t i = 0; i + 1 < stack_.size(); ++i)
      out.push_back(stack_[i].chosen);
    return out;
  }

  std::vector<StepSummary> path_summaries() const {
    std::vector<StepSummary> out;
    for (size_t i = 0; i + 1 < stack_.size(); ++i)
      out.push_back(stack_[i].summary);
    return out;
  }

  const StepSummary& sim(Frame& f, const Move& m) {
    auto it = f.sims.find(m);
    if (it != f.sims.end()) return it->second;
    StepSummary s;
    macro_step(f.cfg, m, &s);
    s.serial = f.node_serial;
    return f.sims.emplace(m, std::move(s)).first->second;
  }

  void record_violating_execution(const std::vector<Violation>& vio) {
    ++res.violating_executions;
    std::set<ViolationKind> kinds;
    for (const Violation& v : vio) kinds.insert(v.kind);
    for (ViolationKind k : kinds) ++res.executions_with[k];
  }

  // Returns true when property mode stops on a violation raised by this edge.
  bool check_edge_violation(const StepSummary& sum, const Move& m) {
    if (opts_.mode != ExploreMode::Property || sum.violations.empty())
      return false;
    if (!res.first_violation) {
      ExecutionRecord rec;
      rec.trace = path_moves();
      if (rec.trace.empty() || !(rec.trace.back() == m)) rec.trace.push_back(m);
      rec.violations = sum.violations;
      res.first_violation = std::move(rec);
    }
    res.stopped_early = true;
    stop_ = true;
    return true;
  }

  void handle_leaf(Frame& f) {
    bool complete = is_complete(f.cfg);
    ++res.executions;
    if (!complete) ++res.deadlocks;
    if (complete && opts_.on_complete_leaf) opts_.on_complete_leaf(f.cfg);

    std::string key = canonical_serialize(f.cfg);
    res.final_keys.insert(key);
    auto [it, fresh] = res.final_info.try_emplace(key);
    FinalStateInfo& info = it->second;
    if (fresh) {
      info.fingerprint = fnv1a64(key);
      info.deadlock = !complete;
      if (res.final_info.size() <= opts_.max_final_summaries)
        info.summary = summarize_final_state(f.cfg);
    }
    ++info.count;

    std::vector<Violation> vio;
    for (size_t i = 0; i + 1 < stack_.size(); ++i)
      for (const Violation& v : stack_[i].summary.violations) vio.push_back(v);
    for (const Violation& v : final_state_violations(f.cfg)) vio.push_back(v);
    if (!vio.empty()) {
      record_violating_execution(vio);
      if (opts_.mode == ExploreMode::Property) {
        if (!res.first_violation) {
          ExecutionRecord rec;
          rec.trace = path_moves();
          rec.violations = vio;
          rec.final_key = key;
          res.first_violation = std::move(rec);
        }
        res.stopped_early = true;
        stop_ = true;
      }
    }

    if (f.cfg.ctx->barriers) {
      BarrierCheckResult bc =
          check_barrier_discipline(path_summaries(), *f.cfg.ctx);
      res.barrier_windows += bc.windows;
      res.barrier_problems += static_cast<long>(bc.problems.size());
      for (const std::string& p : bc.problems)
        if (res.barrier_problem_samples.size() < 8)
          res.barrier_problem_samples.push_back(p);
    }
  }

  void run_commutation_checks(Frame& f) {
    int budget = opts_.commutation_pairs_per_node;
    for (size_t i = 0; i < f.enabled.size() && budget > 0; ++i)
      for (size_t j = i + 1; j < f.enabled.size() && budget > 0; ++j) {
        const Move a = f.enabled[i];
        const Move b = f.enabled[j];
        const StepSummary sa = sim(f, a);
        const StepSummary sb = sim(f, b);
        if (dependent(sa, sb, opts_.independence)) continue;
        --budget;
        ++res.commutation_checks;
        Config ca = macro_step(f.cfg, a);
        Config cb = macro_step(f.cfg, b);
        auto enabled_in = [](const Config& c, const Move& m) {
          const Actor& actor = c.actor(m.actor);
          const Task* t = actor.find_task(m.task);
          return t != nullptr && !t->finished() &&
                 await_satisfied(c, await_of(c, actor, *t));
        };
        std::string problem;
        if (!enabled_in(ca, b) || !enabled_in(cb, a)) {
          problem = "independent move disabled by peer";
        } else if (canonical_fingerprint(macro_step(ca, b)) !=
                   canonical_fingerprint(macro_step(cb, a))) {
          problem = "orders disagree";
        }
        if (!problem.empty()) {
          ++res.commutation_failures;
          if (res.commutation_failure_samples.size() < 8)
            res.commutation_failure_samples.push_back(
                problem + ": " + to_string(a) + " vs " + to_string(b) + " at " +
                f.cfg.ctx->name);
        }
      }
  }

  void init_frame(Frame& f) {
    f.initialized = true;
    f.node_serial = next_serial_++;
    ++res.states;
    if (res.states > opts_.node_limit) {
      res.truncated = true;
      stop_ = true;
      return;
    }
    f.enabled = enabled_moves(f.cfg);
    if (f.enabled.empty()) {
      handle_leaf(f);
      return;  // no backtrack seeded: frame pops
    }
    if (static_cast<int>(depth()) >= opts_.max_depth) {
      ++res.depth_exhausted;
      return;
    }
    if (opts_.debug_commutation && reduce_) run_commutation_checks(f);
    if (!reduce_) {
      f.backtrack.insert(f.enabled.begin(), f.enabled.end());
      return;
    }
    for (const Move& m : f.enabled)
      if (f.sleep.count(m) == 0) {
        f.backtrack.insert(m);  // smallest non-sleeping move
        break;
      }
    // All enabled moves asleep: redundant prefix, not an execution.
  }

  std::optional<Move> next_move(Frame& f) {
    for (const Move& m : f.backtrack)
      if (f.done.count(m) == 0 && f.sleep.count(m) == 0) return m;
    return std::nullopt;
  }

  std::set<int> causal_history(const Move& m) {
    // Edges currently on the stack are indices 0..top-1; the new edge leaves
    // from the top frame.
    std::set<int> hb;
    auto add_cause = [&](size_t i) {
      hb.insert(static_cast<int>(i));
      hb.insert(stack_[i].hb.begin(), stack_[i].hb.end());
    };
    size_t d = depth();
    bool found_prev = false;
    for (size_t i = d; i-- > 0;) {
      if (!found_prev && stack_[i].chosen.task == m.task) {
        add_cause(i);
        found_prev = true;
      }
    }
    for (size_t i = d; i-- > 0;) {
      bool spawned_here = false;
      for (const StepSummary::Spawn& sp : stack_[i].summary.spawned)
        if (sp.task == m.task) spawned_here = true;
      if (spawned_here) {
        add_cause(i);
        break;
      }
    }
    // If the task resumes from a future await, the finisher is a cause.
    const Frame& top = stack_.back();
    const Actor& actor = top.cfg.actor(m.actor);
    const Task* t = actor.find_task(m.task);
    if (t != nullptr && t->cont == kContReqAwaitFut) {
      Await w = await_of(top.cfg, actor, *t);
      if (w.kind == Await::Kind::Future)
        for (size_t i = d; i-- > 0;)
          if (stack_[i].summary.task_finished && stack_[i].chosen.task == w.fut) {
            add_cause(i);
            break;
          }
    }
    return hb;
  }

  void race_insert(const StepSummary& sum, const std::set<int>& hb) {
    size_t d = depth();
    for (size_t i = 0; i < d; ++i) {
      if (hb.count(static_cast<int>(i)) != 0) continue;
      if (!dependent(stack_[i].summary, sum, opts_.independence)) continue;
      Frame& anc = stack_[i];
      auto enabled_at = [&](const Move& m) {
        return std::binary_search(anc.enabled.begin(), anc.enabled.end(), m);
      };
      if (anc.frozen) {
        if (enabled_at(sum.move))
          root_requests.insert(sum.move);
        else
          root_request_all = true;
        continue;
      }
      if (enabled_at(sum.move)) {
        anc.backtrack.insert(sum.move);
        continue;
      }
      std::optional<Move> chain;
      for (int j : hb)
        if (j > static_cast<int>(i)) {
          chain = stack_[static_cast<size_t>(j)].chosen;
          break;
        }
      if (chain && enabled_at(*chain)) {
        anc.backtrack.insert(*chain);
      } else {
        anc.backtrack.insert(anc.enabled.begin(), anc.enabled.end());
      }
    }
  }

  void execute(Frame& f, const Move& m) {
    f.done.insert(m);
    StepSummary sum;
    Config child_cfg = macro_step(f.cfg, m, &sum);
    sum.serial = f.node_serial;
    f.chosen = m;
    f.summary = sum;
    f.sims[m] = sum;
    if (reduce_) {
      f.hb = causal_history(m);
      race_insert(sum, f.hb);
    }
    if (check_edge_violation(sum, m)) return;

    std::set<Move> child_sleep;
    if (reduce_) {
      for (const Move& t : f.sleep) {
        if (t == m) continue;
        if (dependent(sim(f, t), sum, opts_.independence)) continue;
        child_sleep.insert(t);
      }
    }
    push_frame(std::move(child_cfg), std::move(child_sleep));
    // Prune sleeping moves that are no longer enabled in the child.
    Frame& child = stack_.back();
    if (!child.sleep.empty()) {
      Config& c = child.cfg;
      std::set<Move> kept;
      for (const Move& t : child.sleep) {
        const Actor& actor = c.actor(t.actor);
        const Task* task = actor.find_task(t.task);
        if (task != nullptr && !task->finished() &&
            await_satisfied(c, await_of(c, actor, *task)))
          kept.insert(t);
      }
      child.sleep = std::move(kept);
    }
  }

  void loop() {
    while (!stack_.empty() && !stopping()) {
      Frame& f = stack_.back();
      if (f.frozen) break;  // parallel: never step the coordinator's root
      if (!f.initialized) {
        init_frame(f);
        continue;
      }
      std::optional<Move> m = next_move(f);
      if (!m) {
        stack_.pop_back();
        if (!stack_.empty() && !stack_.back().frozen) {
          Frame& parent = stack_.back();
          parent.sleep.insert(parent.chosen);
        }
        continue;
      }
      execute(f, *m);
    }
  }
};

ExplorationResult explore_sequential(const Config& initial,
                                     const ExplorationOptions& opts,
                                     bool reduce,
                                     std::atomic<bool>* external_stop) {
  auto start = Clock::now();
  Engine eng(opts, reduce, external_stop);
  eng.run(initial);
  eng.res.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return eng.res;
}

void merge_results(ExplorationResult& into, const ExplorationResult& part) {
  into.executions += part.executions;
  into.states += part.states;
  into.deadlocks += part.deadlocks;
  into.depth_exhausted += part.depth_exhausted;
  into.truncated = into.truncated || part.truncated;
  into.stopped_early = into.stopped_early || part.stopped_early;
  into.violating_executions += part.violating_executions;
  for (const auto& [k, n] : part.executions_with) into.executions_with[k] += n;
  for (const std::string& k : part.final_keys) into.final_keys.insert(k);
  for (const auto& [k, info] : part.final_info) {
    auto [it, fresh] = into.final_info.try_emplace(k, info);
    if (!fresh) it->second.count += info.count;
  }
  if (!into.first_violation && part.first_violation)
    into.first_violation = part.first_violation;
  into.barrier_windows += part.barrier_windows;
  into.barrier_problems += part.barrier_problems;
  for (const std::string& s : part.barrier_problem_samples)
    if (into.barrier_problem_samples.size() < 8)
      into.barrier_problem_samples.push_back(s);
  into.commutation_checks += part.commutation_checks;
  into.commutation_failures += part.commutation_failures;
  for (const std::string& s : part.commutation_failure_samples)
    if (into.commutation_failure_samples.size() < 8)
      into.commutation_failure_samples.push_back(s);
}

ExplorationResult explore_parallel(const Config& initial,
                                   const ExplorationOptions& opts) {
  auto start = Clock::now();
  ExplorationResult total;
  total.states = 1;  // the shared root

  std::vector<Move> enabled = enabled_moves(initial);
  if (enabled.empty()) {
    // Degenerate scenario; the sequential engine handles the single leaf.
    return explore_sequential(initial, opts, true, nullptr);
  }

  std::atomic<bool> stop{false};
  struct Job {
    Move move;
    std::set<Move> sleep;
    StepSummary summary;
  };
  std::vector<Move> launched;
  std::set<Move> scheduled;
  std::map<Move, StepSummary> root_sims;
  auto root_sim = [&](const Move& m) -> const StepSummary& {
    auto it = root_sims.find(m);
    if (it != root_sims.end()) return it->second;
    StepSummary s;
    macro_step(initial, m, &s);
    s.serial = 0;
    return root_sims.emplace(m, std::move(s)).first->second;
  };

  std::set<Move> pending{enabled.front()};
  while (!pending.empty() && !stop.load()) {
    // One wave: everything currently requested, in ascending order.
    std::vector<Job> wave;
    for (const Move& m : pending) {
      if (scheduled.count(m) != 0) continue;
      scheduled.insert(m);
      Job job;
      job.move = m;
      job.summary = root_sim(m);
      for (const Move& prev : launched)
        if (!dependent(root_sim(prev), job.summary, opts.independence))
          job.sleep.insert(prev);
      launched.push_back(m);
      wave.push_back(std::move(job));
    }
    pending.clear();
    if (wave.empty()) break;

    std::mutex mx;
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (!stop.load()) {
        size_t i = next.fetch_add(1);
        if (i >= wave.size()) break;
        const Job& job = wave[i];
        Engine eng(opts, true, &stop);
        eng.run_subtree(initial, enabled, job.move, job.summary, job.sleep);
        std::lock_guard<std::mutex> lock(mx);
        merge_results(total, eng.res);
        if (eng.root_request_all) {
          for (const Move& m : enabled)
            if (scheduled.count(m) == 0) pending.insert(m);
        } else {
          for (const Move& m : eng.root_requests)
            if (scheduled.count(m) == 0) pending.insert(m);
        }
        if (opts.mode == ExploreMode::Property && eng.res.stopped_early)
          stop.store(true);
      }
    };
    int threads = std::max(1, opts.parallel);
    for (int i = 0; i < threads; ++i)
      futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
  }

  total.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return total;
}

}  // namespace

ExplorationResult explore(const Config& initial, const ExplorationOptions& opts) {
  if (opts.parallel > 1 && !opts.on_complete_leaf)
    return explore_parallel(initial, opts);
  return explore_sequential(initial, opts, true, nullptr);
}

ExplorationResult enumerate_all(const Config& initial,
                                const ExplorationOptions& opts) {
  return explore_sequential(initial, opts, false, nullptr);
}

Config replay(const Config& initial, const std::vector<Move>& trace) {
  Config cfg = initial;
  for (const Move& m : trace) cfg = macro_step(cfg, m);
  return cfg;
}

}  // namespace sdnmc
