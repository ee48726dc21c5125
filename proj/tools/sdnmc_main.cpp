#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "sdnmc/build.hpp"
#include "sdnmc/crosscheck.hpp"
#include "sdnmc/explore.hpp"
#include "sdnmc/report.hpp"
#include "sdnmc/scenario.hpp"

namespace {

// Line-per-event stream of a recorded schedule, method names recovered by
// replaying from the initial configuration.
void write_trace_stream(const std::string& path, const sdnmc::Config& initial,
                        const std::vector<sdnmc::Move>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace output: " + path);
  sdnmc::Config cfg = initial;
  int step = 0;
  for (const sdnmc::Move& m : trace) {
    sdnmc::StepSummary sum;
    cfg = sdnmc::macro_step(cfg, m, &sum);
    out << ++step << " actor=" << m.actor << " name="
        << cfg.ctx->actor_names.at(static_cast<size_t>(m.actor))
        << " task=" << m.task << " method=" << sdnmc::to_string(sum.method)
        << "\n";
  }
}

int run_main(int argc, char** argv) {
  CLI::App app{"Stateless model checker for software-defined networks"};
  app.get_formatter()->column_width(34);

  std::string scenario_path;
  std::string mode_flag, independence_flag, barriers_flag, trace_out;
  int max_depth = 0;
  int parallel = 1;
  bool do_crosscheck = false;

  app.add_option("scenario", scenario_path, "Scenario file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--mode", mode_flag, "full|property (overrides scenario)")
      ->check(CLI::IsMember({"full", "property"}));
  app.add_option("--independence", independence_flag,
                 "naive|actor|entry|context (overrides scenario)")
      ->check(CLI::IsMember({"naive", "actor", "entry", "context"}));
  app.add_option("--max-depth", max_depth,
                 "Macro-step bound per interleaving (overrides scenario)")
      ->check(CLI::PositiveNumber);
  app.add_option("--barriers", barriers_flag,
                 "on|off (overrides scenario)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--trace-out", trace_out,
                 "Write the violating schedule as one event per line");
  app.add_option("--parallel", parallel, "Worker threads for exploration")
      ->check(CLI::PositiveNumber);
  app.add_flag("--crosscheck", do_crosscheck,
               "Compare against the reference semantics instead of exploring");

  CLI11_PARSE(app, argc, argv);

  sdnmc::Scenario s = sdnmc::load_scenario_file(scenario_path);
  if (!barriers_flag.empty()) s.barriers = barriers_flag == "on";

  if (do_crosscheck) {
    sdnmc::CrosscheckResult cc = sdnmc::crosscheck(s, max_depth);
    std::cout << sdnmc::crosscheck_report(s, cc).dump(2) << "\n";
    return cc.match ? 0 : 1;
  }

  sdnmc::ExplorationOptions opts;
  opts.mode = s.exploration.mode;
  opts.independence = s.exploration.independence;
  opts.max_depth = s.exploration.max_depth;
  if (!mode_flag.empty()) opts.mode = sdnmc::mode_from_string(mode_flag);
  if (!independence_flag.empty())
    opts.independence = sdnmc::independence_from_string(independence_flag);
  if (max_depth > 0) opts.max_depth = max_depth;
  opts.parallel = parallel;

  auto ctx = sdnmc::scenario_context(s);
  sdnmc::Config initial = sdnmc::build_initial_config(ctx);
  sdnmc::ExplorationResult r = sdnmc::explore(initial, opts);
  std::cout << sdnmc::run_report(s, opts, r).dump(2) << "\n";

  if (!trace_out.empty() && r.first_violation)
    write_trace_stream(trace_out, initial, r.first_violation->trace);

  return r.violating_executions > 0 || r.first_violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
