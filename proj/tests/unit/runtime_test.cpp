#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "sdnmc/build.hpp"
#include "sdnmc/explore.hpp"
#include "sdnmc/runtime.hpp"

using namespace sdnmc;

TEST_CASE("initial configuration wires actors and injections") {
  auto ctx = test::lb_fan_context(2);
  Config cfg = build_initial_config(ctx);

  REQUIRE(cfg.actors.size() == 7);
  CHECK(cfg.actor(0).kind == ActorKind::Controller);
  CHECK(cfg.actor(1).name() == "s1");
  CHECK(cfg.actor(2).name() == "s2");
  CHECK(cfg.actor(3).name() == "s3");
  CHECK(cfg.actor(4).name() == "h0");
  CHECK(cfg.actor(5).name() == "r1");
  CHECK(cfg.actor(6).name() == "r2");
  CHECK(ctx->actor_for("s2") == 2);
  CHECK_THROWS_AS(ctx->actor_for("nope"), std::runtime_error);

  // One sendIn task per injected packet, ids and packet ids in order.
  const Actor& h0 = cfg.actor(4);
  REQUIRE(h0.tasks.size() == 2);
  CHECK(h0.tasks[0].method == Method::HostSendIn);
  CHECK(std::get<SendInLocals>(h0.tasks[0].locals).p.id == 0);
  CHECK(std::get<SendInLocals>(h0.tasks[1].locals).p.id == 1);

  CHECK(enabled_moves(cfg) == std::vector<Move>{{4, 0}, {4, 1}});
  CHECK_FALSE(is_complete(cfg));
  CHECK_FALSE(detect_deadlock(cfg));
}

TEST_CASE("macro_step is pure and deterministic") {
  Config cfg = build_initial_config(test::lb_fan_context(1));
  std::string before = canonical_serialize(cfg);

  Config a = macro_step(cfg, {4, 0});
  Config b = macro_step(cfg, {4, 0});

  CHECK(canonical_serialize(cfg) == before);
  CHECK(canonical_serialize(a) == canonical_serialize(b));
  CHECK(canonical_serialize(a) != before);
}

TEST_CASE("macro_step rejects disabled moves") {
  Config cfg = build_initial_config(test::lb_fan_context(1));
  CHECK_THROWS_AS(macro_step(cfg, {1, 0}), std::logic_error);
  CHECK_THROWS_AS(macro_step(cfg, {4, 99}), std::logic_error);

  Config next = macro_step(cfg, {4, 0});
  // The sendIn task finished; running it again must be rejected.
  CHECK_THROWS_AS(macro_step(next, {4, 0}), std::logic_error);
}

TEST_CASE("finished tasks stay in the queue") {
  Config cfg = build_initial_config(test::lb_fan_context(1));
  StepSummary sum;
  cfg = macro_step(cfg, {4, 0}, &sum);

  CHECK(sum.task_finished);
  REQUIRE(sum.spawned.size() == 1);
  CHECK(sum.spawned[0].actor == 1);  // switchHandlePacket lands on s1
  CHECK(sum.spawned[0].method == Method::SwitchHandlePacket);

  const Task* done = cfg.actor(4).find_task(0);
  REQUIRE(done != nullptr);
  CHECK(done->finished());
  CHECK(cfg.finished.count(0) == 1);
}

TEST_CASE("a scripted run drives the packet to completion") {
  Config cfg = build_initial_config(test::lb_fan_context(1));
  std::vector<Move> schedule = test::drive_min(cfg);

  CHECK(is_complete(cfg));
  CHECK_FALSE(detect_deadlock(cfg));
  CHECK(enabled_moves(cfg).empty());

  // Replay reproduces the same configuration from scratch.
  Config again = replay(build_initial_config(test::lb_fan_context(1)), schedule);
  CHECK(canonical_serialize(again) == canonical_serialize(cfg));
}

TEST_CASE("replay rejects schedules that are not enabled") {
  Config cfg = build_initial_config(test::lb_fan_context(1));
  CHECK_THROWS_AS(replay(cfg, {{1, 0}}), std::logic_error);
}

TEST_CASE("mutually waiting futures deadlock and are detected") {
  auto ctx = make_context("empty", test::fan_topology(), test::lb_spec(), false,
                          MonitorSet{}, {});
  Config cfg = build_initial_config(ctx);
  CHECK(is_complete(cfg));  // no injections, nothing to do

  auto forge = [](TaskId self, TaskId other) {
    Task t;
    t.id = self;
    t.method = Method::ControlHandleMessage;
    ChmLocals L;
    L.sid = "s1";
    L.waiting_futs = {other};
    t.locals = std::move(L);
    t.cont = kContReqAwaitFut;
    return t;
  };
  cfg.actor(0).tasks.push_back(forge(0, 1));
  cfg.actor(0).tasks.push_back(forge(1, 0));
  cfg.next_task = 2;

  const Actor& ctrl = cfg.actor(0);
  Await w = await_of(cfg, ctrl, ctrl.tasks[0]);
  CHECK(w.kind == Await::Kind::Future);
  CHECK(w.fut == 1);
  CHECK_FALSE(await_satisfied(cfg, w));

  CHECK(enabled_moves(cfg).empty());
  CHECK_FALSE(is_complete(cfg));
  CHECK(detect_deadlock(cfg));

  ExplorationResult r = explore(cfg, {});
  CHECK(r.executions == 1);
  CHECK(r.deadlocks == 1);
  REQUIRE(r.final_info.size() == 1);
  CHECK(r.final_info.begin()->second.deadlock);
}

TEST_CASE("barrier awaits park on the controller's barrier flag") {
  auto ctx = test::lb_fan_context(1, true);
  Config cfg = build_initial_config(ctx);

  Task t;
  t.id = 50;
  t.method = Method::ControlHandleMessage;
  ChmLocals L;
  L.sid = "s1";
  L.directives = {{"s2", {{"h0", kVipName, PacketKind::Other}, 0},
                   0, Action::to_host("r1")}};
  t.locals = std::move(L);

  SUBCASE("install phase waits for the target switch") {
    t.cont = kContInstallWait;
    cfg.actor(0).tasks.push_back(t);
    Await w = await_of(cfg, cfg.actor(0), cfg.actor(0).tasks.back());
    CHECK(w.kind == Await::Kind::BarrierFree);
    CHECK(w.sw == "s2");
    CHECK(await_satisfied(cfg, w));

    std::get<ControllerHeap>(cfg.actor(0).heap).barrier_on.insert("s2");
    CHECK_FALSE(await_satisfied(cfg, w));
    for (const Move& m : enabled_moves(cfg)) CHECK(m.task != 50);
  }

  SUBCASE("final phase waits for the requesting switch") {
    t.cont = kContFinalWait;
    cfg.actor(0).tasks.push_back(t);
    Await w = await_of(cfg, cfg.actor(0), cfg.actor(0).tasks.back());
    CHECK(w.kind == Await::Kind::BarrierFree);
    CHECK(w.sw == "s1");
  }
}

TEST_CASE("summaries carry the regions the dependence relation needs") {
  Config cfg = build_initial_config(test::lb_fan_context(1));
  cfg = macro_step(cfg, {4, 0});

  StepSummary shp;
  cfg = macro_step(cfg, enabled_moves(cfg).front(), &shp);
  CHECK(shp.method == Method::SwitchHandlePacket);
  bool saw_flow_read = false, saw_buffer_write = false;
  for (const Region& r : shp.regions) {
    if (r.area == Region::Area::FlowKey && !r.write) saw_flow_read = true;
    if (r.area == Region::Area::Buffer && r.write) saw_buffer_write = true;
  }
  CHECK(saw_flow_read);
  CHECK(saw_buffer_write);

  StepSummary chm;
  cfg = macro_step(cfg, enabled_moves(cfg).front(), &chm);
  CHECK(chm.method == Method::ControlHandleMessage);
  CHECK(chm.spawned.size() == 3);  // two installs and the retry

  StepSummary shm;
  test::step_method(cfg, Method::SwitchHandleMessage, &shm);
  REQUIRE(shm.install.has_value());
  CHECK(shm.install->lookup_changed);
  bool saw_flow_write = false;
  for (const Region& r : shm.regions)
    if (r.area == Region::Area::FlowKey && r.write) saw_flow_write = true;
  CHECK(saw_flow_write);
}
