#include <doctest.h>

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>

#include "hexpst/error.hpp"
#include "hexpst/routing.hpp"
#include "test_support.hpp"

using namespace hexpst;
using namespace hexpst::testing;

namespace {

int vid(const LatticeGraph& g, int p, int r, int c) { return *g.find_vertex({p, r, c}); }

std::vector<int> graph_neighbors(const LatticeGraph& g, int v) {
  std::vector<int> out;
  for (int d = 1; d <= 3; ++d) {
    if (g.vertices[v].neighbor[d] >= 0) out.push_back(g.vertices[v].neighbor[d]);
  }
  if (g.vertices[v].connector >= 0) {
    const ConnectorLink& c = g.connectors[g.vertices[v].connector];
    out.push_back(c.vertex_a == v ? c.vertex_b : c.vertex_a);
  }
  return out;
}

// Exhaustive search over simple paths: shortest first, then lexicographic.
std::optional<std::vector<int>> brute_force_path(const LatticeGraph& g, int from, int to, const std::vector<bool>& faulty) {
  std::optional<std::vector<int>> best;
  std::vector<int> path{from};
  std::vector<bool> on(g.vertex_count(), false);
  on[from] = true;
  std::function<void(int)> dfs = [&](int u) {
    if (best && path.size() > best->size()) return;
    if (u == to) {
      if (!best || path.size() < best->size() || path < *best) best = path;
      return;
    }
    for (int w : graph_neighbors(g, u)) {
      if (on[w] || faulty[w]) continue;
      on[w] = true;
      path.push_back(w);
      dfs(w);
      path.pop_back();
      on[w] = false;
    }
  };
  if (!faulty[from] && !faulty[to]) dfs(from);
  return best;
}

RoutePlan hand_plan(std::vector<RouteStep> steps) {
  RoutePlan p;
  p.steps = std::move(steps);
  p.n_three_chain_hops = static_cast<int>(p.steps.size());
  for (std::size_t i = 0; i <= p.steps.size(); ++i) p.vertex_path.push_back(static_cast<int>(i));
  return p;
}

RouteStep link(int d) { return {RouteStep::Kind::link, d, -1}; }

}  // namespace

TEST_SUITE("routing") {
  TEST_CASE("same input and output is an empty route") {
    const LatticeGraph g = build_lattice(hexagon());
    const RoutePlan p = plan_path(g, 2, 2);
    CHECK(p.vertex_path == std::vector<int>{2});
    CHECK(p.n_three_chain_hops == 0);
    const PulseSchedule s = compile_schedule(p);
    CHECK(s.events.empty());
    CHECK(s.total_duration == ChainTime{0, 0});
    REQUIRE(s.predicted_phase);
    CHECK(*s.predicted_phase == std::complex<double>(1.0, 0.0));

    const TransferReport r = RouteSimulator(g).simulate(2, 2);
    CHECK(r.pass);
    CHECK(r.fidelity_modulus == 1.0);
  }

  TEST_CASE("adjacent heads: one 3-chain hop") {
    const LatticeGraph g = build_lattice(hexagon());
    const int a = vid(g, 0, 0, 0), b = vid(g, 0, 0, 1);
    const RoutePlan p = plan_path(g, a, b);
    CHECK(p.vertex_path == std::vector<int>{a, b});
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0].direction == 3);
    const PulseSchedule s = compile_schedule(p);
    REQUIRE(s.events.size() == 2);
    CHECK(s.events[0].time == ChainTime{1, 0});
    CHECK(s.events[0].pulse.layers == LayerSet::hat(3));
    CHECK(s.events[0].waiting_chain == 2);
    CHECK(s.events[1].time == ChainTime{1, 1});
    CHECK(s.events[1].pulse.layers == LayerSet::hat(3));
    CHECK(s.total_duration == ChainTime{2, 1});
    CHECK(*s.predicted_phase == std::complex<double>(1.0, 0.0));

    const TransferReport r = RouteSimulator(g).simulate(a, b);
    CHECK(r.pass);
    CHECK(std::abs(r.measured_phase) <= 1e-8);
  }

  TEST_CASE("three hops around the hexagon") {
    const LatticeGraph g = build_lattice(hexagon());
    const int a = vid(g, 0, 0, 0), b = vid(g, 0, 1, 2);
    const RoutePlan p = plan_path(g, a, b);
    CHECK(p.vertex_path == std::vector<int>{a, vid(g, 0, 0, 1), vid(g, 0, 0, 2), b});
    const PulseSchedule s = compile_schedule(p);
    REQUIRE(s.events.size() == 4);
    CHECK(s.events[0].pulse.layers == (LayerSet{1, 2}));
    CHECK(s.events[1].pulse.layers == (LayerSet{2, 3}));
    CHECK(s.events[2].pulse.layers == (LayerSet{1, 2}));
    CHECK(s.events[3].pulse.layers == (LayerSet{2, 3}));
    CHECK(s.total_duration == ChainTime{2, 3});
    CHECK(*s.predicted_phase == std::complex<double>(1.0, 0.0));
    const TransferReport r = RouteSimulator(g).simulate(a, b);
    CHECK(r.pass);
    CHECK(r.fidelity_modulus == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("pulse compilation rules") {
    const PulseSchedule turn = compile_schedule(hand_plan({link(1), link(2)}));
    REQUIRE(turn.events.size() == 3);
    CHECK(turn.events[0].pulse.layers == (LayerSet{2, 3}));
    CHECK(turn.events[1].pulse.layers == (LayerSet{1, 2}));
    CHECK(turn.events[2].pulse.layers == (LayerSet{1, 3}));
    CHECK(*turn.predicted_phase == std::complex<double>(-1.0, 0.0));

    const PulseSchedule straight = compile_schedule(hand_plan({link(1), link(1)}));
    REQUIRE(straight.events.size() == 2);
    CHECK(straight.events[1].time == ChainTime{1, 2});
    CHECK(straight.events[1].path_position == 2);

    const PulseSchedule cross = compile_schedule(hand_plan({link(3), {RouteStep::Kind::plane_crossing, 0, 0}, link(2)}));
    REQUIRE(cross.events.size() == 4);
    CHECK(cross.events[1].pulse.layers == LayerSet::hat(3));
    CHECK(cross.events[2].pulse.layers == LayerSet::hat(2));
    CHECK(cross.total_duration == ChainTime{2, 3});

    const PulseSchedule upload_cross = compile_schedule(hand_plan({{RouteStep::Kind::plane_crossing, 0, 0}}));
    CHECK(upload_cross.events.empty());
    CHECK(upload_cross.total_duration == ChainTime{2, 1});
  }

  TEST_CASE("predicted phase alternates with the hop count") {
    for (int n = 0; n < 8; ++n) {
      CHECK(predicted_route_phase(n) == std::complex<double>(n % 2 ? 1.0 : -1.0, 0.0));
    }
  }

  TEST_CASE("plans match an exhaustive path search") {
    const LatticeGraph g = build_lattice(plane(2, 2));
    const int nv = g.vertex_count();
    for (int f = -1; f < nv; f += 3) {
      std::vector<bool> faulty(nv, false);
      if (f >= 0) faulty[f] = true;
      for (int a = 0; a < nv; ++a) {
        for (int b = 0; b < nv; ++b) {
          const auto want = brute_force_path(g, a, b, faulty);
          if (!want) {
            CHECK_THROWS_AS(plan_path(g, a, b, &faulty), UnroutableError);
            continue;
          }
          const RoutePlan p = plan_path(g, a, b, &faulty);
          CHECK(p.vertex_path == *want);
          for (std::size_t i = 0; i + 1 < p.vertex_path.size(); ++i) {
            CHECK(link_direction_index(g, p.vertex_path[i], p.vertex_path[i + 1]) == p.steps[i].direction);
          }
        }
      }
    }
  }

  TEST_CASE("a fault forces the long way round") {
    LatticeSpec spec = hexagon();
    spec.faulty_switches = {{0, 0, 1}};
    const LatticeGraph g = build_lattice(spec);
    const RoutePlan p = plan_path(g, vid(g, 0, 0, 0), vid(g, 0, 0, 2));
    CHECK(p.vertex_path ==
          std::vector<int>{vid(g, 0, 0, 0), vid(g, 0, 1, 0), vid(g, 0, 1, 1), vid(g, 0, 1, 2), vid(g, 0, 0, 2)});
    const TransferReport r = RouteSimulator(g).simulate(vid(g, 0, 0, 0), vid(g, 0, 0, 2));
    CHECK(r.n_three_chain_hops == 4);
    CHECK(r.pass);
  }

  TEST_CASE("unroutable requests name the blocking switches") {
    LatticeSpec spec = hexagon();
    spec.faulty_switches = {{0, 0, 1}, {0, 1, 0}};
    const LatticeGraph g = build_lattice(spec);
    try {
      plan_path(g, vid(g, 0, 0, 0), vid(g, 0, 1, 2));
      FAIL("expected UnroutableError");
    } catch (const UnroutableError& e) {
      std::vector<int> blocking = e.blocking();
      std::sort(blocking.begin(), blocking.end());
      CHECK(blocking == std::vector<int>{vid(g, 0, 0, 1), vid(g, 0, 1, 0)});
    }
    CHECK_THROWS_AS(plan_path(g, vid(g, 0, 0, 1), vid(g, 0, 1, 2)), UnroutableError);
  }

  TEST_CASE("endpoints need RW heads") {
    const LatticeGraph g = build_lattice(two_hexagons());
    CHECK_THROWS_AS(plan_path(g, vid(g, 0, 1, 2), vid(g, 0, 0, 0)), ScheduleError);
  }

  TEST_CASE("routes cross planes through the connector") {
    const RouteSimulator sim(build_lattice(two_hexagons()));
    const LatticeGraph& g = sim.graph();
    const int a = vid(g, 0, 0, 0), b = vid(g, 1, 1, 1);
    const RoutePlan p = plan_path(g, a, b);
    const auto crossing = std::count_if(p.steps.begin(), p.steps.end(),
                                        [](const RouteStep& s) { return s.kind == RouteStep::Kind::plane_crossing; });
    CHECK(crossing == 1);
    const TransferReport r = sim.simulate(a, b);
    CHECK(r.pass);
    CHECK(r.total_duration == ChainTime{2, r.n_three_chain_hops});
    REQUIRE(r.phase_error);
    CHECK(*r.phase_error <= 1e-8);
  }

  TEST_CASE("delays update or drop the predicted phase") {
    const LatticeGraph g = build_lattice(hexagon());
    const PulseSchedule s = compile_schedule(plan_path(g, vid(g, 0, 0, 0), vid(g, 0, 1, 2)));

    const PulseSchedule mid = delay_pulse(s, 1, ChainTime{0, 2});
    CHECK(mid.events[0].time == s.events[0].time);
    CHECK(mid.events[1].time == s.events[1].time + ChainTime{0, 2});
    CHECK(mid.events[3].time == s.events[3].time + ChainTime{0, 2});
    CHECK(mid.total_duration == ChainTime{2, 5});
    CHECK(*mid.predicted_phase == *s.predicted_phase);

    CHECK(*delay_pulse(s, 0, ChainTime{2, 0}).predicted_phase == -*s.predicted_phase);
    CHECK(*delay_pulse(s, 0, ChainTime{4, 0}).predicted_phase == *s.predicted_phase);
    CHECK_FALSE(delay_pulse(s, 2, ChainTime{0, 1}).predicted_phase);
    CHECK_FALSE(delay_pulse(s, 0, ChainTime{0, 2}).predicted_phase);
    CHECK_THROWS_AS(delay_pulse(s, 4, ChainTime{0, 2}), ScheduleError);
    CHECK_THROWS_AS(delay_pulse(s, 1, ChainTime{0, -2}), ScheduleError);
  }

  TEST_CASE("revival delays keep the transfer perfect") {
    const RouteSimulator sim(build_lattice(hexagon()));
    const int a = vid(sim.graph(), 0, 0, 0), b = vid(sim.graph(), 0, 1, 2);
    for (auto [index, delay] : {std::pair<std::size_t, ChainTime>{1, {0, 2}}, {3, {0, 4}}, {0, {2, 0}}}) {
      SimulationOptions o;
      o.delays = {{index, delay}};
      const TransferReport r = sim.simulate(a, b, o);
      CHECK(r.pass);
      CHECK(*r.phase_error <= 1e-8);
    }
    SimulationOptions o;
    o.delays = {{1, ChainTime{0, 1}}};
    const TransferReport r = sim.simulate(a, b, o);
    CHECK_FALSE(r.predicted_phase);
    CHECK_FALSE(r.pass);
  }
}
