#include "hexpst/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <stdexcept>

#include "hexpst/error.hpp"

namespace hexpst {

namespace {

// In-plane neighbors and the connector partner, ascending by vertex index.
std::vector<std::pair<int, RouteStep>> hops(const LatticeGraph& g, int v) {
  std::vector<std::pair<int, RouteStep>> out;
  const Vertex& x = g.vertices[v];
  for (int d = 1; d <= 3; ++d) {
    if (x.neighbor[d] >= 0) out.push_back({x.neighbor[d], {RouteStep::Kind::link, d, -1}});
  }
  if (x.connector >= 0) {
    const ConnectorLink& c = g.connectors[x.connector];
    out.push_back({c.vertex_a == v ? c.vertex_b : c.vertex_a, {RouteStep::Kind::plane_crossing, 0, x.connector}});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<int> blocking_cut(const LatticeGraph& g, int start, const std::vector<bool>& faulty) {
  std::set<int> cut;
  if (faulty[start]) return {start};
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<int> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [w, _] : hops(g, u)) {
      if (faulty[w]) {
        cut.insert(w);
      } else if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return {cut.begin(), cut.end()};
}

std::string describe_cut(const LatticeGraph& g, const std::vector<int>& cut) {
  if (cut.empty()) return "no faulty switch borders the input; the endpoints lie in disconnected parts of the lattice";
  std::string s = "blocking faulty switches:";
  for (int v : cut) s += " " + g.vertices[v].key.to_string();
  return s;
}

int arrival_index(const RouteStep& step) { return step.kind == RouteStep::Kind::link ? step.direction : 0; }

}  // namespace

RoutePlan plan_path(const LatticeGraph& graph, int v_in, int v_out, const std::vector<bool>* faulty_override) {
  const int nv = graph.vertex_count();
  for (int v : {v_in, v_out}) {
    if (v < 0 || v >= nv) throw ScheduleError("route endpoint " + std::to_string(v) + " is not a vertex");
    if (!graph.has_head(v)) {
      throw ScheduleError("vertex " + graph.vertices[v].key.to_string() + " has no RW head");
    }
  }
  std::vector<bool> faulty(nv, false);
  if (faulty_override) {
    if (static_cast<int>(faulty_override->size()) != nv) throw std::invalid_argument("fault mask size mismatch");
    faulty = *faulty_override;
  } else {
    for (int v = 0; v < nv; ++v) faulty[v] = graph.vertices[v].faulty;
  }

  RoutePlan plan;
  plan.input_vertex = v_in;
  plan.output_vertex = v_out;
  if (faulty[v_in] || faulty[v_out]) {
    const int bad = faulty[v_in] ? v_in : v_out;
    throw UnroutableError("unroutable: endpoint " + graph.vertices[bad].key.to_string() + " is faulty", {bad});
  }
  plan.vertex_path = {v_in};
  if (v_in == v_out) return plan;

  // Distances to the target, then a greedy walk taking the smallest index.
  std::vector<int> dist(nv, -1);
  std::deque<int> queue{v_out};
  dist[v_out] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& [w, _] : hops(graph, u)) {
      if (faulty[w] || dist[w] >= 0) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  if (dist[v_in] < 0) {
    auto cut = blocking_cut(graph, v_in, faulty);
    throw UnroutableError("unroutable: " + graph.vertices[v_in].key.to_string() + " -> " +
                              graph.vertices[v_out].key.to_string() + "; " + describe_cut(graph, cut),
                          std::move(cut));
  }
  int u = v_in;
  while (u != v_out) {
    for (const auto& [w, step] : hops(graph, u)) {
      if (!faulty[w] && dist[w] == dist[u] - 1) {
        plan.steps.push_back(step);
        plan.vertex_path.push_back(w);
        u = w;
        break;
      }
    }
  }
  plan.n_three_chain_hops = static_cast<int>(plan.steps.size());
  return plan;
}

std::complex<double> predicted_route_phase(int n) {
  return n % 2 == 0 ? std::complex<double>(-1.0, 0.0) : std::complex<double>(1.0, 0.0);
}

PulseSchedule compile_schedule(const RoutePlan& plan) {
  PulseSchedule schedule;
  const int n = static_cast<int>(plan.steps.size());
  if (n != plan.n_three_chain_hops || static_cast<int>(plan.vertex_path.size()) != n + 1) {
    throw std::logic_error("route plan bookkeeping is inconsistent");
  }
  if (n == 0) {
    schedule.predicted_phase = std::complex<double>(1.0, 0.0);
    return schedule;
  }
  int arrival = 0;  // uploaded from the head into ξ^0
  for (int k = 0; k <= n; ++k) {
    const int departure = k < n ? arrival_index(plan.steps[k]) : 0;
    if (k > 0 && k < n && plan.steps[k].kind == RouteStep::Kind::plane_crossing &&
        plan.steps[k - 1].kind == RouteStep::Kind::plane_crossing) {
      throw std::logic_error("consecutive plane crossings share one e_0 leg");
    }
    if (arrival != departure) {
      LayerSet layers;
      if (arrival == 0) {
        layers = LayerSet::hat(departure);
      } else if (departure == 0) {
        layers = LayerSet::hat(arrival);
      } else {
        layers = LayerSet{arrival, departure};
      }
      schedule.events.push_back({ChainTime{1, k}, PhasePulse{layers, std::nullopt}, k, k == 0 ? 2 : 3});
    }
    if (k < n) arrival = arrival_index(plan.steps[k]);
  }
  schedule.total_duration = ChainTime{2, n};
  schedule.predicted_phase = predicted_route_phase(n);
  return schedule;
}

PulseSchedule delay_pulse(const PulseSchedule& schedule, std::size_t index, ChainTime delay) {
  if (index >= schedule.events.size()) {
    throw ScheduleError("no pulse #" + std::to_string(index) + " (schedule has " +
                        std::to_string(schedule.events.size()) + ")");
  }
  if (delay.seconds() < 0.0) throw ScheduleError("pulse delays must be non-negative");
  PulseSchedule out = schedule;
  for (std::size_t k = index; k < out.events.size(); ++k) out.events[k].time = out.events[k].time + delay;
  out.total_duration = out.total_duration + delay;

  const int chain = schedule.events[index].waiting_chain;
  const bool revival = chain == 3 ? (delay.n0 == 0 && delay.n1 % 2 == 0) : (delay.n1 == 0 && delay.n0 % 2 == 0);
  if (!revival || !out.predicted_phase) {
    out.predicted_phase.reset();
  } else if (chain == 2 && (delay.n0 / 2) % 2 == 1) {
    *out.predicted_phase = -*out.predicted_phase;
  }
  return out;
}

RouteSimulator::RouteSimulator(LatticeGraph graph, PropagatorOptions options)
    : graph_(std::move(graph)),
      hamiltonian_(assemble(graph_)),
      propagator_(std::make_shared<const Propagator>(hamiltonian_, options)) {}

TransferReport RouteSimulator::simulate(int v_in, int v_out, const SimulationOptions& options,
                                        std::vector<StateVector>* trajectory) const {
  const std::vector<bool>* faulty = options.faulty ? &*options.faulty : nullptr;
  const RoutePlan plan = plan_path(graph_, v_in, v_out, faulty);
  PulseSchedule schedule = compile_schedule(plan);
  for (const auto& [index, delay] : options.delays) schedule = delay_pulse(schedule, index, delay);

  const StateVector initial = StateVector::basis(graph_.site_count(), graph_.head_site(v_in));
  RunOptions run = options.run;
  run.record_trajectory = run.record_trajectory || trajectory != nullptr;
  RunResult result = run_schedule(*propagator_, graph_, initial, schedule, run);
  if (trajectory) *trajectory = std::move(result.trajectory);

  TransferReport r;
  r.input_vertex = v_in;
  r.output_vertex = v_out;
  for (int v : plan.vertex_path) r.path.push_back(graph_.vertices[v].key.to_string());
  r.n_three_chain_hops = plan.n_three_chain_hops;
  r.pulse_count = static_cast<int>(schedule.events.size());
  for (const PulseEvent& e : schedule.events) r.pulses.push_back(e.time.to_string() + ":" + e.pulse.layers.to_string());
  r.total_duration = schedule.total_duration;
  r.total_seconds = schedule.total_duration.seconds();
  r.tolerance = options.tolerance;
  r.max_norm_deviation = result.max_norm_deviation;

  const std::complex<double> amp = result.final.amplitudes[graph_.head_site(v_out)];
  r.fidelity_modulus = std::abs(amp);
  r.measured_phase = principal_arg(amp);
  bool phase_ok = true;
  if (schedule.predicted_phase) {
    r.predicted_phase = principal_arg(*schedule.predicted_phase);
    r.phase_error = r.fidelity_modulus > 0.0 ? std::abs(principal_arg(amp / *schedule.predicted_phase)) : std::numbers::pi;
    phase_ok = *r.phase_error <= options.tolerance.phase;
  }
  r.pass = std::abs(r.fidelity_modulus - 1.0) <= options.tolerance.modulus && phase_ok;
  return r;
}

TransferReport simulate_route(const LatticeSpec& spec, const VertexKey& v_in, const VertexKey& v_out, double tolerance) {
  const RouteSimulator sim(build_lattice(spec));
  auto in = sim.graph().find_vertex(v_in);
  auto out = sim.graph().find_vertex(v_out);
  if (!in) throw SpecError("no vertex " + v_in.to_string());
  if (!out) throw SpecError("no vertex " + v_out.to_string());
  SimulationOptions options;
  options.tolerance.modulus = tolerance;
  return sim.simulate(*in, *out, options);
}

}  // namespace hexpst
