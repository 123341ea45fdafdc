#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hexpst/dynamics.hpp"
#include "hexpst/hamiltonian.hpp"
#include "hexpst/lattice.hpp"
#include "hexpst/pulse.hpp"

namespace hexpst {

/// One hop of a route: along an in-plane link (direction 1..3) or through
/// an inter-plane connector.
struct RouteStep {
  enum class Kind { link, plane_crossing };
  Kind kind = Kind::link;
  int direction = 0;  // 1..3 for links
  int connector = -1;
};

struct RoutePlan {
  int input_vertex = -1;
  int output_vertex = -1;
  std::vector<int> vertex_path;
  std::vector<RouteStep> steps;
  int n_three_chain_hops = 0;
};

/// Shortest fault-free path by hop count. Among equal-length paths the
/// lexicographically smallest vertex sequence wins. `faulty` overrides the
/// graph's fault flags when given (one flag per vertex).
///
/// Throws ScheduleError if an endpoint has no RW head and UnroutableError if
/// faults (or the geometry) separate the endpoints.
RoutePlan plan_path(const LatticeGraph& graph, int v_in, int v_out, const std::vector<bool>* faulty = nullptr);

/// Compiles a route into global Z-layer pulses. Pulses fire at t0 + k*t1
/// for k = 0..N, one per path vertex at most; steps that keep the ξ index
/// emit nothing. The total duration is 2*t0 + N*t1 (zero for N = 0).
PulseSchedule compile_schedule(const RoutePlan& plan);

/// (-i)^2 (-1)^N: two 2-chain traversals and N 3-chain traversals.
std::complex<double> predicted_route_phase(int n_three_chain_hops);

/// Postpones event `index` and everything after it by `delay`. When the
/// delay is a whole number of revival periods of the chain the excitation
/// waits on (2t1 for a 3-chain, 2t0 for a 2-chain) the predicted phase is
/// updated; otherwise it becomes unknown.
PulseSchedule delay_pulse(const PulseSchedule& schedule, std::size_t index, ChainTime delay);

struct TransferTolerance {
  double modulus = 1e-9;
  double phase = 1e-8;
};

struct TransferReport {
  int input_vertex = -1;
  int output_vertex = -1;
  std::vector<std::string> path;
  int n_three_chain_hops = 0;
  int pulse_count = 0;
  std::vector<std::string> pulses;  // "time:Z1Z2"
  ChainTime total_duration;
  double total_seconds = 0.0;
  double fidelity_modulus = 0.0;
  double measured_phase = 0.0;
  std::optional<double> predicted_phase;
  std::optional<double> phase_error;
  double max_norm_deviation = 0.0;
  TransferTolerance tolerance;
  bool pass = false;
};

struct SimulationOptions {
  TransferTolerance tolerance;
  std::optional<std::vector<bool>> faulty;
  /// (event index, delay) pairs applied after compilation.
  std::vector<std::pair<std::size_t, ChainTime>> delays;
  RunOptions run;
};

/// Shares one immutable graph, Hamiltonian and propagator across any number
/// of route simulations; `simulate` is safe to call concurrently.
class RouteSimulator {
 public:
  explicit RouteSimulator(LatticeGraph graph, PropagatorOptions options = {});

  const LatticeGraph& graph() const noexcept { return graph_; }
  const Hamiltonian& hamiltonian() const noexcept { return hamiltonian_; }
  const Propagator& propagator() const noexcept { return *propagator_; }

  /// Plans, compiles and runs one transfer. Unroutable requests throw.
  TransferReport simulate(int v_in, int v_out, const SimulationOptions& options = {},
                          std::vector<StateVector>* trajectory = nullptr) const;

 private:
  LatticeGraph graph_;
  Hamiltonian hamiltonian_;
  std::shared_ptr<const Propagator> propagator_;
};

/// Builds the lattice, then runs RouteSimulator::simulate.
TransferReport simulate_route(const LatticeSpec& spec, const VertexKey& v_in, const VertexKey& v_out,
                              double tolerance = 1e-9);

}  // namespace hexpst
