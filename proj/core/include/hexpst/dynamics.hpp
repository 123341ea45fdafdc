#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hexpst/hamiltonian.hpp"
#include "hexpst/lattice.hpp"
#include "hexpst/pulse.hpp"

namespace hexpst {

/// Amplitudes over the sites of one lattice at a given time (ħ = 1).
struct StateVector {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;

  static StateVector basis(int dim, int site);
  double norm() const { return amplitudes.norm(); }
};

struct PropagatorOptions {
  /// Largest dimension handled by dense eigendecomposition.
  int dense_threshold = 2048;
  /// Truncation tolerance of the Chebyshev fallback.
  double series_tolerance = 1e-12;
};

/// Exact evolution engine for e^{-iHt}.
///
/// Below the dense threshold H = V diag(λ) Vᵀ is diagonalized once and every
/// step costs two dense products; above it a Chebyshev expansion of the
/// sparse matrix is used. Immutable after construction.
class Propagator {
 public:
  explicit Propagator(const Hamiltonian& h, PropagatorOptions options = {});

  int dim() const noexcept { return dim_; }
  bool is_dense() const noexcept { return dense_; }
  const Eigen::VectorXd& eigenvalues() const { return values_; }

  /// ψ ← e^{-iHΔt} ψ
  void evolve(Eigen::VectorXcd& psi, double dt) const;
  StateVector evolve(const StateVector& state, double dt) const;

 private:
  void evolve_series(Eigen::VectorXcd& psi, double dt) const;

  int dim_ = 0;
  bool dense_ = true;
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  Hamiltonian sparse_;
  double radius_ = 0.0;
  double tolerance_ = 1e-12;
};

/// Multiplies the targeted center amplitudes by -1.
StateVector apply_pulse(const LatticeGraph& graph, StateVector state, const PhasePulse& pulse);
void apply_pulse_in_place(const LatticeGraph& graph, Eigen::VectorXcd& psi, const PhasePulse& pulse);

struct RunOptions {
  bool record_trajectory = false;
  /// Samples per t1 interval when recording.
  int samples_per_t1 = 64;
};

struct RunResult {
  StateVector final;
  /// Sampled states in time order (empty unless requested).
  std::vector<StateVector> trajectory;
  /// Largest | ‖ψ‖ - 1 | seen at any event.
  double max_norm_deviation = 0.0;
};

/// Alternates free evolution with instantaneous pulses. Throws ScheduleError
/// when event times decrease or exceed the total duration.
RunResult run_schedule(const Propagator& propagator, const LatticeGraph& graph, const StateVector& initial,
                       const PulseSchedule& schedule, const RunOptions& options = {});

struct SiteAmplitude {
  double modulus = 0.0;
  /// Argument in (-π, π].
  double phase = 0.0;
};

SiteAmplitude site_fidelity(const StateVector& state, int site);

/// Argument of z mapped into (-π, π].
double principal_arg(std::complex<double> z);

/// CSV with header "time,site,label,re,im"; one row per sample and site.
void write_trajectory_csv(std::ostream& os, const std::vector<StateVector>& trajectory,
                          const std::vector<std::string>& labels);

}  // namespace hexpst
