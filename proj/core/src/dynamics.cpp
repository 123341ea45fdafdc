#include "hexpst/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "hexpst/error.hpp"

namespace hexpst {

StateVector StateVector::basis(int dim, int site) {
  StateVector s;
  s.amplitudes = Eigen::VectorXcd::Zero(dim);
  s.amplitudes[site] = 1.0;
  return s;
}

Propagator::Propagator(const Hamiltonian& h, PropagatorOptions options)
    : dim_(h.dim), dense_(h.dim <= options.dense_threshold), tolerance_(options.series_tolerance) {
  if (dense_) {
    if (dim_ == 0) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
    if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed to converge");
    values_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  } else {
    sparse_ = h;
    radius_ = h.norm_bound();
  }
}

void Propagator::evolve(Eigen::VectorXcd& psi, double dt) const {
  if (dt == 0.0 || dim_ == 0) return;
  if (!dense_) {
    evolve_series(psi, dt);
    return;
  }
  Eigen::VectorXcd coeffs = vectors_.transpose() * psi;
  for (int k = 0; k < dim_; ++k) coeffs[k] *= std::polar(1.0, -values_[k] * dt);
  psi = vectors_ * coeffs;
}

StateVector Propagator::evolve(const StateVector& state, double dt) const {
  StateVector out = state;
  evolve(out.amplitudes, dt);
  out.time += dt;
  return out;
}

// Chebyshev expansion: e^{-iHt} = J_0(Rt) + 2 Σ_k (-i)^k J_k(Rt) T_k(H/R).
void Propagator::evolve_series(Eigen::VectorXcd& psi, double dt) const {
  if (radius_ == 0.0) return;
  constexpr double kMaxArgument = 16.0;
  const int chunks = std::max(1, static_cast<int>(std::ceil(std::abs(radius_ * dt) / kMaxArgument)));
  const double step = dt / chunks;
  const double x = radius_ * step;
  const double ax = std::abs(x);

  std::vector<std::complex<double>> c;
  for (int k = 0;; ++k) {
    const double jk = std::cyl_bessel_j(static_cast<double>(k), ax);
    // J_k(-x) = (-1)^k J_k(x)
    const double signed_j = (x < 0 && k % 2 == 1) ? -jk : jk;
    std::complex<double> phase = std::pow(std::complex<double>(0.0, -1.0), k);
    c.push_back((k == 0 ? 1.0 : 2.0) * signed_j * phase);
    if (k > ax + 8 && std::abs(jk) < tolerance_ * 1e-2) break;
  }

  Eigen::VectorXcd prev, cur, next, tmp;
  for (int chunk = 0; chunk < chunks; ++chunk) {
    prev = psi;
    sparse_.apply(prev, tmp);
    cur = tmp / radius_;
    Eigen::VectorXcd acc = c[0] * prev + c[1] * cur;
    for (std::size_t k = 2; k < c.size(); ++k) {
      sparse_.apply(cur, tmp);
      next = (2.0 / radius_) * tmp - prev;
      acc += c[k] * next;
      prev.swap(cur);
      cur.swap(next);
    }
    psi = acc;
  }
}

void apply_pulse_in_place(const LatticeGraph& graph, Eigen::VectorXcd& psi, const PhasePulse& pulse) {
  std::vector<char> in_region;
  if (pulse.region) {
    in_region.assign(graph.vertex_count(), 0);
    for (int v : *pulse.region) in_region.at(v) = 1;
  }
  for (int layer = 1; layer <= 3; ++layer) {
    if (!pulse.layers.contains(layer)) continue;
    for (int v = 0; v < graph.vertex_count(); ++v) {
      if (pulse.region && !in_region[v]) continue;
      psi[LatticeGraph::center_site(v, layer)] *= -1.0;
    }
  }
}

StateVector apply_pulse(const LatticeGraph& graph, StateVector state, const PhasePulse& pulse) {
  apply_pulse_in_place(graph, state.amplitudes, pulse);
  return state;
}

RunResult run_schedule(const Propagator& propagator, const LatticeGraph& graph, const StateVector& initial,
                       const PulseSchedule& schedule, const RunOptions& options) {
  if (initial.amplitudes.size() != propagator.dim() || propagator.dim() != graph.site_count()) {
    throw ScheduleError("state, propagator and graph dimensions disagree");
  }
  const double total = schedule.total_duration.seconds();
  double last = 0.0;
  for (const PulseEvent& e : schedule.events) {
    const double t = e.time.seconds();
    if (t < last) throw ScheduleError("pulse times decrease at " + e.time.to_string());
    if (t > total) throw ScheduleError("pulse at " + e.time.to_string() + " lies beyond the horizon " +
                                       schedule.total_duration.to_string());
    last = t;
  }
  if (total < 0.0) throw ScheduleError("negative schedule duration");

  RunResult result;
  Eigen::VectorXcd psi = initial.amplitudes;
  const double t_start = initial.time;
  double now = 0.0;  // relative to the start of the schedule
  const double sample_dt = kT1 / std::max(1, options.samples_per_t1);
  long next_sample = 0;

  auto track = [&] { result.max_norm_deviation = std::max(result.max_norm_deviation, std::abs(psi.norm() - 1.0)); };
  auto advance = [&](double until) {
    if (options.record_trajectory) {
      for (double ts = next_sample * sample_dt; ts <= until; ts = (++next_sample) * sample_dt) {
        propagator.evolve(psi, ts - now);
        now = ts;
        result.trajectory.push_back({psi, t_start + now});
      }
    }
    propagator.evolve(psi, until - now);
    now = until;
  };

  track();
  for (const PulseEvent& e : schedule.events) {
    advance(e.time.seconds());
    apply_pulse_in_place(graph, psi, e.pulse);
    track();
  }
  advance(total);
  track();
  result.final = {std::move(psi), t_start + total};
  return result;
}

double principal_arg(std::complex<double> z) {
  double a = std::arg(z);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

SiteAmplitude site_fidelity(const StateVector& state, int site) {
  if (site < 0 || site >= state.amplitudes.size()) throw std::out_of_range("site out of range");
  const std::complex<double> a = state.amplitudes[site];
  return {std::abs(a), principal_arg(a)};
}

void write_trajectory_csv(std::ostream& os, const std::vector<StateVector>& trajectory,
                          const std::vector<std::string>& labels) {
  os << "time,site,label,re,im\n";
  char buf[128];
  for (const StateVector& s : trajectory) {
    for (int i = 0; i < s.amplitudes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g,%d,", s.time, i);
      os << buf << labels.at(i);
      std::snprintf(buf, sizeof buf, ",%.12g,%.12g\n", s.amplitudes[i].real(), s.amplitudes[i].imag());
      os << buf;
    }
  }
}

}  // namespace hexpst
