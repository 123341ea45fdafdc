#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexpst/chain_time.hpp"

namespace hexpst {

/// Subset of the control layers {1, 2, 3}.
class LayerSet {
 public:
  constexpr LayerSet() = default;
  constexpr LayerSet(std::initializer_list<int> layers) {
    for (int l : layers) insert(l);
  }

  /// Z_jZ_k with {i, j, k} = {1, 2, 3}: the upload/download pulse for direction i.
  static constexpr LayerSet hat(int i) {
    LayerSet s{1, 2, 3};
    s.bits_ &= static_cast<std::uint8_t>(~(1u << i));
    return s;
  }

  constexpr void insert(int layer) {
    if (layer < 1 || layer > 3) throw std::invalid_argument("control layers are 1, 2, 3");
    bits_ |= static_cast<std::uint8_t>(1u << layer);
  }
  constexpr bool contains(int layer) const noexcept { return layer >= 1 && layer <= 3 && (bits_ >> layer) & 1u; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool operator==(const LayerSet&) const = default;

  /// "Z1Z2" style name; "I" when empty.
  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

/// Instantaneous sign flip of every center (v, α) with α in `layers`,
/// restricted to `region` (vertex indices) when given.
struct PhasePulse {
  LayerSet layers;
  std::optional<std::vector<int>> region;

  bool operator==(const PhasePulse&) const = default;
};

struct PulseEvent {
  ChainTime time;
  PhasePulse pulse;
  /// Path position (vertex index within the route) the pulse acts at.
  int path_position = 0;
  /// Length of the chain the excitation sits at the end of when the pulse
  /// fires (2 right after upload, 3 otherwise).
  int waiting_chain = 3;
};

/// Timed pulse sequence; free evolution fills the gaps and runs until
/// `total_duration`.
struct PulseSchedule {
  std::vector<PulseEvent> events;
  ChainTime total_duration;
  /// Deterministic phase the output amplitude is expected to carry, when known.
  std::optional<std::complex<double>> predicted_phase;
};

}  // namespace hexpst
