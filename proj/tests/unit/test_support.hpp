#pragma once

#include <complex>
#include <string>

#include "hexpst/lattice.hpp"

namespace hexpst::testing {

inline std::string data_path(const std::string& name) { return std::string(HEXPST_TEST_DATA_DIR) + "/" + name; }

inline LatticeSpec hexagon(BoundaryPolicy boundary = BoundaryPolicy::trim_dangling) {
  LatticeSpec s;
  s.hex_rows = 1;
  s.hex_cols = 1;
  s.boundary = boundary;
  return s;
}

inline LatticeSpec plane(int rows, int cols) {
  LatticeSpec s;
  s.hex_rows = rows;
  s.hex_cols = cols;
  return s;
}

/// One Hadamard switch with its three links kept dangling and a head.
inline LatticeSpec isolated_switch() {
  LatticeSpec s;
  s.hex_rows = 0;
  s.hex_cols = 0;
  s.boundary = BoundaryPolicy::keep_dangling;
  return s;
}

/// Two lone switches on different planes joined through their e_0 legs:
/// the ξ^0 - connector - ξ^0 3-chain in isolation.
inline LatticeSpec connector_pair() {
  LatticeSpec s;
  s.planes = 2;
  s.hex_rows = 0;
  s.hex_cols = 0;
  s.connectors.push_back({0, 1, 0, 0, 0, 0});
  return s;
}

/// Two single-hexagon planes joined at (0,1,2) and (1,0,0).
inline LatticeSpec two_hexagons() {
  LatticeSpec s = hexagon();
  s.planes = 2;
  s.connectors.push_back({0, 1, 1, 2, 0, 0});
  return s;
}

inline double phase_distance(std::complex<double> a, std::complex<double> b) {
  return std::abs(std::arg(a / b));
}

}  // namespace hexpst::testing
