#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hexpst/lattice.hpp"

namespace hexpst {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;

  bool operator==(const Triplet&) const = default;
};

/// Single-excitation XY Hamiltonian over the sites of a lattice graph.
///
/// Stored as the strict upper triangle in (row, col) order; the diagonal is
/// identically zero.
struct Hamiltonian {
  int dim = 0;
  std::vector<Triplet> upper;
  /// Site table of the source graph, used for labels and classification.
  std::vector<SiteId> sites;
  std::vector<std::string> labels;

  Eigen::MatrixXd dense() const;
  /// out = H * in
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  /// Upper bound on the spectral radius (maximum absolute row sum).
  double norm_bound() const;

  bool operator==(const Hamiltonian&) const = default;
};

Hamiltonian assemble(const LatticeGraph& graph);

/// Checks the Hamiltonian invariants (canonical order, no diagonal, entries
/// of magnitude 1/2). Returns human readable problems.
std::vector<std::string> check_invariants(const Hamiltonian& h);

/// Orthogonal change of basis to the ξ states: identity on external sites,
/// and on each switch the 4x4 Hadamard block, so that column (v, α) is ξ_v^α.
/// Because the block is symmetric, Q equals its own transpose and inverse.
struct XiTransform {
  int dim = 0;
  int vertices = 0;

  Eigen::MatrixXd dense() const;
  /// Applies Q (equivalently Qᵀ) to a vector.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  /// Nonzeros of column `col`: (row, value) pairs.
  std::vector<std::pair<int, double>> column(int col) const;
};

XiTransform xi_transform(const LatticeGraph& graph);

enum class ChainKind { two_chain, three_chain, isolated };

struct Chain {
  ChainKind kind = ChainKind::isolated;
  /// ξ-basis indices in chain order (end, middle, end for 3-chains).
  std::vector<int> indices;
  /// Hopping values along the chain; all equal to 1 for a valid lattice.
  std::vector<double> couplings;
  bool interplane = false;
  std::string description;
};

struct ChainInventory {
  std::vector<Chain> chains;
  /// Largest |entry| of QᵀHQ off the expected ξ-chain pattern.
  double max_off_pattern = 0.0;
  /// Largest |coupling - 1| over the pattern entries.
  double max_coupling_error = 0.0;

  std::size_t count(ChainKind kind) const;
  std::size_t interplane_count() const;
};

/// Sparse QᵀHQ as an upper-triangle triplet list with exact zeros removed.
std::vector<Triplet> transform_to_xi(const Hamiltonian& h, const XiTransform& q);

/// Structural zeros must stay below this.
inline constexpr double kStructuralZeroTol = 1e-13;
/// Chain couplings must be within this of 1.
inline constexpr double kChainCouplingTol = 1e-12;

/// Decomposes QᵀHQ into uniform chains and classifies them. Throws
/// StructureError listing every offending component or entry.
ChainInventory verify_block_structure(const Hamiltonian& h, const XiTransform& q);

std::string to_string(ChainKind kind);

/// Triplet text dump: site table header followed by "row col value" lines.
void write_triplets(std::ostream& os, const Hamiltonian& h);

}  // namespace hexpst
