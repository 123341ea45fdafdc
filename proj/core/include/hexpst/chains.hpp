#pragma once

#include <complex>
#include <vector>

namespace hexpst::chains {

/// Path-graph XY Hamiltonian in the single-excitation sector.
///
/// `couplings` are the K_{m,m+1} of the chain; the tridiagonal matrix has
/// off-diagonal entries `hopping_per_coupling * K`.
struct ChainHamiltonian {
  std::vector<double> couplings;
  double hopping_per_coupling = 1.0;

  int length() const noexcept { return static_cast<int>(couplings.size()) + 1; }
  std::vector<double> hopping() const;
};

/// All couplings 1, hopping 1 (the normalization with t0 = π/2, t1 = π/√2).
/// Throws std::invalid_argument for n < 2.
ChainHamiltonian uniform_chain(int n);

/// K_{n,n+1} = √(n(N-n)). The XY term (1/2)K(XX+YY) is taken with spin-1/2
/// operators, so the chain matrix is J_x of spin (N-1)/2 and transfers every
/// site to its mirror in time π. Throws std::invalid_argument for N < 2.
ChainHamiltonian engineered_chain(int n);

struct Eigensystem {
  /// Ascending eigenvalues.
  std::vector<double> values;
  /// vectors[k][i]: component i of eigenvector k.
  std::vector<std::vector<double>> vectors;
};

/// Implicit-shift QL diagonalization of the chain's tridiagonal matrix.
Eigensystem diagonalize(const ChainHamiltonian& chain);

/// ⟨out| e^{-iHt} |in⟩ with zero-based site indices.
std::complex<double> transfer_amplitude(const ChainHamiltonian& chain, int site_in, int site_out, double t);
std::complex<double> transfer_amplitude(const Eigensystem& eig, int site_in, int site_out, double t);

struct GridMaximum {
  double modulus = 0.0;
  double time = 0.0;
};

/// Largest |⟨last|e^{-iHt}|first⟩| over t = 0, step, 2*step, ... <= t_max.
GridMaximum max_end_to_end_modulus(const ChainHamiltonian& chain, double t_max, double step);

}  // namespace hexpst::chains
