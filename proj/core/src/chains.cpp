#include "hexpst/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hexpst::chains {

std::vector<double> ChainHamiltonian::hopping() const {
  std::vector<double> out(couplings);
  for (double& h : out) h *= hopping_per_coupling;
  return out;
}

ChainHamiltonian uniform_chain(int n) {
  if (n < 2) throw std::invalid_argument("uniform chain needs n >= 2, got " + std::to_string(n));
  return {std::vector<double>(n - 1, 1.0), 1.0};
}

ChainHamiltonian engineered_chain(int n) {
  if (n < 2) throw std::invalid_argument("engineered chain needs N >= 2, got " + std::to_string(n));
  ChainHamiltonian c;
  c.hopping_per_coupling = 0.5;
  for (int k = 1; k < n; ++k) c.couplings.push_back(std::sqrt(static_cast<double>(k) * (n - k)));
  return c;
}

// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix
// (diagonal d, sub-diagonal e), accumulating the rotations into z.
Eigensystem diagonalize(const ChainHamiltonian& chain) {
  const int n = chain.length();
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  const auto hop = chain.hopping();
  for (int i = 0; i + 1 < n; ++i) e[i] = hop[i];
  std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) z[i][i] = 1.0;

  for (int l = 0; l < n; ++l) {
    int iterations = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iterations > 64) throw std::runtime_error("tridiagonal QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * f;
            z[k][i] = c * z[k][i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  Eigensystem out;
  for (int k : order) {
    out.values.push_back(d[k]);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = z[i][k];
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::complex<double> transfer_amplitude(const Eigensystem& eig, int site_in, int site_out, double t) {
  const int n = static_cast<int>(eig.values.size());
  if (site_in < 0 || site_in >= n || site_out < 0 || site_out >= n) {
    throw std::out_of_range("chain site out of range");
  }
  std::complex<double> amp = 0.0;
  for (int k = 0; k < n; ++k) {
    amp += eig.vectors[k][site_out] * eig.vectors[k][site_in] * std::polar(1.0, -eig.values[k] * t);
  }
  return amp;
}

std::complex<double> transfer_amplitude(const ChainHamiltonian& chain, int site_in, int site_out, double t) {
  return transfer_amplitude(diagonalize(chain), site_in, site_out, t);
}

GridMaximum max_end_to_end_modulus(const ChainHamiltonian& chain, double t_max, double step) {
  const Eigensystem eig = diagonalize(chain);
  const int last = chain.length() - 1;
  GridMaximum best;
  const long steps = static_cast<long>(std::floor(t_max / step + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    const double t = k * step;
    const double m = std::abs(transfer_amplitude(eig, 0, last, t));
    if (m > best.modulus) best = {m, t};
  }
  return best;
}

}  // namespace hexpst::chains
