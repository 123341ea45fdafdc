#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hexpst/error.hpp"
#include "hexpst/hamiltonian.hpp"
#include "hexpst/lattice.hpp"
#include "test_support.hpp"

using namespace hexpst;
using namespace hexpst::testing;

namespace {

// Spectrum of a unit-coupled open chain of n sites: 2 cos(kπ/(n+1)).
std::vector<double> chain_spectrum(int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(2.0 * std::cos(k * std::numbers::pi / (n + 1)));
  return out;
}

}  // namespace

TEST_SUITE("hamiltonian") {
  TEST_CASE("isolated switch block is the Hadamard matrix") {
    const LatticeGraph g = build_lattice(isolated_switch());
    const Hamiltonian h = assemble(g);
    REQUIRE(h.dim == 8);
    const Eigen::MatrixXd m = h.dense();
    CHECK((m - m.transpose()).norm() == 0.0);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        CHECK(m(a, g.vertices[0].leg[b]) == kHadamard[a][b]);
        CHECK(m(a, b) == 0.0);
      }
    }
    CHECK(check_invariants(h).empty());
  }

  TEST_CASE("empty graph gives an empty Hamiltonian") {
    const Hamiltonian h = assemble(LatticeGraph{});
    CHECK(h.dim == 0);
    CHECK(h.upper.empty());
    CHECK(h.dense().size() == 0);
  }

  TEST_CASE("hexagon has 72 coupled pairs") {
    const Hamiltonian h = assemble(build_lattice(hexagon()));
    // heads: 6 x 4 centers; links: 6 x 2 ends x 4 centers
    CHECK(h.upper.size() == 72);
    for (const Triplet& t : h.upper) {
      CHECK(t.row < t.col);
      CHECK(std::abs(t.value) == 0.5);
    }
    CHECK(std::is_sorted(h.upper.begin(), h.upper.end(),
                         [](const Triplet& a, const Triplet& b) { return std::pair(a.row, a.col) < std::pair(b.row, b.col); }));
  }

  TEST_CASE("xi transform is orthogonal and involutive") {
    for (const LatticeSpec& spec : {hexagon(), two_hexagons(), plane(2, 3)}) {
      const LatticeGraph g = build_lattice(spec);
      const Eigen::MatrixXd q = xi_transform(g).dense();
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(q.rows(), q.cols());
      CHECK((q * q.transpose() - id).cwiseAbs().maxCoeff() <= 1e-15);
      CHECK((q * q - id).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }

  TEST_CASE("xi transform apply matches the dense matrix") {
    const LatticeGraph g = build_lattice(hexagon());
    const XiTransform q = xi_transform(g);
    Eigen::VectorXcd v(g.site_count());
    for (int i = 0; i < v.size(); ++i) v[i] = {std::sin(1.0 + i), std::cos(2.0 * i)};
    const Eigen::VectorXcd want = q.dense().cast<std::complex<double>>() * v;
    CHECK((q.apply(v) - want).norm() <= 1e-14);
  }

  TEST_CASE("isolated switch decouples into four 2-chains") {
    const LatticeGraph g = build_lattice(isolated_switch());
    const Hamiltonian h = assemble(g);
    const XiTransform q = xi_transform(g);
    const Eigen::MatrixXd qd = q.dense();
    const Eigen::MatrixXd xi = qd.transpose() * h.dense() * qd;
    int ones = 0;
    for (int i = 0; i < xi.rows(); ++i) {
      for (int j = i + 1; j < xi.cols(); ++j) {
        if (std::abs(xi(i, j)) > 1e-15) {
          CHECK(xi(i, j) == doctest::Approx(1.0).epsilon(1e-15));
          ++ones;
        }
      }
    }
    CHECK(ones == 4);
    const auto sparse = transform_to_xi(h, q);
    CHECK(sparse.size() == 4);
    const ChainInventory inv = verify_block_structure(h, q);
    CHECK(inv.count(ChainKind::two_chain) == 4);
    CHECK(inv.count(ChainKind::three_chain) == 0);
  }

  TEST_CASE("hexagon census") {
    const LatticeGraph g = build_lattice(hexagon());
    const Hamiltonian h = assemble(g);
    const ChainInventory inv = verify_block_structure(h, xi_transform(g));
    CHECK(inv.count(ChainKind::two_chain) == 6);
    CHECK(inv.count(ChainKind::three_chain) == 6);
    CHECK(inv.count(ChainKind::isolated) == 6);
    CHECK(inv.interplane_count() == 0);
    CHECK(inv.max_off_pattern <= kStructuralZeroTol);
    CHECK(inv.max_coupling_error <= kChainCouplingTol);
    for (const Chain& c : inv.chains) {
      for (double k : c.couplings) CHECK(k == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  TEST_CASE("connector forms an inter-plane 3-chain") {
    const LatticeGraph g = build_lattice(connector_pair());
    REQUIRE(g.site_count() == 9);
    const ChainInventory inv = verify_block_structure(assemble(g), xi_transform(g));
    CHECK(inv.interplane_count() == 1);
    CHECK(inv.count(ChainKind::three_chain) == 1);
    const auto it = std::find_if(inv.chains.begin(), inv.chains.end(), [](const Chain& c) { return c.interplane; });
    REQUIRE(it != inv.chains.end());
    CHECK(it->indices.front() == LatticeGraph::center_site(0, 0));
    CHECK(it->indices.back() == LatticeGraph::center_site(1, 0));
    CHECK(g.sites[it->indices[1]].kind == SiteKind::interplane_link);
  }

  TEST_CASE("spectrum is the union of chain spectra") {
    for (const LatticeSpec& spec : {hexagon(), two_hexagons(), plane(2, 2)}) {
      const LatticeGraph g = build_lattice(spec);
      const Hamiltonian h = assemble(g);
      const ChainInventory inv = verify_block_structure(h, xi_transform(g));
      std::vector<double> expected;
      for (const Chain& c : inv.chains) {
        for (double e : chain_spectrum(static_cast<int>(c.indices.size()))) expected.push_back(e);
      }
      std::sort(expected.begin(), expected.end());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense(), Eigen::EigenvaluesOnly);
      REQUIRE(static_cast<int>(expected.size()) == h.dim);
      for (int i = 0; i < h.dim; ++i) CHECK(std::abs(solver.eigenvalues()[i] - expected[i]) <= 1e-10);
    }
  }

  TEST_CASE("a corrupted coupling is reported with details") {
    const LatticeGraph g = build_lattice(hexagon());
    Hamiltonian h = assemble(g);
    h.upper[3].value += 1e-6;
    try {
      verify_block_structure(h, xi_transform(g));
      FAIL("expected StructureError");
    } catch (const StructureError& e) {
      CHECK_FALSE(e.details().empty());
    }
  }

  TEST_CASE("apply agrees with the dense matrix") {
    const Hamiltonian h = assemble(build_lattice(two_hexagons()));
    Eigen::VectorXcd v(h.dim), out(h.dim);
    for (int i = 0; i < h.dim; ++i) v[i] = {0.1 * i, 1.0 / (1 + i)};
    h.apply(v, out);
    CHECK((out - h.dense().cast<std::complex<double>>() * v).norm() <= 1e-13);
    CHECK(h.norm_bound() >= h.dense().operatorNorm() - 1e-12);
  }

  TEST_CASE("triplet dump lists every coupling") {
    const Hamiltonian h = assemble(build_lattice(hexagon()));
    std::ostringstream os;
    write_triplets(os, h);
    const std::string text = os.str();
    CHECK(text.rfind("# hexpst.triplets/1", 0) == 0);
    std::istringstream in(text);
    std::string line;
    int data = 0;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') ++data;
    }
    CHECK(data == 72);
  }
}
