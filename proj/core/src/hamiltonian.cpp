#include "hexpst/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hexpst/error.hpp"

namespace hexpst {

Hamiltonian assemble(const LatticeGraph& graph) {
  Hamiltonian h;
  h.dim = graph.site_count();
  h.sites = graph.sites;
  h.labels.reserve(graph.sites.size());
  for (int s = 0; s < h.dim; ++s) h.labels.push_back(graph.site_label(s));
  h.upper.reserve(graph.couplings.size());
  for (const Coupling& c : graph.couplings) {
    h.upper.push_back({std::min(c.a, c.b), std::max(c.a, c.b), c.weight});
  }
  std::sort(h.upper.begin(), h.upper.end(),
            [](const Triplet& x, const Triplet& y) { return std::tie(x.row, x.col) < std::tie(y.row, y.col); });
  return h;
}

Eigen::MatrixXd Hamiltonian::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const Triplet& t : upper) {
    m(t.row, t.col) += t.value;
    if (t.row != t.col) m(t.col, t.row) += t.value;
  }
  return m;
}

void Hamiltonian::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  out.setZero(dim);
  for (const Triplet& t : upper) {
    out[t.row] += t.value * in[t.col];
    if (t.row != t.col) out[t.col] += t.value * in[t.row];
  }
}

double Hamiltonian::norm_bound() const {
  std::vector<double> rows(dim, 0.0);
  for (const Triplet& t : upper) {
    rows[t.row] += std::abs(t.value);
    if (t.row != t.col) rows[t.col] += std::abs(t.value);
  }
  return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
}

std::vector<std::string> check_invariants(const Hamiltonian& h) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < h.upper.size(); ++k) {
    const Triplet& t = h.upper[k];
    std::ostringstream os;
    if (t.row < 0 || t.col >= h.dim || t.row >= t.col) {
      os << "entry (" << t.row << "," << t.col << ") is not strictly upper triangular";
    } else if (k > 0 && std::tie(h.upper[k - 1].row, h.upper[k - 1].col) >= std::tie(t.row, t.col)) {
      os << "entry (" << t.row << "," << t.col << ") breaks canonical order";
    } else if (std::abs(t.value) != 0.5) {
      os << "entry (" << t.row << "," << t.col << ") has magnitude " << std::abs(t.value);
    }
    if (!os.str().empty()) out.push_back(os.str());
  }
  return out;
}

Eigen::MatrixXd XiTransform::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (const auto& [r, v] : column(c)) m(r, c) = v;
  }
  return m;
}

std::vector<std::pair<int, double>> XiTransform::column(int col) const {
  if (col >= 4 * vertices) return {{col, 1.0}};
  const int base = col - col % 4;
  const int alpha = col % 4;
  std::vector<std::pair<int, double>> out;
  for (int b = 0; b < 4; ++b) out.emplace_back(base + b, kHadamard[alpha][b]);
  return out;
}

Eigen::VectorXcd XiTransform::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = v;
  for (int base = 0; base < 4 * vertices; base += 4) {
    for (int a = 0; a < 4; ++a) {
      std::complex<double> acc = 0.0;
      for (int b = 0; b < 4; ++b) acc += kHadamard[a][b] * v[base + b];
      out[base + a] = acc;
    }
  }
  return out;
}

XiTransform xi_transform(const LatticeGraph& graph) {
  return {graph.site_count(), graph.vertex_count()};
}

std::size_t ChainInventory::count(ChainKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(chains.begin(), chains.end(), [&](const Chain& c) { return c.kind == kind; }));
}

std::size_t ChainInventory::interplane_count() const {
  return static_cast<std::size_t>(std::count_if(chains.begin(), chains.end(), [](const Chain& c) { return c.interplane; }));
}

std::string to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::two_chain:
      return "two_chain";
    case ChainKind::three_chain:
      return "three_chain";
    case ChainKind::isolated:
      return "isolated";
  }
  return "?";
}

std::vector<Triplet> transform_to_xi(const Hamiltonian& h, const XiTransform& q) {
  std::map<std::pair<int, int>, double> acc;
  auto spread = [&](int m, int n, double value) {
    for (const auto& [i, qi] : q.column(m)) {
      for (const auto& [j, qj] : q.column(n)) {
        if (i <= j) acc[{i, j}] += qi * value * qj;
      }
    }
  };
  for (const Triplet& t : h.upper) {
    spread(t.row, t.col, t.value);
    if (t.row != t.col) spread(t.col, t.row, t.value);
  }
  std::vector<Triplet> out;
  for (const auto& [key, value] : acc) {
    if (value != 0.0) out.push_back({key.first, key.second, value});
  }
  return out;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

std::string xi_label(const Hamiltonian& h, int index) {
  const std::string& l = h.labels.at(index);
  return h.sites.at(index).kind == SiteKind::center ? "xi" + l.substr(1) : l;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ChainInventory verify_block_structure(const Hamiltonian& h, const XiTransform& q) {
  if (q.dim != h.dim) throw std::invalid_argument("transform and Hamiltonian dimensions differ");
  const int n = h.dim;
  const int nc = 4 * q.vertices;
  auto is_xi = [&](int i) { return i < nc; };
  auto leg = [&](int ext) {
    const SiteId& id = h.sites.at(ext);
    return id.kind == SiteKind::link ? id.index : 0;
  };
  auto on_pattern = [&](int i, int j) {
    if (is_xi(i) == is_xi(j)) return false;
    const int xi = is_xi(i) ? i : j;
    const int ext = is_xi(i) ? j : i;
    return xi % 4 == leg(ext);
  };

  ChainInventory inv;
  std::vector<std::string> problems;
  DisjointSets sets(n);
  std::map<std::pair<int, int>, double> entry;
  for (const Triplet& t : transform_to_xi(h, q)) {
    const double mag = std::abs(t.value);
    if (on_pattern(t.row, t.col)) {
      inv.max_coupling_error = std::max(inv.max_coupling_error, std::abs(t.value - 1.0));
    } else {
      inv.max_off_pattern = std::max(inv.max_off_pattern, mag);
      if (mag > kStructuralZeroTol) {
        problems.push_back("off-pattern entry " + xi_label(h, t.row) + " - " + xi_label(h, t.col) + " = " + fmt(t.value));
      }
    }
    if (mag > kStructuralZeroTol) {
      sets.unite(t.row, t.col);
      entry[{t.row, t.col}] = t.value;
    }
  }

  std::map<int, std::vector<int>> components;
  for (int i = 0; i < n; ++i) components[sets.find(i)].push_back(i);

  auto value = [&](int a, int b) {
    auto it = entry.find({std::min(a, b), std::max(a, b)});
    return it == entry.end() ? 0.0 : it->second;
  };

  for (const auto& [root, members] : components) {
    Chain chain;
    std::vector<int> xis, exts;
    for (int m : members) (is_xi(m) ? xis : exts).push_back(m);
    std::string names;
    for (int m : members) names += (names.empty() ? "" : ", ") + xi_label(h, m);

    if (members.size() == 1 && xis.size() == 1) {
      chain.kind = ChainKind::isolated;
      chain.indices = members;
      chain.description = xi_label(h, members[0]);
    } else if (members.size() == 2 && xis.size() == 1 && exts.size() == 1) {
      chain.kind = ChainKind::two_chain;
      chain.indices = {exts[0], xis[0]};
      chain.couplings = {value(exts[0], xis[0])};
      chain.description = xi_label(h, exts[0]) + " - " + xi_label(h, xis[0]);
    } else if (members.size() == 3 && xis.size() == 2 && exts.size() == 1 && value(xis[0], xis[1]) == 0.0) {
      chain.kind = ChainKind::three_chain;
      chain.indices = {xis[0], exts[0], xis[1]};
      chain.couplings = {value(xis[0], exts[0]), value(exts[0], xis[1])};
      chain.interplane = h.sites.at(exts[0]).kind == SiteKind::interplane_link;
      chain.description = xi_label(h, xis[0]) + " - " + xi_label(h, exts[0]) + " - " + xi_label(h, xis[1]);
    } else {
      problems.push_back("component {" + names + "} is not a 2- or 3-chain");
      continue;
    }
    for (double c : chain.couplings) {
      if (std::abs(c - 1.0) > kChainCouplingTol) {
        problems.push_back("chain " + chain.description + " has coupling " + fmt(c));
      }
    }
    inv.chains.push_back(std::move(chain));
  }

  if (!problems.empty()) {
    throw StructureError(std::to_string(problems.size()) + " block-structure violation(s)", std::move(problems));
  }
  return inv;
}

void write_triplets(std::ostream& os, const Hamiltonian& h) {
  os << "# hexpst.triplets/1\n";
  os << "# sites " << h.dim << '\n';
  for (int s = 0; s < h.dim; ++s) os << "# " << s << ' ' << h.labels.at(s) << '\n';
  for (const Triplet& t : h.upper) os << t.row << ' ' << t.col << ' ' << fmt(t.value) << '\n';
}

}  // namespace hexpst
