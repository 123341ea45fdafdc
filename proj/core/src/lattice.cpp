#include "hexpst/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <sstream>
#include <stdexcept>

#include "hexpst/error.hpp"

namespace hexpst {

namespace {

VertexKey step(const VertexKey& v, int direction) {
  const bool a = v.sublattice() == Sublattice::A;
  switch (direction) {
    case 1:
      return {v.plane, a ? v.row + 1 : v.row - 1, v.col};
    case 2:
      return {v.plane, v.row, a ? v.col - 1 : v.col + 1};
    case 3:
      return {v.plane, v.row, a ? v.col + 1 : v.col - 1};
    default:
      throw std::invalid_argument("direction must be 1, 2 or 3");
  }
}

std::vector<VertexKey> plane_vertices(int plane, int rows, int cols) {
  std::set<VertexKey> keys;
  if (rows == 0 && cols == 0) {
    keys.insert({plane, 0, 0});
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int c0 = 2 * j + i % 2;
      for (int dr = 0; dr < 2; ++dr) {
        for (int dc = 0; dc < 3; ++dc) keys.insert({plane, i + dr, c0 + dc});
      }
    }
  }
  return {keys.begin(), keys.end()};
}

void check_spec(const LatticeSpec& spec) {
  if (spec.planes < 1) throw SpecError("planes must be >= 1");
  if (spec.hex_rows < 0 || spec.hex_cols < 0) throw SpecError("hex_extent must be non-negative");
  if ((spec.hex_rows == 0) != (spec.hex_cols == 0)) {
    throw SpecError("hex_extent must be (0, 0) or have both dimensions positive");
  }
}

}  // namespace

std::string VertexKey::to_string() const {
  std::ostringstream os;
  os << '(' << plane << ',' << row << ',' << col << ')';
  return os.str();
}

std::string to_string(SiteKind kind) {
  switch (kind) {
    case SiteKind::center:
      return "center";
    case SiteKind::link:
      return "link";
    case SiteKind::rw_head:
      return "rw_head";
    case SiteKind::interplane_link:
      return "interplane_link";
  }
  return "?";
}

std::string to_string(BoundaryPolicy policy) {
  return policy == BoundaryPolicy::trim_dangling ? "trim_dangling" : "keep_dangling";
}

std::string to_string(HeadPolicy policy) {
  return policy == HeadPolicy::all_vertices ? "all_vertices" : "listed";
}

std::optional<int> LatticeGraph::find_vertex(const VertexKey& key) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), key,
                             [](const Vertex& v, const VertexKey& k) { return v.key < k; });
  if (it == vertices.end() || it->key != key) return std::nullopt;
  return static_cast<int>(it - vertices.begin());
}

int LatticeGraph::head_site(int vertex) const noexcept {
  if (vertex < 0 || vertex >= vertex_count()) return -1;
  const int s = vertices[vertex].leg[0];
  if (s < 0 || s >= site_count() || sites[s].kind != SiteKind::rw_head) return -1;
  return s;
}

std::vector<int> LatticeGraph::head_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v) {
    if (has_head(v)) out.push_back(v);
  }
  return out;
}

std::vector<int> LatticeGraph::endpoints(int site) const {
  const SiteId& id = sites.at(site);
  switch (id.kind) {
    case SiteKind::center:
    case SiteKind::rw_head:
      return {id.vertex};
    case SiteKind::link: {
      const int other = vertices.at(id.vertex).neighbor.at(id.index);
      if (other < 0) return {id.vertex};
      return {id.vertex, other};
    }
    case SiteKind::interplane_link: {
      const ConnectorLink& c = connectors.at(id.index);
      return {c.vertex_a, c.vertex_b};
    }
  }
  return {};
}

int LatticeGraph::leg_of(int site) const {
  const SiteId& id = sites.at(site);
  switch (id.kind) {
    case SiteKind::link:
      return id.index;
    case SiteKind::rw_head:
    case SiteKind::interplane_link:
      return 0;
    case SiteKind::center:
      break;
  }
  return -1;
}

std::string LatticeGraph::site_label(int site) const {
  const SiteId& id = sites.at(site);
  const std::string v = vertices.at(id.vertex).key.to_string();
  switch (id.kind) {
    case SiteKind::center:
      return "c" + v + "." + std::to_string(id.index);
    case SiteKind::rw_head:
      return "h" + v;
    case SiteKind::link:
      return "l" + v + "/" + std::to_string(id.index);
    case SiteKind::interplane_link:
      return "x" + std::to_string(id.index);
  }
  return "?";
}

LatticeGraph build_lattice(const LatticeSpec& spec) {
  check_spec(spec);

  LatticeGraph g;
  for (int p = 0; p < spec.planes; ++p) {
    for (const VertexKey& k : plane_vertices(p, spec.hex_rows, spec.hex_cols)) {
      g.vertices.push_back(Vertex{.key = k});
    }
  }
  const int nv = g.vertex_count();

  for (Vertex& v : g.vertices) {
    for (int d = 1; d <= 3; ++d) {
      if (auto w = g.find_vertex(step(v.key, d))) v.neighbor[d] = *w;
    }
  }

  auto require_vertex = [&](const VertexKey& k, const std::string& what) {
    auto idx = g.find_vertex(k);
    if (!idx) throw SpecError(what + " references missing vertex " + k.to_string());
    return *idx;
  };

  for (const VertexKey& k : spec.faulty_switches) {
    g.vertices[require_vertex(k, "faulty_switches")].faulty = true;
  }

  for (std::size_t c = 0; c < spec.connectors.size(); ++c) {
    const Connector& con = spec.connectors[c];
    const std::string name = "connector " + std::to_string(c);
    if (con.plane_a == con.plane_b) throw SpecError(name + " joins plane " + std::to_string(con.plane_a) + " to itself");
    const int a = require_vertex(con.vertex_a(), name);
    const int b = require_vertex(con.vertex_b(), name);
    for (int v : {a, b}) {
      if (g.vertices[v].connector >= 0) {
        throw SpecError(name + " reuses the e_0 leg of " + g.vertices[v].key.to_string() +
                        " already taken by connector " + std::to_string(g.vertices[v].connector));
      }
      g.vertices[v].connector = static_cast<int>(c);
    }
    g.connectors.push_back({a, b, -1});
  }

  std::vector<bool> head(nv, false);
  if (spec.head_policy == HeadPolicy::all_vertices) {
    for (int v = 0; v < nv; ++v) head[v] = g.vertices[v].connector < 0;
  } else {
    for (const VertexKey& k : spec.heads) {
      const int v = require_vertex(k, "rw_heads");
      if (g.vertices[v].connector >= 0) {
        throw SpecError("rw_heads: vertex " + k.to_string() + " hosts connector " +
                        std::to_string(g.vertices[v].connector) + " on its e_0 leg");
      }
      if (head[v]) throw SpecError("rw_heads: vertex " + k.to_string() + " listed twice");
      head[v] = true;
    }
  }

  for (int v = 0; v < nv; ++v) {
    for (int a = 0; a < 4; ++a) g.sites.push_back({SiteKind::center, v, a});
  }
  for (int v = 0; v < nv; ++v) {
    if (!head[v]) continue;
    g.vertices[v].leg[0] = g.site_count();
    g.sites.push_back({SiteKind::rw_head, v, 0});
  }
  const bool keep = spec.boundary == BoundaryPolicy::keep_dangling;
  for (int v = 0; v < nv; ++v) {
    Vertex& vx = g.vertices[v];
    for (int d = 1; d <= 3; ++d) {
      const int w = vx.neighbor[d];
      const bool owned = w >= 0 ? vx.sublattice() == Sublattice::A : keep;
      if (!owned) continue;
      const int s = g.site_count();
      g.sites.push_back({SiteKind::link, v, d});
      vx.leg[d] = s;
      if (w >= 0) g.vertices[w].leg[d] = s;
    }
  }
  for (std::size_t c = 0; c < g.connectors.size(); ++c) {
    ConnectorLink& con = g.connectors[c];
    con.site = g.site_count();
    g.sites.push_back({SiteKind::interplane_link, con.vertex_a, static_cast<int>(c)});
    g.vertices[con.vertex_a].leg[0] = con.site;
    g.vertices[con.vertex_b].leg[0] = con.site;
  }

  for (int s = 4 * nv; s < g.site_count(); ++s) {
    const int beta = g.leg_of(s);
    for (int v : g.endpoints(s)) {
      for (int a = 0; a < 4; ++a) {
        g.couplings.push_back({LatticeGraph::center_site(v, a), s, kHadamard[a][beta]});
      }
    }
  }
  std::sort(g.couplings.begin(), g.couplings.end(),
            [](const Coupling& x, const Coupling& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });

  for (int v = 0; v < nv; ++v) {
    for (int a = 0; a < 4; ++a) g.layers[a].push_back(LatticeGraph::center_site(v, a));
  }
  return g;
}

int link_direction_index(const LatticeGraph& graph, int vertex, int neighbor) {
  if (vertex < 0 || vertex >= graph.vertex_count()) throw std::invalid_argument("vertex out of range");
  const Vertex& v = graph.vertices[vertex];
  for (int d = 1; d <= 3; ++d) {
    if (v.neighbor[d] == neighbor && neighbor >= 0) return d;
  }
  throw std::invalid_argument("vertices " + std::to_string(vertex) + " and " + std::to_string(neighbor) +
                              " are not adjacent");
}

std::vector<Violation> validate(const LatticeGraph& graph) {
  std::vector<Violation> out;
  const int n = graph.site_count();
  const int nv = graph.vertex_count();
  auto label = [&](int s) { return graph.site_label(s); };

  // Site table: centers first, identities in range.
  for (int s = 0; s < n; ++s) {
    const SiteId& id = graph.sites[s];
    if (id.vertex < 0 || id.vertex >= nv) {
      out.push_back({"site " + std::to_string(s) + " refers to a missing vertex", {s}});
      continue;
    }
    const bool in_center_block = s < 4 * nv;
    if (in_center_block != (id.kind == SiteKind::center) ||
        (in_center_block && (id.vertex != s / 4 || id.index != s % 4))) {
      out.push_back({"site " + label(s) + " breaks the center block ordering", {s}});
    }
  }
  if (!out.empty()) return out;

  for (int a = 0; a < 4; ++a) {
    std::vector<int> expect;
    for (int v = 0; v < nv; ++v) expect.push_back(LatticeGraph::center_site(v, a));
    if (graph.layers[a] != expect) out.push_back({"layer " + std::to_string(a) + " membership is inconsistent", {}});
  }

  // Honeycomb adjacency and leg tables.
  for (int v = 0; v < nv; ++v) {
    const Vertex& vx = graph.vertices[v];
    for (int d = 1; d <= 3; ++d) {
      const int w = vx.neighbor[d];
      if (w < 0) continue;
      if (w >= nv || graph.vertices[w].neighbor[d] != v) {
        out.push_back({"adjacency of " + vx.key.to_string() + " in direction " + std::to_string(d) + " is not mutual", {}});
      } else if (graph.vertices[w].sublattice() == vx.sublattice()) {
        out.push_back({"adjacent vertices " + vx.key.to_string() + " and " + graph.vertices[w].key.to_string() +
                           " share a sublattice", {}});
      }
    }
    for (int b = 0; b < 4; ++b) {
      const int s = vx.leg[b];
      if (s < 0) continue;
      const bool ok = s < n && graph.sites[s].kind != SiteKind::center && graph.leg_of(s) == b;
      const auto ends = ok ? graph.endpoints(s) : std::vector<int>{};
      if (!ok || std::find(ends.begin(), ends.end(), v) == ends.end()) {
        out.push_back({"leg " + std::to_string(b) + " of " + vx.key.to_string() + " points at a foreign site", {s}});
      }
    }
  }

  // Coupling list: bounds, ordering, uniqueness, magnitude, center/external pattern.
  std::set<std::pair<int, int>> seen;
  std::map<int, std::map<int, std::array<std::optional<double>, 4>>> attached;  // ext -> vertex -> α
  for (const Coupling& c : graph.couplings) {
    if (c.a < 0 || c.b < 0 || c.a >= n || c.b >= n || c.a == c.b) {
      out.push_back({"coupling (" + std::to_string(c.a) + "," + std::to_string(c.b) + ") has invalid endpoints", {}});
      continue;
    }
    const int lo = std::min(c.a, c.b), hi = std::max(c.a, c.b);
    if (c.a > c.b) out.push_back({"coupling " + label(lo) + "-" + label(hi) + " is not in canonical order", {lo, hi}});
    if (!seen.insert({lo, hi}).second) {
      out.push_back({"coupling " + label(lo) + "-" + label(hi) + " is listed twice", {lo, hi}});
      continue;
    }
    const bool lo_center = graph.sites[lo].kind == SiteKind::center;
    const bool hi_center = graph.sites[hi].kind == SiteKind::center;
    if (lo_center && hi_center) {
      out.push_back({"central qubits " + label(lo) + " and " + label(hi) + " are coupled", {lo, hi}});
      continue;
    }
    if (!lo_center && !hi_center) {
      out.push_back({"external qubits " + label(lo) + " and " + label(hi) + " are coupled directly", {lo, hi}});
      continue;
    }
    const int center = lo_center ? lo : hi;
    const int ext = lo_center ? hi : lo;
    attached[ext][graph.sites[center].vertex][graph.sites[center].index] = c.weight;
  }

  for (int s = 4 * nv; s < n; ++s) {
    const auto expected = graph.endpoints(s);
    const int beta = graph.leg_of(s);
    const auto it = attached.find(s);
    const std::size_t count = it == attached.end() ? 0 : it->second.size();
    if (count > expected.size()) {
      out.push_back({label(s) + " is coupled to " + std::to_string(count) + " switches (allowed " +
                         std::to_string(expected.size()) + ")", {s}});
      continue;
    }
    for (int v : expected) {
      std::array<std::optional<double>, 4> w{};
      if (it != attached.end()) {
        if (auto f = it->second.find(v); f != it->second.end()) w = f->second;
      }
      bool match = true;
      for (int a = 0; a < 4; ++a) match = match && w[a] && *w[a] == kHadamard[a][beta];
      if (!match) {
        out.push_back({label(s) + " does not couple to " + graph.vertices[v].key.to_string() +
                           " through Hadamard column " + std::to_string(beta), {s}});
      }
    }
    if (it != attached.end()) {
      for (const auto& [v, w] : it->second) {
        if (std::find(expected.begin(), expected.end(), v) == expected.end()) {
          out.push_back({label(s) + " is coupled to the foreign switch " + graph.vertices[v].key.to_string(), {s}});
        }
      }
    }
  }
  return out;
}

}  // namespace hexpst
