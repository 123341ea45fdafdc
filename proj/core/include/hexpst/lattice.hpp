#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hexpst {

/// Hadamard coupling matrix J (rows: center layer α, columns: leg β).
/// Symmetric, orthogonal, and involutive.
inline constexpr std::array<std::array<double, 4>, 4> kHadamard{{
    {0.5, 0.5, 0.5, 0.5},
    {0.5, 0.5, -0.5, -0.5},
    {0.5, -0.5, 0.5, -0.5},
    {0.5, -0.5, -0.5, 0.5},
}};

/// Integer sign pattern of 2*J; used where exact arithmetic is wanted.
inline constexpr std::array<std::array<int, 4>, 4> kHadamardSigns{{
    {1, 1, 1, 1},
    {1, 1, -1, -1},
    {1, -1, 1, -1},
    {1, -1, -1, 1},
}};

enum class BoundaryPolicy { trim_dangling, keep_dangling };
enum class HeadPolicy { all_vertices, listed };
enum class Sublattice : std::uint8_t { A, B };

/// Vertex position in brick-wall coordinates.
///
/// Each row is a zigzag chain; (row + col) even is an A vertex (a peak of its
/// row), odd is a B vertex (a valley). An A vertex at (r, c) links to
/// (r + 1, c) in direction 1, (r, c - 1) in direction 2 and (r, c + 1) in
/// direction 3. Seen from the B end those links carry the same labels.
struct VertexKey {
  int plane = 0;
  int row = 0;
  int col = 0;

  auto operator<=>(const VertexKey&) const = default;
  bool operator==(const VertexKey&) const = default;

  Sublattice sublattice() const noexcept {
    return ((row + col) % 2 + 2) % 2 == 0 ? Sublattice::A : Sublattice::B;
  }
  std::string to_string() const;
};

/// A switch joining two planes through their e_0 legs.
struct Connector {
  int plane_a = 0;
  int plane_b = 0;
  int row_a = 0, col_a = 0;
  int row_b = 0, col_b = 0;

  VertexKey vertex_a() const noexcept { return {plane_a, row_a, col_a}; }
  VertexKey vertex_b() const noexcept { return {plane_b, row_b, col_b}; }
  bool operator==(const Connector&) const = default;
};

/// Declarative lattice description.
///
/// Every plane is a patch of `hex_rows` x `hex_cols` hexagonal cells. Cell
/// (i, j) has its lower-left corner at brick coordinate (i, 2j + i mod 2).
/// A zero extent produces a single isolated switch at (0, 0) per plane.
struct LatticeSpec {
  int planes = 1;
  int hex_rows = 1;
  int hex_cols = 1;
  BoundaryPolicy boundary = BoundaryPolicy::trim_dangling;
  std::vector<Connector> connectors;
  std::vector<VertexKey> faulty_switches;
  HeadPolicy head_policy = HeadPolicy::all_vertices;
  std::vector<VertexKey> heads;  // used when head_policy == listed

  bool operator==(const LatticeSpec&) const = default;
};

enum class SiteKind : std::uint8_t { center, link, rw_head, interplane_link };

/// Identity of one qubit.
///
/// - center:          vertex = switch, index = layer α in 0..3
/// - link:            vertex = owning endpoint (the A end, or the only end of a
///                    dangling link), index = direction 1..3
/// - rw_head:         vertex = switch, index = 0
/// - interplane_link: vertex = switch on plane_a, index = connector id
struct SiteId {
  SiteKind kind = SiteKind::center;
  int vertex = 0;
  int index = 0;

  bool operator==(const SiteId&) const = default;
};

/// Undirected coupling listed once with a < b.
struct Coupling {
  int a = 0;
  int b = 0;
  double weight = 0.0;

  bool operator==(const Coupling&) const = default;
};

struct Vertex {
  VertexKey key;
  bool faulty = false;
  /// neighbor[d] for d in 1..3; slot 0 unused.
  std::array<int, 4> neighbor{-1, -1, -1, -1};
  /// Site attached at leg β (0: head or connector, 1..3: link); -1 if none.
  std::array<int, 4> leg{-1, -1, -1, -1};
  /// Connector id occupying leg 0, or -1.
  int connector = -1;

  Sublattice sublattice() const noexcept { return key.sublattice(); }
  bool operator==(const Vertex&) const = default;
};

struct ConnectorLink {
  int vertex_a = -1;
  int vertex_b = -1;
  int site = -1;

  bool operator==(const ConnectorLink&) const = default;
};

/// Realized sites and couplings. Centers occupy indices [0, 4V) in
/// vertex-major, layer-minor order, followed by heads, links and connectors.
struct LatticeGraph {
  std::vector<Vertex> vertices;
  std::vector<SiteId> sites;
  std::vector<Coupling> couplings;
  std::vector<ConnectorLink> connectors;
  /// layers[α]: site indices of the layer-α centers.
  std::array<std::vector<int>, 4> layers;

  int site_count() const noexcept { return static_cast<int>(sites.size()); }
  int vertex_count() const noexcept { return static_cast<int>(vertices.size()); }

  static constexpr int center_site(int vertex, int layer) noexcept { return 4 * vertex + layer; }

  std::optional<int> find_vertex(const VertexKey& key) const;
  int head_site(int vertex) const noexcept;
  bool has_head(int vertex) const noexcept { return head_site(vertex) >= 0; }
  std::vector<int> head_vertices() const;

  /// Vertices the site couples to, deduced from its identity: one for heads
  /// and dangling links, two for full links and connectors.
  std::vector<int> endpoints(int site) const;
  /// Leg of `vertex` that `site` is attached to.
  int leg_of(int site) const;

  std::string site_label(int site) const;

  bool operator==(const LatticeGraph&) const = default;
};

/// Throws SpecError when the description is inconsistent.
LatticeGraph build_lattice(const LatticeSpec& spec);

/// Direction label of the link joining `vertex` and `neighbor`, as seen from
/// `vertex`. Throws std::invalid_argument if they are not adjacent.
int link_direction_index(const LatticeGraph& graph, int vertex, int neighbor);

struct Violation {
  std::string message;
  std::vector<int> sites;
};

/// Checks every structural invariant of a switch lattice. Empty means valid.
std::vector<Violation> validate(const LatticeGraph& graph);

std::string to_string(SiteKind kind);
std::string to_string(BoundaryPolicy policy);
std::string to_string(HeadPolicy policy);

}  // namespace hexpst
