#include "hexpst/lattice_io.hpp"

#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "hexpst/error.hpp"

namespace hexpst {

using nlohmann::json;

namespace {

VertexKey vertex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) throw SpecError(field + ": expected [plane, row, col]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

json vertex_to_json(const VertexKey& k) { return json::array({k.plane, k.row, k.col}); }

std::pair<int, int> cell_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw SpecError(field + ": expected [row, col]");
  return {j[0].get<int>(), j[1].get<int>()};
}

template <typename Enum>
Enum enum_from_json(const json& j, const std::string& field, std::initializer_list<std::pair<const char*, Enum>> names) {
  const auto text = j.get<std::string>();
  for (const auto& [name, value] : names) {
    if (text == name) return value;
  }
  throw SpecError(field + ": unknown value '" + text + "'");
}

}  // namespace

LatticeSpec spec_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw SpecError("lattice spec must be an object");
    if (!doc.contains("schema")) throw SpecError("missing mandatory 'schema' field");
    if (doc.at("schema").get<std::string>() != kLatticeSchema) {
      throw SpecError("unsupported schema '" + doc.at("schema").get<std::string>() + "' (expected " +
                      std::string(kLatticeSchema) + ")");
    }
    static const std::set<std::string> known = {"schema",          "planes",         "hex_extent",
                                                "boundary_policy", "interplane_connectors", "faulty_switches",
                                                "rw_head_policy",  "rw_heads"};
    for (const auto& [key, _] : doc.items()) {
      if (!known.contains(key)) throw SpecError("unknown field '" + key + "'");
    }

    LatticeSpec spec;
    spec.planes = doc.value("planes", 1);
    if (doc.contains("hex_extent")) {
      const auto [r, c] = cell_from_json(doc.at("hex_extent"), "hex_extent");
      spec.hex_rows = r;
      spec.hex_cols = c;
    }
    if (doc.contains("boundary_policy")) {
      spec.boundary = enum_from_json<BoundaryPolicy>(
          doc.at("boundary_policy"), "boundary_policy",
          {{"trim_dangling", BoundaryPolicy::trim_dangling}, {"keep_dangling", BoundaryPolicy::keep_dangling}});
    }
    if (doc.contains("rw_head_policy")) {
      spec.head_policy = enum_from_json<HeadPolicy>(doc.at("rw_head_policy"), "rw_head_policy",
                                                    {{"all_vertices", HeadPolicy::all_vertices}, {"listed", HeadPolicy::listed}});
    }
    for (const json& c : doc.value("interplane_connectors", json::array())) {
      Connector con;
      con.plane_a = c.at("plane_a").get<int>();
      con.plane_b = c.at("plane_b").get<int>();
      std::tie(con.row_a, con.col_a) = cell_from_json(c.at("vertex_a"), "interplane_connectors.vertex_a");
      std::tie(con.row_b, con.col_b) = cell_from_json(c.at("vertex_b"), "interplane_connectors.vertex_b");
      spec.connectors.push_back(con);
    }
    for (const json& v : doc.value("faulty_switches", json::array())) {
      spec.faulty_switches.push_back(vertex_from_json(v, "faulty_switches"));
    }
    for (const json& v : doc.value("rw_heads", json::array())) spec.heads.push_back(vertex_from_json(v, "rw_heads"));
    if (spec.head_policy == HeadPolicy::all_vertices && !spec.heads.empty()) {
      throw SpecError("rw_heads given but rw_head_policy is all_vertices");
    }
    return spec;
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed lattice spec: ") + e.what());
  }
}

json spec_to_json(const LatticeSpec& spec) {
  json doc;
  doc["schema"] = kLatticeSchema;
  doc["planes"] = spec.planes;
  doc["hex_extent"] = json::array({spec.hex_rows, spec.hex_cols});
  doc["boundary_policy"] = to_string(spec.boundary);
  json cons = json::array();
  for (const Connector& c : spec.connectors) {
    cons.push_back({{"plane_a", c.plane_a},
                    {"plane_b", c.plane_b},
                    {"vertex_a", json::array({c.row_a, c.col_a})},
                    {"vertex_b", json::array({c.row_b, c.col_b})}});
  }
  doc["interplane_connectors"] = cons;
  json faults = json::array();
  for (const VertexKey& k : spec.faulty_switches) faults.push_back(vertex_to_json(k));
  doc["faulty_switches"] = faults;
  doc["rw_head_policy"] = to_string(spec.head_policy);
  if (spec.head_policy == HeadPolicy::listed) {
    json heads = json::array();
    for (const VertexKey& k : spec.heads) heads.push_back(vertex_to_json(k));
    doc["rw_heads"] = heads;
  }
  return doc;
}

LatticeSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open lattice spec '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
  return spec_from_json(doc);
}

void write_graph(std::ostream& os, const LatticeGraph& g) {
  os << kGraphDumpHeader << '\n';
  os << "vertices " << g.vertex_count() << '\n';
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Vertex& x = g.vertices[v];
    os << "v " << v << ' ' << x.key.plane << ' ' << x.key.row << ' ' << x.key.col << ' '
       << (x.sublattice() == Sublattice::A ? 'A' : 'B') << ' ' << (x.faulty ? 1 : 0);
    for (int d = 1; d <= 3; ++d) os << ' ' << x.neighbor[d];
    for (int b = 0; b < 4; ++b) os << ' ' << x.leg[b];
    os << ' ' << x.connector << '\n';
  }
  os << "sites " << g.site_count() << '\n';
  for (int s = 0; s < g.site_count(); ++s) {
    const SiteId& id = g.sites[s];
    os << "s " << s << ' ' << to_string(id.kind) << ' ' << id.vertex << ' ' << id.index << ' ' << g.site_label(s) << '\n';
  }
  os << "connectors " << g.connectors.size() << '\n';
  for (std::size_t c = 0; c < g.connectors.size(); ++c) {
    const ConnectorLink& x = g.connectors[c];
    os << "x " << c << ' ' << x.vertex_a << ' ' << x.vertex_b << ' ' << x.site << '\n';
  }
  os << "couplings " << g.couplings.size() << '\n';
  char buf[64];
  for (const Coupling& c : g.couplings) {
    std::snprintf(buf, sizeof buf, "%.17g", c.weight);
    os << "c " << c.a << ' ' << c.b << ' ' << buf << '\n';
  }
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  std::istringstream next(const std::string& tag) {
    std::string line;
    while (std::getline(is_, line)) {
      ++lineno_;
      if (!line.empty()) break;
    }
    if (!is_ && line.empty()) fail("unexpected end of input, wanted '" + tag + "'");
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head != tag) fail("expected '" + tag + "', found '" + head + "'");
    return ss;
  }

  template <typename T>
  T read(std::istringstream& ss) {
    T value{};
    if (!(ss >> value)) fail("malformed field");
    return value;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw SpecError("graph dump line " + std::to_string(lineno_) + ": " + why);
  }

 private:
  std::istream& is_;
  int lineno_ = 0;
};

SiteKind kind_from_string(const std::string& s, const LineReader& r) {
  for (SiteKind k : {SiteKind::center, SiteKind::link, SiteKind::rw_head, SiteKind::interplane_link}) {
    if (to_string(k) == s) return k;
  }
  r.fail("unknown site kind '" + s + "'");
}

}  // namespace

LatticeGraph read_graph(std::istream& is) {
  LineReader r(is);
  std::string header;
  std::getline(is, header);
  if (header != kGraphDumpHeader) throw SpecError("graph dump: missing header '" + std::string(kGraphDumpHeader) + "'");

  LatticeGraph g;
  auto count = [&](const std::string& tag) {
    auto ss = r.next(tag);
    const int n = r.read<int>(ss);
    if (n < 0) r.fail("negative count");
    return n;
  };

  const int nv = count("vertices");
  for (int v = 0; v < nv; ++v) {
    auto ss = r.next("v");
    if (r.read<int>(ss) != v) r.fail("vertex index out of order");
    Vertex x;
    x.key.plane = r.read<int>(ss);
    x.key.row = r.read<int>(ss);
    x.key.col = r.read<int>(ss);
    r.read<char>(ss);  // sublattice is derived from the key
    x.faulty = r.read<int>(ss) != 0;
    for (int d = 1; d <= 3; ++d) x.neighbor[d] = r.read<int>(ss);
    for (int b = 0; b < 4; ++b) x.leg[b] = r.read<int>(ss);
    x.connector = r.read<int>(ss);
    g.vertices.push_back(x);
  }
  const int ns = count("sites");
  for (int s = 0; s < ns; ++s) {
    auto ss = r.next("s");
    if (r.read<int>(ss) != s) r.fail("site index out of order");
    SiteId id;
    id.kind = kind_from_string(r.read<std::string>(ss), r);
    id.vertex = r.read<int>(ss);
    id.index = r.read<int>(ss);
    g.sites.push_back(id);
  }
  const int nc = count("connectors");
  for (int c = 0; c < nc; ++c) {
    auto ss = r.next("x");
    if (r.read<int>(ss) != c) r.fail("connector index out of order");
    ConnectorLink x;
    x.vertex_a = r.read<int>(ss);
    x.vertex_b = r.read<int>(ss);
    x.site = r.read<int>(ss);
    g.connectors.push_back(x);
  }
  const int nk = count("couplings");
  for (int k = 0; k < nk; ++k) {
    auto ss = r.next("c");
    Coupling c;
    c.a = r.read<int>(ss);
    c.b = r.read<int>(ss);
    const auto text = r.read<std::string>(ss);
    c.weight = std::strtod(text.c_str(), nullptr);
    g.couplings.push_back(c);
  }
  for (int s = 0; s < ns; ++s) {
    if (g.sites[s].kind == SiteKind::center && g.sites[s].index >= 0 && g.sites[s].index < 4) {
      g.layers[g.sites[s].index].push_back(s);
    }
  }
  return g;
}

}  // namespace hexpst
