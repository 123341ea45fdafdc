#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "hexpst/lattice.hpp"

namespace hexpst {

/// Schema tag every lattice spec file must carry.
inline constexpr std::string_view kLatticeSchema = "hexpst.lattice/1";
inline constexpr std::string_view kGraphDumpHeader = "# hexpst.graph/1";

/// Parses a lattice spec document. Vertices are written [plane, row, col];
/// connectors as {plane_a, plane_b, vertex_a: [row, col], vertex_b: [row, col]}.
/// Throws SpecError on malformed input or a missing/unknown schema.
LatticeSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const LatticeSpec& spec);

LatticeSpec read_spec_file(const std::string& path);

/// Deterministic line-oriented dump: vertex table, site table, coupling
/// triplets and connectors. Doubles use round-trip precision.
void write_graph(std::ostream& os, const LatticeGraph& graph);
/// Inverse of write_graph. Throws SpecError on malformed input.
LatticeGraph read_graph(std::istream& is);

}  // namespace hexpst
