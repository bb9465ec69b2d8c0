#pragma once

#include <string>

#include "json.hpp"

#include "qcells/cell_system.hpp"
#include "qcells/fusion_graph.hpp"
#include "qcells/fusion_ring.hpp"
#include "qcells/hecke.hpp"
#include "qcells/solver.hpp"

namespace qcells {

using Json = nlohmann::ordered_json;

Json graph_to_json(const FusionGraph& graph);
FusionGraph graph_from_json(const Json& j);
std::string serialize_graph(const FusionGraph& graph);
/// Throws ParseError on malformed input and ValidationError on graph invariant violations.
FusionGraph parse_graph(const std::string& text);

/// A builtin catalog name or the path of a graph JSON file.
FusionGraph load_graph(const std::string& selector);

/// Cells keyed by canonical triangle; the graph is written by name for builtins, inline otherwise.
Json cells_to_json(const CellSystem& cells, bool inline_graph = false);
std::string serialize_cells(const CellSystem& cells, bool inline_graph = false);
/// When expected is given the file must refer to the same graph.
CellSystem parse_cells(const std::string& text, const FusionGraph* expected = nullptr);
CellSystem load_cells(const std::string& path, const FusionGraph* expected = nullptr);

Json complex_json(QComplex z);
Json invariants_json(const InvariantReport& report);
Json solve_report_json(const SolveReport& report);
Json verify_report_json(const VerifyReport& report, const CellLayout& layout);
Json hecke_report_json(const HeckeReport& report, const FusionGraph& graph);
Json rhombus_json(const RhombusMatrix& r, const FusionGraph& graph);
Json z9_certificate_json(const Z9Certificate& cert);
Json family_json(const WeightFamily& family);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace qcells
