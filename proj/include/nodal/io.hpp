#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nodal/matrix_space.hpp"

namespace nodal {

using json = nlohmann::json;

// Graph file: {"n": <int>, "edges": [[r,s], ...]} with 0-based r < s.
Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);
Graph read_graph_file(const std::string& path);

// Matrix file: {"n": <int>, "diag": [...], "offdiag": [{"u":r,"v":s,"value":x}, ...]};
// the offdiag entries must match the companion graph's edge set exactly.
SupportedMatrix matrix_from_json(const json& j, const Graph& g);
json matrix_to_json(const SupportedMatrix& h);
SupportedMatrix read_matrix_file(const std::string& path, const Graph& g);

// CLI flux literal "j:angle,j:angle" with 0-based cycle index j, radians.
FluxPoint parse_flux_literal(const std::string& text, int beta);

// Serialize with every floating value printed to 17 significant digits;
// output is byte-stable for identical inputs.
std::string dump_json_17(const json& j, int indent = 2);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

std::string format_double_17(double v);

}  // namespace nodal
