#include "nodal/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nodal/errors.hpp"

namespace nodal {

namespace {

json require_key(const json& j, const std::string& key, const char* context) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string(context) + ": missing key '" + key + "'");
    return j.at(key);
}

int require_int(const json& j, const char* context) {
    if (!j.is_number_integer())
        throw InputError(std::string(context) + ": expected an integer");
    return j.get<int>();
}

void dump_value(const json& j, std::string& out, int indent, int depth);

void dump_indent(std::string& out, int indent, int depth) {
    if (indent > 0) {
        out.push_back('\n');
        out.append(static_cast<size_t>(indent) * depth, ' ');
    }
}

}  // namespace

Graph graph_from_json(const json& j) {
    int n = require_int(require_key(j, "n", "graph file"), "graph file n");
    json edges = require_key(j, "edges", "graph file");
    if (!edges.is_array()) throw InputError("graph file: 'edges' must be an array");
    std::vector<Edge> edge_list;
    for (const json& e : edges) {
        if (!e.is_array() || e.size() != 2)
            throw InputError("graph file: each edge must be a pair [r, s]");
        edge_list.emplace_back(require_int(e[0], "graph file edge"),
                               require_int(e[1], "graph file edge"));
    }
    return build_graph(n, edge_list);
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [r, s] : g.edges) edges.push_back(json::array({r, s}));
    return json{{"n", g.n}, {"edges", edges}};
}

Graph read_graph_file(const std::string& path) { return graph_from_json(read_json_file(path)); }

SupportedMatrix matrix_from_json(const json& j, const Graph& g) {
    int n = require_int(require_key(j, "n", "matrix file"), "matrix file n");
    if (n != g.n) throw InputError("matrix file: n does not match the graph");
    json diag = require_key(j, "diag", "matrix file");
    if (!diag.is_array() || static_cast<int>(diag.size()) != n)
        throw InputError("matrix file: 'diag' must have n entries");
    std::vector<double> diagonal;
    for (const json& v : diag) {
        if (!v.is_number()) throw InputError("matrix file: diagonal entries must be numbers");
        diagonal.push_back(v.get<double>());
    }

    json offdiag = require_key(j, "offdiag", "matrix file");
    if (!offdiag.is_array()) throw InputError("matrix file: 'offdiag' must be an array");
    std::vector<double> off(g.edges.size());
    std::vector<char> seen(g.edges.size(), 0);
    for (const json& entry : offdiag) {
        int u = require_int(require_key(entry, "u", "matrix entry"), "matrix entry u");
        int v = require_int(require_key(entry, "v", "matrix entry"), "matrix entry v");
        json value = require_key(entry, "value", "matrix entry");
        if (!value.is_number()) throw InputError("matrix entry: value must be a number");
        int e = g.edge_index(std::min(u, v), std::max(u, v));
        if (e < 0)
            throw InputError("matrix entry (" + std::to_string(u) + "," + std::to_string(v) +
                             ") is not an edge of the graph");
        if (seen[e])
            throw InputError("matrix entry (" + std::to_string(u) + "," + std::to_string(v) +
                             ") appears twice");
        seen[e] = 1;
        off[e] = value.get<double>();
    }
    for (size_t e = 0; e < seen.size(); ++e)
        if (!seen[e])
            throw InputError("matrix file: edge (" + std::to_string(g.edges[e].first) + "," +
                             std::to_string(g.edges[e].second) + ") has no entry");
    return make_supported(g, std::move(diagonal), std::move(off));
}

json matrix_to_json(const SupportedMatrix& h) {
    json offdiag = json::array();
    for (size_t e = 0; e < h.graph.edges.size(); ++e)
        offdiag.push_back(json{{"u", h.graph.edges[e].first},
                               {"v", h.graph.edges[e].second},
                               {"value", h.off_diagonal[e]}});
    return json{{"n", h.graph.n}, {"diag", h.diagonal}, {"offdiag", offdiag}};
}

SupportedMatrix read_matrix_file(const std::string& path, const Graph& g) {
    return matrix_from_json(read_json_file(path), g);
}

FluxPoint parse_flux_literal(const std::string& text, int beta) {
    FluxPoint p = FluxPoint::zero(beta);
    if (text.empty()) return p;
    std::vector<char> assigned(beta, 0);
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t colon = part.find(':');
        if (colon == std::string::npos)
            throw InputError("flux literal: expected 'index:angle', got '" + part + "'");
        int j;
        double angle;
        try {
            size_t used;
            j = std::stoi(part.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("trailing");
            angle = std::stod(part.substr(colon + 1), &used);
            if (used != part.size() - colon - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError("flux literal: cannot parse '" + part + "'");
        }
        if (j < 0 || j >= beta)
            throw InputError("flux literal: cycle index " + std::to_string(j) +
                             " outside [0," + std::to_string(beta) + ")");
        if (assigned[j])
            throw InputError("flux literal: cycle " + std::to_string(j) + " assigned twice");
        assigned[j] = 1;
        p.angles[j] = reduce_angle(angle);
    }
    return p;
}

std::string format_double_17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void dump_value(const json& j, std::string& out, int indent, int depth) {
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out.push_back('{');
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out.push_back(',');
                first = false;
                dump_indent(out, indent, depth + 1);
                out += json(it.key()).dump();
                out += indent > 0 ? ": " : ":";
                dump_value(it.value(), out, indent, depth + 1);
            }
            dump_indent(out, indent, depth);
            out.push_back('}');
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out.push_back('[');
            bool first = true;
            for (const json& v : j) {
                if (!first) out.push_back(',');
                first = false;
                dump_indent(out, indent, depth + 1);
                dump_value(v, out, indent, depth + 1);
            }
            dump_indent(out, indent, depth);
            out.push_back(']');
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (std::isfinite(v))
                out += format_double_17(v);
            else
                out += "null";
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json_17(const json& j, int indent) {
    std::string out;
    dump_value(j, out, indent, 0);
    return out;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot open '" + path + "' for writing");
    f << dump_json_17(j) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    json j = json::parse(f, nullptr, false);
    if (j.is_discarded()) throw InputError("'" + path + "' is not valid JSON");
    return j;
}

}  // namespace nodal
