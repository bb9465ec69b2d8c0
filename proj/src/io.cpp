#include "qcells/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qcells/catalog.hpp"
#include "qcells/errors.hpp"

namespace qcells {

namespace {

Json parse_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what + ": malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
    }
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) {
        throw ParseError("field '" + path + "': expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("field '" + path + (path.empty() ? "" : ".") + key + "' is missing");
    }
    return *it;
}

std::string string_field(const Json& obj, const std::string& key, const std::string& path) {
    const Json& v = field(obj, key, path);
    if (!v.is_string()) {
        throw ParseError("field '" + path + (path.empty() ? "" : ".") + key + "': expected a string");
    }
    return v.get<std::string>();
}

int int_value(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        throw ParseError("field '" + path + "': expected an integer");
    }
    return v.get<int>();
}

double number_field(const Json& obj, const std::string& key, const std::string& path) {
    const Json& v = field(obj, key, path);
    if (!v.is_number()) {
        throw ParseError("field '" + path + "." + key + "': expected a number");
    }
    return v.get<double>();
}

const Json& array_field(const Json& obj, const std::string& key, const std::string& path) {
    const Json& v = field(obj, key, path);
    if (!v.is_array()) {
        throw ParseError("field '" + path + (path.empty() ? "" : ".") + key + "': expected an array");
    }
    return v;
}

VertexId vertex_ref(const FusionGraph& g, const std::string& id, const std::string& path) {
    auto v = g.find_vertex(id);
    if (!v) {
        throw ValidationError("field '" + path + "': unknown vertex '" + id + "'");
    }
    return *v;
}

EdgeId edge_ref(const FusionGraph& g, const std::string& id, const std::string& path) {
    auto e = g.find_edge(id);
    if (!e) {
        throw ValidationError("field '" + path + "': unknown edge '" + id + "'");
    }
    return *e;
}

}  // namespace

Json graph_to_json(const FusionGraph& g) {
    Json j;
    j["name"] = g.name();
    if (g.altitude()) {
        j["altitude"] = *g.altitude();
    } else {
        j["altitude"] = "infinity";
    }
    j["unit"] = g.vertex(g.unit()).id;
    if (g.truncation()) {
        j["truncation"] = *g.truncation();
    }
    Json vs = Json::array();
    for (const Vertex& v : g.vertices()) {
        Json x;
        x["id"] = v.id;
        if (v.triality) {
            x["triality"] = *v.triality;
        }
        if (v.weight) {
            x["weight"] = {v.weight->first, v.weight->second};
        }
        vs.push_back(x);
    }
    j["vertices"] = vs;
    Json es = Json::array();
    for (const Edge& e : g.edges()) {
        es.push_back({{"id", e.id}, {"from", g.vertex(e.from).id}, {"to", g.vertex(e.to).id}});
    }
    j["edges"] = es;
    if (!g.named_cells().empty()) {
        Json cs = Json::array();
        for (const NamedCell& c : g.named_cells()) {
            cs.push_back({{"label", c.label},
                          {"family", c.family},
                          {"edges", {g.edge(c.edges[0]).id, g.edge(c.edges[1]).id, g.edge(c.edges[2]).id}}});
        }
        j["cells"] = cs;
    }
    if (!g.gauge_last().empty()) {
        j["gauge_last"] = g.gauge_last();
    }
    return j;
}

FusionGraph graph_from_json(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("graph: expected a JSON object");
    }
    const std::string name = string_field(j, "name", "");
    std::optional<int> altitude;
    const Json& alt = field(j, "altitude", "");
    if (alt.is_string()) {
        if (alt.get<std::string>() != "infinity") {
            throw ParseError("field 'altitude': expected an integer or \"infinity\"");
        }
    } else {
        altitude = int_value(alt, "altitude");
    }
    const std::string unit = string_field(j, "unit", "");
    std::vector<Vertex> vertices;
    const Json& vs = array_field(j, "vertices", "");
    for (size_t i = 0; i < vs.size(); ++i) {
        const std::string path = "vertices[" + std::to_string(i) + "]";
        Vertex v;
        v.id = string_field(vs[i], "id", path);
        if (vs[i].contains("triality")) {
            v.triality = int_value(vs[i]["triality"], path + ".triality");
        }
        if (vs[i].contains("weight")) {
            const Json& w = vs[i]["weight"];
            if (!w.is_array() || w.size() != 2) {
                throw ParseError("field '" + path + ".weight': expected [lambda, mu]");
            }
            v.weight = std::make_pair(int_value(w[0], path + ".weight[0]"), int_value(w[1], path + ".weight[1]"));
        }
        vertices.push_back(std::move(v));
    }
    std::map<std::string, VertexId> index;
    for (size_t i = 0; i < vertices.size(); ++i) {
        index.emplace(vertices[i].id, static_cast<VertexId>(i));
    }
    auto lookup = [&](const std::string& id, const std::string& path) {
        auto it = index.find(id);
        if (it == index.end()) {
            throw ValidationError("field '" + path + "': unknown vertex '" + id + "'");
        }
        return it->second;
    };
    std::vector<Edge> edges;
    const Json& es = array_field(j, "edges", "");
    for (size_t i = 0; i < es.size(); ++i) {
        const std::string path = "edges[" + std::to_string(i) + "]";
        Edge e;
        e.id = string_field(es[i], "id", path);
        e.from = lookup(string_field(es[i], "from", path), path + ".from");
        e.to = lookup(string_field(es[i], "to", path), path + ".to");
        edges.push_back(std::move(e));
    }
    FusionGraph g(name, altitude, std::move(vertices), std::move(edges), lookup(unit, "unit"));
    if (j.contains("truncation")) {
        g.set_truncation(int_value(j["truncation"], "truncation"));
    }
    if (j.contains("cells")) {
        std::vector<NamedCell> cells;
        const Json& cs = array_field(j, "cells", "");
        for (size_t i = 0; i < cs.size(); ++i) {
            const std::string path = "cells[" + std::to_string(i) + "]";
            NamedCell c;
            c.label = string_field(cs[i], "label", path);
            c.family = cs[i].contains("family") ? string_field(cs[i], "family", path) : c.label;
            const Json& ce = array_field(cs[i], "edges", path);
            if (ce.size() != 3) {
                throw ParseError("field '" + path + ".edges': expected three edge ids");
            }
            for (int k = 0; k < 3; ++k) {
                if (!ce[k].is_string()) {
                    throw ParseError("field '" + path + ".edges': expected strings");
                }
                c.edges[k] = edge_ref(g, ce[k].get<std::string>(), path + ".edges");
            }
            cells.push_back(std::move(c));
        }
        g.set_named_cells(std::move(cells));
    }
    if (j.contains("gauge_last")) {
        const Json& gl = array_field(j, "gauge_last", "");
        std::vector<std::string> labels;
        for (const auto& x : gl) {
            if (!x.is_string()) {
                throw ParseError("field 'gauge_last': expected strings");
            }
            labels.push_back(x.get<std::string>());
        }
        g.set_gauge_last(std::move(labels));
    }
    if (g.altitude() && !g.truncation()) {
        try {
            pf_dimensions(g);
        } catch (const Error& e) {
            throw ValidationError(std::string("graph '") + g.name() + "' fails the spectral check: " + e.what());
        }
    }
    return g;
}

std::string serialize_graph(const FusionGraph& graph) { return graph_to_json(graph).dump(2) + "\n"; }

FusionGraph parse_graph(const std::string& text) { return graph_from_json(parse_text(text, "graph")); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write file '" + path + "'");
    }
    out << text;
}

FusionGraph load_graph(const std::string& selector) {
    if (is_builtin_name(selector)) {
        return builtin_graph(selector);
    }
    std::ifstream probe(selector);
    if (!probe) {
        throw UnknownGraph("'" + selector + "' is neither a builtin graph nor a readable file");
    }
    return parse_graph(read_file(selector));
}

Json cells_to_json(const CellSystem& cells, bool inline_graph) {
    const FusionGraph& g = cells.graph();
    Json j;
    if (inline_graph || !is_builtin_name(g.name())) {
        j["graph"] = graph_to_json(g);
    } else {
        j["graph"] = g.name();
    }
    Json arr = Json::array();
    const auto& tris = cells.layout().triangles();
    for (int t = 0; t < cells.size(); ++t) {
        if (!cells.has(t)) {
            continue;
        }
        const OrientedTriangle& tri = tris[t];
        const QComplex v = cells.value(t);
        arr.push_back({{"a", g.vertex(tri.v[0]).id},
                       {"b", g.vertex(tri.v[1]).id},
                       {"c", g.vertex(tri.v[2]).id},
                       {"alpha", g.edge(tri.e[0]).id},
                       {"beta", g.edge(tri.e[1]).id},
                       {"gamma", g.edge(tri.e[2]).id},
                       {"re", v.real()},
                       {"im", v.imag()}});
    }
    j["cells"] = arr;
    return j;
}

std::string serialize_cells(const CellSystem& cells, bool inline_graph) {
    return cells_to_json(cells, inline_graph).dump(2) + "\n";
}

CellSystem parse_cells(const std::string& text, const FusionGraph* expected) {
    const Json j = parse_text(text, "cells");
    if (!j.is_object()) {
        throw ParseError("cells: expected a JSON object");
    }
    const Json& gj = field(j, "graph", "");
    FusionGraph g;
    if (gj.is_string()) {
        const std::string name = gj.get<std::string>();
        if (expected) {
            if (expected->name() != name) {
                throw ValidationError("cells refer to graph '" + name + "' but '" + expected->name() +
                                      "' was requested");
            }
            g = *expected;
        } else {
            g = builtin_graph(name);
        }
    } else {
        g = graph_from_json(gj);
        if (expected && !(g == *expected)) {
            throw ValidationError("inline graph in the cell file differs from the requested graph");
        }
    }
    CellSystem cells(make_layout(g));
    const Json& arr = array_field(j, "cells", "");
    std::set<int> seen;
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "cells[" + std::to_string(i) + "]";
        const Json& c = arr[i];
        const VertexId a = vertex_ref(g, string_field(c, "a", path), path + ".a");
        const VertexId b = vertex_ref(g, string_field(c, "b", path), path + ".b");
        const VertexId cc = vertex_ref(g, string_field(c, "c", path), path + ".c");
        const EdgeId alpha = edge_ref(g, string_field(c, "alpha", path), path + ".alpha");
        const EdgeId beta = edge_ref(g, string_field(c, "beta", path), path + ".beta");
        const EdgeId gamma = edge_ref(g, string_field(c, "gamma", path), path + ".gamma");
        const auto& ea = g.edge(alpha);
        const auto& eb = g.edge(beta);
        const auto& ec = g.edge(gamma);
        if (ea.from != a || ea.to != b || eb.from != b || eb.to != cc || ec.from != cc || ec.to != a) {
            throw ValidationError("field '" + path + "': edges do not form the triangle a->b->c->a");
        }
        const int t = cells.layout().find_triangle(alpha, beta, gamma);
        if (t < 0) {
            throw ValidationError("field '" + path + "': not an oriented triangle of the graph");
        }
        if (!seen.insert(t).second) {
            throw ValidationError("field '" + path + "': triangle given twice (rotations share one cell)");
        }
        cells.set(t, QComplex(number_field(c, "re", path), c.contains("im") ? number_field(c, "im", path) : 0.0));
    }
    return cells;
}

CellSystem load_cells(const std::string& path, const FusionGraph* expected) {
    return parse_cells(read_file(path), expected);
}

Json complex_json(QComplex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json invariants_json(const InvariantReport& report) {
    Json j;
    if (!report.moduli.empty()) {
        j["moduli"] = report.moduli;
    }
    for (const auto& [k, v] : report.values) {
        j[k] = complex_json(v);
    }
    return j;
}

Json solve_report_json(const SolveReport& report) {
    Json j;
    j["status"] = status_name(report.status);
    j["max_residual"] = report.max_residual;
    j["best_residual"] = report.best_residual;
    j["restarts"] = report.restarts;
    j["converged"] = report.converged;
    j["seed"] = report.seed;
    j["message"] = report.message;
    j["invariants"] = report.invariants ? invariants_json(*report.invariants) : Json::object();
    if (report.cells) {
        j["graph"] = cells_to_json(*report.cells)["graph"];
        j["cells"] = cells_to_json(*report.cells)["cells"];
    } else {
        j["cells"] = Json::array();
    }
    if (!report.alternatives.empty()) {
        Json alts = Json::array();
        for (const CellSystem& c : report.alternatives) {
            Json a;
            try {
                a["invariants"] = invariants_json(gauge_invariants(c));
            } catch (const UnsupportedGraph&) {
            }
            a["cells"] = cells_to_json(c)["cells"];
            alts.push_back(a);
        }
        j["alternatives"] = alts;
    }
    return j;
}

Json verify_report_json(const VerifyReport& report, const CellLayout& layout) {
    Json j;
    j["status"] = report.pass ? "PASS" : "FAIL";
    j["tolerance"] = report.tolerance;
    j["max_residual"] = report.max_residual;
    j["max_type1"] = report.max_type1;
    j["max_type2"] = report.max_type2;
    if (report.worst) {
        j["worst_frame"] = describe_frame(layout, *report.worst);
    }
    Json frames = Json::array();
    for (const auto* list : {&report.type1, &report.type2}) {
        for (const FrameResidual& f : *list) {
            frames.push_back({{"frame", describe_frame(layout, f)},
                              {"residual", complex_json(f.residual)},
                              {"abs", std::abs(f.residual)}});
        }
    }
    j["frames"] = frames;
    return j;
}

Json rhombus_json(const RhombusMatrix& r, const FusionGraph& g) {
    Json j;
    j["a"] = g.vertex(r.a).id;
    j["c"] = g.vertex(r.c).id;
    Json idx = Json::array();
    for (const PathStep& s : r.index) {
        idx.push_back({{"b", g.vertex(s.b).id}, {"alpha", g.edge(s.alpha).id}, {"beta", g.edge(s.beta).id}});
    }
    j["index"] = idx;
    Json m = Json::array();
    for (int i = 0; i < r.matrix.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < r.matrix.cols(); ++k) {
            row.push_back(complex_json(r.matrix(i, k)));
        }
        m.push_back(row);
    }
    j["matrix"] = m;
    return j;
}

Json hecke_report_json(const HeckeReport& report, const FusionGraph& g) {
    Json j;
    j["max_violation"] = report.max_violation();
    j["max_rhombus"] = report.max_rhombus;
    j["max_path"] = report.max_path;
    if (report.worst_rhombus) {
        j["worst_rhombus"] = {{"a", g.vertex(report.worst_rhombus->a).id},
                              {"c", g.vertex(report.worst_rhombus->c).id},
                              {"violation", report.worst_rhombus->worst()}};
    }
    Json rh = Json::array();
    for (const RhombusCheck& c : report.rhombi) {
        rh.push_back({{"a", g.vertex(c.a).id},
                      {"c", g.vertex(c.c).id},
                      {"hermitian", c.hermitian},
                      {"square", c.idempotent},
                      {"trace", c.trace}});
    }
    j["rhombi"] = rh;
    Json ps = Json::array();
    for (const PathCheck& p : report.paths) {
        ps.push_back({{"p", p.length},
                      {"square", p.square},
                      {"far_commutation", p.far_commutation},
                      {"cubic", p.cubic},
                      {"quartic", p.quartic},
                      {"f_square", p.f_square}});
    }
    j["paths"] = ps;
    return j;
}

Json z9_certificate_json(const Z9Certificate& cert) {
    Json j;
    j["status"] = cert.infeasible ? "INFEASIBLE" : "INCONCLUSIVE";
    j["digits"] = cert.digits;
    j["b_plus"] = cert.b_plus;
    j["b_minus"] = cert.b_minus;
    j["c_plus"] = cert.c_plus;
    j["c_minus"] = cert.c_minus;
    Json br = Json::array();
    for (const Z9Branch& b : cert.branches) {
        br.push_back({{"signs", b.signs}, {"a", b.a}, {"violation", b.violation}});
    }
    j["branches"] = br;
    j["min_violation"] = cert.min_violation;
    return j;
}

Json family_json(const WeightFamily& family) {
    Json j;
    j["level"] = family.level;
    Json ms = Json::array();
    for (size_t i = 0; i < family.weights.size(); ++i) {
        Json rows = Json::array();
        const IntMatrix& m = family.matrices[i];
        for (int r = 0; r < m.rows(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < m.cols(); ++c) {
                row.push_back(m(r, c));
            }
            rows.push_back(row);
        }
        ms.push_back({{"weight", {family.weights[i].first, family.weights[i].second}}, {"matrix", rows}});
    }
    j["matrices"] = ms;
    return j;
}

}  // namespace qcells
