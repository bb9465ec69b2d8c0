#include "qcells/catalog.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <regex>
#include <set>

#include "qcells/errors.hpp"

namespace qcells {

namespace {

struct EdgeSpec {
    std::string from, to, name;
};

/// Sorts edges by (source, target, given name) and numbers the unnamed ones e0, e1, ...
FusionGraph assemble(const std::string& name, std::optional<int> altitude, std::vector<Vertex> vertices,
                     std::vector<EdgeSpec> specs, const std::string& unit) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < vertices.size(); ++i) {
        index[vertices[i].id] = static_cast<int>(i);
    }
    std::stable_sort(specs.begin(), specs.end(), [&](const EdgeSpec& x, const EdgeSpec& y) {
        return std::make_tuple(index.at(x.from), index.at(x.to), x.name) <
               std::make_tuple(index.at(y.from), index.at(y.to), y.name);
    });
    std::vector<Edge> edges;
    int counter = 0;
    for (const auto& s : specs) {
        std::string id = s.name.empty() ? "e" + std::to_string(counter++) : s.name;
        edges.push_back({id, index.at(s.from), index.at(s.to)});
    }
    return FusionGraph(name, altitude, std::move(vertices), std::move(edges), index.at(unit));
}

std::array<EdgeId, 3> single_edges(const FusionGraph& g, const std::string& a, const std::string& b,
                                   const std::string& c) {
    VertexId va = g.vertex_index(a), vb = g.vertex_index(b), vc = g.vertex_index(c);
    const auto& ab = g.edges_between(va, vb);
    const auto& bc = g.edges_between(vb, vc);
    const auto& ca = g.edges_between(vc, va);
    if (ab.size() != 1 || bc.size() != 1 || ca.size() != 1) {
        throw ValidationError("catalog triangle " + a + "," + b + "," + c + " is not single-edged");
    }
    return {ab[0], bc[0], ca[0]};
}

int triality_of(const std::string& id) {
    auto p = id.find('^');
    return p == std::string::npos ? 0 : id[p + 1] - '0';
}

FusionGraph alcove_graph(const std::string& name, std::optional<int> altitude, int level) {
    std::vector<Vertex> vertices;
    std::set<std::pair<int, int>> present;
    for (auto [l, m] : alcove_weights(level)) {
        vertices.push_back({weight_id(l, m), ((l - m) % 3 + 3) % 3, std::make_pair(l, m)});
        present.insert({l, m});
    }
    std::vector<EdgeSpec> specs;
    for (auto [l, m] : alcove_weights(level)) {
        const std::pair<int, int> targets[3] = {{l + 1, m}, {l - 1, m + 1}, {l, m - 1}};
        for (auto t : targets) {
            if (present.count(t)) {
                specs.push_back({weight_id(l, m), weight_id(t.first, t.second), ""});
            }
        }
    }
    return assemble(name, altitude, std::move(vertices), std::move(specs), weight_id(0, 0));
}

}  // namespace

std::vector<std::pair<int, int>> alcove_weights(int level) {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s <= level; ++s) {
        for (int l = 0; l <= s; ++l) {
            out.emplace_back(l, s - l);
        }
    }
    return out;
}

std::string weight_id(int lambda, int mu) {
    return "(" + std::to_string(lambda) + "," + std::to_string(mu) + ")";
}

FusionGraph a_k_graph(int k) {
    if (k < 1) {
        throw UnknownGraph("A_k requires k >= 1");
    }
    return alcove_graph("A" + std::to_string(k), k + 3, k);
}

FusionGraph a_infinity_graph(int truncation_level) {
    if (truncation_level < 2) {
        throw UnknownGraph("Ainf requires a truncation level >= 2");
    }
    FusionGraph g = alcove_graph("Ainf_" + std::to_string(truncation_level), std::nullopt, truncation_level);
    g.set_truncation(truncation_level);
    return g;
}

FusionGraph e5_graph() {
    std::vector<Vertex> vs;
    for (int i = 0; i < 6; ++i) {
        vs.push_back({"1_" + std::to_string(i), i % 3, std::nullopt});
    }
    for (int i = 0; i < 6; ++i) {
        vs.push_back({"2_" + std::to_string(i), i % 3, std::nullopt});
    }
    auto one = [](int i) { return "1_" + std::to_string(((i % 6) + 6) % 6); };
    auto two = [](int i) { return "2_" + std::to_string(((i % 6) + 6) % 6); };
    std::vector<EdgeSpec> specs;
    for (int i = 0; i < 6; ++i) {
        specs.push_back({one(i), two(i + 1), ""});
        specs.push_back({two(i), one(i - 2), ""});
        specs.push_back({two(i), two(i + 1), ""});
        specs.push_back({two(i), two(i + 4), ""});
    }
    FusionGraph g = assemble("E5", 8, std::move(vs), std::move(specs), "1_0");
    std::vector<NamedCell> cells;
    for (int i = 0; i < 6; ++i) {
        cells.push_back({"tau_" + std::to_string(i), "tau", single_edges(g, one(i), two(i + 1), two(i + 2))});
    }
    for (int i = 0; i < 6; ++i) {
        cells.push_back({"mu_" + std::to_string(i), "mu", single_edges(g, two(i), two(i + 1), two(i + 2))});
    }
    cells.push_back({"nu_0", "nu", single_edges(g, two(0), two(4), two(2))});
    cells.push_back({"nu_1", "nu", single_edges(g, two(1), two(5), two(3))});
    g.set_named_cells(std::move(cells));
    g.set_gauge_last({"nu_1"});
    return g;
}

FusionGraph e9_graph() {
    std::vector<Vertex> vs;
    for (int n = 0; n < 3; ++n) {
        for (int j = 0; j < 3; ++j) {
            vs.push_back({std::to_string(n) + "^" + std::to_string(j), n, std::nullopt});
        }
    }
    for (int i = 0; i < 3; ++i) {
        vs.push_back({"3_" + std::to_string(i), i, std::nullopt});
    }
    auto v = [](int n, int j) { return std::to_string(n) + "^" + std::to_string(j); };
    std::vector<EdgeSpec> specs;
    for (int j = 0; j < 3; ++j) {
        specs.push_back({v(0, j), v(1, j), ""});
        specs.push_back({v(1, j), v(2, j), ""});
        specs.push_back({v(2, j), v(0, j), ""});
        specs.push_back({v(2, j), "3_0", ""});
        specs.push_back({"3_0", v(1, j), ""});
        specs.push_back({"3_1", v(2, j), ""});
        specs.push_back({v(1, j), "3_2", ""});
    }
    specs.push_back({"3_0", "3_1", "alpha1"});
    specs.push_back({"3_0", "3_1", "alpha2"});
    specs.push_back({"3_2", "3_0", "beta1"});
    specs.push_back({"3_2", "3_0", "beta2"});
    specs.push_back({"3_1", "3_2", ""});
    FusionGraph g = assemble("E9", 12, std::move(vs), std::move(specs), "0^0");
    auto only = [&](const std::string& a, const std::string& b) {
        const auto& es = g.edges_between(g.vertex_index(a), g.vertex_index(b));
        return es.at(0);
    };
    std::vector<NamedCell> cells;
    for (int j = 0; j < 3; ++j) {
        const std::string s = std::to_string(j);
        cells.push_back({"a^" + s, "a", single_edges(g, v(1, j), v(2, j), v(0, j))});
        cells.push_back({"b^" + s, "b", single_edges(g, v(1, j), v(2, j), "3_0")});
        for (int k = 1; k <= 2; ++k) {
            const std::string ks = std::to_string(k);
            cells.push_back({"c_" + ks + "^" + s, "c",
                             {g.edge_index("alpha" + ks), only("3_1", v(2, j)), only(v(2, j), "3_0")}});
            cells.push_back({"d_" + ks + "^" + s, "d",
                             {g.edge_index("beta" + ks), only("3_0", v(1, j)), only(v(1, j), "3_2")}});
        }
    }
    for (int k = 1; k <= 2; ++k) {
        for (int l = 1; l <= 2; ++l) {
            cells.push_back({"e_" + std::to_string(k) + std::to_string(l), "e",
                             {only("3_1", "3_2"), g.edge_index("beta" + std::to_string(l)),
                              g.edge_index("alpha" + std::to_string(k))}});
        }
    }
    g.set_named_cells(std::move(cells));
    return g;
}

FusionGraph e21_graph() {
    std::vector<std::string> ids;
    for (int k = 1; k <= 2; ++k) {
        const std::string s = std::to_string(k);
        ids.insert(ids.end(), {"1_" + s, "2_" + s + "^1", "2_" + s + "^2", "3_" + s, "3_" + s + "^1", "3_" + s + "^2"});
    }
    for (const char* slice : {"4_", "5_"}) {
        for (int k = 1; k <= 2; ++k) {
            ids.push_back(slice + std::to_string(k) + "^1");
            ids.push_back(slice + std::to_string(k) + "^2");
        }
    }
    ids.insert(ids.end(), {"6_1", "6_2", "7_1", "7_2"});
    std::vector<Vertex> vs;
    for (const auto& id : ids) {
        vs.push_back({id, triality_of(id), std::nullopt});
    }

    using Tri = std::array<std::string, 3>;
    std::vector<Tri> tris;
    for (int k = 1; k <= 2; ++k) {
        const std::string s = std::to_string(k);
        const std::string o = std::to_string(3 - k);
        const std::vector<Tri> wing = {
            {"1_" + s, "2_" + s + "^1", "2_" + s + "^2"}, {"3_" + s, "2_" + s + "^1", "2_" + s + "^2"},
            {"3_" + s, "2_" + s + "^1", "3_" + s + "^2"}, {"3_" + s, "3_" + s + "^1", "2_" + s + "^2"},
            {"3_" + s, "3_" + s + "^1", "4_" + s + "^2"}, {"3_" + s, "4_" + s + "^1", "3_" + s + "^2"},
            {"3_" + s, "4_" + s + "^1", "4_" + s + "^2"}, {"6_" + o, "3_" + s + "^1", "4_" + s + "^2"},
            {"6_" + s, "4_" + s + "^1", "3_" + s + "^2"}};
        tris.insert(tris.end(), wing.begin(), wing.end());
    }
    using Pairs = std::array<std::array<std::string, 2>, 3>;
    const Pairs octahedra[3] = {
        {{{"6_1", "7_1"}, {"4_1^1", "5_2^1"}, {"4_2^2", "5_1^2"}}},
        {{{"6_2", "7_2"}, {"4_2^1", "5_1^1"}, {"4_1^2", "5_2^2"}}},
        {{{"7_1", "7_2"}, {"4_1^1", "4_2^1"}, {"4_1^2", "4_2^2"}}},
    };
    std::set<Tri> seen;
    for (const auto& oct : octahedra) {
        for (const auto& x : oct[0]) {
            for (const auto& y : oct[1]) {
                for (const auto& z : oct[2]) {
                    Tri t{x, y, z};
                    if (seen.insert(t).second) {
                        tris.push_back(t);
                    }
                }
            }
        }
    }
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const auto& t : tris) {
        edge_set.insert({t[0], t[1]});
        edge_set.insert({t[1], t[2]});
        edge_set.insert({t[2], t[0]});
    }
    std::vector<EdgeSpec> specs;
    for (const auto& [a, b] : edge_set) {
        specs.push_back({a, b, ""});
    }
    FusionGraph g = assemble("E21", 24, std::move(vs), std::move(specs), "1_1");

    const std::map<std::string, std::string> special = {
        {"7_2,4_2^1,4_1^2", "sigma2'"},
        {"7_1,4_1^1,4_2^2", "sigma2''"},
        {"7_2,4_1^1,4_2^2", "rho'"},
        {"7_1,4_2^1,4_1^2", "rho''"},
    };
    const std::map<std::string, std::string> by_slices = {
        {"122", "alpha1"}, {"233", "alpha2"}, {"344", "alpha3"}, {"223", "gamma2"}, {"334", "gamma3"},
        {"346", "beta"},   {"556", "nu1"},    {"456", "mu1"},    {"446", "sigma1"}, {"557", "nu2"},
        {"457", "mu2"}};
    std::vector<NamedCell> cells;
    for (const auto& t : tris) {
        const std::string key = t[0] + "," + t[1] + "," + t[2];
        std::string slices{t[0][0], t[1][0], t[2][0]};
        std::sort(slices.begin(), slices.end());
        std::string family, label;
        if (auto it = special.find(key); it != special.end()) {
            label = it->second;
            family = label.substr(0, label.find('\''));
        } else if (auto jt = by_slices.find(slices); jt != by_slices.end()) {
            family = jt->second;
        } else if (slices == "447") {
            family = t[1][2] == t[2][2] ? "lambda" : "rho";
        } else {
            throw ValidationError("unclassified E21 triangle " + key);
        }
        if (label.empty()) {
            label = family + "(" + key + ")";
        }
        cells.push_back({label, family, single_edges(g, t[0], t[1], t[2])});
    }
    g.set_named_cells(std::move(cells));
    g.set_gauge_last({"sigma2'", "sigma2''", "rho'", "rho''"});
    return g;
}

FusionGraph z9_graph() {
    std::vector<Vertex> vs;
    for (int i = 0; i < 3; ++i) {
        vs.push_back({"0_" + std::to_string(i), i, std::nullopt});
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            vs.push_back({"3_" + std::to_string(i) + "^" + std::to_string(j), i, std::nullopt});
        }
    }
    auto zero = [](int i) { return "0_" + std::to_string(i % 3); };
    auto three = [](int i, int j) { return "3_" + std::to_string(i % 3) + "^" + std::to_string(j); };
    std::vector<EdgeSpec> specs;
    for (int i = 0; i < 3; ++i) {
        specs.push_back({zero(i), zero(i + 1), ""});
        for (int j = 1; j <= 3; ++j) {
            specs.push_back({zero(i), three(i + 1, j), ""});
            specs.push_back({three(i, j), zero(i + 1), ""});
            specs.push_back({three(i, j), three(i + 1, j), ""});
        }
    }
    FusionGraph g = assemble("Z9", 12, std::move(vs), std::move(specs), "0_1");
    std::vector<NamedCell> cells;
    cells.push_back({"a", "a", single_edges(g, "0_0", "0_1", "0_2")});
    for (int j = 1; j <= 3; ++j) {
        const std::string s = std::to_string(j);
        cells.push_back({"b_" + s, "b", single_edges(g, "0_1", three(2, j), "0_0")});
        cells.push_back({"c_" + s, "c", single_edges(g, "0_1", three(2, j), three(0, j))});
    }
    g.set_named_cells(std::move(cells));
    return g;
}

bool is_builtin_name(const std::string& name) {
    static const std::regex ak(R"(A_?([0-9]+))");
    static const std::regex ainf(R"(A_?inf(?:_([0-9]+))?)");
    return name == "E5" || name == "E9" || name == "E21" || name == "Z9" || std::regex_match(name, ak) ||
           std::regex_match(name, ainf);
}

FusionGraph builtin_graph(const std::string& name) {
    static const std::regex ak(R"(A_?([0-9]+))");
    static const std::regex ainf(R"(A_?inf(?:_([0-9]+))?)");
    std::smatch m;
    if (name == "E5") {
        return e5_graph();
    }
    if (name == "E9") {
        return e9_graph();
    }
    if (name == "E21") {
        return e21_graph();
    }
    if (name == "Z9") {
        return z9_graph();
    }
    if (std::regex_match(name, m, ak)) {
        const std::string digits = m[1].str();
        if (digits.size() > 3) {
            throw UnknownGraph("level too large: " + name);
        }
        return a_k_graph(std::stoi(digits));
    }
    if (std::regex_match(name, m, ainf)) {
        int level = 5;
        if (m[1].matched) {
            const std::string digits = m[1].str();
            if (digits.size() > 3) {
                throw UnknownGraph("truncation too large: " + name);
            }
            level = std::stoi(digits);
        }
        return a_infinity_graph(level);
    }
    throw UnknownGraph("unknown graph '" + name + "'");
}

std::vector<std::string> catalog_listing() {
    return {"A1", "A2", "A3", "A4", "A5", "A6", "Ainf_5", "E5", "E9", "E21", "Z9"};
}

}  // namespace qcells
