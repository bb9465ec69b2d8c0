#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcells/numerics.hpp"

namespace qcells {

using VertexId = int;
using EdgeId = int;

struct Vertex {
    std::string id;
    std::optional<int> triality;
    /// Highest weight (lambda, mu) for alcove graphs; enables closed-form dimensions.
    std::optional<std::pair<int, int>> weight;
};

struct Edge {
    std::string id;
    VertexId from = 0;
    VertexId to = 0;
};

/// A named triangle of a catalog graph, given by its three edges a->b, b->c, c->a.
struct NamedCell {
    std::string label;
    std::string family;
    std::array<EdgeId, 3> edges{};
};

class FusionGraph {
public:
    FusionGraph() = default;
    FusionGraph(std::string name, std::optional<int> altitude, std::vector<Vertex> vertices,
                std::vector<Edge> edges, VertexId unit);

    const std::string& name() const { return name_; }
    const std::optional<int>& altitude() const { return altitude_; }
    RootOfUnityContext context(int precision = 15, double tolerance = 1e-9) const;

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    VertexId unit() const { return unit_; }

    std::optional<VertexId> find_vertex(const std::string& id) const;
    std::optional<EdgeId> find_edge(const std::string& id) const;
    VertexId vertex_index(const std::string& id) const;
    EdgeId edge_index(const std::string& id) const;

    Eigen::MatrixXi adjacency() const;
    int multiplicity(VertexId a, VertexId b) const;
    /// Edges a->b in increasing edge index.
    const std::vector<EdgeId>& edges_between(VertexId a, VertexId b) const;
    const std::vector<EdgeId>& out_edges(VertexId a) const { return out_.at(a); }
    const std::vector<EdgeId>& in_edges(VertexId a) const { return in_.at(a); }
    /// Position of e among edges_between(from, to).
    int local_index(EdgeId e) const { return local_.at(e); }
    bool single_edged() const;

    /// Truncated graphs (finite windows of an infinite graph) only emit frames
    /// whose vertices all have level below the truncation level.
    const std::optional<int>& truncation() const { return truncation_; }
    void set_truncation(std::optional<int> level);
    bool frame_vertex(VertexId v) const;
    bool has_weights() const;

    const std::vector<NamedCell>& named_cells() const { return named_cells_; }
    void set_named_cells(std::vector<NamedCell> cells);
    std::optional<NamedCell> named_cell(const std::string& label) const;

    /// Labels of named cells that gauge canonicalization visits last.
    const std::vector<std::string>& gauge_last() const { return gauge_last_; }
    void set_gauge_last(std::vector<std::string> labels);

    bool operator==(const FusionGraph& other) const;

private:
    void build_index();

    std::string name_;
    std::optional<int> altitude_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    VertexId unit_ = 0;
    std::optional<int> truncation_;
    std::vector<NamedCell> named_cells_;
    std::vector<std::string> gauge_last_;

    std::unordered_map<std::string, VertexId> vertex_lookup_;
    std::unordered_map<std::string, EdgeId> edge_lookup_;
    std::vector<std::vector<EdgeId>> out_, in_;
    std::unordered_map<long long, std::vector<EdgeId>> between_;
    std::vector<int> local_;
};

using DimensionVector = std::vector<QReal>;

/// Positive PF eigenvector of G normalized at the unit vertex.
DimensionVector pf_dimensions(const FusionGraph& graph, double tolerance = 1e-9);
/// PF eigenvalue of G.
QReal pf_eigenvalue(const FusionGraph& graph);
/// Closed-form weight dimensions when every vertex carries a weight, else PF.
DimensionVector dimensions(const FusionGraph& graph, double tolerance = 1e-9);
bool strongly_connected(const FusionGraph& graph);

struct OrientedTriangle {
    std::array<VertexId, 3> v{};
    std::array<EdgeId, 3> e{};
    auto operator<=>(const OrientedTriangle&) const = default;
};

OrientedTriangle rotate(const OrientedTriangle& t, int r);
OrientedTriangle canonicalize(const OrientedTriangle& t);
/// Triangle with the given edges a->b, b->c, c->a; throws ValidationError if they do not close.
OrientedTriangle triangle_from_edges(const FusionGraph& graph, const std::array<EdgeId, 3>& edges);

std::vector<OrientedTriangle> enumerate_triangles(const FusionGraph& graph);

struct TypeIFrame {
    VertexId a = 0, b = 0;
    EdgeId alpha = 0, alpha2 = 0;
    bool diagonal() const { return alpha == alpha2; }
};

std::vector<TypeIFrame> enumerate_type1_frames(const FusionGraph& graph);
/// Number of ordered vertex pairs (a, b) carrying at least one Type I frame.
int type1_vertex_pair_count(const FusionGraph& graph);

enum class Degeneracy { Doubly, Singly, None };

struct Apex {
    VertexId c = 0;
    EdgeId beta1 = 0, beta2 = 0, beta3 = 0, beta4 = 0;
};

struct TypeIIFrame {
    std::array<VertexId, 4> a{};
    std::array<EdgeId, 4> alpha{};
    Degeneracy degeneracy = Degeneracy::None;
    std::vector<Apex> apex;
};

std::vector<TypeIIFrame> enumerate_type2_frames(const FusionGraph& graph, bool dedup);

FusionGraph conjugate_graph(const FusionGraph& graph);

std::string degeneracy_name(Degeneracy d);

}  // namespace qcells
