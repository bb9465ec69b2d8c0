#include "qcells/fusion_graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "qcells/errors.hpp"

namespace qcells {

namespace {

long long pair_key(VertexId a, VertexId b) { return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b); }

const std::vector<EdgeId>& empty_edges() {
    static const std::vector<EdgeId> empty;
    return empty;
}

}  // namespace

FusionGraph::FusionGraph(std::string name, std::optional<int> altitude, std::vector<Vertex> vertices,
                         std::vector<Edge> edges, VertexId unit)
    : name_(std::move(name)), altitude_(altitude), vertices_(std::move(vertices)), edges_(std::move(edges)),
      unit_(unit) {
    if (altitude_ && *altitude_ < 4) {
        throw ValidationError("altitude must be at least 4");
    }
    if (vertices_.empty()) {
        throw ValidationError("graph has no vertices");
    }
    if (unit_ < 0 || unit_ >= vertex_count()) {
        throw ValidationError("unit vertex out of range");
    }
    build_index();
}

void FusionGraph::build_index() {
    vertex_lookup_.clear();
    edge_lookup_.clear();
    between_.clear();
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    local_.assign(edges_.size(), 0);
    for (VertexId v = 0; v < vertex_count(); ++v) {
        const auto& vx = vertices_[v];
        if (vx.id.empty()) {
            throw ValidationError("vertex with empty id");
        }
        if (!vertex_lookup_.emplace(vx.id, v).second) {
            throw ValidationError("duplicate vertex id '" + vx.id + "'");
        }
        if (vx.triality && (*vx.triality < 0 || *vx.triality > 2)) {
            throw ValidationError("triality of '" + vx.id + "' must be 0, 1 or 2");
        }
    }
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const auto& ed = edges_[e];
        if (ed.id.empty()) {
            throw ValidationError("edge with empty id");
        }
        if (!edge_lookup_.emplace(ed.id, e).second) {
            throw ValidationError("duplicate edge id '" + ed.id + "'");
        }
        if (ed.from < 0 || ed.from >= vertex_count() || ed.to < 0 || ed.to >= vertex_count()) {
            throw ValidationError("edge '" + ed.id + "' has an endpoint outside the vertex set");
        }
        const auto& ta = vertices_[ed.from].triality;
        const auto& tb = vertices_[ed.to].triality;
        if (ta && tb && *tb != (*ta + 1) % 3) {
            throw ValidationError("edge '" + ed.id + "' violates triality: " + vertices_[ed.from].id + " -> " +
                                  vertices_[ed.to].id);
        }
        out_[ed.from].push_back(e);
        in_[ed.to].push_back(e);
        auto& bucket = between_[pair_key(ed.from, ed.to)];
        local_[e] = static_cast<int>(bucket.size());
        bucket.push_back(e);
    }
}

RootOfUnityContext FusionGraph::context(int precision, double tolerance) const {
    if (altitude_) {
        return RootOfUnityContext::at_altitude(*altitude_, precision, tolerance);
    }
    return RootOfUnityContext::classical(precision, tolerance);
}

std::optional<VertexId> FusionGraph::find_vertex(const std::string& id) const {
    auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<EdgeId> FusionGraph::find_edge(const std::string& id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

VertexId FusionGraph::vertex_index(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) {
        throw ValidationError("unknown vertex '" + id + "' in graph " + name_);
    }
    return *v;
}

EdgeId FusionGraph::edge_index(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) {
        throw ValidationError("unknown edge '" + id + "' in graph " + name_);
    }
    return *e;
}

Eigen::MatrixXi FusionGraph::adjacency() const {
    Eigen::MatrixXi g = Eigen::MatrixXi::Zero(vertex_count(), vertex_count());
    for (const auto& e : edges_) {
        g(e.from, e.to) += 1;
    }
    return g;
}

int FusionGraph::multiplicity(VertexId a, VertexId b) const {
    return static_cast<int>(edges_between(a, b).size());
}

const std::vector<EdgeId>& FusionGraph::edges_between(VertexId a, VertexId b) const {
    auto it = between_.find(pair_key(a, b));
    if (it == between_.end()) {
        return empty_edges();
    }
    return it->second;
}

bool FusionGraph::single_edged() const {
    return std::all_of(between_.begin(), between_.end(), [](const auto& kv) { return kv.second.size() <= 1; });
}

void FusionGraph::set_truncation(std::optional<int> level) {
    if (level) {
        if (!has_weights()) {
            throw ValidationError("truncation requires every vertex to carry a weight");
        }
        if (*level < 1) {
            throw ValidationError("truncation level must be positive");
        }
    }
    truncation_ = level;
}

bool FusionGraph::frame_vertex(VertexId v) const {
    if (!truncation_) {
        return true;
    }
    const auto& w = *vertices_.at(v).weight;
    return w.first + w.second <= *truncation_ - 1;
}

bool FusionGraph::has_weights() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.weight.has_value(); });
}

void FusionGraph::set_named_cells(std::vector<NamedCell> cells) {
    std::set<std::string> seen;
    for (const auto& c : cells) {
        if (!seen.insert(c.label).second) {
            throw ValidationError("duplicate cell label '" + c.label + "'");
        }
        triangle_from_edges(*this, c.edges);
    }
    named_cells_ = std::move(cells);
}

std::optional<NamedCell> FusionGraph::named_cell(const std::string& label) const {
    for (const auto& c : named_cells_) {
        if (c.label == label) {
            return c;
        }
    }
    return std::nullopt;
}

void FusionGraph::set_gauge_last(std::vector<std::string> labels) {
    for (const auto& l : labels) {
        if (!named_cell(l)) {
            throw ValidationError("gauge_last refers to unknown cell label '" + l + "'");
        }
    }
    gauge_last_ = std::move(labels);
}

bool FusionGraph::operator==(const FusionGraph& o) const {
    if (name_ != o.name_ || altitude_ != o.altitude_ || unit_ != o.unit_ || truncation_ != o.truncation_) {
        return false;
    }
    if (vertices_.size() != o.vertices_.size() || edges_.size() != o.edges_.size()) {
        return false;
    }
    for (size_t i = 0; i < vertices_.size(); ++i) {
        const auto& a = vertices_[i];
        const auto& b = o.vertices_[i];
        if (a.id != b.id || a.triality != b.triality || a.weight != b.weight) {
            return false;
        }
    }
    for (size_t i = 0; i < edges_.size(); ++i) {
        const auto& a = edges_[i];
        const auto& b = o.edges_[i];
        if (a.id != b.id || a.from != b.from || a.to != b.to) {
            return false;
        }
    }
    if (named_cells_.size() != o.named_cells_.size()) {
        return false;
    }
    for (size_t i = 0; i < named_cells_.size(); ++i) {
        const auto& a = named_cells_[i];
        const auto& b = o.named_cells_[i];
        if (a.label != b.label || a.family != b.family || a.edges != b.edges) {
            return false;
        }
    }
    return gauge_last_ == o.gauge_last_;
}

bool strongly_connected(const FusionGraph& graph) {
    const int n = graph.vertex_count();
    auto reach = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::queue<VertexId> q;
        q.push(0);
        seen[0] = 1;
        int count = 1;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            const auto& es = forward ? graph.out_edges(v) : graph.in_edges(v);
            for (EdgeId e : es) {
                VertexId w = forward ? graph.edge(e).to : graph.edge(e).from;
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    q.push(w);
                }
            }
        }
        return count == n;
    };
    return reach(true) && reach(false);
}

namespace {

std::pair<QReal, Eigen::VectorXd> pf_pair(const FusionGraph& graph) {
    if (!strongly_connected(graph)) {
        throw NotConnected("graph " + graph.name() + " is not strongly connected");
    }
    Eigen::MatrixXd g = graph.adjacency().cast<double>();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(g);
    if (solver.info() != Eigen::Success) {
        throw Error("eigen-decomposition failed for graph " + graph.name());
    }
    const auto& ev = solver.eigenvalues();
    int best = 0;
    for (int i = 1; i < ev.size(); ++i) {
        if (ev[i].real() > ev[best].real()) {
            best = i;
        }
    }
    Eigen::VectorXd v = solver.eigenvectors().col(best).real();
    const double lambda = ev[best].real();
    v /= v(graph.unit());
    for (int it = 0; it < 3; ++it) {
        Eigen::VectorXd w = (g * v + lambda * v) / (2.0 * lambda);
        v = w / w(graph.unit());
    }
    return {lambda, v};
}

}  // namespace

QReal pf_eigenvalue(const FusionGraph& graph) { return pf_pair(graph).first; }

DimensionVector pf_dimensions(const FusionGraph& graph, double tolerance) {
    auto [lambda, v] = pf_pair(graph);
    const QReal q3 = qint(3, graph.context());
    if (std::abs(lambda - q3) > tolerance) {
        throw AltitudeMismatch("PF eigenvalue " + std::to_string(lambda) + " of " + graph.name() +
                               " differs from [3] = " + std::to_string(q3));
    }
    DimensionVector out(v.size());
    for (int i = 0; i < v.size(); ++i) {
        if (!(v(i) > 0.0)) {
            throw Error("PF eigenvector of " + graph.name() + " is not strictly positive");
        }
        out[i] = v(i);
    }
    return out;
}

DimensionVector dimensions(const FusionGraph& graph, double tolerance) {
    if (graph.has_weights()) {
        auto ctx = graph.context();
        DimensionVector out;
        out.reserve(graph.vertex_count());
        for (const auto& v : graph.vertices()) {
            out.push_back(qdim_weight(v.weight->first, v.weight->second, ctx));
        }
        return out;
    }
    return pf_dimensions(graph, tolerance);
}

OrientedTriangle rotate(const OrientedTriangle& t, int r) {
    r = ((r % 3) + 3) % 3;
    OrientedTriangle out;
    for (int i = 0; i < 3; ++i) {
        out.v[i] = t.v[(i + r) % 3];
        out.e[i] = t.e[(i + r) % 3];
    }
    return out;
}

OrientedTriangle canonicalize(const OrientedTriangle& t) {
    OrientedTriangle best = t;
    auto key = [](const OrientedTriangle& x) {
        return std::make_tuple(x.v[0], x.e[0], x.v[1], x.e[1], x.v[2], x.e[2]);
    };
    for (int r = 1; r < 3; ++r) {
        OrientedTriangle c = rotate(t, r);
        if (key(c) < key(best)) {
            best = c;
        }
    }
    return best;
}

OrientedTriangle triangle_from_edges(const FusionGraph& graph, const std::array<EdgeId, 3>& edges) {
    for (EdgeId e : edges) {
        if (e < 0 || e >= graph.edge_count()) {
            throw ValidationError("edge index out of range in triangle");
        }
    }
    const auto& e0 = graph.edge(edges[0]);
    const auto& e1 = graph.edge(edges[1]);
    const auto& e2 = graph.edge(edges[2]);
    if (e0.to != e1.from || e1.to != e2.from || e2.to != e0.from) {
        throw ValidationError("edges " + e0.id + ", " + e1.id + ", " + e2.id + " do not form an oriented triangle");
    }
    OrientedTriangle t;
    t.v = {e0.from, e1.from, e2.from};
    t.e = edges;
    return t;
}

std::vector<OrientedTriangle> enumerate_triangles(const FusionGraph& graph) {
    std::vector<OrientedTriangle> out;
    for (EdgeId e0 = 0; e0 < graph.edge_count(); ++e0) {
        const VertexId a = graph.edge(e0).from;
        const VertexId b = graph.edge(e0).to;
        for (EdgeId e1 : graph.out_edges(b)) {
            const VertexId c = graph.edge(e1).to;
            for (EdgeId e2 : graph.edges_between(c, a)) {
                OrientedTriangle t{{a, b, c}, {e0, e1, e2}};
                if (canonicalize(t) == t) {
                    out.push_back(t);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TypeIFrame> enumerate_type1_frames(const FusionGraph& graph) {
    std::vector<TypeIFrame> out;
    for (VertexId a = 0; a < graph.vertex_count(); ++a) {
        if (!graph.frame_vertex(a)) {
            continue;
        }
        for (VertexId b = 0; b < graph.vertex_count(); ++b) {
            if (!graph.frame_vertex(b)) {
                continue;
            }
            const auto& es = graph.edges_between(a, b);
            for (EdgeId x : es) {
                for (EdgeId y : es) {
                    out.push_back({a, b, x, y});
                }
            }
        }
    }
    return out;
}

int type1_vertex_pair_count(const FusionGraph& graph) {
    int n = 0;
    for (VertexId a = 0; a < graph.vertex_count(); ++a) {
        for (VertexId b = 0; b < graph.vertex_count(); ++b) {
            if (graph.frame_vertex(a) && graph.frame_vertex(b) && graph.multiplicity(a, b) > 0) {
                ++n;
            }
        }
    }
    return n;
}

namespace {

using FrameKey = std::array<int, 8>;

FrameKey frame_key(const std::array<VertexId, 4>& a, const std::array<EdgeId, 4>& e) {
    return {a[0], a[1], a[2], a[3], e[0], e[1], e[2], e[3]};
}

FrameKey swap13(const FrameKey& k) { return {k[2], k[1], k[0], k[3], k[5], k[4], k[7], k[6]}; }

FrameKey swap24(const FrameKey& k) { return {k[0], k[3], k[2], k[1], k[7], k[6], k[5], k[4]}; }

}  // namespace

std::vector<TypeIIFrame> enumerate_type2_frames(const FusionGraph& graph, bool dedup) {
    std::vector<TypeIIFrame> out;
    for (EdgeId a1e = 0; a1e < graph.edge_count(); ++a1e) {
        const VertexId a1 = graph.edge(a1e).from;
        const VertexId a2 = graph.edge(a1e).to;
        if (!graph.frame_vertex(a1) || !graph.frame_vertex(a2)) {
            continue;
        }
        for (EdgeId a2e : graph.in_edges(a2)) {
            const VertexId a3 = graph.edge(a2e).from;
            if (!graph.frame_vertex(a3)) {
                continue;
            }
            for (EdgeId a3e : graph.out_edges(a3)) {
                const VertexId a4 = graph.edge(a3e).to;
                if (!graph.frame_vertex(a4)) {
                    continue;
                }
                for (EdgeId a4e : graph.edges_between(a1, a4)) {
                    TypeIIFrame f;
                    f.a = {a1, a2, a3, a4};
                    f.alpha = {a1e, a2e, a3e, a4e};
                    if (dedup) {
                        FrameKey k = frame_key(f.a, f.alpha);
                        FrameKey m = std::min({k, swap13(k), swap24(k), swap13(swap24(k))});
                        if (m != k) {
                            continue;
                        }
                    }
                    const bool d13 = a1 == a3;
                    const bool d24 = a2 == a4;
                    f.degeneracy = (d13 && d24) ? Degeneracy::Doubly
                                   : (d13 || d24) ? Degeneracy::Singly
                                                  : Degeneracy::None;
                    for (EdgeId b2 : graph.out_edges(a2)) {
                        const VertexId c = graph.edge(b2).to;
                        for (EdgeId b1 : graph.edges_between(c, a1)) {
                            for (EdgeId b3 : graph.edges_between(c, a3)) {
                                for (EdgeId b4 : graph.edges_between(a4, c)) {
                                    f.apex.push_back({c, b1, b2, b3, b4});
                                }
                            }
                        }
                    }
                    if (dedup && f.apex.empty()) {
                        continue;
                    }
                    out.push_back(std::move(f));
                }
            }
        }
    }
    return out;
}

FusionGraph conjugate_graph(const FusionGraph& graph) {
    std::vector<Vertex> vs = graph.vertices();
    for (auto& v : vs) {
        if (v.triality) {
            v.triality = (3 - *v.triality) % 3;
        }
        if (v.weight) {
            v.weight = std::make_pair(v.weight->second, v.weight->first);
        }
    }
    std::vector<Edge> es = graph.edges();
    for (auto& e : es) {
        std::swap(e.from, e.to);
    }
    std::string name = graph.name();
    if (!name.empty() && name.back() == '*') {
        name.pop_back();
    } else {
        name += "*";
    }
    FusionGraph out(name, graph.altitude(), std::move(vs), std::move(es), graph.unit());
    out.set_truncation(graph.truncation());
    std::vector<NamedCell> cells = graph.named_cells();
    for (auto& c : cells) {
        std::swap(c.edges[0], c.edges[2]);
    }
    out.set_named_cells(std::move(cells));
    out.set_gauge_last(graph.gauge_last());
    return out;
}

std::string degeneracy_name(Degeneracy d) {
    switch (d) {
        case Degeneracy::Doubly:
            return "doubly";
        case Degeneracy::Singly:
            return "singly";
        case Degeneracy::None:
            return "none";
    }
    return "none";
}

}  // namespace qcells
