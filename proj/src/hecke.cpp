#include "qcells/hecke.hpp"

#include <cmath>

#include "qcells/errors.hpp"

namespace qcells {

RhombusMatrix rhombus_matrix(const CellSystem& cells, VertexId a, VertexId c) {
    const CellLayout& L = cells.layout();
    const FusionGraph& g = L.graph();
    if (a < 0 || c < 0 || a >= g.vertex_count() || c >= g.vertex_count()) {
        throw NotAdjacent("vertex index out of range");
    }
    const auto& gammas = g.edges_between(c, a);
    if (gammas.empty()) {
        throw NotAdjacent("no edge " + g.vertex(c).id + " -> " + g.vertex(a).id);
    }
    RhombusMatrix r;
    r.a = a;
    r.c = c;
    for (EdgeId alpha : g.out_edges(a)) {
        const VertexId b = g.edge(alpha).to;
        for (EdgeId beta : g.edges_between(b, c)) {
            r.index.push_back({b, alpha, beta});
        }
    }
    const int n = static_cast<int>(r.index.size());
    r.matrix = Eigen::MatrixXcd::Zero(n, n);
    const double inv = 1.0 / (L.dim(a) * L.dim(c));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            QComplex sum(0, 0);
            for (EdgeId gamma : gammas) {
                sum += cells.value(L.triangle_index(r.index[i].alpha, r.index[i].beta, gamma)) *
                       std::conj(cells.value(L.triangle_index(r.index[j].alpha, r.index[j].beta, gamma)));
            }
            r.matrix(i, j) = sum * inv;
        }
    }
    return r;
}

std::vector<RhombusMatrix> all_rhombus_matrices(const CellSystem& cells) {
    const FusionGraph& g = cells.graph();
    std::vector<RhombusMatrix> out;
    for (VertexId a = 0; a < g.vertex_count(); ++a) {
        for (VertexId c = 0; c < g.vertex_count(); ++c) {
            if (!g.edges_between(c, a).empty()) {
                out.push_back(rhombus_matrix(cells, a, c));
            }
        }
    }
    return out;
}

PathSpace::PathSpace(const FusionGraph& graph, int length, std::vector<VertexId> sources) : length_(length) {
    if (length < 0) {
        throw IndexOutOfRange("path length must be non-negative");
    }
    if (sources.empty()) {
        for (VertexId v = 0; v < graph.vertex_count(); ++v) {
            sources.push_back(v);
        }
    }
    struct Partial {
        VertexId end;
        std::vector<EdgeId> edges;
    };
    std::vector<Partial> level;
    for (VertexId s : sources) {
        level.push_back({s, {}});
    }
    for (int step = 0; step < length; ++step) {
        std::vector<Partial> next;
        for (const Partial& p : level) {
            for (EdgeId e : graph.out_edges(p.end)) {
                Partial q{graph.edge(e).to, p.edges};
                q.edges.push_back(e);
                next.push_back(std::move(q));
            }
        }
        level = std::move(next);
    }
    for (Partial& p : level) {
        lookup_.emplace(p.edges, static_cast<int>(paths_.size()));
        paths_.push_back(std::move(p.edges));
    }
}

int PathSpace::find(const std::vector<EdgeId>& path) const {
    auto it = lookup_.find(path);
    return it == lookup_.end() ? -1 : it->second;
}

SparseOperator path_operator(const CellSystem& cells, const PathSpace& space, int n) {
    if (n < 1 || n > space.length() - 1) {
        throw IndexOutOfRange("U_" + std::to_string(n) + " needs 1 <= n <= " + std::to_string(space.length() - 1));
    }
    const FusionGraph& g = cells.graph();
    std::map<std::pair<VertexId, VertexId>, RhombusMatrix> cache;
    std::vector<Eigen::Triplet<QComplex>> entries;
    for (int col = 0; col < space.size(); ++col) {
        const auto& path = space.paths()[col];
        const EdgeId alpha = path[n - 1];
        const EdgeId beta = path[n];
        const VertexId a = g.edge(alpha).from;
        const VertexId c = g.edge(beta).to;
        if (g.edges_between(c, a).empty()) {
            continue;
        }
        auto it = cache.find({a, c});
        if (it == cache.end()) {
            it = cache.emplace(std::make_pair(a, c), rhombus_matrix(cells, a, c)).first;
        }
        const RhombusMatrix& r = it->second;
        int old_slot = -1;
        for (int i = 0; i < static_cast<int>(r.index.size()); ++i) {
            if (r.index[i].alpha == alpha && r.index[i].beta == beta) {
                old_slot = i;
            }
        }
        for (int i = 0; i < static_cast<int>(r.index.size()); ++i) {
            const QComplex v = r.matrix(i, old_slot);
            if (v == QComplex(0, 0)) {
                continue;
            }
            std::vector<EdgeId> target = path;
            target[n - 1] = r.index[i].alpha;
            target[n] = r.index[i].beta;
            const int row = space.find(target);
            if (row >= 0) {
                entries.emplace_back(row, col, v);
            }
        }
    }
    SparseOperator m(space.size(), space.size());
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

double max_entry(const SparseOperator& m) {
    double out = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseOperator::InnerIterator it(m, k); it; ++it) {
            out = std::max(out, std::abs(it.value()));
        }
    }
    return out;
}

double max_entry(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

HeckeReport check_hecke_relations(const CellSystem& cells, int p_max) {
    const CellLayout& L = cells.layout();
    const double q2 = L.q2();
    const double q3 = qint(3, L.context());
    HeckeReport rep;
    for (const RhombusMatrix& r : all_rhombus_matrices(cells)) {
        RhombusCheck c;
        c.a = r.a;
        c.c = r.c;
        c.hermitian = max_entry(Eigen::MatrixXcd(r.matrix - r.matrix.adjoint()));
        c.idempotent = max_entry(Eigen::MatrixXcd(r.matrix * r.matrix - q2 * r.matrix));
        const double s = static_cast<double>(L.graph().multiplicity(r.c, r.a));
        c.trace = std::abs(r.matrix.trace() - QComplex(q2 * s, 0));
        if (!rep.worst_rhombus || c.worst() > rep.worst_rhombus->worst()) {
            rep.worst_rhombus = c;
        }
        rep.max_rhombus = std::max(rep.max_rhombus, c.worst());
        rep.rhombi.push_back(c);
    }
    for (int p = 2; p <= p_max; ++p) {
        PathSpace space(L.graph(), p);
        std::vector<SparseOperator> U(p);
        for (int n = 1; n < p; ++n) {
            U[n] = path_operator(cells, space, n);
        }
        PathCheck pc;
        pc.length = p;
        for (int n = 1; n < p; ++n) {
            pc.square = std::max(pc.square, max_entry(SparseOperator(U[n] * U[n] - q2 * U[n])));
            for (int m = n + 2; m < p; ++m) {
                pc.far_commutation = std::max(pc.far_commutation, max_entry(SparseOperator(U[n] * U[m] - U[m] * U[n])));
            }
            if (n + 1 < p) {
                const SparseOperator a = U[n] * U[n + 1] * U[n] - U[n];
                const SparseOperator b = U[n + 1] * U[n] * U[n + 1] - U[n + 1];
                pc.cubic = std::max(pc.cubic, max_entry(SparseOperator(a - b)));
                pc.f_square = std::max(pc.f_square, max_entry(SparseOperator(a * a - q2 * q3 * a)));
            }
            if (n + 2 < p) {
                const SparseOperator left = U[n + 2] * U[n + 1] * U[n] - (U[n] + U[n + 2]);
                const SparseOperator right = U[n + 1] * U[n + 2] * U[n + 1] - U[n + 1];
                pc.quartic = std::max(pc.quartic, max_entry(SparseOperator(left * right)));
            }
        }
        rep.max_path =
            std::max({rep.max_path, pc.square, pc.far_commutation, pc.cubic, pc.quartic, pc.f_square});
        rep.paths.push_back(pc);
    }
    return rep;
}

}  // namespace qcells
