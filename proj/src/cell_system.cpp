#include "qcells/cell_system.hpp"

#include <algorithm>
#include <cmath>

#include "qcells/errors.hpp"

namespace qcells {

namespace {

long long edge_key(long long e0, long long e1, long long e2, long long n) { return (e0 * n + e1) * n + e2; }

std::string triangle_text(const FusionGraph& g, EdgeId e0, EdgeId e1, EdgeId e2) {
    return "(" + g.edge(e0).id + "," + g.edge(e1).id + "," + g.edge(e2).id + ")";
}

}  // namespace

CellLayout::CellLayout(FusionGraph graph, double tolerance)
    : graph_(std::move(graph)), ctx_(graph_.context(15, tolerance)) {
    dims_ = dimensions(graph_, tolerance);
    q2_ = qint(2, ctx_);
    triangles_ = enumerate_triangles(graph_);
    type1_ = enumerate_type1_frames(graph_);
    type2_ = enumerate_type2_frames(graph_, true);
    const long long n = graph_.edge_count();
    for (int i = 0; i < static_cast<int>(triangles_.size()); ++i) {
        const auto& e = triangles_[i].e;
        lookup_[edge_key(e[0], e[1], e[2], n)] = i;
        lookup_[edge_key(e[1], e[2], e[0], n)] = i;
        lookup_[edge_key(e[2], e[0], e[1], n)] = i;
    }
}

int CellLayout::find_triangle(EdgeId e0, EdgeId e1, EdgeId e2) const {
    const long long n = graph_.edge_count();
    if (e0 < 0 || e1 < 0 || e2 < 0 || e0 >= n || e1 >= n || e2 >= n) {
        return -1;
    }
    auto it = lookup_.find(edge_key(e0, e1, e2, n));
    return it == lookup_.end() ? -1 : it->second;
}

int CellLayout::triangle_index(EdgeId e0, EdgeId e1, EdgeId e2) const {
    const int t = find_triangle(e0, e1, e2);
    if (t < 0) {
        throw MissingCell("no oriented triangle with edges " + std::to_string(e0) + "," + std::to_string(e1) + "," +
                          std::to_string(e2));
    }
    return t;
}

int CellLayout::named_triangle(const std::string& label) const {
    auto cell = graph_.named_cell(label);
    if (!cell) {
        return -1;
    }
    return find_triangle(cell->edges[0], cell->edges[1], cell->edges[2]);
}

LayoutPtr make_layout(const FusionGraph& graph, double tolerance) {
    return std::make_shared<const CellLayout>(graph, tolerance);
}

CellSystem::CellSystem(LayoutPtr layout)
    : layout_(std::move(layout)),
      values_(layout_->triangle_count(), QComplex(0, 0)),
      present_(layout_->triangle_count(), 0) {}

CellSystem::CellSystem(LayoutPtr layout, std::vector<QComplex> values)
    : layout_(std::move(layout)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != layout_->triangle_count()) {
        throw ShapeMismatch("expected " + std::to_string(layout_->triangle_count()) + " cell values, got " +
                            std::to_string(values_.size()));
    }
    present_.assign(values_.size(), 1);
}

bool CellSystem::complete() const {
    return std::all_of(present_.begin(), present_.end(), [](char c) { return c != 0; });
}

QComplex CellSystem::value(int t) const {
    if (t < 0 || t >= size()) {
        throw MissingCell("triangle index " + std::to_string(t) + " out of range");
    }
    if (!present_[t]) {
        const auto& e = layout_->triangles()[t].e;
        throw MissingCell("cell " + triangle_text(graph(), e[0], e[1], e[2]) + " has no value");
    }
    return values_[t];
}

QComplex CellSystem::value(const std::string& label) const {
    const int t = layout_->named_triangle(label);
    if (t < 0) {
        throw MissingCell("no named cell '" + label + "'");
    }
    return value(t);
}

void CellSystem::set(int t, QComplex v) {
    if (t < 0 || t >= size()) {
        throw MissingCell("triangle index " + std::to_string(t) + " out of range");
    }
    values_[t] = v;
    present_[t] = 1;
}

void CellSystem::set(const std::string& label, QComplex v) {
    const int t = layout_->named_triangle(label);
    if (t < 0) {
        throw MissingCell("no named cell '" + label + "'");
    }
    set(t, v);
}

Equation type1_equation(const CellLayout& layout, const TypeIFrame& frame) {
    const FusionGraph& g = layout.graph();
    Equation eq;
    eq.kind = EquationKind::TypeI;
    for (EdgeId beta : g.out_edges(frame.b)) {
        const VertexId c = g.edge(beta).to;
        for (EdgeId gamma : g.edges_between(c, frame.a)) {
            Monomial m;
            m.factors.push_back({layout.triangle_index(frame.alpha, beta, gamma), false});
            m.factors.push_back({layout.triangle_index(frame.alpha2, beta, gamma), true});
            eq.terms.push_back(std::move(m));
        }
    }
    if (frame.diagonal()) {
        eq.rhs = layout.q2() * layout.dim(frame.a) * layout.dim(frame.b);
    }
    return eq;
}

Equation type2_equation(const CellLayout& layout, const TypeIIFrame& frame) {
    Equation eq;
    eq.kind = EquationKind::TypeII;
    const auto& al = frame.alpha;
    for (const Apex& ap : frame.apex) {
        Monomial m;
        m.coef = 1.0 / layout.dim(ap.c);
        m.factors.push_back({layout.triangle_index(al[0], ap.beta2, ap.beta1), false});
        m.factors.push_back({layout.triangle_index(al[1], ap.beta2, ap.beta3), true});
        m.factors.push_back({layout.triangle_index(al[2], ap.beta4, ap.beta3), false});
        m.factors.push_back({layout.triangle_index(al[3], ap.beta4, ap.beta1), true});
        eq.terms.push_back(std::move(m));
    }
    const auto& a = frame.a;
    if (al[0] == al[3] && al[1] == al[2]) {
        eq.rhs += layout.dim(a[0]) * layout.dim(a[1]) * layout.dim(a[2]);
    }
    if (al[0] == al[1] && al[2] == al[3]) {
        eq.rhs += layout.dim(a[0]) * layout.dim(a[1]) * layout.dim(a[3]);
    }
    return eq;
}

QComplex evaluate(const Equation& eq, const std::vector<QComplex>& values) {
    QComplex sum(0, 0);
    for (const Monomial& m : eq.terms) {
        QComplex p(m.coef, 0);
        for (const Factor& f : m.factors) {
            p *= f.conj ? std::conj(values[f.cell]) : values[f.cell];
        }
        sum += p;
    }
    return sum - eq.rhs;
}

namespace {

QComplex checked_evaluate(const CellSystem& cells, const Equation& eq) {
    for (const Monomial& m : eq.terms) {
        for (const Factor& f : m.factors) {
            cells.value(f.cell);
        }
    }
    return evaluate(eq, cells.values());
}

}  // namespace

QComplex type1_residual(const CellSystem& cells, const TypeIFrame& frame) {
    return checked_evaluate(cells, type1_equation(cells.layout(), frame));
}

QComplex type2_residual(const CellSystem& cells, const TypeIIFrame& frame) {
    return checked_evaluate(cells, type2_equation(cells.layout(), frame));
}

GaugeChoice GaugeChoice::identity(const FusionGraph& graph) {
    GaugeChoice g;
    for (VertexId a = 0; a < graph.vertex_count(); ++a) {
        for (EdgeId e : graph.out_edges(a)) {
            const VertexId b = graph.edge(e).to;
            const int s = graph.multiplicity(a, b);
            g.blocks.emplace(std::make_pair(a, b), Eigen::MatrixXcd::Identity(s, s));
        }
    }
    return g;
}

GaugeChoice GaugeChoice::random(const FusionGraph& graph, std::mt19937_64& rng) {
    GaugeChoice g = identity(graph);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& [key, u] : g.blocks) {
        const int s = static_cast<int>(u.rows());
        Eigen::MatrixXcd z(s, s);
        for (int i = 0; i < s; ++i) {
            for (int j = 0; j < s; ++j) {
                z(i, j) = QComplex(normal(rng), normal(rng));
            }
        }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(s, s);
        Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < s; ++j) {
            const QComplex d = r(j, j);
            q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : QComplex(1, 0);
        }
        u = q;
    }
    return g;
}

GaugeChoice GaugeChoice::edge_phases(const FusionGraph& graph, const std::vector<double>& phase) {
    if (static_cast<int>(phase.size()) != graph.edge_count()) {
        throw ShapeMismatch("edge phase vector has the wrong length");
    }
    GaugeChoice g = identity(graph);
    for (auto& [key, u] : g.blocks) {
        const auto& es = graph.edges_between(key.first, key.second);
        for (size_t i = 0; i < es.size(); ++i) {
            u(i, i) = std::polar(1.0, phase[es[i]]);
        }
    }
    return g;
}

CellSystem apply_gauge(const CellSystem& cells, const GaugeChoice& gauge) {
    const FusionGraph& g = cells.graph();
    for (const auto& [key, u] : gauge.blocks) {
        const int s = g.multiplicity(key.first, key.second);
        if (u.rows() != s || u.cols() != s) {
            throw ShapeMismatch("gauge block (" + g.vertex(key.first).id + "," + g.vertex(key.second).id +
                                ") has shape " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                                ", expected " + std::to_string(s) + "x" + std::to_string(s));
        }
    }
    auto entry = [&](VertexId a, VertexId b, EdgeId to, EdgeId from) -> QComplex {
        auto it = gauge.blocks.find({a, b});
        if (it == gauge.blocks.end()) {
            return to == from ? QComplex(1, 0) : QComplex(0, 0);
        }
        return it->second(g.local_index(to), g.local_index(from));
    };
    const CellLayout& layout = cells.layout();
    CellSystem out(cells.layout_ptr());
    for (int t = 0; t < layout.triangle_count(); ++t) {
        const OrientedTriangle& tri = layout.triangles()[t];
        const VertexId a = tri.v[0], b = tri.v[1], c = tri.v[2];
        QComplex sum(0, 0);
        for (EdgeId x : g.edges_between(a, b)) {
            const QComplex ux = entry(a, b, tri.e[0], x);
            if (ux == QComplex(0, 0)) {
                continue;
            }
            for (EdgeId y : g.edges_between(b, c)) {
                const QComplex uy = entry(b, c, tri.e[1], y);
                if (uy == QComplex(0, 0)) {
                    continue;
                }
                for (EdgeId z : g.edges_between(c, a)) {
                    const QComplex uz = entry(c, a, tri.e[2], z);
                    if (uz == QComplex(0, 0)) {
                        continue;
                    }
                    sum += ux * uy * uz * cells.value(layout.triangle_index(x, y, z));
                }
            }
        }
        out.set(t, sum);
    }
    return out;
}

CellSystem conjugate_cells(const CellSystem& cells) {
    std::vector<QComplex> v(cells.size());
    for (int t = 0; t < cells.size(); ++t) {
        v[t] = std::conj(cells.value(t));
    }
    return CellSystem(cells.layout_ptr(), std::move(v));
}

std::optional<QComplex> InvariantReport::get(const std::string& name) const {
    for (const auto& [k, v] : values) {
        if (k == name) {
            return v;
        }
    }
    return std::nullopt;
}

namespace {

bool has_labels(const CellLayout& layout, const std::vector<std::string>& labels) {
    return std::all_of(labels.begin(), labels.end(),
                       [&](const std::string& l) { return layout.named_triangle(l) >= 0; });
}

void vector_invariants(const CellSystem& cells, const std::string& family, InvariantReport& report) {
    std::array<Eigen::Vector2cd, 3> v;
    for (int j = 0; j < 3; ++j) {
        for (int k = 1; k <= 2; ++k) {
            v[j](k - 1) = cells.value(family + "_" + std::to_string(k) + "^" + std::to_string(j));
        }
    }
    for (int j = 0; j < 3; ++j) {
        report.values.emplace_back(family + "_norm^" + std::to_string(j), v[j].squaredNorm());
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            report.values.emplace_back(family + "_overlap_abs2^" + std::to_string(i) + std::to_string(j),
                                       std::norm(v[i].dot(v[j])));
        }
    }
    report.values.emplace_back(family + "_triple", v[0].dot(v[1]) * v[1].dot(v[2]) * v[2].dot(v[0]));
}

}  // namespace

InvariantReport gauge_invariants(const CellSystem& cells) {
    const CellLayout& layout = cells.layout();
    const FusionGraph& g = cells.graph();
    InvariantReport report;
    bool any = false;
    if (g.single_edged()) {
        any = true;
        for (int t = 0; t < cells.size(); ++t) {
            report.moduli.push_back(std::abs(cells.value(t)));
        }
        std::sort(report.moduli.begin(), report.moduli.end());
    }
    const std::vector<std::string> octahedron = {"mu_0", "mu_1", "mu_2", "mu_3", "mu_4", "mu_5", "nu_0", "nu_1"};
    if (has_labels(layout, octahedron)) {
        any = true;
        const QComplex c = cells.value("mu_0") * cells.value("mu_2") * cells.value("mu_4") * cells.value("nu_1") *
                           std::conj(cells.value("mu_1") * cells.value("mu_3") * cells.value("mu_5") *
                                     cells.value("nu_0"));
        report.values.emplace_back("C", c);
    }
    const std::vector<std::string> e_cells = {"e_11", "e_12", "e_21", "e_22"};
    if (has_labels(layout, e_cells) && has_labels(layout, {"c_1^0", "c_2^2", "d_1^0", "d_2^2"})) {
        any = true;
        Eigen::Matrix2cd m;
        m << cells.value("e_11"), cells.value("e_12"), cells.value("e_21"), cells.value("e_22");
        const Eigen::Matrix2cd mm = m.adjoint() * m;
        report.values.emplace_back("det_MdagM", mm.determinant());
        report.values.emplace_back("tr_MdagM", mm.trace());
        vector_invariants(cells, "c", report);
        vector_invariants(cells, "d", report);
    }
    if (!any) {
        throw UnsupportedGraph("no documented gauge invariants for graph " + g.name());
    }
    return report;
}

}  // namespace qcells
