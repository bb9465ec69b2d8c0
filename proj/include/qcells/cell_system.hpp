#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcells/fusion_graph.hpp"
#include "qcells/numerics.hpp"

namespace qcells {

/// Immutable per-graph data shared by cell systems: dimensions, triangles and frames.
class CellLayout {
public:
    CellLayout(FusionGraph graph, double tolerance = 1e-9);

    const FusionGraph& graph() const { return graph_; }
    const RootOfUnityContext& context() const { return ctx_; }
    const DimensionVector& dims() const { return dims_; }
    QReal dim(VertexId v) const { return dims_.at(v); }
    QReal q2() const { return q2_; }

    const std::vector<OrientedTriangle>& triangles() const { return triangles_; }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    const std::vector<TypeIFrame>& type1_frames() const { return type1_; }
    /// Deduplicated Type II frames with non-empty apex sets.
    const std::vector<TypeIIFrame>& type2_frames() const { return type2_; }

    /// Index of the triangle with edges (a->b, b->c, c->a) in any rotation, or -1.
    int find_triangle(EdgeId e0, EdgeId e1, EdgeId e2) const;
    int triangle_index(EdgeId e0, EdgeId e1, EdgeId e2) const;
    int triangle_index(const OrientedTriangle& t) const { return triangle_index(t.e[0], t.e[1], t.e[2]); }
    /// Triangle of a named catalog cell, or -1.
    int named_triangle(const std::string& label) const;

private:
    FusionGraph graph_;
    RootOfUnityContext ctx_;
    DimensionVector dims_;
    QReal q2_ = 0;
    std::vector<OrientedTriangle> triangles_;
    std::vector<TypeIFrame> type1_;
    std::vector<TypeIIFrame> type2_;
    std::unordered_map<long long, int> lookup_;
};

using LayoutPtr = std::shared_ptr<const CellLayout>;

LayoutPtr make_layout(const FusionGraph& graph, double tolerance = 1e-9);

class CellSystem {
public:
    explicit CellSystem(LayoutPtr layout);
    CellSystem(LayoutPtr layout, std::vector<QComplex> values);

    const CellLayout& layout() const { return *layout_; }
    const LayoutPtr& layout_ptr() const { return layout_; }
    const FusionGraph& graph() const { return layout_->graph(); }
    int size() const { return static_cast<int>(values_.size()); }

    bool has(int t) const { return present_.at(t) != 0; }
    bool complete() const;
    QComplex value(int t) const;
    QComplex value(const OrientedTriangle& t) const { return value(layout_->triangle_index(t)); }
    QComplex value(EdgeId e0, EdgeId e1, EdgeId e2) const { return value(layout_->triangle_index(e0, e1, e2)); }
    QComplex value(const std::string& label) const;
    void set(int t, QComplex v);
    void set(const OrientedTriangle& t, QComplex v) { set(layout_->triangle_index(t), v); }
    void set(const std::string& label, QComplex v);

    const std::vector<QComplex>& values() const { return values_; }

private:
    LayoutPtr layout_;
    std::vector<QComplex> values_;
    std::vector<char> present_;
};

/// One factor of a monomial: the stored cell, optionally conjugated.
struct Factor {
    int cell = 0;
    bool conj = false;
};

struct Monomial {
    QReal coef = 1.0;
    std::vector<Factor> factors;
};

enum class EquationKind { TypeI, TypeII };

/// Polynomial form of one coherence equation: sum of monomials minus rhs.
struct Equation {
    EquationKind kind = EquationKind::TypeI;
    int frame = 0;
    std::vector<Monomial> terms;
    QReal rhs = 0.0;
};

Equation type1_equation(const CellLayout& layout, const TypeIFrame& frame);
Equation type2_equation(const CellLayout& layout, const TypeIIFrame& frame);
QComplex evaluate(const Equation& eq, const std::vector<QComplex>& values);

QComplex type1_residual(const CellSystem& cells, const TypeIFrame& frame);
QComplex type2_residual(const CellSystem& cells, const TypeIIFrame& frame);

/// Unitary block U^{ab} for every ordered vertex pair with at least one edge; absent blocks act as identity.
struct GaugeChoice {
    std::map<std::pair<VertexId, VertexId>, Eigen::MatrixXcd> blocks;

    static GaugeChoice identity(const FusionGraph& graph);
    static GaugeChoice random(const FusionGraph& graph, std::mt19937_64& rng);
    /// Diagonal gauge multiplying edge e by exp(i phase[e]).
    static GaugeChoice edge_phases(const FusionGraph& graph, const std::vector<double>& phase);
};

CellSystem apply_gauge(const CellSystem& cells, const GaugeChoice& gauge);
CellSystem conjugate_cells(const CellSystem& cells);

struct InvariantReport {
    /// Sorted |T| over all triangles (single-edge graphs only).
    std::vector<double> moduli;
    std::vector<std::pair<std::string, QComplex>> values;

    std::optional<QComplex> get(const std::string& name) const;
};

InvariantReport gauge_invariants(const CellSystem& cells);

}  // namespace qcells
