#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qcells/cell_system.hpp"

namespace qcells {

/// Length-two path a -> b -> c.
struct PathStep {
    VertexId b = 0;
    EdgeId alpha = 0, beta = 0;
};

struct RhombusMatrix {
    VertexId a = 0, c = 0;
    std::vector<PathStep> index;
    Eigen::MatrixXcd matrix;
};

/// Throws NotAdjacent when there is no edge c -> a.
RhombusMatrix rhombus_matrix(const CellSystem& cells, VertexId a, VertexId c);
std::vector<RhombusMatrix> all_rhombus_matrices(const CellSystem& cells);

class PathSpace {
public:
    /// All paths of length p starting at any of the sources (every vertex when empty).
    PathSpace(const FusionGraph& graph, int length, std::vector<VertexId> sources = {});

    int length() const { return length_; }
    int size() const { return static_cast<int>(paths_.size()); }
    const std::vector<std::vector<EdgeId>>& paths() const { return paths_; }
    /// Position of a path in the basis, or -1.
    int find(const std::vector<EdgeId>& path) const;

private:
    int length_ = 0;
    std::vector<std::vector<EdgeId>> paths_;
    std::map<std::vector<EdgeId>, int> lookup_;
};

using SparseOperator = Eigen::SparseMatrix<QComplex>;

/// U_n on the path space, acting on the edges at positions n and n+1 (1-based); entry (new, old).
SparseOperator path_operator(const CellSystem& cells, const PathSpace& space, int n);

struct RhombusCheck {
    VertexId a = 0, c = 0;
    double hermitian = 0.0;
    double idempotent = 0.0;
    double trace = 0.0;
    double worst() const { return std::max({hermitian, idempotent, trace}); }
};

struct PathCheck {
    int length = 0;
    double square = 0.0;
    double far_commutation = 0.0;
    double cubic = 0.0;
    double quartic = 0.0;
    double f_square = 0.0;
};

struct HeckeReport {
    std::vector<RhombusCheck> rhombi;
    std::vector<PathCheck> paths;
    double max_rhombus = 0.0;
    double max_path = 0.0;
    std::optional<RhombusCheck> worst_rhombus;
    double max_violation() const { return std::max(max_rhombus, max_path); }
};

/// Rhombus checks plus path-space relations on Path^p for 2 <= p <= p_max.
HeckeReport check_hecke_relations(const CellSystem& cells, int p_max = 4);

double max_entry(const SparseOperator& m);
double max_entry(const Eigen::MatrixXcd& m);

}  // namespace qcells
