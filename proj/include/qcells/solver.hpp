#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcells/cell_system.hpp"
#include "qcells/fusion_graph.hpp"

namespace qcells {

struct SolveOptions {
    int restarts = 64;
    std::uint64_t seed = 0;
    /// Success threshold on max |residual| (epsilon_solve).
    double tolerance = 1e-9;
    /// Best residual above this is reported INFEASIBLE, between tolerance and this INCONCLUSIVE.
    double infeasible_threshold = 1e-4;
    int max_iterations = 400;
    /// Worker threads for restarts; 0 picks the hardware concurrency.
    int threads = 0;
};

enum class SolveStatus { Solved, Infeasible, Inconclusive };

std::string status_name(SolveStatus s);

struct ModuliSolution {
    SolveStatus status = SolveStatus::Inconclusive;
    /// Squared moduli x_t of the best branch, indexed like the layout triangles.
    std::vector<double> x;
    /// Every distinct converged branch, in order of discovery.
    std::vector<std::vector<double>> branches;
    double max_residual = 0.0;
    int restarts = 0;
    int converged = 0;
    std::string message;
};

struct SolveReport {
    SolveStatus status = SolveStatus::Inconclusive;
    std::optional<CellSystem> cells;
    double max_residual = 0.0;
    double best_residual = 0.0;
    int restarts = 0;
    int converged = 0;
    std::uint64_t seed = 0;
    std::optional<InvariantReport> invariants;
    /// Converged solutions whose invariants differ from the reported one.
    std::vector<CellSystem> alternatives;
    std::string message;
};

ModuliSolution solve_moduli(const FusionGraph& graph, const SolveOptions& options = {});
ModuliSolution solve_moduli(const LayoutPtr& layout, const SolveOptions& options = {});

/// Phase stage on top of solved moduli (single-edge graphs).
SolveReport solve_phases(const LayoutPtr& layout, const ModuliSolution& moduli, const SolveOptions& options = {});

SolveReport solve(const FusionGraph& graph, const SolveOptions& options = {});
SolveReport solve(const LayoutPtr& layout, const SolveOptions& options = {});

/// Triangles whose cells canonicalization makes real positive, in visiting order.
std::vector<int> gauge_fixed_triangles(const CellLayout& layout, const std::vector<double>& moduli);

/// Edge phase gauge making the gauge-fixed cells real positive; multi-edge graphs
/// are then conjugated if needed so that Im of the E9 triple product is non-negative.
CellSystem canonical_gauge(const CellSystem& cells);

struct FrameResidual {
    EquationKind kind = EquationKind::TypeI;
    int frame = 0;
    QComplex residual;
};

struct VerifyReport {
    bool pass = false;
    double tolerance = 0.0;
    double max_residual = 0.0;
    double max_type1 = 0.0;
    double max_type2 = 0.0;
    std::vector<FrameResidual> type1;
    std::vector<FrameResidual> type2;
    std::optional<FrameResidual> worst;
};

VerifyReport verify(const CellSystem& cells, double tolerance = 1e-9);
/// Human-readable frame description for reports.
std::string describe_frame(const CellLayout& layout, const FrameResidual& f);
/// True when frame f involves triangle t.
bool frame_touches(const CellLayout& layout, const FrameResidual& f, int t);

struct Z9Branch {
    std::array<int, 3> signs{};
    std::string a;
    std::string violation;
    double violation_value = 0.0;
};

struct Z9Certificate {
    int digits = 30;
    std::string b_plus, b_minus, c_plus, c_minus;
    std::vector<Z9Branch> branches;
    std::string min_violation;
    double gap = 0.0;
    bool infeasible = false;
};

Z9Certificate certify_infeasible_z9(int digits = 30);

}  // namespace qcells
