#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcells/fusion_graph.hpp"

namespace qcells {

using IntMatrix = Eigen::MatrixXi;
using Weight = std::pair<int, int>;

/// Matrices indexed by the alcove weights of one level, in alcove order.
struct WeightFamily {
    int level = 0;
    std::vector<Weight> weights;
    std::vector<IntMatrix> matrices;

    int index_of(const Weight& w) const;
    bool contains(const Weight& w) const;
    const IntMatrix& at(const Weight& w) const { return matrices.at(index_of(w)); }

private:
    friend WeightFamily recurrence_family(const IntMatrix& seed, int level);
    std::map<Weight, int> index_;
};

using FusionFamily = WeightFamily;
using AnnularFamily = WeightFamily;

/// Runs the SU(3) recurrence from the seed F_(1,0); throws NegativeEntry on a negative entry.
WeightFamily recurrence_family(const IntMatrix& seed, int level);

FusionFamily fusion_matrices(int k);
AnnularFamily annular_matrices(const FusionGraph& graph);
long long fusion_dimension(const FusionFamily& family, const Weight& weight);

struct NimrepReport {
    bool pass = false;
    bool non_negative = false;
    long long pairs_checked = 0;
    std::string message;
    std::optional<Weight> first_m, first_n;
};

NimrepReport nimrep_check(const FusionGraph& graph);

/// Exact checks of commutativity, N_(0,l) = N_(l,0)^T and N_m N_n = sum_p N_mn^p N_p.
struct RingCheck {
    bool commutative = true;
    bool transpose_rule = true;
    bool realization = true;
};
RingCheck check_fusion_ring(const FusionFamily& family);

}  // namespace qcells
