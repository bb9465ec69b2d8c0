#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qcells {

struct LmOptions {
    int max_iterations = 400;
    /// Stop once max |r_i| falls below this value.
    double residual_tolerance = 1e-13;
    double step_tolerance = 1e-15;
    /// Project iterates onto x >= 0 after every step.
    bool non_negative = false;
};

struct LmResult {
    Eigen::VectorXd x;
    double cost = 0.0;
    double max_residual = 0.0;
    int iterations = 0;
};

/// Fills r (size m) and, when J is non-null, the m x n Jacobian at x.
using LmProblem = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* J)>;

LmResult levenberg_marquardt(const LmProblem& problem, Eigen::VectorXd x0, const LmOptions& options);

}  // namespace qcells
