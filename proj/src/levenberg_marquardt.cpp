#include "qcells/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>

namespace qcells {

namespace {

void project(Eigen::VectorXd& x, bool non_negative) {
    if (non_negative) {
        x = x.cwiseMax(0.0);
    }
}

}  // namespace

LmResult levenberg_marquardt(const LmProblem& problem, Eigen::VectorXd x0, const LmOptions& options) {
    LmResult out;
    Eigen::VectorXd x = std::move(x0);
    project(x, options.non_negative);
    Eigen::VectorXd r;
    Eigen::MatrixXd J;
    problem(x, r, &J);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    const int n = static_cast<int>(x.size());
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        if (r.size() == 0 || r.cwiseAbs().maxCoeff() < options.residual_tolerance) {
            break;
        }
        const Eigen::MatrixXd A = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * r;
        bool accepted = false;
        while (lambda < 1e16) {
            Eigen::MatrixXd M = A;
            for (int i = 0; i < n; ++i) {
                M(i, i) += lambda * (A(i, i) + 1e-12);
            }
            const Eigen::VectorXd step = M.ldlt().solve(-g);
            Eigen::VectorXd trial = x + step;
            project(trial, options.non_negative);
            Eigen::VectorXd rt;
            problem(trial, rt, nullptr);
            const double ct = rt.squaredNorm();
            if (std::isfinite(ct) && ct < cost) {
                const double moved = (trial - x).norm();
                x = std::move(trial);
                r = std::move(rt);
                cost = ct;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                if (moved < options.step_tolerance * (1.0 + x.norm())) {
                    it = options.max_iterations;
                }
                break;
            }
            lambda *= 4.0;
        }
        if (!accepted) {
            break;
        }
        if (it < options.max_iterations) {
            problem(x, r, &J);
        }
    }
    out.x = std::move(x);
    out.cost = cost;
    out.max_residual = r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
    out.iterations = std::min(it, options.max_iterations);
    return out;
}

}  // namespace qcells
