#include "qcells/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>
#include <tuple>

#include "qcells/errors.hpp"
#include "qcells/levenberg_marquardt.hpp"

namespace qcells {

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved:
            return "SOLVED";
        case SolveStatus::Infeasible:
            return "INFEASIBLE";
        case SolveStatus::Inconclusive:
            return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mt19937_64 restart_rng(std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

template <typename Result, typename Fn>
std::vector<Result> run_restarts(int count, int threads, Fn fn) {
    std::vector<Result> out(count);
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, std::max(1, count));
    std::atomic<int> next{0};
    auto work = [&]() {
        for (int i = next++; i < count; i = next++) {
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    return out;
}

/// Typical size of |T|^2 for a triangle: [2] times the smallest edge dimension product.
double cell_scale(const CellLayout& layout, int t) {
    const auto& v = layout.triangles()[t].v;
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        m = std::min(m, layout.dim(v[i]) * layout.dim(v[(i + 1) % 3]));
    }
    return layout.q2() * m;
}

struct ScaledEquation {
    Equation eq;
    double scale = 1.0;
};

std::vector<ScaledEquation> all_equations(const CellLayout& layout, const std::vector<double>& scales) {
    std::vector<ScaledEquation> out;
    auto add = [&](Equation eq) {
        double s = std::abs(eq.rhs);
        for (const Monomial& m : eq.terms) {
            double p = std::abs(m.coef);
            for (const Factor& f : m.factors) {
                p *= std::sqrt(scales[f.cell]);
            }
            s = std::max(s, p);
        }
        out.push_back({std::move(eq), s > 0 ? s : 1.0});
    };
    for (size_t i = 0; i < layout.type1_frames().size(); ++i) {
        Equation eq = type1_equation(layout, layout.type1_frames()[i]);
        eq.frame = static_cast<int>(i);
        add(std::move(eq));
    }
    for (size_t i = 0; i < layout.type2_frames().size(); ++i) {
        Equation eq = type2_equation(layout, layout.type2_frames()[i]);
        eq.frame = static_cast<int>(i);
        add(std::move(eq));
    }
    return out;
}

double raw_max_residual(const std::vector<ScaledEquation>& eqs, const std::vector<QComplex>& values) {
    double m = 0.0;
    for (const auto& se : eqs) {
        m = std::max(m, std::abs(evaluate(se.eq, values)));
    }
    return m;
}

/// Equation in the squared moduli: sum of linear and bilinear terms.
struct ModuliEquation {
    std::vector<std::pair<int, double>> linear;
    std::vector<std::tuple<int, int, double>> quadratic;
    double rhs = 0.0;
    double scale = 1.0;
};

std::vector<ModuliEquation> moduli_equations(const CellLayout& layout, const std::vector<double>& scales) {
    std::vector<ModuliEquation> out;
    auto finish = [&](ModuliEquation me) {
        double s = std::abs(me.rhs);
        for (auto [t, c] : me.linear) {
            s = std::max(s, std::abs(c) * scales[t]);
        }
        for (auto [t, u, c] : me.quadratic) {
            s = std::max(s, std::abs(c) * scales[t] * scales[u]);
        }
        me.scale = s > 0 ? s : 1.0;
        out.push_back(std::move(me));
    };
    for (const TypeIFrame& f : layout.type1_frames()) {
        if (!f.diagonal()) {
            continue;
        }
        const Equation eq = type1_equation(layout, f);
        ModuliEquation me;
        me.rhs = eq.rhs;
        for (const Monomial& m : eq.terms) {
            me.linear.emplace_back(m.factors[0].cell, m.coef);
        }
        finish(std::move(me));
    }
    for (const TypeIIFrame& f : layout.type2_frames()) {
        const Equation eq = type2_equation(layout, f);
        if (eq.terms.empty()) {
            continue;
        }
        ModuliEquation me;
        me.rhs = eq.rhs;
        bool reducible = true;
        for (const Monomial& m : eq.terms) {
            const auto& x = m.factors;
            if (x[0].cell == x[1].cell && x[2].cell == x[3].cell) {
                me.quadratic.emplace_back(x[0].cell, x[2].cell, m.coef);
            } else if (x[0].cell == x[3].cell && x[1].cell == x[2].cell) {
                me.quadratic.emplace_back(x[0].cell, x[1].cell, m.coef);
            } else {
                reducible = false;
                break;
            }
        }
        if (reducible) {
            finish(std::move(me));
        }
    }
    return out;
}

void moduli_residual(const std::vector<ModuliEquation>& eqs, const Eigen::VectorXd& x, Eigen::VectorXd& r,
                     Eigen::MatrixXd* J, bool scaled) {
    r.resize(static_cast<int>(eqs.size()));
    if (J) {
        J->setZero(static_cast<int>(eqs.size()), x.size());
    }
    for (int i = 0; i < static_cast<int>(eqs.size()); ++i) {
        const ModuliEquation& e = eqs[i];
        const double inv = scaled ? 1.0 / e.scale : 1.0;
        double v = -e.rhs;
        for (auto [t, c] : e.linear) {
            v += c * x(t);
            if (J) {
                (*J)(i, t) += c * inv;
            }
        }
        for (auto [t, u, c] : e.quadratic) {
            v += c * x(t) * x(u);
            if (J) {
                (*J)(i, t) += c * x(u) * inv;
                (*J)(i, u) += c * x(t) * inv;
            }
        }
        r(i) = v * inv;
    }
}

bool same_branch(const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-6 * (1.0 + std::abs(a[i]))) {
            return false;
        }
    }
    return true;
}

SolveStatus verdict(double best, const SolveOptions& options) {
    if (best < options.tolerance) {
        return SolveStatus::Solved;
    }
    return best > options.infeasible_threshold ? SolveStatus::Infeasible : SolveStatus::Inconclusive;
}

/// Monomial derivatives: d/dT_t (plain occurrences) and d/dconj(T_t) (conjugated occurrences).
template <typename Sink>
void monomial_derivatives(const Monomial& m, const std::vector<QComplex>& values, Sink sink) {
    const int n = static_cast<int>(m.factors.size());
    std::vector<QComplex> f(n);
    for (int p = 0; p < n; ++p) {
        const QComplex v = values[m.factors[p].cell];
        f[p] = m.factors[p].conj ? std::conj(v) : v;
    }
    for (int p = 0; p < n; ++p) {
        QComplex others(m.coef, 0);
        for (int q = 0; q < n; ++q) {
            if (q != p) {
                others *= f[q];
            }
        }
        sink(m.factors[p].cell, m.factors[p].conj, others);
    }
}

SolveReport failure_report(SolveStatus status, double best, const SolveOptions& options, int restarts,
                           std::string message) {
    SolveReport r;
    r.status = status;
    r.best_residual = best;
    r.max_residual = best;
    r.restarts = restarts;
    r.seed = options.seed;
    r.message = std::move(message);
    return r;
}

std::optional<InvariantReport> try_invariants(const CellSystem& cells) {
    try {
        return gauge_invariants(cells);
    } catch (const UnsupportedGraph&) {
        return std::nullopt;
    }
}

std::vector<int> visiting_order(const CellLayout& layout) {
    const int n = layout.triangle_count();
    std::vector<int> last;
    std::vector<char> deferred(n, 0);
    for (const auto& label : layout.graph().gauge_last()) {
        const int t = layout.named_triangle(label);
        if (t >= 0 && !deferred[t]) {
            deferred[t] = 1;
            last.push_back(t);
        }
    }
    std::vector<int> order;
    for (int t = 0; t < n; ++t) {
        if (!deferred[t]) {
            order.push_back(t);
        }
    }
    order.insert(order.end(), last.begin(), last.end());
    return order;
}

std::optional<QComplex> e9_triple(const CellSystem& cells) {
    const CellLayout& layout = cells.layout();
    for (int j = 0; j < 3; ++j) {
        for (int k = 1; k <= 2; ++k) {
            if (layout.named_triangle("c_" + std::to_string(k) + "^" + std::to_string(j)) < 0) {
                return std::nullopt;
            }
        }
    }
    std::array<Eigen::Vector2cd, 3> v;
    for (int j = 0; j < 3; ++j) {
        for (int k = 1; k <= 2; ++k) {
            v[j](k - 1) = cells.value("c_" + std::to_string(k) + "^" + std::to_string(j));
        }
    }
    return v[0].dot(v[1]) * v[1].dot(v[2]) * v[2].dot(v[0]);
}

CellSystem canonical_phases(const CellSystem& cells) {
    const CellLayout& layout = cells.layout();
    const FusionGraph& g = layout.graph();
    std::vector<double> moduli(cells.size());
    for (int t = 0; t < cells.size(); ++t) {
        moduli[t] = std::abs(cells.value(t));
    }
    const std::vector<int> fixed = gauge_fixed_triangles(layout, moduli);
    if (fixed.empty()) {
        return cells;
    }
    const int k = static_cast<int>(fixed.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k, g.edge_count());
    Eigen::VectorXd b(k);
    for (int i = 0; i < k; ++i) {
        for (EdgeId e : layout.triangles()[fixed[i]].e) {
            A(i, e) += 1.0;
        }
        b(i) = -std::arg(cells.value(fixed[i]));
    }
    const Eigen::VectorXd y = (A * A.transpose()).ldlt().solve(b);
    const Eigen::VectorXd phi = A.transpose() * y;
    std::vector<double> phase(phi.data(), phi.data() + phi.size());
    return apply_gauge(cells, GaugeChoice::edge_phases(g, phase));
}

}  // namespace

std::vector<int> gauge_fixed_triangles(const CellLayout& layout, const std::vector<double>& moduli) {
    const FusionGraph& g = layout.graph();
    std::vector<Eigen::VectorXd> basis;
    std::vector<int> out;
    for (int t : visiting_order(layout)) {
        if (!(moduli[t] > 1e-9 * std::sqrt(cell_scale(layout, t)))) {
            continue;
        }
        Eigen::VectorXd row = Eigen::VectorXd::Zero(g.edge_count());
        for (EdgeId e : layout.triangles()[t].e) {
            row(e) += 1.0;
        }
        for (const auto& q : basis) {
            row -= q.dot(row) * q;
        }
        const double norm = row.norm();
        if (norm > 1e-8) {
            basis.push_back(row / norm);
            out.push_back(t);
        }
    }
    return out;
}

CellSystem canonical_gauge(const CellSystem& cells) {
    CellSystem out = canonical_phases(cells);
    if (!cells.graph().single_edged()) {
        if (auto tp = e9_triple(out); tp && tp->imag() < 0) {
            out = conjugate_cells(out);
        }
    }
    return out;
}

ModuliSolution solve_moduli(const FusionGraph& graph, const SolveOptions& options) {
    return solve_moduli(make_layout(graph, options.tolerance), options);
}

ModuliSolution solve_moduli(const LayoutPtr& layout, const SolveOptions& options) {
    ModuliSolution sol;
    const CellLayout& L = *layout;
    const int n = L.triangle_count();
    if (!L.graph().single_edged()) {
        sol.message = "moduli and phases couple through multi-edge Type I blocks; use the joint solve";
        return sol;
    }
    if (n == 0) {
        sol.status = L.type1_frames().empty() ? SolveStatus::Solved : SolveStatus::Infeasible;
        sol.max_residual = 0.0;
        for (const TypeIFrame& f : L.type1_frames()) {
            sol.max_residual = std::max(sol.max_residual, std::abs(type1_equation(L, f).rhs));
        }
        if (sol.status == SolveStatus::Solved) {
            sol.branches.push_back({});
        }
        return sol;
    }
    std::vector<double> scales(n);
    for (int t = 0; t < n; ++t) {
        scales[t] = cell_scale(L, t);
    }
    const std::vector<ModuliEquation> eqs = moduli_equations(L, scales);
    LmOptions lm;
    lm.max_iterations = options.max_iterations;
    lm.non_negative = true;
    lm.residual_tolerance = 1e-15;
    struct Attempt {
        std::vector<double> x;
        double raw = 0.0;
    };
    const int restarts = std::max(1, options.restarts);
    auto attempts = run_restarts<Attempt>(restarts, options.threads, [&](int index) {
        std::mt19937_64 rng = restart_rng(options.seed, index);
        Eigen::VectorXd x0(n);
        for (int t = 0; t < n; ++t) {
            const auto& v = L.triangles()[t].v;
            const double hi = L.q2() * L.dim(v[0]) * L.dim(v[1]);
            std::uniform_real_distribution<double> u(0.0, hi);
            double s = u(rng);
            x0(t) = s > 0 ? s : hi * 0.5;
        }
        auto problem = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
            moduli_residual(eqs, x, r, J, true);
        };
        LmResult res = levenberg_marquardt(problem, x0, lm);
        Eigen::VectorXd raw;
        moduli_residual(eqs, res.x, raw, nullptr, false);
        Attempt a;
        a.x.assign(res.x.data(), res.x.data() + n);
        a.raw = raw.size() ? raw.cwiseAbs().maxCoeff() : 0.0;
        return a;
    });
    sol.restarts = restarts;
    double best = std::numeric_limits<double>::infinity();
    int best_index = 0;
    for (int i = 0; i < restarts; ++i) {
        if (attempts[i].raw < best) {
            best = attempts[i].raw;
            best_index = i;
        }
        if (attempts[i].raw < options.tolerance) {
            ++sol.converged;
            const bool known = std::any_of(sol.branches.begin(), sol.branches.end(),
                                           [&](const auto& b) { return same_branch(b, attempts[i].x); });
            if (!known) {
                sol.branches.push_back(attempts[i].x);
            }
        }
    }
    sol.max_residual = best;
    sol.status = verdict(best, options);
    sol.x = sol.branches.empty() ? attempts[best_index].x : sol.branches.front();
    sol.message = std::to_string(sol.branches.size()) + " moduli branch(es) from " + std::to_string(sol.converged) +
                  "/" + std::to_string(restarts) + " converged restarts";
    return sol;
}

SolveReport solve_phases(const LayoutPtr& layout, const ModuliSolution& moduli, const SolveOptions& options) {
    const CellLayout& L = *layout;
    const int n = L.triangle_count();
    if (moduli.status == SolveStatus::Infeasible) {
        return failure_report(SolveStatus::Infeasible, moduli.max_residual, options, moduli.restarts,
                              "moduli subsystem has no solution");
    }
    if (moduli.branches.empty()) {
        return failure_report(verdict(moduli.max_residual, options), moduli.max_residual, options, moduli.restarts,
                              "no converged moduli branch");
    }
    std::vector<double> scales(n);
    for (int t = 0; t < n; ++t) {
        scales[t] = cell_scale(L, t);
    }
    const std::vector<ScaledEquation> eqs = all_equations(L, scales);
    const int m = static_cast<int>(eqs.size());
    LmOptions lm;
    lm.max_iterations = options.max_iterations;
    lm.residual_tolerance = 1e-15;
    const int restarts = std::max(1, options.restarts);
    double best = std::numeric_limits<double>::infinity();
    int total = 0;
    int converged = 0;
    for (const auto& x : moduli.branches) {
        std::vector<double> mod(n);
        for (int t = 0; t < n; ++t) {
            mod[t] = std::sqrt(std::max(0.0, x[t]));
        }
        const std::vector<int> fixed = gauge_fixed_triangles(L, mod);
        std::vector<char> is_fixed(n, 0);
        for (int t : fixed) {
            is_fixed[t] = 1;
        }
        std::vector<int> free_cells;
        std::vector<int> slot(n, -1);
        for (int t = 0; t < n; ++t) {
            if (!is_fixed[t] && mod[t] > 1e-9 * std::sqrt(scales[t])) {
                slot[t] = static_cast<int>(free_cells.size());
                free_cells.push_back(t);
            }
        }
        const int k = static_cast<int>(free_cells.size());
        auto values_at = [&](const Eigen::VectorXd& theta) {
            std::vector<QComplex> v(n);
            for (int t = 0; t < n; ++t) {
                v[t] = slot[t] >= 0 ? std::polar(mod[t], theta(slot[t])) : (is_fixed[t] ? QComplex(mod[t], 0) : 0.0);
            }
            return v;
        };
        auto problem = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
            const std::vector<QComplex> v = values_at(theta);
            r.resize(2 * m);
            if (J) {
                J->setZero(2 * m, k);
            }
            for (int i = 0; i < m; ++i) {
                const double inv = 1.0 / eqs[i].scale;
                const QComplex val = evaluate(eqs[i].eq, v) * inv;
                r(2 * i) = val.real();
                r(2 * i + 1) = val.imag();
                if (!J) {
                    continue;
                }
                for (const Monomial& mono : eqs[i].eq.terms) {
                    monomial_derivatives(mono, v, [&](int cell, bool conj, QComplex others) {
                        if (slot[cell] < 0) {
                            return;
                        }
                        const QComplex f = conj ? std::conj(v[cell]) : v[cell];
                        const QComplex d = others * f * (conj ? QComplex(0, -1) : QComplex(0, 1)) * inv;
                        (*J)(2 * i, slot[cell]) += d.real();
                        (*J)(2 * i + 1, slot[cell]) += d.imag();
                    });
                }
            }
        };
        const int tries = k == 0 ? 1 : restarts;
        struct Attempt {
            Eigen::VectorXd theta;
            double raw = 0.0;
        };
        auto attempts = run_restarts<Attempt>(tries, options.threads, [&](int index) {
            std::mt19937_64 rng = restart_rng(options.seed ^ 0x5bd1e995u, index);
            std::uniform_real_distribution<double> u(0.0, kTwoPi);
            Eigen::VectorXd theta(k);
            for (int i = 0; i < k; ++i) {
                theta(i) = u(rng);
            }
            Attempt a;
            a.theta = k == 0 ? theta : levenberg_marquardt(problem, theta, lm).x;
            a.raw = raw_max_residual(eqs, values_at(a.theta));
            return a;
        });
        total += tries;
        int first = -1;
        for (int i = 0; i < tries; ++i) {
            best = std::min(best, attempts[i].raw);
            if (attempts[i].raw < options.tolerance) {
                ++converged;
                if (first < 0) {
                    first = i;
                }
            }
        }
        if (first >= 0) {
            CellSystem cells = canonical_gauge(CellSystem(layout, values_at(attempts[first].theta)));
            SolveReport rep;
            rep.status = SolveStatus::Solved;
            rep.max_residual = verify(cells, options.tolerance).max_residual;
            rep.best_residual = attempts[first].raw;
            rep.restarts = moduli.restarts + total;
            rep.converged = converged;
            rep.seed = options.seed;
            rep.invariants = try_invariants(cells);
            rep.cells = std::move(cells);
            rep.message = std::to_string(moduli.branches.size()) + " moduli branch(es); " + std::to_string(k) +
                          " free phase(s)";
            return rep;
        }
    }
    return failure_report(verdict(best, options), best, options, moduli.restarts + total,
                          "phase stage did not converge on any moduli branch");
}

namespace {

SolveReport solve_joint(const LayoutPtr& layout, const SolveOptions& options) {
    const CellLayout& L = *layout;
    const int n = L.triangle_count();
    std::vector<double> scales(n);
    for (int t = 0; t < n; ++t) {
        scales[t] = cell_scale(L, t);
    }
    const std::vector<ScaledEquation> eqs = all_equations(L, scales);
    const int m = static_cast<int>(eqs.size());
    auto values_at = [&](const Eigen::VectorXd& z) {
        std::vector<QComplex> v(n);
        for (int t = 0; t < n; ++t) {
            v[t] = QComplex(z(2 * t), z(2 * t + 1));
        }
        return v;
    };
    auto problem = [&](const Eigen::VectorXd& z, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
        const std::vector<QComplex> v = values_at(z);
        r.resize(2 * m);
        if (J) {
            J->setZero(2 * m, 2 * n);
        }
        for (int i = 0; i < m; ++i) {
            const double inv = 1.0 / eqs[i].scale;
            const QComplex val = evaluate(eqs[i].eq, v) * inv;
            r(2 * i) = val.real();
            r(2 * i + 1) = val.imag();
            if (!J) {
                continue;
            }
            for (const Monomial& mono : eqs[i].eq.terms) {
                monomial_derivatives(mono, v, [&](int cell, bool conj, QComplex others) {
                    const QComplex dre = others * inv;
                    const QComplex dim = others * inv * (conj ? QComplex(0, -1) : QComplex(0, 1));
                    (*J)(2 * i, 2 * cell) += dre.real();
                    (*J)(2 * i + 1, 2 * cell) += dre.imag();
                    (*J)(2 * i, 2 * cell + 1) += dim.real();
                    (*J)(2 * i + 1, 2 * cell + 1) += dim.imag();
                });
            }
        }
    };
    LmOptions lm;
    lm.max_iterations = options.max_iterations;
    lm.residual_tolerance = 1e-15;
    const int restarts = std::max(1, options.restarts);
    struct Attempt {
        Eigen::VectorXd z;
        double raw = 0.0;
    };
    auto attempts = run_restarts<Attempt>(restarts, options.threads, [&](int index) {
        std::mt19937_64 rng = restart_rng(options.seed, index);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Eigen::VectorXd z(2 * n);
        for (int t = 0; t < n; ++t) {
            const QComplex c = std::polar(std::sqrt(u(rng) * scales[t]), kTwoPi * u(rng));
            z(2 * t) = c.real();
            z(2 * t + 1) = c.imag();
        }
        Attempt a;
        a.z = levenberg_marquardt(problem, z, lm).x;
        a.raw = raw_max_residual(eqs, values_at(a.z));
        return a;
    });
    double best = std::numeric_limits<double>::infinity();
    std::vector<CellSystem> found;
    std::vector<std::optional<QComplex>> triples;
    int converged = 0;
    for (int i = 0; i < restarts; ++i) {
        best = std::min(best, attempts[i].raw);
        if (attempts[i].raw >= options.tolerance) {
            continue;
        }
        ++converged;
        CellSystem c = canonical_phases(CellSystem(layout, values_at(attempts[i].z)));
        const auto tp = e9_triple(c);
        const bool known = std::any_of(triples.begin(), triples.end(), [&](const auto& o) {
            if (!tp || !o) {
                return !tp && !o;
            }
            return std::abs(*tp - *o) <= 1e-6 * (1.0 + std::abs(*tp));
        });
        if (!known) {
            found.push_back(std::move(c));
            triples.push_back(tp);
        }
    }
    if (found.empty()) {
        return failure_report(verdict(best, options), best, options, restarts, "joint solve did not converge");
    }
    int pick = 0;
    for (int i = 0; i < static_cast<int>(found.size()); ++i) {
        if (triples[i] && triples[i]->imag() >= 0) {
            pick = i;
            break;
        }
    }
    SolveReport rep;
    rep.status = SolveStatus::Solved;
    CellSystem cells = canonical_gauge(found[pick]);
    for (int i = 0; i < static_cast<int>(found.size()); ++i) {
        if (i != pick) {
            rep.alternatives.push_back(found[i]);
        }
    }
    rep.max_residual = verify(cells, options.tolerance).max_residual;
    rep.best_residual = best;
    rep.restarts = restarts;
    rep.converged = converged;
    rep.seed = options.seed;
    rep.invariants = try_invariants(cells);
    rep.cells = std::move(cells);
    rep.message = "joint complex solve; " + std::to_string(found.size()) + " gauge class(es) found";
    return rep;
}

}  // namespace

SolveReport solve(const FusionGraph& graph, const SolveOptions& options) {
    return solve(make_layout(graph, options.tolerance), options);
}

SolveReport solve(const LayoutPtr& layout, const SolveOptions& options) {
    const CellLayout& L = *layout;
    if (L.triangle_count() == 0) {
        const bool ok = L.type1_frames().empty();
        SolveReport rep = failure_report(ok ? SolveStatus::Solved : SolveStatus::Infeasible, 0.0, options, 0,
                                         ok ? "no triangles and no Type I frames" : "Type I frames without triangles");
        if (ok) {
            rep.cells = CellSystem(layout, {});
        } else {
            double worst = 0.0;
            for (const TypeIFrame& f : L.type1_frames()) {
                worst = std::max(worst, std::abs(type1_equation(L, f).rhs));
            }
            rep.best_residual = rep.max_residual = worst;
        }
        return rep;
    }
    if (!L.graph().single_edged()) {
        return solve_joint(layout, options);
    }
    const ModuliSolution moduli = solve_moduli(layout, options);
    return solve_phases(layout, moduli, options);
}

VerifyReport verify(const CellSystem& cells, double tolerance) {
    const CellLayout& L = cells.layout();
    VerifyReport rep;
    rep.tolerance = tolerance;
    auto consider = [&](const FrameResidual& f, double& kind_max) {
        const double a = std::abs(f.residual);
        kind_max = std::max(kind_max, a);
        if (!rep.worst || a > std::abs(rep.worst->residual)) {
            rep.worst = f;
        }
    };
    for (size_t i = 0; i < L.type1_frames().size(); ++i) {
        FrameResidual f{EquationKind::TypeI, static_cast<int>(i), type1_residual(cells, L.type1_frames()[i])};
        consider(f, rep.max_type1);
        rep.type1.push_back(f);
    }
    for (size_t i = 0; i < L.type2_frames().size(); ++i) {
        FrameResidual f{EquationKind::TypeII, static_cast<int>(i), type2_residual(cells, L.type2_frames()[i])};
        consider(f, rep.max_type2);
        rep.type2.push_back(f);
    }
    rep.max_residual = std::max(rep.max_type1, rep.max_type2);
    rep.pass = rep.max_residual < tolerance;
    return rep;
}

std::string describe_frame(const CellLayout& layout, const FrameResidual& f) {
    const FusionGraph& g = layout.graph();
    if (f.kind == EquationKind::TypeI) {
        const TypeIFrame& fr = layout.type1_frames().at(f.frame);
        return "TypeI(" + g.vertex(fr.a).id + "," + g.vertex(fr.b).id + ";" + g.edge(fr.alpha).id + "," +
               g.edge(fr.alpha2).id + ")";
    }
    const TypeIIFrame& fr = layout.type2_frames().at(f.frame);
    std::string s = "TypeII(";
    for (int i = 0; i < 4; ++i) {
        s += g.vertex(fr.a[i]).id + (i < 3 ? "," : ";");
    }
    for (int i = 0; i < 4; ++i) {
        s += g.edge(fr.alpha[i]).id + (i < 3 ? "," : ")");
    }
    return s;
}

bool frame_touches(const CellLayout& layout, const FrameResidual& f, int t) {
    const Equation eq = f.kind == EquationKind::TypeI ? type1_equation(layout, layout.type1_frames().at(f.frame))
                                                      : type2_equation(layout, layout.type2_frames().at(f.frame));
    for (const Monomial& m : eq.terms) {
        for (const Factor& x : m.factors) {
            if (x.cell == t) {
                return true;
            }
        }
    }
    return false;
}

Z9Certificate certify_infeasible_z9(int digits) {
    Z9Certificate cert;
    cert.digits = digits;
    PrecisionGuard guard(digits + 10);
    using boost::multiprecision::sqrt;
    using boost::multiprecision::abs;
    const HighReal s3 = sqrt(HighReal(3));
    const HighReal q2 = sqrt(2 + s3);
    const HighReal S = q2 / s3;
    const HighReal R = (1 + s3) / 3;
    const HighReal disc = sqrt(S * S - (1 + s3) * (S * S - R));
    const HighReal c_plus = (S - disc) / (1 + s3);
    const HighReal c_minus = (S + disc) / (1 + s3);
    const HighReal b_plus = S - c_plus;
    const HighReal b_minus = S - c_minus;
    cert.b_plus = to_string(b_plus, digits);
    cert.b_minus = to_string(b_minus, digits);
    cert.c_plus = to_string(c_plus, digits);
    cert.c_minus = to_string(c_minus, digits);
    HighReal best = -1;
    for (int mask = 0; mask < 8; ++mask) {
        Z9Branch br;
        HighReal sum = 0, sum2 = 0;
        for (int j = 0; j < 3; ++j) {
            const bool plus = ((mask >> j) & 1) == 0;
            br.signs[j] = plus ? 1 : -1;
            const HighReal b = plus ? b_plus : b_minus;
            sum += b;
            sum2 += b * b;
        }
        const HighReal a = q2 - sum;
        const HighReal violation = abs(a * a + s3 * sum2 - 2);
        br.a = to_string(a, digits);
        br.violation = to_string(violation, digits);
        br.violation_value = violation.convert_to<double>();
        if (best < 0 || violation < best) {
            best = violation;
        }
        cert.branches.push_back(br);
    }
    cert.min_violation = to_string(best, digits);
    cert.gap = best.convert_to<double>();
    cert.infeasible = best > 0;
    return cert;
}

}  // namespace qcells
