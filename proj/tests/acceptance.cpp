#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "qcells/catalog.hpp"
#include "qcells/errors.hpp"
#include "qcells/cell_system.hpp"
#include "qcells/fusion_graph.hpp"
#include "qcells/fusion_ring.hpp"
#include "qcells/hecke.hpp"
#include "qcells/numerics.hpp"
#include "qcells/solver.hpp"

using namespace qcells;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double rel_err(QComplex got, QComplex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

QComplex invariant(const InvariantReport& r, const std::string& name) {
    const auto v = r.get(name);
    if (!v) {
        throw Error("missing invariant " + name);
    }
    return *v;
}

// Squared modulus predicted by the A_k closed forms for an alcove triangle.
double closed_form(const CellLayout& layout, const OrientedTriangle& t) {
    const FusionGraph& g = layout.graph();
    std::array<std::pair<int, int>, 3> w;
    for (int i = 0; i < 3; ++i) {
        w[i] = *g.vertex(t.v[i]).weight;
    }
    auto level = [](const std::pair<int, int>& p) { return p.first + p.second; };
    const int low = std::min({level(w[0]), level(w[1]), level(w[2])});
    int at_low = 0;
    for (const auto& p : w) {
        at_low += level(p) == low;
    }
    for (const auto& p : w) {
        if (at_low == 1 && level(p) == low) {
            return fixtures::ak_up(p.first, p.second, layout.context());
        }
        if (at_low == 2 && level(p) == low + 1) {
            return fixtures::ak_down(p.first - 1, p.second, layout.context());
        }
    }
    throw Error("triangle is not an alcove triangle");
}

void criterion1(Outcome& o) {
    const auto k8 = RootOfUnityContext::at_altitude(8);
    const auto k12 = RootOfUnityContext::at_altitude(12);
    const double e1 = std::abs(qint(2, k8) - std::sqrt(2 + std::sqrt(2.0)));
    const double e2 = std::abs(qint(3, k8) - (1 + std::sqrt(2.0)));
    const double e3 = std::abs(qint(3, k12) - (1 + std::sqrt(3.0)));
    const double worst = std::max({e1, e2, e3});
    o.detail << "max error " << worst;
    o.require(worst < 1e-12, "q-number error >= 1e-12");
}

void criterion2(Outcome& o) {
    const FusionGraph e5 = e5_graph();
    const FusionGraph e9 = e9_graph();
    const FusionGraph e21 = e21_graph();
    const FusionGraph z9 = z9_graph();
    const int e5_tri = static_cast<int>(enumerate_triangles(e5).size());
    const int e5_t1 = type1_vertex_pair_count(e5);
    const auto e5_t2 = enumerate_type2_frames(e5, false);
    int doubly = 0, singly = 0, none = 0;
    for (const auto& f : e5_t2) {
        doubly += f.degeneracy == Degeneracy::Doubly;
        singly += f.degeneracy == Degeneracy::Singly;
        none += f.degeneracy == Degeneracy::None;
    }
    const int e9_tri = static_cast<int>(enumerate_triangles(e9).size());
    const int e9_t1 = type1_vertex_pair_count(e9);
    const int e21_tri = static_cast<int>(enumerate_triangles(e21).size());
    const int e21_t1 = type1_vertex_pair_count(e21);
    o.detail << "E5 " << e5_tri << "/" << e5_t1 << "/" << e5_t2.size() << " (" << doubly << "/" << singly << "/"
             << none << "), E9 " << e9_tri << "/" << e9_t1 << ", E21 " << e21.vertex_count() << "/" << e21_tri
             << "/" << e21_t1 << ", Z9 " << z9.vertex_count();
    o.require(e5_tri == 14 && e5_t1 == 24 && e5_t2.size() == 108, "E5 counts");
    o.require(doubly == 24 && singly == 72 && none == 12, "E5 degeneracy split");
    o.require(e9_tri == 22 && e9_t1 == 24, "E9 counts");
    o.require(e21.vertex_count() == 24 && e21_tri == 40 && e21_t1 == 60, "E21 counts");
    o.require(z9.vertex_count() == 12, "Z9 vertex count");
}

void criterion3(Outcome& o) {
    struct Case {
        FusionGraph graph;
        std::map<std::string, QReal> expected;
    };
    const std::vector<Case> cases = {{e5_graph(), fixtures::e5_dimensions()},
                                     {e9_graph(), fixtures::e9_dimensions()},
                                     {e21_graph(), fixtures::e21_dimensions()}};
    double worst_dim = 0, worst_pf = 0;
    for (const auto& c : cases) {
        const DimensionVector d = pf_dimensions(c.graph);
        o.require(static_cast<int>(c.expected.size()) == c.graph.vertex_count(), c.graph.name() + " vertex set");
        for (const auto& [id, value] : c.expected) {
            worst_dim = std::max(worst_dim, std::abs(d.at(c.graph.vertex_index(id)) - value));
        }
        worst_pf = std::max(worst_pf, std::abs(pf_eigenvalue(c.graph) - qint(3, c.graph.context())));
    }
    o.detail << "max dimension error " << worst_dim << ", max |PF - [3]| " << worst_pf;
    o.require(worst_dim < 1e-9, "dimension error");
    o.require(worst_pf < 1e-9, "PF eigenvalue");
}

void criterion4(Outcome& o) {
    double worst = 0;
    for (int k = 1; k <= 6; ++k) {
        const LayoutPtr layout = make_layout(a_k_graph(k));
        const ModuliSolution m = solve_moduli(layout);
        o.require(m.status == SolveStatus::Solved, "A" + std::to_string(k) + " moduli not solved");
        for (int t = 0; t < layout->triangle_count(); ++t) {
            worst = std::max(worst, std::abs(m.x.at(t) - closed_form(*layout, layout->triangles()[t])));
        }
    }
    o.detail << "A_k max error " << worst;
    o.require(worst < 1e-9, "A_k closed form mismatch");

    const auto classical = RootOfUnityContext::classical();
    const double c0 = std::max({std::abs(fixtures::ak_up(0, 0, classical) - 6),
                                std::abs(fixtures::ak_down(0, 1, classical) - 12),
                                std::abs(fixtures::ak_up(1, 0, classical) - 36),
                                std::abs(fixtures::ak_down(1, 1, classical) - 60)});
    // The truncated alcove fixes every triangle whose vertices all carry frames.
    double classical_err = 0;
    int interior = 0;
    for (int level : {4, 5, 6}) {
        const LayoutPtr layout = make_layout(a_infinity_graph(level));
        const ModuliSolution m = solve_moduli(layout);
        o.require(m.status == SolveStatus::Solved, "Ainf moduli not solved");
        for (int t = 0; t < layout->triangle_count(); ++t) {
            const OrientedTriangle& tri = layout->triangles()[t];
            bool inside = true;
            for (VertexId v : tri.v) {
                inside = inside && layout->graph().frame_vertex(v);
            }
            if (inside) {
                ++interior;
                classical_err = std::max(classical_err, std::abs(m.x.at(t) - closed_form(*layout, tri)));
            }
        }
    }
    o.detail << ", classical 6/12/36/60 error " << c0 << ", Ainf interior (" << interior << " cells) error "
             << classical_err;
    o.require(c0 < 1e-12 && classical_err < 1e-12, "classical limit");

    double weakest = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= 6; ++k) {
        const FusionGraph g = a_k_graph(k);
        const LayoutPtr layout = make_layout(g);
        const SolveReport solved = solve(layout);
        const RootOfUnityContext& ctx = layout->context();
        auto q = [&](int n) { return qint(n, ctx); };
        auto id = [&](int a, int b) { return g.vertex_index(weight_id(a, b)); };
        auto edge = [&](VertexId a, VertexId b) { return g.edges_between(a, b).at(0); };
        for (const auto& [kk, ll] : alcove_weights(k)) {
            if (ll < 1 || kk + ll + 1 > k) {
                continue;
            }
            const VertexId v0 = id(kk, ll), v1 = id(kk + 1, ll), up = id(kk, ll + 1), down = id(kk + 1, ll - 1);
            const int t_up = layout->triangle_index(edge(v0, v1), edge(v1, up), edge(up, v0));
            const int t_down = layout->triangle_index(edge(v0, v1), edge(v1, down), edge(down, v0));
            const double lambda = q(kk + 1) * q(kk + ll + 3) / (q(kk + 2) * q(kk + ll + 2));
            const double total = q(2) * layout->dim(v0) * layout->dim(v1);
            const double x_down = total / (1 + lambda);
            CellSystem cells = *solved.cells;
            cells.set(t_up, std::polar(std::sqrt(total - x_down), std::arg(cells.value(t_up))));
            cells.set(t_down, std::polar(std::sqrt(x_down), std::arg(cells.value(t_down))));
            double violation = 0;
            for (size_t i = 0; i < layout->type2_frames().size(); ++i) {
                const TypeIIFrame& f = layout->type2_frames()[i];
                const FrameResidual fr{EquationKind::TypeII, static_cast<int>(i), type2_residual(cells, f)};
                const bool touched = frame_touches(*layout, fr, t_up) || frame_touches(*layout, fr, t_down);
                if (f.degeneracy == Degeneracy::Doubly && touched) {
                    violation = std::max(violation, std::abs(fr.residual));
                }
            }
            weakest = std::min(weakest, violation);
        }
    }
    o.detail << ", rejected branch min violation " << weakest;
    o.require(weakest > 1e-6, "rejected branch satisfies Type II");
}

void criterion5(Outcome& o) {
    const SolveReport rep = solve(e5_graph());
    o.require(rep.status == SolveStatus::Solved && rep.cells.has_value(), "E5 solve");
    if (!rep.cells) {
        return;
    }
    const CellSystem& c = *rep.cells;
    const double s2 = std::sqrt(2.0);
    double err = 0;
    for (int i = 0; i < 6; ++i) {
        err = std::max(err, std::abs(std::norm(c.value("tau_" + std::to_string(i))) - std::sqrt(10 + 7 * s2)));
        err = std::max(err, std::abs(std::norm(c.value("mu_" + std::to_string(i))) - std::sqrt(5 + 7 * s2 / 2)));
    }
    for (const char* nu : {"nu_0", "nu_1"}) {
        err = std::max(err, std::abs(std::norm(c.value(nu)) - std::sqrt(29 + 41 * s2 / 2)));
    }
    const double sign = std::abs(c.value("nu_1") + c.value("nu_0"));
    const QComplex C = invariant(gauge_invariants(c), "C");
    const double c_err = std::abs(C - QComplex(-(239 + 169 * s2) / 2, 0));
    const VerifyReport fixture = verify(fixtures::e5_solution(), 1e-9);
    o.detail << "moduli error " << err << ", |nu_1 + nu_0| " << sign << ", C = " << C.real() << " (error "
             << c_err << "), reference verify " << fixture.max_residual;
    o.require(err < 1e-9, "E5 moduli");
    o.require(sign < 1e-9, "nu_1 = -nu_0");
    o.require(c_err < 1e-9, "invariant C");
    o.require(fixture.pass, "reference E5 verify");
}

void criterion6(Outcome& o) {
    const double s3 = std::sqrt(3.0);
    const double det = 0.5 * 9 * std::pow(1 + s3, 4);
    const double tr = std::pow(2.0, -0.5) * 3 * std::pow(1 + s3, 3);
    const double norm = std::pow(2.0, -0.5) * std::sqrt(3.0) * std::pow(1 + s3, 3);
    const std::vector<std::pair<std::string, CellSystem>> systems = {
        {"main", fixtures::e9_solution_main()},
        {"evans", fixtures::e9_solution_evans()},
        {"ocneanu", fixtures::e9_solution_ocneanu()}};

    double worst_verify = 0, worst_inv = 0, worst_triple = 0;
    std::vector<InvariantReport> reports;
    auto check_invariants = [&](const InvariantReport& r) {
        worst_inv = std::max(worst_inv, rel_err(invariant(r, "det_MdagM"), det));
        worst_inv = std::max(worst_inv, rel_err(invariant(r, "tr_MdagM"), tr));
        for (int j = 0; j < 3; ++j) {
            worst_inv = std::max(worst_inv, rel_err(invariant(r, "c_norm^" + std::to_string(j)), norm));
        }
    };
    auto triple_gap = [](QComplex a, QComplex b) { return std::min(rel_err(a, b), rel_err(a, std::conj(b))); };
    for (const auto& [name, cells] : systems) {
        const VerifyReport v = verify(cells, 1e-9);
        worst_verify = std::max(worst_verify, v.max_residual);
        o.require(v.pass, name + " verify");
        reports.push_back(gauge_invariants(cells));
        check_invariants(reports.back());
    }
    for (const auto& r : reports) {
        for (const char* t : {"c_triple", "d_triple"}) {
            worst_triple = std::max(worst_triple, triple_gap(invariant(r, t), invariant(reports[0], t)));
        }
    }

    SolveOptions opts;
    opts.restarts = 32;
    const SolveReport fresh = solve(e9_graph(), opts);
    o.require(fresh.status == SolveStatus::Solved && fresh.cells.has_value(), "fresh E9 solve");
    double fresh_inv = 0;
    if (fresh.cells) {
        const VerifyReport v = verify(*fresh.cells, 1e-8);
        o.require(v.pass, "fresh E9 residual");
        const InvariantReport r = gauge_invariants(*fresh.cells);
        const double before = worst_inv;
        check_invariants(r);
        fresh_inv = worst_inv;
        worst_inv = before;
        for (const char* t : {"c_triple", "d_triple"}) {
            fresh_inv = std::max(fresh_inv, triple_gap(invariant(r, t), invariant(reports[0], t)));
        }
        o.detail << "fresh solve residual " << v.max_residual << ", ";
    }
    o.detail << "reference verify " << worst_verify << ", invariant error " << worst_inv
             << ", triple mismatch " << worst_triple << ", fresh invariant error " << fresh_inv;
    o.require(worst_inv < 1e-9, "Det/Tr/norm invariants");
    o.require(worst_triple < 1e-9, "triple products");
    o.require(fresh_inv < 1e-9, "fresh invariants");
}

void criterion7(Outcome& o) {
    const FusionGraph g = e21_graph();
    const SolveReport rep = solve(g);
    o.require(rep.status == SolveStatus::Solved && rep.cells.has_value(), "E21 solve");
    if (!rep.cells) {
        return;
    }
    const auto moduli = fixtures::e21_squared_moduli();
    double err = 0;
    std::vector<std::string> negative;
    for (const auto& c : g.named_cells()) {
        const QComplex v = rep.cells->value(c.label);
        err = std::max(err, std::abs(std::norm(v) - moduli.at(c.family)));
        o.require(std::abs(v.imag()) < 1e-9, c.label + " not real");
        if (v.real() < 0) {
            negative.push_back(c.label);
        }
    }
    std::sort(negative.begin(), negative.end());
    const VerifyReport solved = verify(*rep.cells, 1e-9);
    const VerifyReport reference = verify(fixtures::e21_solution(), 1e-9);
    o.detail << "moduli error " << err << ", negative cells {";
    for (size_t i = 0; i < negative.size(); ++i) {
        o.detail << (i ? ", " : "") << negative[i];
    }
    o.detail << "}, verify " << solved.max_residual << ", reference verify " << reference.max_residual;
    o.require(err < 1e-9, "E21 moduli");
    const bool shape = negative.size() == 3 && negative[2] == "sigma2''" && negative[1] == "sigma2'" &&
                       negative[0].rfind("rho", 0) == 0;
    o.require(shape, "negative cell pattern");
    o.require(solved.pass && reference.pass, "E21 verify");
}

void criterion8(Outcome& o) {
    const Z9Certificate cert = certify_infeasible_z9(30);
    SolveOptions opts;
    opts.restarts = 200;
    const SolveReport rep = solve(z9_graph(), opts);
    o.detail << "certificate gap " << cert.gap << " at " << cert.digits << " digits, solve "
             << status_name(rep.status) << " with best residual " << rep.best_residual << " over "
             << rep.restarts << " restarts";
    o.require(cert.infeasible && cert.gap > 1e-3, "certificate gap");
    o.require(rep.status == SolveStatus::Infeasible && rep.best_residual > 1e-4, "numerical rejection");
}

void criterion9(Outcome& o) {
    for (int k = 1; k <= 6; ++k) {
        const RingCheck rc = check_fusion_ring(fusion_matrices(k));
        o.require(rc.commutative && rc.transpose_rule && rc.realization, "fusion ring at level " + std::to_string(k));
    }
    long long pairs = 0;
    for (const FusionGraph& g : {e5_graph(), e9_graph(), e21_graph(), z9_graph()}) {
        const NimrepReport r = nimrep_check(g);
        pairs += r.pairs_checked;
        o.require(r.pass, g.name() + " nimrep: " + r.message);
    }
    o.detail << "fusion rings k <= 6 exact, " << pairs << " annular products checked";
}

void criterion10(Outcome& o) {
    double worst_rhombus = 0, worst_path = 0;
    for (const FusionGraph& g : {a_k_graph(2), a_k_graph(3), e5_graph()}) {
        const SolveReport rep = solve(g);
        o.require(rep.cells.has_value(), g.name() + " solve");
        if (!rep.cells) {
            continue;
        }
        const HeckeReport h = check_hecke_relations(*rep.cells, 4);
        worst_rhombus = std::max(worst_rhombus, h.max_rhombus);
        worst_path = std::max(worst_path, h.max_path);
    }
    o.detail << "rhombus residual " << worst_rhombus << ", path residual " << worst_path;
    o.require(worst_rhombus < 1e-8 && worst_path < 1e-8, "Hecke relations");
}

void criterion11(Outcome& o) {
    std::vector<CellSystem> systems;
    for (const FusionGraph& g : {a_k_graph(2), a_k_graph(3), a_k_graph(4), a_infinity_graph(5)}) {
        systems.push_back(*solve(g).cells);
    }
    systems.push_back(fixtures::e5_solution());
    systems.push_back(fixtures::e9_solution_main());
    systems.push_back(fixtures::e21_solution());
    {
        // Z9 has no solution, so arbitrary cells exercise the covariance of the residuals.
        const LayoutPtr layout = make_layout(z9_graph());
        std::mt19937_64 rng(7);
        std::normal_distribution<double> normal;
        std::vector<QComplex> values(layout->triangle_count());
        for (auto& v : values) {
            v = QComplex(normal(rng), normal(rng));
        }
        systems.emplace_back(layout, values);
    }
    std::mt19937_64 rng(2024);
    double worst_res = 0, worst_inv = 0;
    for (const CellSystem& cells : systems) {
        const VerifyReport base = verify(cells);
        const InvariantReport inv = gauge_invariants(cells);
        const bool single = cells.graph().single_edged();
        for (int trial = 0; trial < 100; ++trial) {
            const CellSystem moved = apply_gauge(cells, GaugeChoice::random(cells.graph(), rng));
            const VerifyReport v = verify(moved);
            if (single) {
                for (size_t i = 0; i < v.type1.size(); ++i) {
                    worst_res = std::max(worst_res, std::abs(std::abs(v.type1[i].residual) - std::abs(base.type1[i].residual)));
                }
                for (size_t i = 0; i < v.type2.size(); ++i) {
                    worst_res = std::max(worst_res, std::abs(std::abs(v.type2[i].residual) - std::abs(base.type2[i].residual)));
                }
            } else {
                worst_res = std::max(worst_res, std::abs(v.max_residual - base.max_residual));
            }
            const InvariantReport after = gauge_invariants(moved);
            for (size_t i = 0; i < inv.moduli.size(); ++i) {
                worst_inv = std::max(worst_inv, std::abs(after.moduli.at(i) - inv.moduli[i]));
            }
            for (const auto& [name, value] : inv.values) {
                worst_inv = std::max(worst_inv, rel_err(invariant(after, name), value));
            }
        }
    }
    o.detail << systems.size() << " graphs x 100 gauges, residual drift " << worst_res << ", invariant drift "
             << worst_inv;
    o.require(worst_res < 1e-8, "residuals changed");
    o.require(worst_inv < 1e-8, "invariants changed");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"q-number regression", criterion1},
        {"counting suite", criterion2},
        {"dimension suite", criterion3},
        {"A_k closed form", criterion4},
        {"E5 end-to-end", criterion5},
        {"E9 verification and invariants", criterion6},
        {"E21 moduli and signs", criterion7},
        {"Z9 rejection", criterion8},
        {"nimrep layer", criterion9},
        {"Hecke relations", criterion10},
        {"gauge invariance", criterion11},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
                  << o.detail.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
