#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "qcells/catalog.hpp"
#include "qcells/errors.hpp"
#include "qcells/solver.hpp"

using namespace qcells;

namespace {

double max_abs_residual(const CellSystem& cells) { return verify(cells).max_residual; }

const TypeIIFrame* find_frame(const CellLayout& layout, const std::array<std::string, 4>& ids) {
    const FusionGraph& g = layout.graph();
    for (const auto& f : layout.type2_frames()) {
        std::multiset<std::string> have, want(ids.begin(), ids.end());
        for (int i = 0; i < 4; ++i) {
            have.insert(g.vertex(f.a[i]).id);
        }
        if (have == want && f.degeneracy == Degeneracy::None) {
            return &f;
        }
    }
    return nullptr;
}

}  // namespace

TEST_CASE("layout bookkeeping") {
    const LayoutPtr layout = make_layout(e9_graph());
    CHECK(layout->triangle_count() == 22);
    CHECK(layout->type1_frames().size() == 30);
    CHECK(std::abs(layout->q2() - qint(2, layout->context())) < 1e-15);
    for (int t = 0; t < layout->triangle_count(); ++t) {
        const OrientedTriangle& tri = layout->triangles()[t];
        for (int r = 0; r < 3; ++r) {
            const OrientedTriangle rot = rotate(tri, r);
            CHECK(layout->find_triangle(rot.e[0], rot.e[1], rot.e[2]) == t);
        }
    }
    CHECK(layout->named_triangle("c_2^1") >= 0);
    CHECK(layout->named_triangle("nonexistent") == -1);
    CHECK(layout->find_triangle(0, 0, 0) == -1);
    CHECK_THROWS_AS(layout->triangle_index(0, 0, 0), MissingCell);
}

TEST_CASE("cyclic access returns the stored entry") {
    const CellSystem cells = fixtures::e9_solution_ocneanu();
    const CellLayout& layout = cells.layout();
    for (int t = 0; t < layout.triangle_count(); ++t) {
        const OrientedTriangle& tri = layout.triangles()[t];
        for (int r = 0; r < 3; ++r) {
            const OrientedTriangle rot = rotate(tri, r);
            CHECK(cells.value(rot.e[0], rot.e[1], rot.e[2]) == cells.value(t));
        }
    }
}

TEST_CASE("missing cells and shape errors") {
    const LayoutPtr layout = make_layout(e5_graph());
    CellSystem empty(layout);
    CHECK_FALSE(empty.complete());
    CHECK_FALSE(empty.has(0));
    CHECK_THROWS_AS(empty.value(0), MissingCell);
    CHECK_THROWS_AS(empty.value("tau_0"), MissingCell);
    CHECK_THROWS_AS(type1_residual(empty, layout->type1_frames()[0]), MissingCell);
    CHECK_THROWS_AS(type2_residual(empty, layout->type2_frames()[0]), MissingCell);
    CHECK_THROWS_AS(verify(empty), MissingCell);
    CHECK_THROWS_AS(CellSystem(layout, std::vector<QComplex>(3)), ShapeMismatch);
    CHECK_THROWS(empty.set("not_a_cell", 1.0));

    const CellSystem e9 = fixtures::e9_solution_main();
    GaugeChoice bad = GaugeChoice::identity(e9.graph());
    bad.blocks.begin()->second = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS(apply_gauge(e9, bad), ShapeMismatch);
}

TEST_CASE("Type I residuals") {
    const CellSystem e5 = fixtures::e5_solution();
    const CellLayout& layout = e5.layout();
    for (const auto& f : layout.type1_frames()) {
        CHECK(std::abs(type1_residual(e5, f)) < 1e-9);
    }
    const CellSystem zero(e5.layout_ptr(), std::vector<QComplex>(e5.size()));
    for (const auto& f : layout.type1_frames()) {
        const QComplex r = type1_residual(zero, f);
        CHECK(std::abs(r + layout.q2() * layout.dim(f.a) * layout.dim(f.b)) < 1e-12);
    }

    const LayoutPtr a1 = make_layout(a_k_graph(1));
    CellSystem t(a1, {std::sqrt(std::sqrt(2.0))});
    for (const auto& f : a1->type1_frames()) {
        CHECK(std::abs(type1_residual(t, f)) < 1e-12);
    }
    CHECK(std::abs(std::sqrt(2.0) - fixtures::ak_up(0, 0, a1->context())) < 1e-12);
}

TEST_CASE("E5 Type II residuals") {
    const CellSystem e5 = fixtures::e5_solution();
    const CellLayout& layout = e5.layout();
    CHECK(max_abs_residual(e5) < 1e-9);

    // nu_1 = +nu_0 breaks exactly the non-degenerate frames.
    CellSystem wrong = e5;
    wrong.set("nu_1", e5.value("nu_0"));
    double worst_none = 0, worst_other = 0;
    for (const auto& f : layout.type2_frames()) {
        const double r = std::abs(type2_residual(wrong, f));
        if (f.degeneracy == Degeneracy::None) {
            worst_none = std::max(worst_none, r);
        } else {
            worst_other = std::max(worst_other, r);
        }
    }
    CHECK(worst_none > 1e-3);
    CHECK(worst_other < 1e-9);
    const TypeIIFrame* f = find_frame(layout, {"2_0", "2_4", "2_3", "2_1"});
    REQUIRE(f != nullptr);
    CHECK(std::abs(type2_residual(e5, *f)) < 1e-9);
    CHECK(std::abs(type2_residual(wrong, *f)) > 1e-3);

    const CellSystem zero(e5.layout_ptr(), std::vector<QComplex>(e5.size()));
    for (const auto& fr : layout.type2_frames()) {
        const Equation eq = type2_equation(layout, fr);
        CHECK(std::abs(type2_residual(zero, fr) + eq.rhs) < 1e-12);
    }
}

TEST_CASE("compiled equations agree with direct residuals") {
    const CellSystem cells = fixtures::e9_solution_evans();
    const CellLayout& layout = cells.layout();
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    std::vector<QComplex> values(cells.size());
    for (auto& v : values) {
        v = QComplex(normal(rng), normal(rng));
    }
    const CellSystem random(cells.layout_ptr(), values);
    for (const auto& f : layout.type1_frames()) {
        CHECK(std::abs(evaluate(type1_equation(layout, f), values) - type1_residual(random, f)) < 1e-9);
    }
    for (const auto& f : layout.type2_frames()) {
        CHECK(std::abs(evaluate(type2_equation(layout, f), values) - type2_residual(random, f)) < 1e-9);
    }
}

TEST_CASE("identity and edge phase gauges") {
    const CellSystem e5 = fixtures::e5_solution();
    const CellSystem same = apply_gauge(e5, GaugeChoice::identity(e5.graph()));
    for (int t = 0; t < e5.size(); ++t) {
        CHECK(std::abs(same.value(t) - e5.value(t)) < 1e-15);
    }

    std::vector<double> phase(e5.graph().edge_count());
    for (size_t i = 0; i < phase.size(); ++i) {
        phase[i] = 0.37 * static_cast<double>(i) + 0.1;
    }
    const CellSystem moved = apply_gauge(e5, GaugeChoice::edge_phases(e5.graph(), phase));
    for (int t = 0; t < e5.size(); ++t) {
        const auto& e = e5.layout().triangles()[t].e;
        const QComplex factor = std::polar(1.0, phase[e[0]] + phase[e[1]] + phase[e[2]]);
        CHECK(std::abs(moved.value(t) - factor * e5.value(t)) < 1e-12);
    }
    CHECK_THROWS_AS(GaugeChoice::edge_phases(e5.graph(), {0.0}), ShapeMismatch);
}

TEST_CASE("random gauges are unitary and preserve residuals") {
    std::mt19937_64 rng(11);
    for (const CellSystem& cells : {fixtures::e5_solution(), fixtures::e9_solution_main(), fixtures::e21_solution()}) {
        for (int trial = 0; trial < 20; ++trial) {
            const GaugeChoice g = GaugeChoice::random(cells.graph(), rng);
            for (const auto& [key, u] : g.blocks) {
                CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <
                      1e-12);
            }
            CHECK(max_abs_residual(apply_gauge(cells, g)) < 1e-8);
        }
    }
}

TEST_CASE("unitary on the double edge preserves the c-vector norms") {
    const CellSystem e9 = fixtures::e9_solution_main();
    const FusionGraph& g = e9.graph();
    GaugeChoice gauge = GaugeChoice::identity(g);
    const auto key = std::make_pair(g.vertex_index("3_0"), g.vertex_index("3_1"));
    const double t = 0.7;
    Eigen::Matrix2cd u;
    u << std::cos(t), -std::sin(t) * QComplex(0, 1), -std::sin(t) * QComplex(0, 1), std::cos(t);
    gauge.blocks.at(key) = u;
    const CellSystem moved = apply_gauge(e9, gauge);
    for (int j = 0; j < 3; ++j) {
        const std::string s = "^" + std::to_string(j);
        const double before = std::norm(e9.value("c_1" + s)) + std::norm(e9.value("c_2" + s));
        const double after = std::norm(moved.value("c_1" + s)) + std::norm(moved.value("c_2" + s));
        CHECK(std::abs(before - after) < 1e-9);
        CHECK(std::abs(moved.value("c_1" + s) - e9.value("c_1" + s)) > 1e-3);
    }
}

TEST_CASE("E5 invariant C") {
    const InvariantReport r = gauge_invariants(fixtures::e5_solution());
    const auto c = r.get("C");
    REQUIRE(c.has_value());
    CHECK(std::abs(*c - QComplex(-(239 + 169 * std::sqrt(2.0)) / 2, 0)) < 1e-9);
    CHECK(r.moduli.size() == 14);
    CHECK(std::is_sorted(r.moduli.begin(), r.moduli.end()));
    CHECK_FALSE(r.get("missing").has_value());
}

TEST_CASE("E9 invariants across the three reference systems") {
    const double s3 = std::sqrt(3.0);
    const double det = 0.5 * 9 * std::pow(1 + s3, 4);
    const double tr = std::pow(2.0, -0.5) * 3 * std::pow(1 + s3, 3);
    const double norm = std::pow(2.0, -0.5) * s3 * std::pow(1 + s3, 3);
    const double triple_abs = std::pow(2.0, -1.5) * std::pow(3.0, 1.5) * std::pow(1 + s3, 7.5);
    std::vector<InvariantReport> reports;
    for (const CellSystem& cells :
         {fixtures::e9_solution_main(), fixtures::e9_solution_evans(), fixtures::e9_solution_ocneanu()}) {
        CHECK(verify(cells, 1e-9).pass);
        const InvariantReport r = gauge_invariants(cells);
        CHECK(r.moduli.empty());
        CHECK(std::abs(*r.get("det_MdagM") - det) < 1e-9 * det);
        CHECK(std::abs(*r.get("tr_MdagM") - tr) < 1e-9 * tr);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(*r.get("c_norm^" + std::to_string(j)) - norm) < 1e-9 * norm);
        }
        reports.push_back(r);
    }
    for (const auto& r : reports) {
        for (const char* name : {"c_triple", "d_triple"}) {
            const QComplex a = *r.get(name);
            const QComplex b = *reports[0].get(name);
            CHECK(std::min(std::abs(a - b), std::abs(a - std::conj(b))) < 1e-9 * std::abs(b));
        }
        for (const char* name : {"c_overlap_abs2^01", "c_overlap_abs2^12", "d_norm^0"}) {
            CHECK(std::abs(*r.get(name) - *reports[0].get(name)) < 1e-9 * std::abs(*reports[0].get(name)));
        }
    }
    for (const auto& r : reports) {
        CHECK(std::abs(std::abs(*r.get("c_triple")) - triple_abs) < 1e-9 * triple_abs);
    }
}

TEST_CASE("conjugation maps solutions to solutions") {
    const CellSystem e9 = fixtures::e9_solution_main();
    const CellSystem c = conjugate_cells(e9);
    CHECK(verify(c).pass);
    const QComplex a = *gauge_invariants(e9).get("c_triple");
    const QComplex b = *gauge_invariants(c).get("c_triple");
    CHECK(std::abs(a - std::conj(b)) < 1e-9 * std::abs(a));
}

TEST_CASE("invariants on an unlabelled multi-edge graph are unsupported") {
    const FusionGraph e9 = e9_graph();
    const FusionGraph plain("plain", 12, e9.vertices(), e9.edges(), e9.unit());
    const LayoutPtr layout = make_layout(plain);
    const CellSystem cells(layout, std::vector<QComplex>(layout->triangle_count(), 1.0));
    CHECK_THROWS_AS(gauge_invariants(cells), UnsupportedGraph);
}

TEST_CASE("single-edge moduli survive random gauges") {
    std::mt19937_64 rng(3);
    const CellSystem e21 = fixtures::e21_solution();
    const InvariantReport base = gauge_invariants(e21);
    for (int trial = 0; trial < 10; ++trial) {
        const InvariantReport r = gauge_invariants(apply_gauge(e21, GaugeChoice::random(e21.graph(), rng)));
        for (size_t i = 0; i < base.moduli.size(); ++i) {
            CHECK(std::abs(r.moduli[i] - base.moduli[i]) < 1e-8);
        }
    }
}
