#include "fixtures.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "qcells/catalog.hpp"

namespace fixtures {

using qcells::QComplex;
using qcells::qint;

namespace {

const QReal s2 = std::sqrt(2.0);
const QReal s3 = std::sqrt(3.0);
const QReal s6 = std::sqrt(6.0);

QComplex w(int j) { return std::polar(1.0, 2.0 * std::numbers::pi * j / 3.0); }

std::string sup(int j) { return "^" + std::to_string(j); }

struct E9Data {
    std::array<std::array<QComplex, 2>, 3> c, d;
    std::array<std::array<QComplex, 2>, 2> e;
};

CellSystem fill_e9(const E9Data& x) {
    CellSystem cells(qcells::make_layout(qcells::e9_graph()));
    const QReal a = std::pow(2.0, -0.25) * (1 + s3);
    const QReal b = std::pow(2.0, -0.25) * std::pow(3.0, 0.25) * (1 + s3);
    for (int j = 0; j < 3; ++j) {
        cells.set("a" + sup(j), a);
        cells.set("b" + sup(j), b);
        for (int k = 0; k < 2; ++k) {
            cells.set("c_" + std::to_string(k + 1) + sup(j), x.c[j][k]);
            cells.set("d_" + std::to_string(k + 1) + sup(j), x.d[j][k]);
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            cells.set("e_" + std::to_string(k + 1) + std::to_string(l + 1), x.e[k][l]);
        }
    }
    return cells;
}

QReal f4(QReal a, QReal b, QReal c, QReal d) { return std::sqrt(a + b * s2 + c * s3 + d * s6); }
QReal g4(QReal a, QReal b, QReal c, QReal d) { return (a + b * s2 + c * s3 + d * s6) / 2; }

}  // namespace

CellSystem e5_solution() {
    CellSystem cells(qcells::make_layout(qcells::e5_graph()));
    const QReal tau = std::pow(10 + 7 * s2, 0.25);
    const QReal mu = std::pow(5 + 3.5 * s2, 0.25);
    const QReal nu = std::pow(29 + 20.5 * s2, 0.25);
    for (int i = 0; i < 6; ++i) {
        cells.set("tau_" + std::to_string(i), tau);
        cells.set("mu_" + std::to_string(i), mu);
    }
    cells.set("nu_0", nu);
    cells.set("nu_1", -nu);
    return cells;
}

CellSystem e9_solution_main() {
    const QReal rp = std::sqrt(78 + 45 * s3) + std::sqrt(12 + 7 * s3);
    const QReal rm = std::sqrt(78 + 45 * s3) - std::sqrt(12 + 7 * s3);
    const QReal Rp = 3 * std::pow(2 + s3, 1.5) + 3 * std::sqrt(12 + 7 * s3);
    const QReal Rm = 3 * std::pow(2 + s3, 1.5) - 3 * std::sqrt(12 + 7 * s3);
    E9Data x;
    for (int j = 0; j < 3; ++j) {
        x.c[j] = {std::sqrt(rp) * w(j), std::sqrt(rm) / w(j)};
        x.d[j] = {std::sqrt(rp) / w(j), std::sqrt(rm) * w(j)};
    }
    x.e = {{{std::sqrt(Rm), 0.0}, {0.0, -std::sqrt(Rp)}}};
    return fill_e9(x);
}

CellSystem e9_solution_evans() {
    const qcells::RootOfUnityContext ctx = qcells::RootOfUnityContext::at_altitude(12);
    const QReal q2 = qint(2, ctx);
    const QReal q4 = qint(4, ctx);
    const QReal r = std::sqrt(q2 * q4);
    const QReal lp = std::sqrt(q2) * std::sqrt(q2 * q4 + r);
    const QReal lm = std::sqrt(q2) * std::sqrt(q2 * q4 - r);
    const QReal e12 = -q4 / std::sqrt(q2) * std::sqrt(q2 * q2 + r);
    const QReal e21 = q4 / std::sqrt(q2) * std::sqrt(q2 * q2 - r);
    E9Data x;
    for (int j = 0; j < 3; ++j) {
        x.c[j] = {lp * w(j), lm / w(j)};
        x.d[j] = {lm * w(j), lp / w(j)};
    }
    x.e = {{{0.0, e21}, {e12, 0.0}}};
    return fill_e9(x);
}

CellSystem e9_solution_ocneanu() {
    const QReal r2 = std::pow(2.0, -0.25);
    const QReal c10 = r2 * std::pow(3.0, 0.25) * std::pow(1 + s3, 1.5);
    const QReal c21 = r2 * s3 * (1 + s3);
    const QReal c11 = r2 * std::pow(3.0, 0.25) * (1 + s3);
    const QComplex c22 = r2 * s3 * (1 + s3) * QComplex(0.5 * (1 - s3), -std::pow(2.0, -0.5) * std::pow(3.0, 0.25));
    const QComplex E12 = std::pow(2.0, -1.25) * (3 + s3) * QComplex(1 - s3, -s2 * std::pow(3.0, 0.25));
    const QReal E21 = r2 * s3 * (1 + s3);
    const QComplex E22 =
        std::pow(2.0, -1.25) * s3 * std::sqrt(1 + s3) * QComplex(-std::sqrt(3 - s3), std::sqrt(1 + s3));
    E9Data x;
    x.c = {{{c10, 0.0}, {c11, c21}, {c11, c22}}};
    x.d = {{{c10, 0.0}, {c11, c21}, {c11, std::conj(c22)}}};
    x.e = {{{0.0, E21}, {E12, E22 * s2}}};
    return fill_e9(x);
}

std::map<std::string, QReal> e21_squared_moduli() {
    return {
        {"alpha1", f4(10, 5, 4, 4)},
        {"alpha2", f4(272, 191, 156, 111)},
        {"alpha3", f4(5896, 4169, 3404, 2407)},
        {"gamma2", f4(32, 22, 18, 13)},
        {"gamma3", f4(686, 485, 396, 280)},
        {"nu1", f4(1508, 1066, 870, 615)},
        {"mu1", f4(596, 421, 344, 243)},
        {"sigma1", f4(2224, 1571, 1284, 907)},
        {"nu2", f4(118, 83, 68, 48)},
        {"mu2", f4(5120, 3620, 2956, 2090)},
        {"sigma2", f4(1112, 1571.0 / 2, 642, 907.0 / 2)},
        {"beta", f4(2560, 1810, 1478, 1045)},
        {"lambda", f4(2948, 4169.0 / 2, 1702, 2407.0 / 2)},
        {"rho", f4(11002, 15559.0 / 2, 6352, 8983.0 / 2)},
    };
}

CellSystem e21_solution() {
    const FusionGraph g = qcells::e21_graph();
    CellSystem cells(qcells::make_layout(g));
    const auto moduli = e21_squared_moduli();
    for (const auto& c : g.named_cells()) {
        QReal v = std::sqrt(moduli.at(c.family));
        if (c.label == "sigma2'" || c.label == "sigma2''" || c.label == "rho''") {
            v = -v;
        }
        cells.set(c.label, v);
    }
    return cells;
}

std::map<std::string, QReal> e5_dimensions() {
    std::map<std::string, QReal> m;
    for (int i = 0; i < 6; ++i) {
        m["1_" + std::to_string(i)] = 1.0;
        m["2_" + std::to_string(i)] = 1 + s2;
    }
    return m;
}

std::map<std::string, QReal> e9_dimensions() {
    std::map<std::string, QReal> m;
    for (int j = 0; j < 3; ++j) {
        m["0" + sup(j)] = 1.0;
        m["1" + sup(j)] = 1 + s3;
        m["2" + sup(j)] = 1 + s3;
    }
    m["3_0"] = 3 + 2 * s3;
    m["3_1"] = 3 + s3;
    m["3_2"] = 3 + s3;
    return m;
}

std::map<std::string, QReal> e21_dimensions() {
    std::map<std::string, QReal> m;
    for (int k = 1; k <= 2; ++k) {
        const std::string s = std::to_string(k);
        m["1_" + s] = g4(2, 0, 0, 0);
        m["3_" + s] = g4(4, 2, 2, 2);
        m["6_" + s] = g4(4, 4, 2, 2);
        m["7_" + s] = g4(6, 4, 4, 2);
        for (int i = 1; i <= 2; ++i) {
            m["2_" + s + sup(i)] = g4(2, 1, 0, 1);
            m["3_" + s + sup(i)] = g4(4, 1, 2, 1);
            m["4_" + s + sup(i)] = g4(6, 5, 4, 3);
            m["5_" + s + sup(i)] = g4(4, 3, 2, 1);
        }
    }
    return m;
}

std::map<std::string, QReal> z9_dimensions() {
    std::map<std::string, QReal> m;
    for (int i = 0; i < 3; ++i) {
        m["0_" + std::to_string(i)] = 1.0;
        for (int j = 1; j <= 3; ++j) {
            m["3_" + std::to_string(i) + sup(j)] = 1 / s3;
        }
    }
    return m;
}

QReal ak_up(int k, int l, const qcells::RootOfUnityContext& ctx) {
    auto q = [&](int n) { return qint(n, ctx); };
    return q(k + 1) * q(k + 2) * q(l + 1) * q(l + 2) * q(k + l + 2) * q(k + l + 3) / (q(2) * q(2));
}

QReal ak_down(int k, int l, const qcells::RootOfUnityContext& ctx) {
    auto q = [&](int n) { return qint(n, ctx); };
    return q(k + 1) * q(k + 2) * q(l) * q(l + 1) * q(k + l + 2) * q(k + l + 3) / (q(2) * q(2));
}

}  // namespace fixtures
