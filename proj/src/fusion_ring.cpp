#include "qcells/fusion_ring.hpp"

#include "qcells/catalog.hpp"
#include "qcells/errors.hpp"

namespace qcells {

int WeightFamily::index_of(const Weight& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) {
        throw WeightOutsideAlcove("weight (" + std::to_string(w.first) + "," + std::to_string(w.second) +
                                  ") outside the alcove at level " + std::to_string(level));
    }
    return it->second;
}

bool WeightFamily::contains(const Weight& w) const { return index_.count(w) > 0; }

namespace {

struct SparseSeed {
    std::vector<std::vector<std::pair<int, int>>> rows;
};

SparseSeed sparse(const IntMatrix& m) {
    SparseSeed s;
    s.rows.resize(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j) != 0) {
                s.rows[i].emplace_back(j, m(i, j));
            }
        }
    }
    return s;
}

IntMatrix multiply(const SparseSeed& s, const IntMatrix& x) {
    IntMatrix out = IntMatrix::Zero(x.rows(), x.cols());
    for (int i = 0; i < static_cast<int>(s.rows.size()); ++i) {
        for (auto [j, v] : s.rows[i]) {
            out.row(i) += v * x.row(j);
        }
    }
    return out;
}

}  // namespace

WeightFamily recurrence_family(const IntMatrix& seed, int level) {
    if (seed.rows() != seed.cols()) {
        throw ShapeMismatch("seed matrix must be square");
    }
    WeightFamily fam;
    fam.level = level;
    fam.weights = alcove_weights(level);
    for (size_t i = 0; i < fam.weights.size(); ++i) {
        fam.index_[fam.weights[i]] = static_cast<int>(i);
    }
    const int n = static_cast<int>(seed.rows());
    fam.matrices.assign(fam.weights.size(), IntMatrix());
    const SparseSeed s = sparse(seed);
    auto get = [&](int l, int m) -> const IntMatrix* {
        if (l < 0 || m < 0 || l + m > level) {
            return nullptr;
        }
        const IntMatrix& x = fam.matrices[fam.index_.at({l, m})];
        return x.size() == 0 ? nullptr : &x;
    };
    auto store = [&](int l, int m, IntMatrix x) {
        for (int i = 0; i < x.rows(); ++i) {
            for (int j = 0; j < x.cols(); ++j) {
                if (x(i, j) < 0) {
                    throw NegativeEntry(l, m, i, j, x(i, j));
                }
            }
        }
        fam.matrices[fam.index_.at({l, m})] = std::move(x);
    };
    for (int s_level = 0; s_level <= level; ++s_level) {
        if (s_level == 0) {
            store(0, 0, IntMatrix::Identity(n, n));
            continue;
        }
        if (s_level == 1) {
            store(1, 0, seed);
            store(0, 1, seed.transpose());
            continue;
        }
        {
            IntMatrix x = multiply(s, *get(s_level - 1, 0));
            if (const IntMatrix* y = get(s_level - 2, 1)) {
                x -= *y;
            }
            store(s_level, 0, x);
        }
        store(0, s_level, fam.matrices[fam.index_.at({s_level, 0})].transpose());
        for (int l = 1; l < s_level; ++l) {
            const int m = s_level - l;
            IntMatrix x = multiply(s, *get(l - 1, m));
            if (const IntMatrix* y = get(l - 1, m - 1)) {
                x -= *y;
            }
            if (const IntMatrix* y = get(l - 2, m + 1)) {
                x -= *y;
            }
            store(l, m, x);
        }
    }
    return fam;
}

FusionFamily fusion_matrices(int k) {
    if (k < 1) {
        throw ValidationError("fusion_matrices requires k >= 1");
    }
    FusionGraph g = a_k_graph(k);
    return recurrence_family(g.adjacency(), k);
}

AnnularFamily annular_matrices(const FusionGraph& graph) {
    if (!graph.altitude()) {
        throw UnsupportedGraph("annular matrices need a finite altitude");
    }
    return recurrence_family(graph.adjacency(), *graph.altitude() - 3);
}

long long fusion_dimension(const FusionFamily& family, const Weight& weight) {
    return family.at(weight).cast<long long>().sum();
}

NimrepReport nimrep_check(const FusionGraph& graph) {
    NimrepReport report;
    if (!graph.altitude()) {
        report.message = "graph has no finite altitude";
        return report;
    }
    const int level = *graph.altitude() - 3;
    AnnularFamily f;
    try {
        f = annular_matrices(graph);
    } catch (const NegativeEntry& e) {
        report.message = e.what();
        return report;
    }
    report.non_negative = true;
    const FusionFamily n = fusion_matrices(level);
    const int w = static_cast<int>(n.weights.size());
    const int dim = graph.vertex_count();
    for (int a = 0; a < w; ++a) {
        for (int b = 0; b < w; ++b) {
            IntMatrix lhs = f.matrices[a] * f.matrices[b];
            IntMatrix rhs = IntMatrix::Zero(dim, dim);
            const IntMatrix& na = n.matrices[a];
            for (int p = 0; p < w; ++p) {
                const int c = na(b, p);
                if (c != 0) {
                    rhs += c * f.matrices[p];
                }
            }
            ++report.pairs_checked;
            if (lhs != rhs) {
                report.first_m = n.weights[a];
                report.first_n = n.weights[b];
                report.message = "F_m F_n != sum_p N_mn^p F_p at m=(" + std::to_string(n.weights[a].first) + "," +
                                 std::to_string(n.weights[a].second) + "), n=(" +
                                 std::to_string(n.weights[b].first) + "," + std::to_string(n.weights[b].second) + ")";
                return report;
            }
        }
    }
    report.pass = true;
    report.message = "PASS";
    return report;
}

RingCheck check_fusion_ring(const FusionFamily& family) {
    RingCheck out;
    const int w = static_cast<int>(family.weights.size());
    const int dim = static_cast<int>(family.matrices[0].rows());
    for (int a = 0; a < w; ++a) {
        const auto [l, m] = family.weights[a];
        if (family.at({m, l}) != family.matrices[a].transpose()) {
            out.transpose_rule = false;
        }
        for (int b = 0; b < w; ++b) {
            IntMatrix ab = family.matrices[a] * family.matrices[b];
            if (ab != family.matrices[b] * family.matrices[a]) {
                out.commutative = false;
            }
            IntMatrix rhs = IntMatrix::Zero(dim, dim);
            for (int p = 0; p < w; ++p) {
                const int c = family.matrices[a](b, p);
                if (c != 0) {
                    rhs += c * family.matrices[p];
                }
            }
            if (ab != rhs) {
                out.realization = false;
            }
        }
    }
    return out;
}

}  // namespace qcells
