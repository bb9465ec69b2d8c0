#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "qcells/catalog.hpp"
#include "qcells/errors.hpp"
#include "qcells/fusion_ring.hpp"
#include "qcells/hecke.hpp"
#include "qcells/io.hpp"
#include "qcells/solver.hpp"

namespace qcells::cli {

namespace {

std::string fmt(double x, int digits = 12) {
    std::ostringstream ss;
    ss << std::setprecision(digits) << x;
    return ss.str();
}

std::string fmt(QComplex z, int digits = 12) {
    std::ostringstream ss;
    ss << std::setprecision(digits) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return ss.str();
}

int exit_for(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved:
            return Ok;
        case SolveStatus::Infeasible:
            return Infeasible;
        case SolveStatus::Inconclusive:
            return Inconclusive;
    }
    return Inconclusive;
}

void maybe_write(const std::string& path, const Json& j) {
    if (!path.empty()) {
        write_file(path, j.dump(2) + "\n");
    }
}

struct Counts {
    int triangles = 0;
    int type1_pairs = 0;
    int type1_frames = 0;
    int type2_raw = 0;
    int type2_dedup = 0;
    int doubly = 0, singly = 0, none = 0;
};

Counts count(const FusionGraph& g) {
    Counts c;
    c.triangles = static_cast<int>(enumerate_triangles(g).size());
    c.type1_pairs = type1_vertex_pair_count(g);
    c.type1_frames = static_cast<int>(enumerate_type1_frames(g).size());
    const auto raw = enumerate_type2_frames(g, false);
    c.type2_raw = static_cast<int>(raw.size());
    for (const auto& f : raw) {
        (f.degeneracy == Degeneracy::Doubly ? c.doubly : f.degeneracy == Degeneracy::Singly ? c.singly : c.none)++;
    }
    c.type2_dedup = static_cast<int>(enumerate_type2_frames(g, true).size());
    return c;
}

std::string altitude_text(const FusionGraph& g) {
    return g.altitude() ? std::to_string(*g.altitude()) : std::string("infinity");
}

int cmd_graphs_list(std::ostream& out) {
    out << std::left << std::setw(8) << "name" << std::setw(10) << "altitude" << std::setw(10) << "vertices"
        << std::setw(8) << "edges" << std::setw(11) << "triangles" << std::setw(9) << "typeI" << "typeII(raw)\n";
    for (const auto& name : catalog_listing()) {
        const FusionGraph g = builtin_graph(name);
        const Counts c = count(g);
        out << std::left << std::setw(8) << name << std::setw(10) << altitude_text(g) << std::setw(10)
            << g.vertex_count() << std::setw(8) << g.edge_count() << std::setw(11) << c.triangles << std::setw(9)
            << c.type1_pairs << c.type2_raw << "\n";
    }
    return Ok;
}

int cmd_graph_show(const std::string& selector, int precision, const std::string& output, std::ostream& out) {
    const FusionGraph g = load_graph(selector);
    const Counts c = count(g);
    const DimensionVector dims = dimensions(g);
    const RootOfUnityContext ctx = g.context(precision);
    out << "graph: " << g.name() << "\n";
    out << "altitude: " << altitude_text(g) << "\n";
    if (g.truncation()) {
        out << "truncation: " << *g.truncation() << "\n";
    }
    out << "vertices: " << g.vertex_count() << "\n";
    out << "edges: " << g.edge_count() << "\n";
    out << "[3]: " << to_string(qint_hp(3, ctx), precision) << "\n";
    if (!g.truncation()) {
        out << "pf_eigenvalue: " << fmt(pf_eigenvalue(g), precision) << "\n";
    }
    out << "triangles: " << c.triangles << "\n";
    out << "type_i_frames: " << c.type1_pairs << " vertex pairs, " << c.type1_frames << " edge pairs\n";
    out << "type_ii_frames: " << c.type2_raw << " raw (" << c.doubly << " doubly, " << c.singly << " singly, "
        << c.none << " non-degenerate), " << c.type2_dedup << " after symmetry reduction\n";
    out << "dimensions:\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "  " << std::left << std::setw(8) << g.vertex(v).id << " " << fmt(dims[v], precision) << "\n";
    }
    if (!output.empty()) {
        Json j = graph_to_json(g);
        j["triangles"] = c.triangles;
        j["type_i_vertex_pairs"] = c.type1_pairs;
        j["type_i_frames"] = c.type1_frames;
        j["type_ii_raw"] = c.type2_raw;
        j["type_ii_deduplicated"] = c.type2_dedup;
        j["dimensions"] = dims;
        maybe_write(output, j);
    }
    return Ok;
}

void print_invariants(const InvariantReport& inv, std::ostream& out) {
    if (!inv.moduli.empty()) {
        out << "moduli:";
        for (double m : inv.moduli) {
            out << " " << fmt(m, 10);
        }
        out << "\n";
    }
    for (const auto& [k, v] : inv.values) {
        out << k << ": " << fmt(v) << "\n";
    }
}

int cmd_solve(const std::string& selector, const SolveOptions& opts, int precision, const std::string& output,
              std::ostream& out) {
    const FusionGraph g = load_graph(selector);
    const SolveReport rep = solve(g, opts);
    out << "graph: " << g.name() << "\n";
    out << "status: " << status_name(rep.status) << "\n";
    out << "max_residual: " << fmt(rep.max_residual) << "\n";
    out << "best_residual: " << fmt(rep.best_residual) << "\n";
    out << "restarts: " << rep.restarts << " (converged " << rep.converged << ")\n";
    out << "seed: " << rep.seed << "\n";
    out << rep.message << "\n";
    if (rep.invariants) {
        print_invariants(*rep.invariants, out);
    }
    if (rep.cells) {
        const auto& L = rep.cells->layout();
        for (int t = 0; t < rep.cells->size(); ++t) {
            const auto& tri = L.triangles()[t];
            out << "  T(" << g.vertex(tri.v[0]).id << "," << g.vertex(tri.v[1]).id << "," << g.vertex(tri.v[2]).id
                << ") = " << fmt(rep.cells->value(t)) << "\n";
        }
    }
    if (!output.empty()) {
        Json j = solve_report_json(rep);
        j["precision"] = precision;
        j["tolerance"] = opts.tolerance;
        maybe_write(output, j);
    }
    return exit_for(rep.status);
}

int cmd_verify(const std::string& selector, const std::string& cells_path, double tol, const std::string& output,
               std::ostream& out) {
    const FusionGraph g = load_graph(selector);
    const CellSystem cells = load_cells(cells_path, &g);
    const VerifyReport rep = verify(cells, tol);
    out << "graph: " << g.name() << "\n";
    out << "status: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    out << "max_residual: " << fmt(rep.max_residual) << "\n";
    out << "max_type_i: " << fmt(rep.max_type1) << "\n";
    out << "max_type_ii: " << fmt(rep.max_type2) << "\n";
    if (rep.worst) {
        out << "worst_frame: " << describe_frame(cells.layout(), *rep.worst) << "\n";
    }
    maybe_write(output, verify_report_json(rep, cells.layout()));
    return rep.pass ? Ok : VerifyFail;
}

int cmd_invariants(const std::string& selector, const std::string& cells_path, const std::string& output,
                   std::ostream& out) {
    const FusionGraph g = load_graph(selector);
    const CellSystem cells = load_cells(cells_path, &g);
    const InvariantReport inv = gauge_invariants(cells);
    out << "graph: " << g.name() << "\n";
    print_invariants(inv, out);
    maybe_write(output, invariants_json(inv));
    return Ok;
}

int cmd_hecke(const std::string& selector, const std::string& cells_path, int pmax, double tol,
              const std::string& output, std::ostream& out) {
    const FusionGraph g = load_graph(selector);
    const CellSystem cells = load_cells(cells_path, &g);
    const HeckeReport rep = check_hecke_relations(cells, pmax);
    const bool pass = rep.max_violation() < tol;
    out << "graph: " << g.name() << "\n";
    out << "status: " << (pass ? "PASS" : "FAIL") << "\n";
    out << "max_violation: " << fmt(rep.max_violation()) << "\n";
    out << "rhombus_matrices: " << rep.rhombi.size() << ", max violation " << fmt(rep.max_rhombus) << "\n";
    if (rep.worst_rhombus) {
        out << "worst_rhombus: (" << g.vertex(rep.worst_rhombus->a).id << "," << g.vertex(rep.worst_rhombus->c).id
            << ")\n";
    }
    for (const PathCheck& p : rep.paths) {
        out << "Path^" << p.length << ": U^2-[2]U " << fmt(p.square, 4) << ", far " << fmt(p.far_commutation, 4)
            << ", cubic " << fmt(p.cubic, 4) << ", quartic " << fmt(p.quartic, 4) << ", F^2-[2][3]F "
            << fmt(p.f_square, 4) << "\n";
    }
    if (!output.empty()) {
        Json j = hecke_report_json(rep, g);
        j["status"] = pass ? "PASS" : "FAIL";
        Json rh = Json::array();
        for (const RhombusMatrix& r : all_rhombus_matrices(cells)) {
            rh.push_back(rhombus_json(r, g));
        }
        j["rhombus_matrices"] = rh;
        maybe_write(output, j);
    }
    return pass ? Ok : VerifyFail;
}

std::pair<int, int> parse_weight(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ParseError("weight must be given as l,m");
    }
    try {
        size_t p1 = 0, p2 = 0;
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const int l = std::stoi(a, &p1);
        const int m = std::stoi(b, &p2);
        if (p1 != a.size() || p2 != b.size() || l < 0 || m < 0) {
            throw ParseError("weight must be two non-negative integers l,m");
        }
        return {l, m};
    } catch (const std::logic_error&) {
        throw ParseError("weight must be two non-negative integers l,m");
    }
}

void print_matrix(const IntMatrix& m, std::ostream& out) {
    for (int r = 0; r < m.rows(); ++r) {
        out << " ";
        for (int c = 0; c < m.cols(); ++c) {
            out << " " << m(r, c);
        }
        out << "\n";
    }
}

int cmd_fusion(int level, const std::string& weight, const std::string& output, std::ostream& out) {
    const FusionFamily fam = fusion_matrices(level);
    out << "level: " << level << "\n";
    out << "weights: " << fam.weights.size() << "\n";
    const RingCheck rc = check_fusion_ring(fam);
    out << "commutative: " << (rc.commutative ? "yes" : "no") << "\n";
    out << "transpose_rule: " << (rc.transpose_rule ? "yes" : "no") << "\n";
    out << "realization: " << (rc.realization ? "yes" : "no") << "\n";
    std::vector<Weight> shown;
    if (weight.empty()) {
        shown = fam.weights;
    } else {
        shown.push_back(parse_weight(weight));
        fam.index_of(shown.front());
    }
    for (const Weight& w : shown) {
        out << "N(" << w.first << "," << w.second << ")  d = " << fusion_dimension(fam, w) << "\n";
        print_matrix(fam.at(w), out);
    }
    maybe_write(output, family_json(fam));
    return (rc.commutative && rc.transpose_rule && rc.realization) ? Ok : VerifyFail;
}

int cmd_nimrep(const std::string& selector, const std::string& output, std::ostream& out) {
    const FusionGraph g = load_graph(selector);
    const NimrepReport rep = nimrep_check(g);
    out << "graph: " << g.name() << "\n";
    out << "status: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    out << "non_negative: " << (rep.non_negative ? "yes" : "no") << "\n";
    out << "pairs_checked: " << rep.pairs_checked << "\n";
    out << rep.message << "\n";
    if (!output.empty()) {
        Json j{{"graph", g.name()},
               {"status", rep.pass ? "PASS" : "FAIL"},
               {"non_negative", rep.non_negative},
               {"pairs_checked", rep.pairs_checked},
               {"message", rep.message}};
        maybe_write(output, j);
    }
    return rep.pass ? Ok : VerifyFail;
}

int cmd_certify(int digits, const std::string& output, std::ostream& out) {
    const Z9Certificate cert = certify_infeasible_z9(digits);
    out << "status: " << (cert.infeasible ? "INFEASIBLE" : "INCONCLUSIVE") << "\n";
    out << "digits: " << cert.digits << "\n";
    out << "b_plus: " << cert.b_plus << "\n";
    out << "b_minus: " << cert.b_minus << "\n";
    out << "c_plus: " << cert.c_plus << "\n";
    out << "c_minus: " << cert.c_minus << "\n";
    for (const Z9Branch& b : cert.branches) {
        out << "signs (" << (b.signs[0] > 0 ? "+" : "-") << (b.signs[1] > 0 ? "+" : "-")
            << (b.signs[2] > 0 ? "+" : "-") << "): violation " << b.violation << "\n";
    }
    out << "min_violation: " << cert.min_violation << "\n";
    maybe_write(output, z9_certificate_json(cert));
    return cert.infeasible ? Infeasible : Inconclusive;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qcells: SU(3) fusion graphs, cell systems and coherence equations"};
    app.require_subcommand(1);
    const int env_precision = precision_from_env(15);
    int precision = env_precision;
    std::optional<int> precision_flag;
    std::string output;

    auto* graphs = app.add_subcommand("graphs", "Catalog of builtin graphs");
    graphs->add_subcommand("list", "List builtin graphs with counts");
    graphs->require_subcommand(1);

    std::string selector;
    auto* graph = app.add_subcommand("graph", "Inspect one graph");
    graph->require_subcommand(1);
    auto* show = graph->add_subcommand("show", "Vertices, dimensions and frame counts");
    show->add_option("graph", selector, "Builtin name or graph JSON file")->required();
    show->add_option("--precision", precision_flag, "Decimal digits for q-numbers")->check(CLI::Range(15, 1000));
    show->add_option("-o,--output", output, "JSON output path");

    SolveOptions opts;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the coherence equations");
    solve_cmd->add_option("graph", selector, "Builtin name or graph JSON file")->required();
    solve_cmd->add_option("--restarts", opts.restarts, "Random restarts")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", opts.seed, "PRNG seed");
    solve_cmd->add_option("--tol", opts.tolerance, "Success tolerance")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--precision", precision_flag, "Working precision in digits")->check(CLI::Range(15, 1000));
    solve_cmd->add_option("--threads", opts.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("-o,--output", output, "JSON report path");

    std::string cells_path;
    double tol = 1e-9;
    auto* verify_cmd = app.add_subcommand("verify", "Check all Type I and Type II equations");
    verify_cmd->add_option("graph", selector, "Builtin name or graph JSON file")->required();
    verify_cmd->add_option("--cells", cells_path, "Cell JSON file")->required();
    verify_cmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
    verify_cmd->add_option("-o,--output", output, "JSON report path");

    auto* inv_cmd = app.add_subcommand("invariants", "Gauge invariants of a cell system");
    inv_cmd->add_option("graph", selector, "Builtin name or graph JSON file")->required();
    inv_cmd->add_option("--cells", cells_path, "Cell JSON file")->required();
    inv_cmd->add_option("-o,--output", output, "JSON report path");

    int pmax = 4;
    double hecke_tol = 1e-8;
    auto* hecke_cmd = app.add_subcommand("hecke", "Rhombus matrices and Hecke relations");
    hecke_cmd->add_option("graph", selector, "Builtin name or graph JSON file")->required();
    hecke_cmd->add_option("--cells", cells_path, "Cell JSON file")->required();
    hecke_cmd->add_option("--pmax", pmax, "Longest path length")->check(CLI::Range(2, 8));
    hecke_cmd->add_option("--tol", hecke_tol, "Tolerance")->check(CLI::PositiveNumber);
    hecke_cmd->add_option("-o,--output", output, "JSON report path");

    int level = 1;
    std::string weight;
    auto* fusion_cmd = app.add_subcommand("fusion", "SU(3) fusion matrices at level k");
    fusion_cmd->add_option("--level", level, "Level k")->required()->check(CLI::Range(1, 40));
    fusion_cmd->add_option("--weight", weight, "Only print N(l,m), given as l,m");
    fusion_cmd->add_option("-o,--output", output, "JSON output path");

    auto* nimrep_cmd = app.add_subcommand("nimrep", "Annular matrices and the module property");
    nimrep_cmd->add_option("graph", selector, "Builtin name or graph JSON file")->required();
    nimrep_cmd->add_option("-o,--output", output, "JSON report path");

    auto* certify_cmd = app.add_subcommand("certify-z9", "High precision infeasibility certificate for Z9");
    certify_cmd->add_option("--precision", precision_flag, "Decimal digits")->check(CLI::Range(15, 1000));
    certify_cmd->add_option("-o,--output", output, "JSON report path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
    if (precision_flag) {
        precision = *precision_flag;
    }

    try {
        if (graphs->parsed()) {
            return cmd_graphs_list(out);
        }
        if (show->parsed()) {
            return cmd_graph_show(selector, precision, output, out);
        }
        if (solve_cmd->parsed()) {
            return cmd_solve(selector, opts, precision, output, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(selector, cells_path, tol, output, out);
        }
        if (inv_cmd->parsed()) {
            return cmd_invariants(selector, cells_path, output, out);
        }
        if (hecke_cmd->parsed()) {
            return cmd_hecke(selector, cells_path, pmax, hecke_tol, output, out);
        }
        if (fusion_cmd->parsed()) {
            return cmd_fusion(level, weight, output, out);
        }
        if (nimrep_cmd->parsed()) {
            return cmd_nimrep(selector, output, out);
        }
        if (certify_cmd->parsed()) {
            const int digits = precision_flag ? *precision_flag : std::max(30, env_precision);
            return cmd_certify(digits, output, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
    err << "error: no command\n";
    return InputError;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

}  // namespace qcells::cli
