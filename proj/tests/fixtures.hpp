#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcells/cell_system.hpp"

namespace fixtures {

using qcells::CellSystem;
using qcells::FusionGraph;
using qcells::QReal;

/// E5 cells: tau, mu real positive, nu_1 = -nu_0.
CellSystem e5_solution();

/// Three independent E9 cell systems in the catalog labelling.
CellSystem e9_solution_main();
CellSystem e9_solution_evans();
CellSystem e9_solution_ocneanu();

/// E21 cells from the reference squared moduli with sigma2', sigma2'', rho'' negative.
CellSystem e21_solution();

/// Reference |T|^2 per E21 family, f[a,b,c,d] = sqrt(a + b sqrt2 + c sqrt3 + d sqrt6).
std::map<std::string, QReal> e21_squared_moduli();

/// Reference quantum dimensions keyed by vertex id.
std::map<std::string, QReal> e5_dimensions();
std::map<std::string, QReal> e9_dimensions();
std::map<std::string, QReal> e21_dimensions();
std::map<std::string, QReal> z9_dimensions();

/// Closed-form squared moduli of the up and down A_k triangles with lower-left weight (k,l).
QReal ak_up(int k, int l, const qcells::RootOfUnityContext& ctx);
QReal ak_down(int k, int l, const qcells::RootOfUnityContext& ctx);

}  // namespace fixtures
