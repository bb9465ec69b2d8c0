#pragma once

#include <string>
#include <vector>

#include "qcells/fusion_graph.hpp"

namespace qcells {

/// Built-in graphs: "A<k>" or "A_<k>" (k >= 1), "Ainf" or "Ainf_<L>" (classical
/// alcove truncated at level L, default 5), "E5", "E9", "E21", "Z9".
FusionGraph builtin_graph(const std::string& name);
bool is_builtin_name(const std::string& name);

/// Representative catalog entries for listings.
std::vector<std::string> catalog_listing();

FusionGraph a_k_graph(int k);
FusionGraph a_infinity_graph(int truncation_level);
FusionGraph e5_graph();
FusionGraph e9_graph();
FusionGraph e21_graph();
FusionGraph z9_graph();

/// Alcove weights at level k ordered by increasing lambda+mu, then increasing lambda.
std::vector<std::pair<int, int>> alcove_weights(int level);
std::string weight_id(int lambda, int mu);

}  // namespace qcells
