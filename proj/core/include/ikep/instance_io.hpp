#pragma once

#include <string>
#include <string_view>

#include "ikep/graph.hpp"

namespace ikep {

/// Instance file format:
/// {"n_countries": n, "vertices": [{"id", "country", "arrival_round",
///  "donor_blood"?, "patient_blood"?, "pra"?}], "edges": [[u, v], ...]}.
/// Ids must be 0..|V|-1. Throws ValidationError on any violation.
CompatibilityGraph graph_from_json(std::string_view text);
std::string graph_to_json(const CompatibilityGraph& g);

/// File helpers; I/O failures raise std::runtime_error.
CompatibilityGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const CompatibilityGraph& g);

/// Whole-file read and write shared by the tools.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace ikep
