#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "gbary/graph.hpp"

namespace gbary {

enum class GraphFormat {
  EdgeListTsv,  // "# nodes=N" header, then "u<TAB>v<TAB>w" lines
  DenseCsv,     // "laplacian" or "adjacency" tag line, then an N x N matrix
};

GraphFormat graph_format_from_name(std::string_view name);  // "tsv" | "csv"
std::string_view graph_format_name(GraphFormat format);

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double x);

void write_graph(const Graph& g, std::ostream& out, GraphFormat format);
void write_graph(const Graph& g, const std::string& path, GraphFormat format);

/// Reads either format, detected from the first line.
Graph read_graph(std::istream& in);
Graph read_graph(const std::string& path);

}  // namespace gbary
