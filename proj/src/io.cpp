#include "gbary/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gbary {

GraphFormat graph_format_from_name(std::string_view name) {
  if (name == "tsv") return GraphFormat::EdgeListTsv;
  if (name == "csv") return GraphFormat::DenseCsv;
  throw Error("unknown graph format: " + std::string(name));
}

std::string_view graph_format_name(GraphFormat format) {
  return format == GraphFormat::EdgeListTsv ? "tsv" : "csv";
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool default_labels(const Graph& g) {
  for (int i = 0; i < g.num_nodes(); ++i) {
    if (g.node_labels()[i] != std::to_string(i)) return false;
  }
  return true;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_number(const std::string& text, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError("invalid number '" + text + "' on line " + std::to_string(line_no),
                     line_no);
  }
  return v;
}

int parse_int(const std::string& text, int line_no) {
  const double v = parse_number(text, line_no);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw ParseError("expected integer, got '" + text + "' on line " +
                         std::to_string(line_no),
                     line_no);
  }
  return i;
}

Graph read_edge_list(std::istream& in, const std::string& first_line) {
  int line_no = 1;
  const std::string prefix = "# nodes=";
  if (first_line.rfind(prefix, 0) != 0) {
    throw ParseError("expected '# nodes=N' header", 1);
  }
  const int n = parse_int(first_line.substr(prefix.size()), 1);
  if (n <= 0) {
    throw ParseError("node count must be positive", 1);
  }
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# labels=", 0) == 0) {
      labels = split(line.substr(9), '\t');
      if (static_cast<int>(labels.size()) != n) {
        throw ParseError("label count does not match node count", line_no);
      }
      continue;
    }
    if (line[0] == '#') continue;
    const std::vector<std::string> parts = split(line, '\t');
    if (parts.size() != 3) {
      throw ParseError("expected 'u<TAB>v<TAB>w'", line_no);
    }
    const int u = parse_int(parts[0], line_no);
    const int v = parse_int(parts[1], line_no);
    const double w = parse_number(parts[2], line_no);
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) {
      throw ParseError("invalid edge endpoints", line_no);
    }
    edges.push_back(Edge{u, v, w});
  }
  try {
    return Graph(n, std::move(edges), std::move(labels));
  } catch (const Error& e) {
    throw ParseError(e.what(), line_no);
  }
}

Graph read_dense(std::istream& in, const std::string& tag) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> parts = split(line, ',');
    std::vector<double> row;
    row.reserve(parts.size());
    for (const auto& part : parts) row.push_back(parse_number(part, line_no));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) {
    throw ParseError("empty matrix", line_no);
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw DimensionMismatchError("matrix is not square");
    }
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  if (!is_symmetric(m)) {
    throw NonSymmetricInputError("dense matrix input is not symmetric");
  }

  if (tag == "adjacency") {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      if (m(i, i) != 0.0) {
        throw ParseError("adjacency matrix has a nonzero diagonal entry", 1);
      }
      for (int j = i + 1; j < n; ++j) {
        if (m(i, j) != 0.0) edges.push_back(Edge{i, j, m(i, j)});
      }
    }
    return Graph(n, std::move(edges));
  }

  // Laplacian: off-diagonal entries carry the negated weights; the diagonal
  // must be consistent (zero row sums).
  const double worst = m.rowwise().sum().cwiseAbs().maxCoeff();
  if (worst > 1e-10 * (1.0 + m.norm())) {
    throw ParseError("laplacian row sums are not zero", 1);
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m(i, j) != 0.0) edges.push_back(Edge{i, j, -m(i, j)});
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace

void write_graph(const Graph& g, std::ostream& out, GraphFormat format) {
  if (format == GraphFormat::EdgeListTsv) {
    out << "# nodes=" << g.num_nodes() << "\n";
    if (!default_labels(g)) {
      out << "# labels=";
      for (int i = 0; i < g.num_nodes(); ++i) {
        if (i > 0) out << '\t';
        out << g.node_labels()[i];
      }
      out << "\n";
    }
    for (const auto& e : g.edges()) {
      out << e.u << '\t' << e.v << '\t' << format_double(e.w) << "\n";
    }
    return;
  }
  const Eigen::MatrixXd l = laplacian(g).mat();
  out << "laplacian\n";
  for (int i = 0; i < g.num_nodes(); ++i) {
    for (int j = 0; j < g.num_nodes(); ++j) {
      if (j > 0) out << ',';
      out << format_double(l(i, j));
    }
    out << "\n";
  }
}

void write_graph(const Graph& g, const std::string& path, GraphFormat format) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open for writing: " + path);
  }
  write_graph(g, out, format);
}

Graph read_graph(std::istream& in) {
  std::string first_line;
  if (!std::getline(in, first_line)) {
    throw ParseError("empty input", 1);
  }
  if (first_line.rfind("# nodes=", 0) == 0) {
    return read_edge_list(in, first_line);
  }
  if (first_line == "laplacian" || first_line == "adjacency") {
    return read_dense(in, first_line);
  }
  throw ParseError("unrecognized header '" + first_line + "'", 1);
}

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open: " + path);
  }
  return read_graph(in);
}

}  // namespace gbary
