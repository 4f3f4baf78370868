#include "gbary/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gbary/barycenter.hpp"
#include "gbary/generators.hpp"

namespace gbary::cli {

void ResultTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw Error("result row width does not match column count");
  }
  rows.push_back(std::move(row));
}

void ResultTable::write(std::ostream& out) const {
  out << "# gbary " << command << "\n";
  out << "# config_hash=" << config_hash << "\n";
  out << "# seed=" << seed << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out << ',';
    out << columns[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << "\n";
  }
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class Canonical {
 public:
  explicit Canonical(std::string command) { out_ << "command=" << command; }
  template <class T>
  Canonical& field(const char* key, const T& value) {
    out_ << ';' << key << '=' << value;
    return *this;
  }
  Canonical& field(const char* key, double value) {
    out_ << ';' << key << '=' << format_double(value);
    return *this;
  }
  template <class T>
  Canonical& list(const char* key, const std::vector<T>& values) {
    for (const auto& v : values) field(key, v);
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string canonical_string(const GenerateCommand& c) {
  return Canonical("generate")
      .field("kind", c.kind)
      .field("nodes", c.nodes)
      .field("communities", c.communities)
      .field("p_in", c.p_in)
      .field("p_out", c.p_out)
      .field("seed", c.seed)
      .field("format", graph_format_name(c.format))
      .str();
}

std::string canonical_string(const MeanCommand& c) {
  return Canonical("mean")
      .list("input", c.inputs)
      .list("weight", c.weights)
      .field("kind", c.kind)
      .field("tol", c.tol)
      .field("max_iter", c.max_iter)
      .str();
}

std::string canonical_string(const DistanceCommand& c) {
  return Canonical("distance").field("a", c.a).field("b", c.b).field("kind", c.kind).str();
}

std::string canonical_string(const InterpolateCommand& c) {
  return Canonical("interpolate")
      .field("a", c.a)
      .field("b", c.b)
      .field("t", c.t)
      .field("format", graph_format_name(c.format))
      .str();
}

std::string canonical_string(const ClusterCommand& c) {
  return Canonical("cluster")
      .list("input", c.inputs)
      .field("k", c.k)
      .field("nodes", c.nodes)
      .field("classes", c.classes)
      .field("p_in", c.p_in)
      .field("per_class", c.per_class)
      .field("n_seeds", c.n_seeds)
      .field("seed", c.seed)
      .list("pairing", c.pairings)
      .field("n_init", c.n_init)
      .field("max_iter", c.max_iter)
      .str();
}

std::string canonical_string(const ClassifyCommand& c) {
  return Canonical("classify")
      .field("nodes", c.nodes)
      .field("communities", c.communities)
      .field("p_in_a", c.p_in_a)
      .field("p_out_a", c.p_out_a)
      .field("p_in_b", c.p_in_b)
      .field("p_out_b", c.p_out_b)
      .field("train_per_class", c.train_per_class)
      .field("test_per_class", c.test_per_class)
      .field("trials", c.trials)
      .field("seed", c.seed)
      .list("pairing", c.pairings)
      .str();
}

std::string canonical_string(const SslCommand& c) {
  Canonical canon("ssl");
  canon.list("layer", c.layer_files).field("observed", c.observed_file);
  canon.field("mean", c.mean);
  if (c.rho) canon.field("rho", *c.rho);
  canon.field("nodes", c.nodes)
      .field("classes", c.classes)
      .field("layers", c.layers)
      .field("p_in", c.p_in)
      .field("p_out", c.p_out)
      .field("observed_fraction", c.observed_fraction)
      .field("trials", c.trials)
      .field("seed", c.seed)
      .list("mean_kind", c.means);
  return canon.str();
}

std::string canonical_string(const FuseCommand& c) {
  return Canonical("fuse-experiment")
      .field("nodes", c.nodes)
      .field("communities", c.communities)
      .field("p_in", c.p_in)
      .field("p_out", c.p_out)
      .field("n_graphs", c.n_graphs)
      .field("n_perturb", c.n_perturb)
      .field("trials", c.trials)
      .field("seed", c.seed)
      .list("kind", c.kinds)
      .str();
}

void write_table(const ResultTable& table, const std::string& out_path, bool to_stdout,
                 std::ostream& out_stream) {
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      throw Error("cannot open for writing: " + out_path);
    }
    table.write(file);
  }
  if (to_stdout) {
    table.write(out_stream);
  }
  if (out_path.empty() && !to_stdout) {
    throw Error("no output requested: pass --out or --stdout");
  }
}

std::vector<LaplacianMatrix> load_laplacians(const std::vector<std::string>& paths) {
  std::vector<LaplacianMatrix> ls;
  ls.reserve(paths.size());
  for (const auto& path : paths) ls.push_back(laplacian(read_graph(path)));
  return ls;
}

int run_generate(const GenerateCommand& c, std::ostream& err) {
  Graph g = [&] {
    if (c.kind == "sbm") {
      return generate_sbm(c.nodes, c.communities, c.p_in, c.p_out, c.seed);
    }
    if (c.kind == "line") {
      return generate_line_communities(c.nodes, c.communities, c.p_in, c.seed);
    }
    throw Error("unknown generator kind: " + c.kind);
  }();
  if (c.out.empty()) {
    throw Error("generate requires --out");
  }
  write_graph(g, c.out, c.format);
  err << "generate: wrote " << c.out << " (" << g.num_nodes() << " nodes, "
      << g.edges().size() << " edges)\n";
  return 0;
}

int run_mean(const MeanCommand& c, std::ostream& out, std::ostream& err) {
  if (c.inputs.empty()) {
    throw Error("mean requires at least one --input");
  }
  const MeanKind kind = MeanKind::from_name(c.kind);
  std::vector<LaplacianMatrix> ls = load_laplacians(c.inputs);
  FixedPointConfig cfg;
  cfg.tol = c.tol;
  cfg.max_iter = c.max_iter;

  int iterations = 0;
  double residual = 0.0;
  SymMatrix mean;
  if (kind.family == MeanKind::Family::BuresWasserstein) {
    BarycenterProblem problem(std::move(ls), c.weights, kind.filter);
    FixedPointReport report = bw_mean(problem, cfg);
    iterations = report.iterations;
    residual = report.residual;
    mean = report.mean_laplacian.sym();
  } else {
    mean = mean_of(ls, c.weights, kind, cfg);
  }
  const Graph mean_graph = graph_from_laplacian(mean);

  ResultTable table;
  table.command = "mean";
  table.config_hash = config_hash(MeanCommand(c));
  table.seed = 0;
  table.columns = {"u", "v", "weight"};
  for (const auto& e : mean_graph.edges()) {
    table.add_row({std::to_string(e.u), std::to_string(e.v), format_double(e.w)});
  }
  write_table(table, c.out, c.to_stdout, out);
  if (!c.graph_out.empty()) {
    write_graph(mean_graph, c.graph_out, c.format);
  }
  err << "mean: kind=" << kind.name() << " iterations=" << iterations
      << " residual=" << residual << "\n";
  return 0;
}

int run_distance(const DistanceCommand& c, std::ostream& out) {
  const Graph a = read_graph(c.a);
  const Graph b = read_graph(c.b);
  const DistanceKind kind = DistanceKind::from_name(c.kind);
  const double d = graph_distance(a, b, kind);

  ResultTable table;
  table.command = "distance";
  table.config_hash = config_hash(DistanceCommand(c));
  table.seed = 0;
  table.columns = {"kind", "distance"};
  table.add_row({kind.name(), format_double(d)});
  write_table(table, c.out, c.to_stdout, out);
  return 0;
}

int run_interpolate(const InterpolateCommand& c, std::ostream& err) {
  const Graph a = read_graph(c.a);
  const Graph b = read_graph(c.b);
  if (c.out.empty()) {
    throw Error("interpolate requires --out");
  }
  const Graph g = interpolate(a, b, c.t);
  write_graph(g, c.out, c.format);
  err << "interpolate: t=" << c.t << " wrote " << c.out << "\n";
  return 0;
}

int run_cluster(const ClusterCommand& c, std::ostream& out, std::ostream& err) {
  ResultTable table;
  table.command = "cluster";
  table.config_hash = config_hash(ClusterCommand(c));
  table.seed = c.seed;

  if (!c.inputs.empty()) {
    // File mode: cluster the given graphs with the first pairing.
    std::vector<Graph> graphs;
    graphs.reserve(c.inputs.size());
    for (const auto& path : c.inputs) graphs.push_back(read_graph(path));
    const auto [mean_kind, distance_kind] = standard_pairing(c.pairings.front());
    KMeansConfig cfg;
    cfg.k = c.k > 0 ? c.k : c.classes;
    cfg.mean_kind = mean_kind;
    cfg.distance_kind = distance_kind;
    cfg.max_iter = c.max_iter;
    cfg.n_init = c.n_init;
    cfg.rng_seed = c.seed;
    const KMeansResult result = kmeans_graphs(graphs, cfg);
    table.columns = {"graph", "cluster"};
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      table.add_row({c.inputs[i], std::to_string(result.assignment[i])});
    }
    write_table(table, c.out, c.to_stdout, out);
    err << "cluster: inertia=" << result.inertia << "\n";
    return 0;
  }

  KMeansExperimentParams params;
  params.n_nodes = c.nodes;
  params.n_classes = c.classes;
  params.p_in = c.p_in;
  params.per_class = c.per_class;
  params.n_seeds = c.n_seeds;
  params.seed = c.seed;
  params.n_init = c.n_init;
  params.max_iter = c.max_iter;
  for (const auto& name : c.pairings) params.pairings.push_back(standard_pairing(name));
  const auto rows = run_kmeans_trials(params, c.jobs);

  table.columns = {"seed_index", "pairing", "nmi"};
  for (const auto& row : rows) {
    table.add_row({std::to_string(row.seed_index), row.pairing,
                   format_double(row.nmi_value)});
  }
  for (const auto& pairing : params.pairings) {
    const std::string name = pairing.first.name() + "/" + pairing.second.name();
    table.add_row({"mean", name, format_double(average_nmi(rows, name))});
  }
  write_table(table, c.out, c.to_stdout, out);
  return 0;
}

int run_classify(const ClassifyCommand& c, std::ostream& out) {
  ClassifyParams params;
  params.n_nodes = c.nodes;
  params.n_communities = c.communities;
  params.p_in_a = c.p_in_a;
  params.p_out_a = c.p_out_a;
  params.p_in_b = c.p_in_b;
  params.p_out_b = c.p_out_b;
  params.train_per_class = c.train_per_class;
  params.test_per_class = c.test_per_class;
  params.trials = c.trials;
  params.seed = c.seed;
  for (const auto& name : c.pairings) params.pairings.push_back(standard_pairing(name));
  const auto rows = run_classify_trials(params, c.jobs);

  ResultTable table;
  table.command = "classify";
  table.config_hash = config_hash(ClassifyCommand(c));
  table.seed = c.seed;
  table.columns = {"trial", "pairing", "error_rate"};
  for (const auto& row : rows) {
    table.add_row({std::to_string(row.trial), row.pairing, format_double(row.error_rate)});
  }
  for (const auto& pairing : params.pairings) {
    const std::string name = pairing.first.name() + "/" + pairing.second.name();
    table.add_row({"mean", name, format_double(average_error(rows, name))});
  }
  write_table(table, c.out, c.to_stdout, out);
  return 0;
}

int run_ssl(const SslCommand& c, std::ostream& out) {
  ResultTable table;
  table.command = "ssl";
  table.config_hash = config_hash(SslCommand(c));
  table.seed = c.seed;

  if (!c.layer_files.empty()) {
    if (c.observed_file.empty()) {
      throw Error("ssl file mode requires --observed");
    }
    SSLProblem problem;
    for (const auto& path : c.layer_files) {
      problem.layers.push_back(normalized_laplacian(read_graph(path)));
    }
    std::ifstream obs(c.observed_file);
    if (!obs) {
      throw Error("cannot open: " + c.observed_file);
    }
    std::string line;
    int line_no = 0;
    int max_class = -1;
    while (std::getline(obs, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      int node = -1, cls = -1;
      if (!(fields >> node >> cls)) {
        throw ParseError("expected 'node class'", line_no);
      }
      problem.observed_nodes.push_back(node);
      problem.observed_classes.push_back(cls);
      max_class = std::max(max_class, cls);
    }
    problem.num_classes = max_class + 1;
    problem.mean_kind = MeanKind::from_name(c.mean);
    problem.rho = c.rho.value_or(default_rho(problem.mean_kind));
    const SSLResult result = ssl_classify(problem);
    table.columns = {"node", "label"};
    for (std::size_t i = 0; i < result.labels.size(); ++i) {
      table.add_row({std::to_string(i), std::to_string(result.labels[i])});
    }
    write_table(table, c.out, c.to_stdout, out);
    return 0;
  }

  SslParams params;
  params.n_nodes = c.nodes;
  params.n_classes = c.classes;
  params.n_layers = c.layers;
  params.p_in = c.p_in;
  params.p_out = c.p_out;
  params.observed_fraction = c.observed_fraction;
  params.trials = c.trials;
  params.seed = c.seed;
  for (const auto& name : c.means) params.kinds.push_back(MeanKind::from_name(name));
  const auto rows = run_ssl_trials(params, c.jobs);

  table.columns = {"trial", "mean_kind", "error_rate"};
  for (const auto& row : rows) {
    table.add_row({std::to_string(row.trial), row.kind, format_double(row.error_rate)});
  }
  for (const auto& kind : params.kinds) {
    table.add_row({"mean", kind.name(),
                   format_double(average_ssl_error(rows, kind.name()))});
  }
  write_table(table, c.out, c.to_stdout, out);
  return 0;
}

int run_fuse(const FuseCommand& c, std::ostream& out) {
  FusionParams params;
  params.n_nodes = c.nodes;
  params.n_communities = c.communities;
  params.p_in = c.p_in;
  params.p_out = c.p_out;
  params.n_graphs = c.n_graphs;
  params.n_perturb = c.n_perturb;
  params.trials = c.trials;
  params.seed = c.seed;
  for (const auto& name : c.kinds) params.kinds.push_back(MeanKind::from_name(name));
  const auto rows = run_fusion_trials(params, c.jobs);

  ResultTable table;
  table.command = "fuse-experiment";
  table.config_hash = config_hash(FuseCommand(c));
  table.seed = c.seed;
  table.columns = {"trial",
                   "mean_kind",
                   "bw_distance",
                   "laplacian_frobenius",
                   "covariance_frobenius",
                   "degree_centrality_mse",
                   "modularity_absdiff",
                   "participation_mse"};
  auto error_cells = [](const FusionErrors& e) {
    return std::vector<std::string>{
        format_double(e.bw_distance),          format_double(e.laplacian_frobenius),
        format_double(e.covariance_frobenius), format_double(e.degree_centrality_mse),
        format_double(e.modularity_absdiff),   format_double(e.participation_mse)};
  };
  for (const auto& row : rows) {
    std::vector<std::string> cells{std::to_string(row.trial), row.kind};
    for (auto& cell : error_cells(row.errors)) cells.push_back(std::move(cell));
    table.add_row(std::move(cells));
  }
  for (const auto& kind : params.kinds) {
    std::vector<std::string> cells{"mean", kind.name()};
    for (auto& cell : error_cells(average_fusion_errors(rows, kind.name()))) {
      cells.push_back(std::move(cell));
    }
    table.add_row(std::move(cells));
  }
  write_table(table, c.out, c.to_stdout, out);
  return 0;
}

}  // namespace

std::string config_hash(const ExperimentConfig& config) {
  const std::string canonical =
      std::visit([](const auto& c) { return canonical_string(c); }, config);
  return hex64(fnv1a(canonical));
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    code = std::visit(
        [&](const auto& c) -> int {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, GenerateCommand>) {
            return run_generate(c, err);
          } else if constexpr (std::is_same_v<T, MeanCommand>) {
            return run_mean(c, out, err);
          } else if constexpr (std::is_same_v<T, DistanceCommand>) {
            return run_distance(c, out);
          } else if constexpr (std::is_same_v<T, InterpolateCommand>) {
            return run_interpolate(c, err);
          } else if constexpr (std::is_same_v<T, ClusterCommand>) {
            return run_cluster(c, out, err);
          } else if constexpr (std::is_same_v<T, ClassifyCommand>) {
            return run_classify(c, out);
          } else if constexpr (std::is_same_v<T, SslCommand>) {
            return run_ssl(c, out);
          } else {
            return run_fuse(c, out);
          }
        },
        config);
  } catch (const NotConvergedError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  err << "done in " << elapsed.count() << " ms\n";
  return code;
}

}  // namespace gbary::cli
