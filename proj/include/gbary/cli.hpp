#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gbary/experiments.hpp"
#include "gbary/io.hpp"

namespace gbary::cli {

/// Machine-readable experiment output: a rectangular table plus the
/// metadata needed to reproduce it exactly (command, config hash, seed).
/// Cells are stored preformatted so identical configs always serialize to
/// identical bytes.
struct ResultTable {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream& out) const;
};

struct GenerateCommand {
  std::string kind = "sbm";  // "sbm" | "line"
  int nodes = 50;
  int communities = 5;
  double p_in = 0.3;
  double p_out = 0.1;
  std::uint64_t seed = 1;
  GraphFormat format = GraphFormat::EdgeListTsv;
  std::string out;
};

struct MeanCommand {
  std::vector<std::string> inputs;
  std::vector<double> weights;  // empty: uniform
  std::string kind = "bw";
  double tol = 1e-9;
  int max_iter = 100;
  std::string out;  // result CSV
  std::string graph_out;
  GraphFormat format = GraphFormat::EdgeListTsv;
  bool to_stdout = false;
};

struct DistanceCommand {
  std::string a;
  std::string b;
  std::string kind = "bw";
  std::string out;
  bool to_stdout = false;
};

struct InterpolateCommand {
  std::string a;
  std::string b;
  double t = 0.5;
  GraphFormat format = GraphFormat::EdgeListTsv;
  std::string out;
};

struct ClusterCommand {
  // Synthetic line-communities protocol when no input files are given.
  std::vector<std::string> inputs;
  int k = 0;  // file mode; 0 means "use classes"
  int nodes = 50;
  int classes = 5;
  double p_in = 0.2;
  int per_class = 20;
  int n_seeds = 10;
  std::uint64_t seed = 1;
  std::vector<std::string> pairings = {"bw", "arithmetic", "harmonic"};
  int n_init = 5;
  int max_iter = 50;
  int jobs = 1;
  std::string out;
  bool to_stdout = false;
};

struct ClassifyCommand {
  int nodes = 40;
  int communities = 4;
  double p_in_a = 0.4;
  double p_out_a = 0.05;
  double p_in_b = 0.25;
  double p_out_b = 0.095;
  int train_per_class = 10;
  int test_per_class = 10;
  int trials = 20;
  std::uint64_t seed = 1;
  std::vector<std::string> pairings = {"bw", "arithmetic", "harmonic"};
  int jobs = 1;
  std::string out;
  bool to_stdout = false;
};

struct SslCommand {
  // File mode: layer graphs plus a TSV of "node<TAB>class" observations.
  std::vector<std::string> layer_files;
  std::string observed_file;
  std::string mean = "bw";
  std::optional<double> rho;
  // Synthetic mode (used when layer_files is empty).
  int nodes = 150;
  int classes = 3;
  int layers = 2;
  double p_in = 0.15;
  double p_out = 0.03;
  double observed_fraction = 0.1;
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<std::string> means = {"bw", "power:1", "power:-1", "power:-10"};
  int jobs = 1;
  std::string out;
  bool to_stdout = false;
};

struct FuseCommand {
  int nodes = 50;
  int communities = 5;
  double p_in = 0.3;
  double p_out = 0.1;
  int n_graphs = 100;
  int n_perturb = 10;
  int trials = 200;
  std::uint64_t seed = 1;
  std::vector<std::string> kinds = {"bw", "arithmetic", "harmonic", "karcher"};
  int jobs = 1;
  std::string out;
  bool to_stdout = false;
};

using ExperimentConfig =
    std::variant<GenerateCommand, MeanCommand, DistanceCommand, InterpolateCommand,
                 ClusterCommand, ClassifyCommand, SslCommand, FuseCommand>;

/// Executes a command; diagnostics go to err, machine-readable output to
/// the configured file or stdout. Returns 0 on success, 2 on validation
/// errors, 3 on numerical non-convergence.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// FNV-1a hash of a command's canonical parameter string.
std::string config_hash(const ExperimentConfig& config);

}  // namespace gbary::cli
