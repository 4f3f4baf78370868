// gbary: Bures-Wasserstein means, distances, and interpolations of labeled
// graphs, plus the synthetic clustering / classification / SSL experiment
// protocols. Machine-readable output goes to --out (or stdout with
// --stdout); diagnostics go to stderr.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "gbary/cli.hpp"

namespace {

int jobs_from_env() {
  const char* env = std::getenv("GBARY_JOBS");
  if (env == nullptr) return 1;
  const int jobs = std::atoi(env);
  return jobs > 0 ? jobs : 1;
}

std::string format_help = "Graph file format: tsv (edge list) or csv (dense Laplacian)";

void add_format_option(CLI::App* cmd, gbary::GraphFormat& format) {
  cmd->add_option_function<std::string>(
         "--format",
         [&format](const std::string& name) {
           format = gbary::graph_format_from_name(name);
         },
         format_help)
      ->check(CLI::IsMember({"tsv", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bures-Wasserstein means of graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  const int default_jobs = jobs_from_env();

  gbary::cli::GenerateCommand generate;
  auto* generate_cmd = app.add_subcommand("generate", "Sample a synthetic graph");
  generate_cmd->add_option("--kind", generate.kind, "sbm or line")
      ->check(CLI::IsMember({"sbm", "line"}));
  generate_cmd->add_option("--nodes", generate.nodes);
  generate_cmd->add_option("--communities", generate.communities);
  generate_cmd->add_option("--p-in", generate.p_in);
  generate_cmd->add_option("--p-out", generate.p_out);
  generate_cmd->add_option("--seed", generate.seed);
  generate_cmd->add_option("--out", generate.out)->required();
  add_format_option(generate_cmd, generate.format);

  gbary::cli::MeanCommand mean;
  auto* mean_cmd = app.add_subcommand("mean", "Mean of a set of graphs");
  mean_cmd->add_option("--input", mean.inputs, "Graph files")->required();
  mean_cmd->add_option("--weights", mean.weights, "Positive weights, one per input");
  mean_cmd->add_option("--kind", mean.kind,
                       "bw, bw:<filter>, arithmetic, harmonic, power:<p>, karcher");
  mean_cmd->add_option("--tol", mean.tol);
  mean_cmd->add_option("--max-iter", mean.max_iter);
  mean_cmd->add_option("--out", mean.out, "Result CSV (edge rows)");
  mean_cmd->add_option("--graph-out", mean.graph_out, "Also write the mean graph file");
  mean_cmd->add_flag("--stdout", mean.to_stdout);
  add_format_option(mean_cmd, mean.format);

  gbary::cli::DistanceCommand distance;
  auto* distance_cmd = app.add_subcommand("distance", "Distance between two graphs");
  distance_cmd->add_option("--a", distance.a)->required();
  distance_cmd->add_option("--b", distance.b)->required();
  distance_cmd->add_option("--kind", distance.kind,
                           "bw, bw:pinv, bw:sqrt, bw:identity, frobenius, frobenius-pinv");
  distance_cmd->add_option("--out", distance.out);
  distance_cmd->add_flag("--stdout", distance.to_stdout);

  gbary::cli::InterpolateCommand interpolate;
  auto* interpolate_cmd =
      app.add_subcommand("interpolate", "Geodesic point between two graphs");
  interpolate_cmd->add_option("--a", interpolate.a)->required();
  interpolate_cmd->add_option("--b", interpolate.b)->required();
  interpolate_cmd->add_option("--t", interpolate.t)->check(CLI::Range(0.0, 1.0));
  interpolate_cmd->add_option("--out", interpolate.out)->required();
  add_format_option(interpolate_cmd, interpolate.format);

  gbary::cli::ClusterCommand cluster;
  cluster.jobs = default_jobs;
  auto* cluster_cmd = app.add_subcommand(
      "cluster", "K-means over graphs (files, or the synthetic line-communities protocol)");
  cluster_cmd->add_option("--input", cluster.inputs, "Graph files (file mode)");
  cluster_cmd->add_option("--k", cluster.k, "Cluster count in file mode");
  cluster_cmd->add_option("--nodes", cluster.nodes);
  cluster_cmd->add_option("--classes", cluster.classes);
  cluster_cmd->add_option("--p-in", cluster.p_in);
  cluster_cmd->add_option("--per-class", cluster.per_class);
  cluster_cmd->add_option("--seeds", cluster.n_seeds, "Number of dataset seeds");
  cluster_cmd->add_option("--seed", cluster.seed);
  cluster_cmd->add_option("--pairings", cluster.pairings, "bw, arithmetic, harmonic");
  cluster_cmd->add_option("--n-init", cluster.n_init);
  cluster_cmd->add_option("--max-iter", cluster.max_iter);
  cluster_cmd->add_option("--jobs", cluster.jobs);
  cluster_cmd->add_option("--out", cluster.out);
  cluster_cmd->add_flag("--stdout", cluster.to_stdout);

  gbary::cli::ClassifyCommand classify;
  classify.jobs = default_jobs;
  auto* classify_cmd = app.add_subcommand(
      "classify", "Two-class nearest-centroid protocol on synthetic SBM families");
  classify_cmd->add_option("--nodes", classify.nodes);
  classify_cmd->add_option("--communities", classify.communities);
  classify_cmd->add_option("--p-in-a", classify.p_in_a);
  classify_cmd->add_option("--p-out-a", classify.p_out_a);
  classify_cmd->add_option("--p-in-b", classify.p_in_b);
  classify_cmd->add_option("--p-out-b", classify.p_out_b);
  classify_cmd->add_option("--train-per-class", classify.train_per_class);
  classify_cmd->add_option("--test-per-class", classify.test_per_class);
  classify_cmd->add_option("--trials", classify.trials);
  classify_cmd->add_option("--seed", classify.seed);
  classify_cmd->add_option("--pairings", classify.pairings);
  classify_cmd->add_option("--jobs", classify.jobs);
  classify_cmd->add_option("--out", classify.out);
  classify_cmd->add_flag("--stdout", classify.to_stdout);

  gbary::cli::SslCommand ssl;
  ssl.jobs = default_jobs;
  auto* ssl_cmd = app.add_subcommand(
      "ssl", "Semi-supervised node classification on multi-layer graphs");
  ssl_cmd->add_option("--layer", ssl.layer_files, "Layer graph files (file mode)");
  ssl_cmd->add_option("--observed", ssl.observed_file,
                      "TSV of observed 'node class' pairs (file mode)");
  ssl_cmd->add_option("--mean", ssl.mean, "Mean kind in file mode");
  double rho_value = -1.0;
  ssl_cmd->add_option("--rho", rho_value, "Regularization (default depends on mean)");
  ssl_cmd->add_option("--nodes", ssl.nodes);
  ssl_cmd->add_option("--classes", ssl.classes);
  ssl_cmd->add_option("--layers", ssl.layers);
  ssl_cmd->add_option("--p-in", ssl.p_in);
  ssl_cmd->add_option("--p-out", ssl.p_out);
  ssl_cmd->add_option("--observed-fraction", ssl.observed_fraction);
  ssl_cmd->add_option("--trials", ssl.trials);
  ssl_cmd->add_option("--seed", ssl.seed);
  ssl_cmd->add_option("--means", ssl.means, "Mean kinds in synthetic mode");
  ssl_cmd->add_option("--jobs", ssl.jobs);
  ssl_cmd->add_option("--out", ssl.out);
  ssl_cmd->add_flag("--stdout", ssl.to_stdout);

  gbary::cli::FuseCommand fuse;
  fuse.jobs = default_jobs;
  auto* fuse_cmd =
      app.add_subcommand("fuse-experiment", "Graph-fusion metric preservation trials");
  fuse_cmd->add_option("--nodes", fuse.nodes);
  fuse_cmd->add_option("--communities", fuse.communities);
  fuse_cmd->add_option("--p-in", fuse.p_in);
  fuse_cmd->add_option("--p-out", fuse.p_out);
  fuse_cmd->add_option("--n-graphs", fuse.n_graphs);
  fuse_cmd->add_option("--n-perturb", fuse.n_perturb);
  fuse_cmd->add_option("--trials", fuse.trials);
  fuse_cmd->add_option("--seed", fuse.seed);
  fuse_cmd->add_option("--kinds", fuse.kinds);
  fuse_cmd->add_option("--jobs", fuse.jobs);
  fuse_cmd->add_option("--out", fuse.out);
  fuse_cmd->add_flag("--stdout", fuse.to_stdout);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  gbary::cli::ExperimentConfig config;
  if (*generate_cmd) {
    config = generate;
  } else if (*mean_cmd) {
    config = mean;
  } else if (*distance_cmd) {
    config = distance;
  } else if (*interpolate_cmd) {
    config = interpolate;
  } else if (*cluster_cmd) {
    config = cluster;
  } else if (*classify_cmd) {
    config = classify;
  } else if (*ssl_cmd) {
    if (rho_value >= 0.0) ssl.rho = rho_value;
    config = ssl;
  } else {
    config = fuse;
  }
  return gbary::cli::run(config, std::cout, std::cerr);
}
