#include "srs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "srs/bounds.hpp"
#include "srs/embedding.hpp"
#include "srs/experiments.hpp"
#include "srs/io.hpp"
#include "srs/kmeans.hpp"
#include "srs/samplers.hpp"
#include "srs/synthgen.hpp"

namespace srs::cli {
namespace {

namespace fs = std::filesystem;

struct GenArcsArgs {
  ArcSpec spec;
  std::uint64_t seed = 0;
  std::string matrix = "data.csv";
  std::string labels = "labels.csv";
};

struct GenSubspacesArgs {
  Index ambient = 100;
  std::vector<Index> dims;
  Index r = 0;
  Index s = 0;
  std::vector<Index> populations;
  std::uint64_t seed = 0;
  std::string matrix = "data.csv";
  std::string labels = "labels.csv";
};

struct EmbedArgs {
  std::string kind;
  Index dim = 0;
  double density = 1.0 / 3.0;
};

struct SketchArgs {
  std::string input = "data.csv";
  std::string method = "srs";
  Index n = 0;
  std::uint64_t seed = 0;
  std::optional<Index> leverage_k;
  std::string norm = "squared";
  EmbedArgs embed;
  bool drop_zero = false;
  std::string indices = "indices.csv";
  std::string columns = "columns.csv";
};

struct EvalArgs {
  std::string input = "data.csv";
  std::string labels = "labels.csv";
  std::string indices;
  std::string columns;
  double tol = kDefaultRankTolerance;
  std::string out;
};

struct ExpArgs {
  std::string input = "data.csv";
  std::string labels = "labels.csv";
  std::vector<std::string> methods;
  std::vector<Index> grid;
  Index n = 0;
  int trials = 10;
  Index draws = 10000;
  std::uint64_t seed = 0;
  std::optional<Index> leverage_k;
  EmbedArgs embed;
  std::string out;
  std::string svg;
  // kmeans
  int k = 2;
  Index sketch_n = 200;
  int seeds = 50;
  int restarts = 10;
  int max_iters = 100;
  // bounds
  int m = 5;
  double delta = 0.1;
  std::optional<double> beta;
  std::vector<double> populations;
  std::optional<double> tau1, tau2;
  std::optional<double> r, s;
  double c = 1.0;
  std::optional<double> min_p;
  int empirical_trials = 0;
};

std::string join_args(const std::vector<std::string>& args) {
  std::string echo = "srs";
  for (const auto& a : args) echo += " " + a;
  return echo;
}

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorKind::IoError, "input file not found: " + path);
  }
}

DataMatrix load_input(const std::string& path) {
  require_file(path);
  return load_csv(path);
}

ClusterLabels load_input_labels(const std::string& path, Index cols) {
  require_file(path);
  auto labels = load_labels(path);
  labels.validate(cols);
  return labels;
}

void add_embed_options(CLI::App* app, EmbedArgs& embed) {
  app->add_option("--embed", embed.kind, "Row embedding applied before sampling")
      ->check(CLI::IsMember({"rows", "gaussian", "sparse", "rademacher"}));
  app->add_option("--embed-dim", embed.dim, "Embedding target dimension p");
  app->add_option("--embed-density", embed.density, "Nonzero probability of sparse embeddings");
}

// Returns d unchanged when no embedding was requested.
DataMatrix maybe_embed(const DataMatrix& d, const EmbedArgs& embed, Rng& rng) {
  if (embed.kind.empty()) return d;
  EmbeddingSpec spec;
  spec.kind = parse_embedding(embed.kind);
  spec.p = embed.dim;
  spec.density = embed.density;
  return apply_embedding(build_embedding(spec, d.rows(), rng), d);
}

void emit_report(const ExperimentReport& report, const ExpArgs& args, const std::string& title,
                 std::ostream& out) {
  if (args.out.empty() || args.out == "-") {
    report.write_csv(out);
  } else {
    report.save_csv(args.out);
  }
  if (!args.svg.empty()) report.save_svg(args.svg, title);
}

std::vector<SamplerSpec> parse_specs(const ExpArgs& args, Index n) {
  std::vector<SamplerSpec> specs;
  for (const auto& name : args.methods) {
    SamplerSpec spec;
    spec.method = parse_method(name);
    spec.n = n;
    spec.seed = args.seed;
    spec.leverage_k = args.leverage_k;
    specs.push_back(spec);
  }
  return specs;
}

int run_gen_arcs(const GenArcsArgs& a, const std::vector<std::string>& comments) {
  Rng rng = make_rng(a.seed);
  const auto data = gen_arc_clusters(a.spec, rng);
  save_csv(data.data, a.matrix, comments);
  save_labels(data.labels, a.labels, comments);
  return 0;
}

int run_gen_subspaces(const GenSubspacesArgs& a, const std::vector<std::string>& comments) {
  SubspaceSpec spec;
  std::vector<Index> populations = a.populations;
  if (!a.dims.empty()) {
    spec.ambient = a.ambient;
    spec.dims = a.dims;
    spec.seed = a.seed;
    if (populations.size() == 1) populations.assign(spec.dims.size(), populations.front());
    spec.populations = populations;
  } else {
    if (a.s < 1) throw Error(ErrorKind::BadDims, "give --dims or both --r and --s");
    if (populations.size() == 1) {
      populations.assign(static_cast<std::size_t>(a.s), populations.front());
    }
    spec = homogeneous_subspaces(a.ambient, a.r, a.s, populations, a.seed);
  }
  const auto data = gen_union_subspaces(spec);
  save_csv(data.data, a.matrix, comments);
  save_labels(data.labels, a.labels, comments);
  return 0;
}

int run_sketch(const SketchArgs& a, const std::vector<std::string>& comments) {
  const DataMatrix raw = load_input(a.input);
  std::vector<Index> kept;
  DataMatrix d = raw;
  if (a.drop_zero) {
    kept = nonzero_columns(raw);
    d = gather_columns(raw, kept);
  }
  Rng rng = make_rng(a.seed);
  const DataMatrix embedded = maybe_embed(d, a.embed, rng);

  SamplerSpec spec;
  spec.method = parse_method(a.method);
  spec.n = a.n;
  spec.seed = a.seed;
  spec.leverage_k = a.leverage_k;
  spec.norm_convention = a.norm == "plain" ? NormConvention::plain : NormConvention::squared;
  const DataMatrix source = is_spatial(spec.method) ? normalize_columns(embedded) : embedded;
  SketchResult sketch = sample_columns(source, spec, rng);
  if (a.drop_zero) {
    for (auto& i : sketch.indices) i = kept[static_cast<std::size_t>(i)];
  }
  save_indices(sketch, a.indices, comments);
  save_csv(gather_columns(raw, sketch.indices), a.columns, comments);
  return 0;
}

int run_eval_rank(const EvalArgs& a, std::ostream& out) {
  const DataMatrix d = load_input(a.input);
  out << numerical_rank(d, a.tol) << '\n';
  return 0;
}

int run_eval_error(const EvalArgs& a, std::ostream& out) {
  const DataMatrix d = load_input(a.input);
  DataMatrix c;
  if (!a.columns.empty()) {
    c = load_input(a.columns);
  } else if (!a.indices.empty()) {
    require_file(a.indices);
    const auto indices = load_indices(a.indices);
    for (Index i : indices) {
      if (i >= d.cols()) throw Error(ErrorKind::ShapeError, "index out of range: " + std::to_string(i));
    }
    c = gather_columns(d, indices);
  } else {
    throw Error(ErrorKind::InvalidArgument, "give --columns or --indices");
  }
  out << format_double(approximation_error(d, c)) << '\n';
  return 0;
}

int run_eval_coverage(const EvalArgs& a, std::ostream& out,
                      const std::vector<std::string>& comments) {
  require_file(a.labels);
  require_file(a.indices);
  const auto labels = load_labels(a.labels);
  const auto indices = load_indices(a.indices);
  for (Index i : indices) {
    if (i >= labels.size()) throw Error(ErrorKind::ShapeError, "index out of range: " + std::to_string(i));
  }
  const auto counts = cluster_counts(indices, labels);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::IoError, "cannot write " + a.out);
    sink = &file;
    for (const auto& c : comments) *sink << "# " << c << '\n';
  }
  *sink << "cluster,count\n";
  for (std::size_t c = 0; c < counts.size(); ++c) *sink << c << ',' << counts[c] << '\n';
  return 0;
}

int run_exp_rank_curve(const ExpArgs& a, std::ostream& out, const std::string& echo) {
  const DataMatrix d = load_input(a.input);
  ExperimentReport report;
  report.metadata = {echo, "seed=" + std::to_string(a.seed)};
  for (const auto& spec : parse_specs(a, 1)) {
    const auto part = rank_curve(d, spec, a.grid, a.trials, a.seed);
    report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
  }
  emit_report(report, a, "numerical rank vs sampled columns", out);
  return 0;
}

int run_exp_coverage(const ExpArgs& a, std::ostream& out, const std::string& echo) {
  const DataMatrix raw = load_input(a.input);
  const auto labels = load_input_labels(a.labels, raw.cols());
  Rng rng = make_rng(a.seed);
  const DataMatrix d = maybe_embed(raw, a.embed, rng);
  auto report = coverage_experiment(d, labels, parse_specs(a, a.n), a.n, a.trials, a.seed);
  report.metadata = {echo, "seed=" + std::to_string(a.seed)};
  emit_report(report, a, "sampled columns per cluster", out);
  return 0;
}

int run_exp_probability(const ExpArgs& a, std::ostream& out, const std::string& echo) {
  const DataMatrix d = load_input(a.input);
  const auto labels = load_input_labels(a.labels, d.cols());
  const DataMatrix x = normalize_columns(d);
  ExperimentReport report;
  report.metadata = {echo, "seed=" + std::to_string(a.seed)};
  const auto x_value = static_cast<double>(a.draws);
  {
    Rng rng = make_rng(a.seed);
    const auto p = empirical_sampling_probabilities(x, labels, a.draws, rng, Method::srs_repl);
    for (std::size_t c = 0; c < p.size(); ++c) report.add(0, "srs_repl", x_value, static_cast<int>(c), p[c]);
  }
  {
    Rng rng = make_rng(a.seed);
    const auto p = empirical_sampling_probabilities(x, labels, a.draws, rng, Method::ris_repl);
    for (std::size_t c = 0; c < p.size(); ++c) report.add(0, "ris_repl", x_value, static_cast<int>(c), p[c]);
  }
  {
    Rng rng = make_rng(a.seed);
    const auto p = estimate_region_areas(x, labels, a.draws, rng);
    for (std::size_t c = 0; c < p.size(); ++c) report.add(0, "region_area", x_value, static_cast<int>(c), p[c]);
  }
  emit_report(report, a, "per-cluster sampling probability", out);
  return 0;
}

int run_exp_bounds(const ExpArgs& a, std::ostream& out, const std::string& echo) {
  BoundParams p;
  p.m = a.m;
  p.delta = a.delta;
  p.beta = a.beta ? *a.beta : min_beta(a.m, a.delta);
  p.c = a.c;
  p.populations = a.populations;

  std::optional<LabeledData> data;
  if (a.empirical_trials > 0) {
    LabeledData loaded;
    loaded.data = load_input(a.input);
    loaded.labels = load_input_labels(a.labels, loaded.data.cols());
    if (p.populations.empty()) {
      for (Index pop : loaded.labels.populations()) p.populations.push_back(static_cast<double>(pop));
    }
    data = std::move(loaded);
  }
  for (double pop : p.populations) p.n_total += pop;

  ExperimentReport report;
  report.metadata = {echo, "seed=" + std::to_string(a.seed),
                     "beta=" + format_double(p.beta)};
  if (!p.populations.empty()) {
    const double bound = lemma2_bound(p);
    report.add(0, "lemma2", a.m, -1, bound);
    if (data) {
      const double rate = sufficiency_rate(data->data, data->labels, Method::ris_repl,
                                           static_cast<Index>(std::ceil(bound)), a.m,
                                           a.empirical_trials, a.seed);
      report.add(0, "lemma2_success", a.m, -1, rate);
    }
  }
  if (a.tau1 || a.tau2) {
    p.tau1 = a.tau1.value_or(0.0);
    p.tau2 = a.tau2.value_or(0.0);
    const double bound = lemma3_bound(p);
    report.add(0, "lemma3", a.m, -1, bound);
    if (data) {
      const DataMatrix x = normalize_columns(data->data);
      const double rate = sufficiency_rate(x, data->labels, Method::srs_repl,
                                           static_cast<Index>(std::ceil(bound)), a.m,
                                           a.empirical_trials, a.seed);
      report.add(0, "lemma3_success", a.m, -1, rate);
    }
  }
  if (a.r && a.s) {
    p.r = *a.r;
    p.s = *a.s;
    p.min_p = a.min_p ? *a.min_p : 1.0 / *a.s;
    report.add(0, "lemma4", a.m, -1, lemma4_bound(p));
  }
  if (report.rows.empty()) {
    throw Error(ErrorKind::BadParams, "give --populations, --tau1/--tau2 or --r/--s");
  }
  emit_report(report, a, "sample-size bounds", out);
  return 0;
}

int run_exp_kmeans(const ExpArgs& a, std::ostream& out, const std::string& echo) {
  const DataMatrix d = load_input(a.input);
  const auto labels = load_input_labels(a.labels, d.cols());
  const auto demo = kmeans_demo(d, labels, a.k, a.sketch_n, a.seeds, a.seed, a.max_iters, a.restarts);
  ExperimentReport report;
  report.metadata = {echo, "seed=" + std::to_string(a.seed)};
  report.add(kMeanRow, "full", a.k, -1, static_cast<double>(demo.full_passes) / demo.seeds);
  report.add(kMeanRow, "srs_sketch", a.k, -1, static_cast<double>(demo.sketch_passes) / demo.seeds);
  emit_report(report, a, "balanced center rate", out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial random sampling and column-sketching toolkit", "srs"};
  app.require_subcommand(1);

  GenArcsArgs arcs;
  GenSubspacesArgs subspaces;
  SketchArgs sketch;
  EvalArgs eval;
  ExpArgs exp;

  auto* gen = app.add_subcommand("gen", "Generate synthetic data");
  gen->require_subcommand(1);
  auto* gen_arcs = gen->add_subcommand("arcs", "Two clusters on arcs of the unit circle");
  gen_arcs->add_option("--tau1", arcs.spec.tau1, "Length of arc 1 (radians)")->capture_default_str();
  gen_arcs->add_option("--tau2", arcs.spec.tau2, "Length of arc 2 (radians)")->capture_default_str();
  gen_arcs->add_option("--center1", arcs.spec.center1, "Center angle of arc 1")->capture_default_str();
  gen_arcs->add_option("--center2", arcs.spec.center2, "Center angle of arc 2")->capture_default_str();
  gen_arcs->add_option("--n1", arcs.spec.n1, "Points on arc 1")->capture_default_str();
  gen_arcs->add_option("--n2", arcs.spec.n2, "Points on arc 2")->capture_default_str();
  gen_arcs->add_option("--seed", arcs.seed, "RNG seed")->required();
  gen_arcs->add_option("--matrix", arcs.matrix, "Output matrix CSV")->capture_default_str();
  gen_arcs->add_option("--labels", arcs.labels, "Output labels CSV")->capture_default_str();

  auto* gen_sub = gen->add_subcommand("subspaces", "Union of random linear subspaces");
  gen_sub->add_option("--ambient", subspaces.ambient, "Ambient dimension N1")->capture_default_str();
  gen_sub->add_option("--dims", subspaces.dims, "Per-subspace dimensions")->delimiter(',');
  gen_sub->add_option("--r", subspaces.r, "Total rank r (with --s)");
  gen_sub->add_option("--s", subspaces.s, "Number of subspaces (with --r)");
  gen_sub->add_option("--populations", subspaces.populations,
                      "Points per subspace (one value is broadcast)")
      ->delimiter(',')
      ->required();
  gen_sub->add_option("--seed", subspaces.seed, "RNG seed")->required();
  gen_sub->add_option("--matrix", subspaces.matrix, "Output matrix CSV")->capture_default_str();
  gen_sub->add_option("--labels", subspaces.labels, "Output labels CSV")->capture_default_str();

  auto* sk = app.add_subcommand("sketch", "Sample columns of a matrix");
  sk->add_option("--input", sketch.input, "Input matrix CSV")->capture_default_str();
  sk->add_option("--method", sketch.method, "Sampling method")
      ->check(CLI::IsMember({"srs", "srs_repl", "ris", "ris_repl", "norm", "leverage", "volume"}))
      ->capture_default_str();
  sk->add_option("--n", sketch.n, "Number of columns")->required();
  sk->add_option("--seed", sketch.seed, "RNG seed")->required();
  sk->add_option("--leverage-k", sketch.leverage_k, "Right singular vectors for leverage sampling");
  sk->add_option("--norm", sketch.norm, "Norm sampling weights")
      ->check(CLI::IsMember({"squared", "plain"}))
      ->capture_default_str();
  add_embed_options(sk, sketch.embed);
  sk->add_flag("--drop-zero-columns", sketch.drop_zero, "Drop all-zero columns before sampling");
  sk->add_option("--indices", sketch.indices, "Output indices CSV")->capture_default_str();
  sk->add_option("--columns", sketch.columns, "Output sampled columns CSV")->capture_default_str();

  auto* ev = app.add_subcommand("eval", "Evaluate a matrix or sketch");
  ev->require_subcommand(1);
  auto* ev_rank = ev->add_subcommand("rank", "Numerical rank");
  ev_rank->add_option("--input", eval.input, "Matrix CSV")->capture_default_str();
  ev_rank->add_option("--tol", eval.tol, "Relative singular value threshold")->capture_default_str();
  auto* ev_error = ev->add_subcommand("error", "Relative approximation error of a sketch");
  ev_error->add_option("--input", eval.input, "Matrix CSV")->capture_default_str();
  ev_error->add_option("--indices", eval.indices, "Sketch indices CSV");
  ev_error->add_option("--columns", eval.columns, "Sketch columns CSV");
  auto* ev_cov = ev->add_subcommand("coverage", "Per-cluster counts of a sketch");
  ev_cov->add_option("--labels", eval.labels, "Labels CSV")->capture_default_str();
  ev_cov->add_option("--indices", eval.indices, "Sketch indices CSV")->required();
  ev_cov->add_option("--out", eval.out, "Output CSV (default stdout)");

  auto* ex = app.add_subcommand("exp", "Run an experiment and write a report CSV");
  ex->require_subcommand(1);
  const auto common = [&](CLI::App* cmd, bool needs_labels) {
    cmd->add_option("--input", exp.input, "Matrix CSV")->capture_default_str();
    if (needs_labels) cmd->add_option("--labels", exp.labels, "Labels CSV")->capture_default_str();
    cmd->add_option("--seed", exp.seed, "Master seed")->required();
    cmd->add_option("--out", exp.out, "Report CSV (default stdout)");
    cmd->add_option("--svg", exp.svg, "Optional SVG plot");
  };
  auto* ex_rank = ex->add_subcommand("rank-curve", "Rank of sampled columns vs count");
  common(ex_rank, false);
  ex_rank->add_option("--methods", exp.methods, "Methods")->delimiter(',')->required();
  ex_rank->add_option("--grid", exp.grid, "Ascending sample counts")->delimiter(',')->required();
  ex_rank->add_option("--trials", exp.trials, "Trials")->capture_default_str();
  ex_rank->add_option("--leverage-k", exp.leverage_k, "Right singular vectors for leverage");

  auto* ex_cov = ex->add_subcommand("coverage", "Mean sampled columns per cluster");
  common(ex_cov, true);
  ex_cov->add_option("--methods", exp.methods, "Methods")->delimiter(',')->required();
  ex_cov->add_option("--n", exp.n, "Columns per sketch")->required();
  ex_cov->add_option("--trials", exp.trials, "Trials")->capture_default_str();
  ex_cov->add_option("--leverage-k", exp.leverage_k, "Right singular vectors for leverage");
  add_embed_options(ex_cov, exp.embed);

  auto* ex_prob = ex->add_subcommand("probability", "Per-cluster sampling probabilities");
  common(ex_prob, true);
  ex_prob->add_option("--draws", exp.draws, "Draws / directions")->capture_default_str();

  auto* ex_bounds = ex->add_subcommand("bounds", "Closed-form sample-size bounds");
  common(ex_bounds, true);
  ex_bounds->add_option("--m", exp.m, "Points required per cluster")->capture_default_str();
  ex_bounds->add_option("--delta", exp.delta, "Failure probability")->capture_default_str();
  ex_bounds->add_option("--beta", exp.beta, "beta (default: smallest admissible)");
  ex_bounds->add_option("--populations", exp.populations, "Cluster populations")->delimiter(',');
  ex_bounds->add_option("--tau1", exp.tau1, "Arc length 1");
  ex_bounds->add_option("--tau2", exp.tau2, "Arc length 2");
  ex_bounds->add_option("--r", exp.r, "Rank r");
  ex_bounds->add_option("--s", exp.s, "Subspace count s");
  ex_bounds->add_option("--c", exp.c, "Constant c")->capture_default_str();
  ex_bounds->add_option("--min-p", exp.min_p, "Smallest cluster probability (default 1/s)");
  ex_bounds->add_option("--empirical-trials", exp.empirical_trials,
                        "Also measure success rates at the bounds on --input/--labels");

  auto* ex_km = ex->add_subcommand("kmeans", "k-means on full data vs a spatial sketch");
  common(ex_km, true);
  ex_km->add_option("--k", exp.k, "Clusters")->capture_default_str();
  ex_km->add_option("--sketch-n", exp.sketch_n, "Sketch size")->capture_default_str();
  ex_km->add_option("--seeds", exp.seeds, "Number of seeds")->capture_default_str();
  ex_km->add_option("--restarts", exp.restarts, "k-means restarts")->capture_default_str();
  ex_km->add_option("--max-iters", exp.max_iters, "Lloyd iterations")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::string echo = join_args(args);
  const std::vector<std::string> comments = {echo};
  try {
    if (gen_arcs->parsed()) return run_gen_arcs(arcs, comments);
    if (gen_sub->parsed()) return run_gen_subspaces(subspaces, comments);
    if (sk->parsed()) return run_sketch(sketch, comments);
    if (ev_rank->parsed()) return run_eval_rank(eval, out);
    if (ev_error->parsed()) return run_eval_error(eval, out);
    if (ev_cov->parsed()) return run_eval_coverage(eval, out, comments);
    if (ex_rank->parsed()) return run_exp_rank_curve(exp, out, echo);
    if (ex_cov->parsed()) return run_exp_coverage(exp, out, echo);
    if (ex_prob->parsed()) return run_exp_probability(exp, out, echo);
    if (ex_bounds->parsed()) return run_exp_bounds(exp, out, echo);
    if (ex_km->parsed()) return run_exp_kmeans(exp, out, echo);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no command\n";
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace srs::cli
