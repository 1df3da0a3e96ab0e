// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "srs/bounds.hpp"
#include "srs/cli.hpp"
#include "srs/embedding.hpp"
#include "srs/experiments.hpp"
#include "srs/io.hpp"
#include "srs/kmeans.hpp"
#include "srs/samplers.hpp"
#include "srs/synthgen.hpp"

using namespace srs;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
    pass = pass && ok;
  }
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

LabeledData arc_data(double tau1, double tau2, double c1, double c2, Index n1, Index n2,
                     std::uint64_t seed) {
  ArcSpec spec;
  spec.tau1 = tau1;
  spec.tau2 = tau2;
  spec.center1 = c1;
  spec.center2 = c2;
  spec.n1 = n1;
  spec.n2 = n2;
  Rng rng = make_rng(seed);
  return gen_arc_clusters(spec, rng);
}

DataMatrix gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DataMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Outcome arc_probability() {
  const auto start = std::chrono::steady_clock::now();
  const auto data = arc_data(kPi / 2, kPi / 4, 0.0, kPi / 2, 1000, 1000, 101);
  Rng rng = make_rng(102);
  const auto freq = empirical_sampling_probabilities(data.data, data.labels, 10000, rng);
  const double elapsed = seconds_since(start);
  Outcome o;
  o.require(std::abs(freq[0] - 0.625) <= 0.02, "cluster-1 frequency " + fmt(freq[0]) + " vs 0.625");
  o.require(elapsed < 5.0, "runtime " + fmt(elapsed, 2) + " s");
  return o;
}

Outcome rank_curves() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Index> pops;
  for (int i = 0; i < 50; ++i) pops.push_back(i < 25 ? 20 : 500);
  const auto data = gen_union_subspaces(homogeneous_subspaces(100, 100, 50, pops, 201));
  const std::vector<Index> grid = {50, 100, 150, 200, 250, 300, 350, 400,
                                   600, 800, 1000, 1200, 1500};
  SamplerSpec srs_spec;
  srs_spec.method = Method::srs;
  SamplerSpec ris_spec;
  ris_spec.method = Method::ris;
  const auto srs_report = rank_curve(data.data, srs_spec, grid, 10, 202);
  const auto ris_report = rank_curve(data.data, ris_spec, grid, 10, 202);
  const double elapsed = seconds_since(start);

  Index srs_reach = 0;
  for (Index n : grid) {
    if (*srs_report.find(kMedianRow, "srs", static_cast<double>(n)) >= 100.0) {
      srs_reach = n;
      break;
    }
  }
  const double ris_400 = *ris_report.find(kMedianRow, "ris", 400.0);
  const double ris_1500 = *ris_report.find(kMedianRow, "ris", 1500.0);
  Outcome o;
  o.require(srs_reach > 0 && srs_reach <= 400,
            "SRS median rank 100 at " + (srs_reach > 0 ? std::to_string(srs_reach) : "never") +
                " columns");
  o.require(ris_400 < 100.0, "RIS median rank at 400 = " + fmt(ris_400, 1));
  o.require(ris_1500 < 100.0, "RIS median rank at 1500 = " + fmt(ris_1500, 1));
  o.require(elapsed < 120.0, "runtime " + fmt(elapsed, 2) + " s");
  return o;
}

Outcome balanced_coverage() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Index> pops;
  for (int i = 0; i < 20; ++i) pops.push_back(i < 10 ? 30 : 700);
  const auto data = gen_union_subspaces(homogeneous_subspaces(10, 40, 20, pops, 301));
  std::vector<SamplerSpec> specs(2);
  specs[0].method = Method::srs;
  specs[1].method = Method::ris;
  const auto report = coverage_experiment(data.data, data.labels, specs, 400, 100, 302);
  const double elapsed = seconds_since(start);

  double srs_min = 1e300;
  double ris_small_max = 0.0;
  for (int c = 0; c < 20; ++c) {
    srs_min = std::min(srs_min, *report.find(kMeanRow, "srs", 400.0, c));
    if (c < 10) ris_small_max = std::max(ris_small_max, *report.find(kMeanRow, "ris", 400.0, c));
  }
  Outcome o;
  o.require(srs_min >= 8.0, "SRS smallest per-cluster mean " + fmt(srs_min, 2));
  o.require(ris_small_max <= 4.0, "RIS largest small-cluster mean " + fmt(ris_small_max, 2));
  o.require(elapsed < 120.0, "runtime " + fmt(elapsed, 2) + " s");
  return o;
}

Outcome dimension_seeking() {
  const auto start = std::chrono::steady_clock::now();
  SubspaceSpec spec;
  spec.ambient = 100;
  for (int i = 0; i < 20; ++i) {
    spec.dims.push_back(i < 10 ? 2 : 4);
    spec.populations.push_back(i < 10 ? 3200 : 80);
  }
  spec.seed = 401;
  const auto data = gen_union_subspaces(spec);
  std::vector<int> low, high;
  for (int i = 0; i < 20; ++i) (i < 10 ? low : high).push_back(i);

  std::vector<SamplerSpec> specs(2);
  specs[0].method = Method::srs;
  specs[1].method = Method::ris;
  const int trials = 20;
  const auto raw = coverage_experiment(data.data, data.labels, specs, 300, trials, 402);

  Rng rng = make_rng(403);
  const EmbeddingSpec embed{EmbeddingKind::rademacher, 20, 1.0 / 3.0, 0};
  const DataMatrix embedded = normalize_columns(
      apply_embedding(build_embedding(embed, spec.ambient, rng), data.data));
  const auto reduced = coverage_experiment(embedded, data.labels, {specs[0]}, 300, trials, 404);
  const double elapsed = seconds_since(start);

  const double srs_hi = mean_coverage(raw, Method::srs, high);
  const double srs_lo = mean_coverage(raw, Method::srs, low);
  const double emb_hi = mean_coverage(reduced, Method::srs, high);
  const double emb_lo = mean_coverage(reduced, Method::srs, low);
  const double ris_hi = mean_coverage(raw, Method::ris, high);
  const double ris_lo = mean_coverage(raw, Method::ris, low);
  Outcome o;
  o.require(srs_hi > srs_lo, "SRS raw 4-dim " + fmt(srs_hi, 2) + " vs 2-dim " + fmt(srs_lo, 2));
  o.require(emb_hi > emb_lo,
            "SRS embedded 4-dim " + fmt(emb_hi, 2) + " vs 2-dim " + fmt(emb_lo, 2));
  o.require(ris_hi < ris_lo, "RIS 4-dim " + fmt(ris_hi, 2) + " vs 2-dim " + fmt(ris_lo, 2));
  o.require(elapsed < 180.0, "runtime " + fmt(elapsed, 2) + " s");
  return o;
}

Outcome kmeans_balance() {
  const auto data = arc_data(1.2, 1.2, 0.0, kPi / 2, 5000, 50, 501);
  const auto demo = kmeans_demo(data.data, data.labels, 2, 200, 50, 502);
  const double full_fail = 1.0 - static_cast<double>(demo.full_passes) / demo.seeds;
  const double sketch_pass = static_cast<double>(demo.sketch_passes) / demo.seeds;
  Outcome o;
  o.require(full_fail >= 0.9, "full-data failure rate " + fmt(full_fail, 2));
  o.require(sketch_pass >= 0.9, "sketch success rate " + fmt(sketch_pass, 2));
  return o;
}

Outcome bound_sufficiency() {
  const int m = 5;
  const double delta = 0.1;
  const double beta = min_beta(m, delta);
  const double target = 1.0 - delta - 0.02;

  ArcSpec arcs;
  arcs.tau1 = kPi / 2;
  arcs.tau2 = kPi / 4;
  Rng rng3 = make_rng(601);
  const auto data3 = gen_arc_clusters(arcs, rng3);
  const auto l3 = lemma3_empirical(arcs, data3, m, delta, beta, 500, 602);

  const auto data2 = arc_data(kPi / 2, kPi / 4, 0.0, kPi / 2, 1000, 100, 603);
  const auto l2 = lemma2_empirical(data2, m, delta, beta, 500, 604);

  Outcome o;
  o.require(l3.success_rate >= target, "SRS at n = " + std::to_string(l3.n) + ": success " +
                                           fmt(l3.success_rate));
  o.require(l2.success_rate >= target, "RIS at n = " + std::to_string(l2.n) + ": success " +
                                           fmt(l2.success_rate));
  return o;
}

std::vector<Index> naive_srs(const DataMatrix& x, const DataMatrix& phi) {
  std::vector<Index> chosen;
  for (Index i = 0; i < phi.rows(); ++i) {
    Index best = -1;
    double best_value = -1.0;
    for (Index j = 0; j < x.cols(); ++j) {
      if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
      double dot = 0.0;
      for (Index k = 0; k < x.rows(); ++k) dot += phi(i, k) * x(k, j);
      if (std::abs(dot) > best_value) {
        best_value = std::abs(dot);
        best = j;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

bool cli_reproducible(const std::filesystem::path& dir) {
  const auto run = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  const auto body = [](const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string text(std::istreambuf_iterator<char>(in), {});
    return text.substr(text.find('\n'));
  };
  const auto p = [&](const std::string& name) { return (dir / name).string(); };

  bool ok = true;
  for (const char* tag : {"a", "b"}) {
    ok &= run({"gen", "arcs", "--seed", "7", "--n1", "200", "--n2", "40", "--matrix",
               p(std::string("arcs_") + tag + ".csv"), "--labels",
               p(std::string("arcs_l_") + tag + ".csv")})
              .first == 0;
    ok &= run({"gen", "subspaces", "--ambient", "15", "--r", "6", "--s", "3", "--populations",
               "40,20,10", "--seed", "7", "--matrix", p(std::string("sub_") + tag + ".csv"),
               "--labels", p(std::string("sub_l_") + tag + ".csv")})
              .first == 0;
    ok &= run({"sketch", "--input", p("sub_a.csv"), "--method", "volume", "--n", "8", "--seed",
               "3", "--embed", "sparse", "--embed-dim", "6", "--indices",
               p(std::string("idx_") + tag + ".csv"), "--columns",
               p(std::string("col_") + tag + ".csv")})
              .first == 0;
  }
  for (const char* name : {"arcs_", "arcs_l_", "sub_", "sub_l_", "idx_", "col_"}) {
    ok &= body(p(std::string(name) + "a.csv")) == body(p(std::string(name) + "b.csv"));
  }

  const std::vector<std::vector<std::string>> commands = {
      {"eval", "rank", "--input", p("sub_a.csv")},
      {"eval", "error", "--input", p("sub_a.csv"), "--indices", p("idx_a.csv")},
      {"eval", "coverage", "--labels", p("sub_l_a.csv"), "--indices", p("idx_a.csv")},
      {"exp", "rank-curve", "--input", p("sub_a.csv"), "--methods", "srs,ris,norm,leverage,volume",
       "--grid", "2,4,6", "--trials", "3", "--seed", "5"},
      {"exp", "coverage", "--input", p("sub_a.csv"), "--labels", p("sub_l_a.csv"), "--methods",
       "srs,srs_repl,ris,ris_repl", "--n", "12", "--trials", "4", "--seed", "5"},
      {"exp", "probability", "--input", p("arcs_a.csv"), "--labels", p("arcs_l_a.csv"),
       "--draws", "2000", "--seed", "5"},
      {"exp", "bounds", "--input", p("arcs_a.csv"), "--labels", p("arcs_l_a.csv"), "--tau1",
       "1.5", "--tau2", "0.7", "--r", "6", "--s", "3", "--empirical-trials", "20", "--seed", "5"},
      {"exp", "kmeans", "--input", p("arcs_a.csv"), "--labels", p("arcs_l_a.csv"), "--sketch-n",
       "30", "--seeds", "4", "--restarts", "2", "--seed", "5"},
  };
  for (const auto& args : commands) {
    const auto first = run(args);
    const auto second = run(args);
    ok &= first.first == 0 && first == second && !first.second.empty();
  }
  return ok;
}

Outcome property_suite() {
  Rng rng = make_rng(701);
  Outcome o;

  bool distinct = true;
  for (int t = 0; t < 50; ++t) {
    const DataMatrix x = normalize_columns(gaussian(3, 20, rng));
    const auto idx = srs_without_replacement(x, 20, rng).indices;
    distinct &= std::set<Index>(idx.begin(), idx.end()).size() == idx.size();
    const auto r = ris(x, 15, false, rng).indices;
    distinct &= std::set<Index>(r.begin(), r.end()).size() == r.size();
    const auto v = volume_sampling(x, 10, rng).indices;
    distinct &= std::set<Index>(v.begin(), v.end()).size() == v.size();
  }
  o.require(distinct, "distinctness");

  DataMatrix twins(2, 4);
  twins << 0, 0.6, -0.6, 0.6, 1, 0.8, -0.8, 0.8;
  DataMatrix phi_tie(2, 2);
  phi_tie << 0.6, 0.8, 0.6, 0.8;
  o.require(srs_select_with_replacement(twins, phi_tie) == std::vector<Index>{1, 1} &&
                srs_select_without_replacement(twins, phi_tie) == std::vector<Index>{1, 2},
            "ties");

  bool sign = true;
  bool span = true;
  for (int t = 0; t < 30; ++t) {
    const Index ambient = 4 + t % 7;
    const Index rank = 2 + t % (ambient - 2);
    const DataMatrix d = gaussian(ambient, rank, rng) * gaussian(rank, 15 + t, rng);
    const DataMatrix x = normalize_columns(d);
    const DataMatrix phi = gaussian(1 + t % 9, ambient, rng);
    const auto base = srs_select_without_replacement(x, phi);
    sign &= srs_select_without_replacement(x, -phi) == base;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
    const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
    span &= srs_select_without_replacement(x, phi * u * u.transpose()) == base;
  }
  o.require(sign, "sign invariance");
  o.require(span, "span invariance");

  bool oracle = true;
  for (int t = 0; t < 100; ++t) {
    const Index cols = 1 + t % 8;
    const Index ambient = 2 + t % 5;
    const DataMatrix x = normalize_columns(gaussian(ambient, cols, rng));
    const DataMatrix phi = gaussian(1 + t % cols, ambient, rng);
    oracle &= srs_select_without_replacement(x, phi) == naive_srs(x, phi);
  }
  o.require(oracle, "brute-force oracle on 100 instances");

  bool nested = true;
  for (int t = 0; t < 10; ++t) {
    const DataMatrix d = gaussian(12, 30, rng);
    const auto idx = srs_without_replacement(normalize_columns(d), 12, rng).indices;
    double last = 1.0 + 1e-12;
    for (std::size_t n = 1; n <= idx.size(); ++n) {
      const std::vector<Index> prefix(idx.begin(), idx.begin() + static_cast<long>(n));
      const double e = approximation_error(d, gather_columns(d, prefix));
      nested &= e <= last + 1e-12;
      last = e;
    }
    nested &= last < 1e-10;
  }
  o.require(nested, "nested error monotonicity");

  bool leverage = true;
  for (int t = 0; t < 10; ++t) {
    const DataMatrix d = gaussian(8, 40, rng);
    const auto p = leverage_probabilities(d, 1 + t % 8);
    double sum = 0.0;
    for (double v : p) sum += v;
    leverage &= std::abs(sum - 1.0) <= 1e-10;
  }
  o.require(leverage, "leverage sums");

  const auto dir = std::filesystem::temp_directory_path() /
                   ("srs_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  DataMatrix tricky = gaussian(5, 7, rng);
  tricky(0, 0) = 1e-300;
  tricky(1, 1) = -0.1;
  tricky(2, 2) = 1.0 / 3.0;
  tricky(3, 3) = 5e-324;
  save_csv(tricky, dir / "roundtrip.csv");
  const DataMatrix back = load_csv(dir / "roundtrip.csv");
  o.require(back.rows() == tricky.rows() && back.cols() == tricky.cols() &&
                std::memcmp(back.data(), tricky.data(),
                            sizeof(double) * static_cast<std::size_t>(tricky.size())) == 0,
            "CSV round trip");

  o.require(cli_reproducible(dir), "CLI reproducibility");
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  return o;
}

Outcome equal_dimension_band() {
  SubspaceSpec spec;
  spec.ambient = 20;
  spec.dims = {2, 2};
  spec.populations = {50, 5000};
  spec.seed = 801;
  const auto data = gen_union_subspaces(spec);
  Rng rng = make_rng(802);
  const auto freq = empirical_sampling_probabilities(data.data, data.labels, 5000, rng);
  Outcome o;
  o.require(freq[0] >= 0.4 && freq[0] <= 0.6, "minority frequency " + fmt(freq[0]));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"spatial probability formula", arc_probability},
      {"rank vs sampled columns", rank_curves},
      {"balanced coverage of dependent subspaces", balanced_coverage},
      {"dimension-seeking coverage", dimension_seeking},
      {"k-means on unbalanced arcs", kmeans_balance},
      {"empirical sufficiency of the sample-size bounds", bound_sufficiency},
      {"property suite", property_suite},
      {"equal-dimension subspaces are sampled evenly", equal_dimension_band},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    failures += !o.pass;
    std::printf("%s %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), elapsed);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
