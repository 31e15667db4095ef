// rss: variance-reduction sampling toolkit
//
// Subcommands: sample, extend, metrics, optimize-z, run, bench.
// See README.md for the file formats and the config-file schema.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "rss/experiment.hpp"
#include "rss/metrics.hpp"
#include "rss/refine_opt.hpp"

namespace fs = std::filesystem;
using namespace rss;

namespace {

std::vector<Distribution> parse_marginals(const std::vector<std::string>& specs) {
  if (specs.empty()) throw CLI::ValidationError("--dist", "at least one marginal required");
  std::vector<Distribution> out;
  out.reserve(specs.size());
  for (const std::string& s : specs) out.push_back(Distribution::parse(s));
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CLI::RuntimeError("cannot open for writing: " + path, 1);
  return out;
}

double quantile_of(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  if (idx > 0) --idx;
  if (idx >= v.size()) idx = v.size() - 1;
  return v[idx];
}

// ---------------------------------------------------------------- sample ---

struct SampleArgs {
  std::vector<std::string> dists;
  std::string generator = "lhs";
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string design_out;
};

void run_sample(const SampleArgs& args) {
  const std::vector<Distribution> marginals = parse_marginals(args.dists);
  RandomStream stream(args.seed);
  const SampleSet set = generate(parse_generator(args.generator), marginals,
                                 args.count, stream);
  auto out = open_out(args.out);
  save_samples(set, out);
  if (set.design) {
    const std::string design_path =
        args.design_out.empty() ? args.out + ".design" : args.design_out;
    save_design_file(*set.design, design_path);
    std::cout << "wrote " << set.size() << " samples to " << args.out
              << " and the design to " << design_path << "\n";
  } else {
    std::cout << "wrote " << set.size() << " samples to " << args.out << "\n";
  }
}

// ---------------------------------------------------------------- extend ---

struct ExtendArgs {
  std::vector<std::string> dists;
  std::string in;
  std::string design;
  std::string method = "rss";
  std::size_t count = 1;
  unsigned refinement = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string design_out;
};

void run_extend(const ExtendArgs& args) {
  const std::vector<Distribution> marginals = parse_marginals(args.dists);
  SampleSet set = load_samples_file(args.in, marginals);
  RandomStream stream(args.seed);

  if (args.method == "rss") {
    if (args.design.empty())
      throw CLI::ValidationError("--design", "rss extension needs the design file");
    set.design = load_design_file(args.design);
    set = rss_extend(std::move(set), args.count, stream);
  } else if (args.method == "hlhs") {
    set.latin_resolution = infer_latin_resolution(set);
    set = hlhs_extend(std::move(set), args.refinement, stream);
  } else if (args.method == "rlh") {
    set.latin_resolution = infer_latin_resolution(set);
    set = rlh_extend(std::move(set), stream);
  } else {
    throw CLI::ValidationError("--method", "expected rss, hlhs, or rlh");
  }

  auto out = open_out(args.out);
  save_samples(set, out);
  if (set.design) {
    const std::string design_path =
        args.design_out.empty() ? args.out + ".design" : args.design_out;
    save_design_file(*set.design, design_path);
  }
  std::cout << "extended to " << set.size() << " samples -> " << args.out << "\n";
}

// --------------------------------------------------------------- metrics ---

struct MetricsArgs {
  std::string in;
  std::vector<std::string> dists;
  std::string generators = "srs,lhs,ss";
  std::vector<std::size_t> sizes = {100};
  std::vector<int> dims = {2};
  std::size_t trials = 10;
  std::size_t n_probe = 100000;
  std::uint64_t seed = 1;
  std::string out;
};

void run_metrics(const MetricsArgs& args) {
  auto out = open_out(args.out);
  if (!args.in.empty()) {
    const SampleSet set = load_samples_file(args.in, parse_marginals(args.dists));
    const PointSet pts = PointSet::from_u(set);
    RandomStream stream(args.seed);
    out << "generator,N,n,seed,v_metric,wd2,max_rho,cond\n";
    char buf[160];
    const double v = voronoi_volumes(pts, args.n_probe, stream).v_metric;
    const double w = wd2(pts);
    const double rho = pts.dim >= 2 ? correlation_stats(pts).max_abs_rho : 0.0;
    const double cond = condition_number(pts);
    std::snprintf(buf, sizeof buf, "file,%zu,%zu,%llu,%.12g,%.12g,%.12g,%.12g",
                  pts.count(), pts.dim, static_cast<unsigned long long>(args.seed), v,
                  w, rho, cond);
    out << buf << "\n";
    return;
  }

  MetricStudyConfig cfg;
  cfg.generators.clear();
  std::stringstream names(args.generators);
  std::string tok;
  while (std::getline(names, tok, ',')) cfg.generators.push_back(parse_generator(tok));
  cfg.sizes = args.sizes;
  cfg.dims = args.dims;
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.n_probe = args.n_probe;
  run_metric_study(cfg, out);
  std::cout << "metric study written to " << args.out << "\n";
}

// ------------------------------------------------------------ optimize-z ---

struct OptimizeArgs {
  std::string dist;
  double tol = 1e-4;
  std::string sweep_out;
  int sweep_points = 97;
};

void run_optimize(const OptimizeArgs& args) {
  RefinementProblem problem;
  problem.output_dist = Distribution::parse(args.dist);
  const OptimalSplit best = optimize_z(problem, args.tol);
  std::printf("dist=%s z_star=%.6g var_star=%.8g balanced=%.8g no_refinement=%.8g\n",
              problem.output_dist.to_string().c_str(), best.z_star, best.var_star,
              variance_of_split(problem, 0.5), no_refinement_variance(problem));
  if (!args.sweep_out.empty()) {
    auto out = open_out(args.sweep_out);
    write_variance_sweep(out, problem, args.sweep_points);
  }
}

// ------------------------------------------------------------------- run ---

struct RunArgs {
  std::string model = "cubic-A";
  std::string generator = "rss";
  std::size_t n0 = 20;
  std::string statistic = "variance";
  std::string criterion = "analytic";
  double threshold = 0.01;
  double truth = std::numeric_limits<double>::quiet_NaN();
  std::size_t batch = 1;
  std::size_t bootstrap_replicates = 2000;
  std::string bootstrap_method = "weighted";
  std::size_t replicates = 1;
  std::size_t max_samples = 100000;
  unsigned refinement = 1;
  std::uint64_t seed = 0;
  std::string out;
};

ExperimentConfig to_config(const RunArgs& args) {
  ExperimentConfig cfg;
  cfg.model = args.model;
  cfg.generator = parse_generator(args.generator);
  cfg.n0 = args.n0;
  cfg.statistic = Statistic::parse(args.statistic);
  cfg.replicates = args.replicates;
  cfg.seed = args.seed;
  cfg.max_samples = args.max_samples;
  cfg.hlhs_refinement = args.refinement;
  cfg.policy.threshold = args.threshold;
  cfg.policy.batch = args.batch;
  cfg.policy.bootstrap_replicates = args.bootstrap_replicates;
  cfg.policy.bootstrap_method =
      args.bootstrap_method == "stratified"
          ? ConvergencePolicy::BootstrapMethod::stratified
          : ConvergencePolicy::BootstrapMethod::weighted;
  if (args.criterion == "analytic") {
    cfg.policy.criterion = ConvergencePolicy::Criterion::analytic_relative_error;
    cfg.policy.truth = args.truth;
    if (std::isnan(cfg.policy.truth)) {
      // fall back to the model's attached closed-form moments
      const ModelSpec model = find_model(cfg.model);
      if (model.truth) {
        if (cfg.statistic.name() == "variance") cfg.policy.truth = model.truth->variance;
        if (cfg.statistic.name() == "mean") cfg.policy.truth = model.truth->mean;
      }
    }
  } else if (args.criterion == "bootstrap") {
    cfg.policy.criterion = ConvergencePolicy::Criterion::bootstrap_ci_width;
  } else {
    throw CLI::ValidationError("--criterion", "expected analytic or bootstrap");
  }
  return cfg;
}

void run_run(const RunArgs& args) {
  const ExperimentConfig cfg = to_config(args);
  auto out = open_out(args.out);
  write_adaptive_csv_header(out, cfg.replicates > 1);
  if (cfg.replicates == 1) {
    const AdaptiveRunResult res = run_adaptive(cfg, 0, &out);
    std::cout << (res.converged ? "converged at N=" : "stopped unconverged at N=")
              << res.n_at_convergence << " (metric " << res.final_metric << ")\n";
  } else {
    const auto runs = run_adaptive_replicates(cfg, &out);
    std::vector<double> ns;
    for (const auto& r : runs) ns.push_back(static_cast<double>(r.n_at_convergence));
    std::cout << runs.size() << " replicates; median N at convergence "
              << quantile_of(ns, 0.5) << "\n";
  }
}

// ------------------------------------------------------------------ bench ---

struct BenchArgs {
  std::string preset;
  std::uint64_t seed = 0;
  std::string out_dir = "bench-out";
  std::size_t replicates = 100;
  std::string dists = "ABCDE";
  double threshold = 0.01;
};

void bench_cubic(const BenchArgs& args, const fs::path& dir, const fs::path& plots) {
  auto counts = open_out((dir / "cubic_counts.csv").string());
  counts << "dist,method,replicate,n,converged\n";
  auto quant = open_out((dir / "cubic_quantiles.csv").string());
  quant << "dist,method,kurtosis,q10,q25,q50,q75,q90,q95\n";
  auto plot = open_out((plots / "convergence_vs_kurtosis.csv").string());
  plot << "kurtosis,srs_n50,hlhs_n50,rss_n50\n";

  const std::vector<std::pair<Generator, const char*>> methods = {
      {Generator::srs, "srs"}, {Generator::hlhs, "hlhs"}, {Generator::rss, "rss"}};
  for (char id : args.dists) {
    const ModelSpec model = model_cubic(id);
    std::map<std::string, double> medians;
    for (const auto& [gen, name] : methods) {
      ExperimentConfig cfg;
      cfg.model = model.name;
      cfg.generator = gen;
      cfg.n0 = 20;
      cfg.seed = args.seed;
      cfg.replicates = args.replicates;
      cfg.statistic = Statistic::central_moment(2);
      cfg.policy.truth = model.truth->variance;
      cfg.policy.threshold = args.threshold;
      cfg.max_samples = 300000;
      const auto runs = run_adaptive_replicates(cfg);
      std::vector<double> ns;
      for (std::size_t r = 0; r < runs.size(); ++r) {
        ns.push_back(static_cast<double>(runs[r].n_at_convergence));
        counts << id << ',' << name << ',' << r << ',' << runs[r].n_at_convergence
               << ',' << (runs[r].converged ? 1 : 0) << "\n";
      }
      char buf[256];
      std::snprintf(buf, sizeof buf, "%c,%s,%.4g,%g,%g,%g,%g,%g,%g", id, name,
                    model.truth->kurtosis, quantile_of(ns, 0.10), quantile_of(ns, 0.25),
                    quantile_of(ns, 0.50), quantile_of(ns, 0.75), quantile_of(ns, 0.90),
                    quantile_of(ns, 0.95));
      quant << buf << "\n";
      medians[name] = quantile_of(ns, 0.50);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.4g,%g,%g,%g", model.truth->kurtosis,
                  medians["srs"], medians["hlhs"], medians["rss"]);
    plot << buf << "\n";
  }
}

void bench_addmult(const BenchArgs& args, const fs::path& dir, const fs::path& plots) {
  auto out = open_out((dir / "addmult_std.csv").string());
  out << "model,n,generator,estimator_std\n";
  auto plot = open_out((plots / "estimator_std_vs_dim.csv").string());
  plot << "model,n,srs,lhs,ss\n";

  constexpr std::size_t kSize = 1024;
  for (const std::string family : {"additive", "multiplicative"}) {
    for (const int n : {2, 5, 10}) {
      const ModelSpec model = family == "additive" ? model_additive(n)
                                                   : model_multiplicative(n);
      std::map<std::string, double> stds;
      for (const Generator g : {Generator::srs, Generator::lhs, Generator::ss}) {
        std::vector<double> estimates;
        for (std::size_t rep = 0; rep < args.replicates; ++rep) {
          RandomStream stream(args.seed, mix64(static_cast<std::uint64_t>(g) * 131 +
                                               static_cast<std::uint64_t>(n)) +
                                             rep);
          const SampleSet set = generate(g, model.marginals, kSize, stream);
          const std::vector<double> y = set.evaluate(model.evaluator);
          estimates.push_back(weighted_statistic(set, y, Statistic::mean()).value);
        }
        double mean = 0;
        for (double e : estimates) mean += e;
        mean /= static_cast<double>(estimates.size());
        double var = 0;
        for (double e : estimates) var += (e - mean) * (e - mean);
        var /= static_cast<double>(estimates.size());
        stds[std::string(to_string(g))] = std::sqrt(var);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%d,%s,%.8g", family.c_str(), n, to_string(g),
                      std::sqrt(var));
        out << buf << "\n";
      }
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s,%d,%.8g,%.8g,%.8g", family.c_str(), n,
                    stds["srs"], stds["lhs"], stds["ss"]);
      plot << buf << "\n";
    }
  }
}

void bench_spacefill(const BenchArgs& args, const fs::path& dir, const fs::path& plots) {
  // sweep 1: metrics vs sample size in 2 dimensions
  {
    MetricStudyConfig cfg;
    cfg.generators = {Generator::srs, Generator::lhs, Generator::lhs_corr, Generator::ss};
    cfg.sizes = {64, 128, 256, 512, 1024};
    cfg.dims = {2};
    cfg.trials = 10;
    cfg.seed = args.seed;
    auto out = open_out((dir / "spacefill_vs_size.csv").string());
    run_metric_study(cfg, out);
  }
  // sweep 2: metrics vs dimension at 1024 samples
  {
    MetricStudyConfig cfg;
    cfg.generators = {Generator::srs, Generator::lhs, Generator::lhs_corr, Generator::ss};
    cfg.sizes = {1024};
    cfg.dims = {2, 3, 5, 8, 10};
    cfg.trials = 10;
    cfg.seed = args.seed + 1;
    auto out = open_out((dir / "spacefill_vs_dim.csv").string());
    run_metric_study(cfg, out);
  }
  // per-generator trial means for direct plotting
  for (const char* sweep : {"spacefill_vs_size", "spacefill_vs_dim"}) {
    std::ifstream in((dir / (std::string(sweep) + ".csv")));
    std::string line;
    std::getline(in, line);
    std::map<std::string, std::pair<double, int>> v_acc, wd_acc;
    while (std::getline(in, line)) {
      std::stringstream row(line);
      std::string gen, n, dim, seed, v, wd;
      std::getline(row, gen, ',');
      std::getline(row, n, ',');
      std::getline(row, dim, ',');
      std::getline(row, seed, ',');
      std::getline(row, v, ',');
      std::getline(row, wd, ',');
      const std::string key = gen + "," + n + "," + dim;
      v_acc[key].first += std::stod(v);
      v_acc[key].second += 1;
      wd_acc[key].first += std::stod(wd);
      wd_acc[key].second += 1;
    }
    auto plot = open_out((plots / (std::string(sweep) + "_mean.csv")).string());
    plot << "generator,N,n,v_metric_mean,wd2_mean\n";
    for (const auto& [key, acc] : v_acc) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s,%.8g,%.8g", key.c_str(),
                    acc.first / acc.second, wd_acc[key].first / wd_acc[key].second);
      plot << buf << "\n";
    }
  }
}

void bench_twodof(const BenchArgs& args, const fs::path& dir, const fs::path& plots) {
  auto summary = open_out((dir / "twodof_convergence.csv").string());
  summary << "method,statistic,threshold,n_at_convergence,converged\n";

  for (const char* stat : {"mean", "std"}) {
    for (const double eps : {0.15, 0.05, 0.025, 0.01}) {
      for (const char* method : {"rss", "srs"}) {
        ExperimentConfig cfg;
        cfg.model = "twodof";
        cfg.generator = parse_generator(method);
        cfg.n0 = 16;
        cfg.seed = args.seed;
        cfg.statistic = std::string(stat) == "std" ? Statistic::central_moment(2)
                                                   : Statistic::mean();
        cfg.policy.criterion = ConvergencePolicy::Criterion::bootstrap_ci_width;
        cfg.policy.threshold = eps;
        cfg.policy.batch = cfg.generator == Generator::rss ? 8 : 64;
        cfg.policy.bootstrap_replicates = 1000;
        cfg.policy.bootstrap_method =
            cfg.generator == Generator::rss
                ? ConvergencePolicy::BootstrapMethod::stratified
                : ConvergencePolicy::BootstrapMethod::weighted;
        cfg.max_samples = 20000;

        const fs::path trace_path =
            dir / ("twodof_trace_" + std::string(method) + "_" + stat + "_" +
                   std::to_string(eps) + ".csv");
        auto trace = open_out(trace_path.string());
        write_adaptive_csv_header(trace, false);
        const AdaptiveRunResult res = run_adaptive(cfg, 0, &trace);
        summary << method << ',' << stat << ',' << eps << ',' << res.n_at_convergence
                << ',' << (res.converged ? 1 : 0) << "\n";
      }
    }
  }

  // moment evolution trace for plotting
  ExperimentConfig cfg;
  cfg.model = "twodof";
  cfg.generator = Generator::rss;
  cfg.n0 = 16;
  cfg.seed = args.seed;
  cfg.statistic = Statistic::mean();
  cfg.policy.criterion = ConvergencePolicy::Criterion::bootstrap_ci_width;
  cfg.policy.threshold = 1e-9;  // never satisfied; trace out to the cap
  cfg.policy.batch = 32;
  cfg.policy.bootstrap_replicates = 1000;
  cfg.policy.bootstrap_method = ConvergencePolicy::BootstrapMethod::stratified;
  cfg.max_samples = 2000;
  auto plot = open_out((plots / "twodof_mean_evolution.csv").string());
  write_adaptive_csv_header(plot, false);
  run_adaptive(cfg, 0, &plot);
}

void run_bench(const BenchArgs& args) {
  const fs::path dir(args.out_dir);
  const fs::path plots = dir / "plot-data";
  fs::create_directories(plots);
  if (args.preset == "cubic")
    bench_cubic(args, dir, plots);
  else if (args.preset == "addmult")
    bench_addmult(args, dir, plots);
  else if (args.preset == "spacefill")
    bench_spacefill(args, dir, plots);
  else if (args.preset == "twodof")
    bench_twodof(args, dir, plots);
  else
    throw CLI::ValidationError("preset", "expected cubic, addmult, spacefill, or twodof");
  std::cout << "bench '" << args.preset << "' written under " << dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variance-reduction sampling toolkit"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "generate a sample set");
  sample->add_option("-d,--dist", sample_args.dists,
                     "marginal, e.g. U(0,1) N(0,1) LN(-1.49,1.27) TN(0.025,0.01,0,inf)")
      ->required();
  sample->add_option("-g,--generator", sample_args.generator,
                     "srs | ss | lhs | lhs-corr | rss");
  sample->add_option("-n,--count", sample_args.count, "sample count")->required();
  sample->add_option("--seed", sample_args.seed, "RNG seed");
  sample->add_option("-o,--out", sample_args.out, "output CSV path")->required();
  sample->add_option("--design-out", sample_args.design_out, "design file path");

  ExtendArgs extend_args;
  CLI::App* extend = app.add_subcommand("extend", "extend a serialized sample set");
  extend->add_option("-d,--dist", extend_args.dists, "marginals, as in sample")->required();
  extend->add_option("-i,--in", extend_args.in, "input sample CSV")->required();
  extend->add_option("--design", extend_args.design, "input design file (rss)");
  extend->add_option("-m,--method", extend_args.method, "rss | hlhs | rlh");
  extend->add_option("-k,--count", extend_args.count, "samples to add (rss)");
  extend->add_option("-t,--refinement", extend_args.refinement, "refinement factor (hlhs)");
  extend->add_option("--seed", extend_args.seed, "RNG seed");
  extend->add_option("-o,--out", extend_args.out, "output CSV path")->required();
  extend->add_option("--design-out", extend_args.design_out, "design file path");

  MetricsArgs metrics_args;
  CLI::App* metrics = app.add_subcommand("metrics", "space-filling / orthogonality study");
  metrics->add_option("-i,--in", metrics_args.in, "score one serialized set instead of sweeping");
  metrics->add_option("-d,--dist", metrics_args.dists, "marginals for --in");
  metrics->add_option("--generators", metrics_args.generators, "comma list for the sweep");
  metrics->add_option("--sizes", metrics_args.sizes, "sample sizes");
  metrics->add_option("--dims", metrics_args.dims, "dimensions");
  metrics->add_option("--trials", metrics_args.trials, "trials per cell");
  metrics->add_option("--n-probe", metrics_args.n_probe, "probe points for the V-metric");
  metrics->add_option("--seed", metrics_args.seed, "RNG seed");
  metrics->add_option("-o,--out", metrics_args.out, "output CSV path")->required();

  OptimizeArgs optimize_args;
  CLI::App* optimize = app.add_subcommand("optimize-z", "optimal stratum-refinement factor");
  optimize->add_option("-d,--dist", optimize_args.dist, "output distribution")->required();
  optimize->add_option("--tol", optimize_args.tol, "search tolerance");
  optimize->add_option("--sweep-out", optimize_args.sweep_out, "write dist,z,var sweep CSV");
  optimize->add_option("--sweep-points", optimize_args.sweep_points, "sweep resolution");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "adaptive convergence experiment");
  run->set_config("--config", "", "key=value config file; flags override it");
  run->add_option("--model", run_args.model, "cubic-A..J | additive-n | multiplicative-n | twodof");
  run->add_option("--generator", run_args.generator, "srs | rss | hlhs | rlh");
  run->add_option("--n0", run_args.n0, "initial sample size");
  run->add_option("--statistic", run_args.statistic, "mean | variance | skewness | kurtosis");
  run->add_option("--criterion", run_args.criterion, "analytic | bootstrap");
  run->add_option("--threshold", run_args.threshold, "epsilon_th");
  run->add_option("--truth", run_args.truth, "analytic truth (defaults to the model's)");
  run->add_option("--batch", run_args.batch, "samples per extension");
  run->add_option("--bootstrap-replicates", run_args.bootstrap_replicates, "B");
  run->add_option("--bootstrap-method", run_args.bootstrap_method, "weighted | stratified");
  run->add_option("--replicates", run_args.replicates, "independent replicate runs");
  run->add_option("--max-samples", run_args.max_samples, "hard cap");
  run->add_option("--refinement", run_args.refinement, "hlhs refinement factor");
  run->add_option("--seed", run_args.seed, "RNG seed")->required();
  run->add_option("-o,--out", run_args.out, "per-iteration CSV path")->required();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "paper-style study presets");
  bench->add_option("preset", bench_args.preset, "cubic | addmult | spacefill | twodof")
      ->required();
  bench->add_option("--seed", bench_args.seed, "RNG seed")->required();
  bench->add_option("--out-dir", bench_args.out_dir, "output directory");
  bench->add_option("--replicates", bench_args.replicates, "replicates per cell");
  bench->add_option("--dists", bench_args.dists, "cubic parameter sets, e.g. ABCDE");
  bench->add_option("--threshold", bench_args.threshold, "convergence epsilon");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) run_sample(sample_args);
    if (*extend) run_extend(extend_args);
    if (*metrics) run_metrics(metrics_args);
    if (*optimize) run_optimize(optimize_args);
    if (*run) run_run(run_args);
    if (*bench) run_bench(bench_args);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
