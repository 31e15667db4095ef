#include "rss/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "rss/metrics.hpp"

namespace rss {

namespace {

void append_double(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  s += buf;
}

// Equal-weight running power sums; enough for every supported statistic.
struct RunningSums {
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
  double indicator = 0;
  std::size_t n = 0;

  void add(double y, double threshold) {
    const double y2 = y * y;
    p1 += y;
    p2 += y2;
    p3 += y2 * y;
    p4 += y2 * y2;
    if (y <= threshold) indicator += 1.0;
    ++n;
  }

  double statistic(const Statistic& kind) const {
    const double dn = static_cast<double>(n);
    const double m1 = p1 / dn;
    switch (kind.type) {
      case Statistic::Type::mean: return m1;
      case Statistic::Type::cdf_at: return indicator / dn;
      case Statistic::Type::raw_moment:
        switch (kind.order) {
          case 1: return m1;
          case 2: return p2 / dn;
          case 3: return p3 / dn;
          case 4: return p4 / dn;
          default: throw std::invalid_argument("running sums support orders 1..4");
        }
      case Statistic::Type::central_moment:
      case Statistic::Type::std_moment: {
        const double r2 = p2 / dn, r3 = p3 / dn, r4 = p4 / dn;
        const double m2 = r2 - m1 * m1;
        const double m3 = r3 - 3 * m1 * r2 + 2 * m1 * m1 * m1;
        const double m4 = r4 - 4 * m1 * r3 + 6 * m1 * m1 * r2 - 3 * m1 * m1 * m1 * m1;
        if (kind.type == Statistic::Type::central_moment) {
          if (kind.order == 2) return m2;
          if (kind.order == 3) return m3;
          if (kind.order == 4) return m4;
          throw std::invalid_argument("running sums support orders 2..4");
        }
        if (kind.order == 3) return m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
        if (kind.order == 4) return m2 > 0 ? m4 / (m2 * m2) - 3.0 : 0.0;
        throw std::invalid_argument("running sums support orders 3..4");
      }
    }
    throw std::logic_error("unreachable");
  }
};

// Weighted statistic recomputed from scratch (weights as doubles; the exact
// rational normalization is asserted once per run, not per iteration).
double weighted_stat_fast(const SampleSet& set, const std::vector<double>& y,
                          const Statistic& kind) {
  std::vector<double> w;
  w.reserve(set.size());
  for (const SampleRecord& r : set.records) w.push_back(r.weight.to_double());
  switch (kind.type) {
    case Statistic::Type::mean: {
      double s = 0;
      for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * y[i];
      return s;
    }
    case Statistic::Type::raw_moment: {
      double s = 0;
      for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * std::pow(y[i], kind.order);
      return s;
    }
    case Statistic::Type::cdf_at: {
      double s = 0;
      for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] <= kind.threshold) s += w[i];
      return s;
    }
    case Statistic::Type::central_moment:
    case Statistic::Type::std_moment: {
      double mu = 0;
      for (std::size_t i = 0; i < y.size(); ++i) mu += w[i] * y[i];
      double m2 = 0, mr = 0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - mu;
        m2 += w[i] * d * d;
        mr += w[i] * std::pow(d, kind.order);
      }
      if (kind.type == Statistic::Type::central_moment) return mr;
      if (kind.order == 3) return m2 > 0 ? mr / std::pow(m2, 1.5) : 0.0;
      if (kind.order == 4) return m2 > 0 ? mr / (m2 * m2) - 3.0 : 0.0;
      return m2 > 0 ? mr / std::pow(m2, kind.order / 2.0) : 0.0;
    }
  }
  throw std::logic_error("unreachable");
}

void write_row(std::ostream& out, const IterationRow& row, const Statistic& kind,
               int replicate) {
  std::string line;
  if (replicate >= 0) {
    line += std::to_string(replicate);
    line += ',';
  }
  line += std::to_string(row.n);
  line += ',';
  line += kind.name();
  line += ',';
  append_double(line, row.value);
  line += ',';
  if (!std::isnan(row.ci_lo)) append_double(line, row.ci_lo);
  line += ',';
  if (!std::isnan(row.ci_hi)) append_double(line, row.ci_hi);
  line += ',';
  append_double(line, row.metric);
  line += ',';
  line += row.converged ? '1' : '0';
  out << line << "\n";
}

}  // namespace

const char* to_string(Generator g) {
  switch (g) {
    case Generator::srs: return "srs";
    case Generator::ss: return "ss";
    case Generator::lhs: return "lhs";
    case Generator::lhs_corr: return "lhs-corr";
    case Generator::rss: return "rss";
    case Generator::hlhs: return "hlhs";
    case Generator::rlh: return "rlh";
  }
  return "?";
}

Generator parse_generator(const std::string& name) {
  if (name == "srs") return Generator::srs;
  if (name == "ss" || name == "sbss") return Generator::ss;
  if (name == "lhs") return Generator::lhs;
  if (name == "lhs-corr" || name == "lhs_corr") return Generator::lhs_corr;
  if (name == "rss") return Generator::rss;
  if (name == "hlhs") return Generator::hlhs;
  if (name == "rlh") return Generator::rlh;
  throw std::invalid_argument("unknown generator: '" + name + "'");
}

std::vector<int> balanced_divisions(int dimension, std::size_t count) {
  if (dimension < 1 || count < 1)
    throw std::invalid_argument("balanced_divisions: bad arguments");
  // prime factors of count, largest first
  std::vector<std::size_t> factors;
  std::size_t rest = count;
  for (std::size_t p = 2; p * p <= rest; ++p)
    while (rest % p == 0) {
      factors.push_back(p);
      rest /= p;
    }
  if (rest > 1) factors.push_back(rest);
  std::sort(factors.rbegin(), factors.rend());

  std::vector<int> divisions(static_cast<std::size_t>(dimension), 1);
  for (std::size_t f : factors) {
    auto least = std::min_element(divisions.begin(), divisions.end());
    const long long next = static_cast<long long>(*least) * static_cast<long long>(f);
    if (next > (1 << 30)) throw std::invalid_argument("balanced_divisions: count too large");
    *least = static_cast<int>(next);
  }
  return divisions;
}

SampleSet generate(Generator g, const std::vector<Distribution>& marginals,
                   std::size_t count, RandomStream& stream) {
  switch (g) {
    case Generator::srs:
      return srs(marginals, count, stream);
    case Generator::lhs:
      return lhs(marginals, count, stream, LhsPairing::random);
    case Generator::lhs_corr:
      return lhs(marginals, count, stream, LhsPairing::correlation_reduced);
    case Generator::ss: {
      StratifiedDesign design = make_grid(
          static_cast<int>(marginals.size()),
          balanced_divisions(static_cast<int>(marginals.size()), count));
      return stratified_sample(marginals, std::move(design),
                               std::vector<std::size_t>(count, 1), stream);
    }
    case Generator::rss:
      return rss_init(marginals, count, stream);
    case Generator::hlhs:
    case Generator::rlh:
      throw std::invalid_argument(
          "hlhs/rlh are extension schemes; generate an lhs set and extend it");
  }
  throw std::logic_error("unreachable");
}

void ExperimentConfig::validate() const {
  if (n0 < 1) throw std::invalid_argument("experiment: n0 must be >= 1");
  if (replicates < 1) throw std::invalid_argument("experiment: replicates must be >= 1");
  if (max_samples < n0) throw std::invalid_argument("experiment: max_samples < n0");
  if (hlhs_refinement < 1) throw std::invalid_argument("experiment: refinement must be >= 1");
  policy.validate();
  if (generator == Generator::ss || generator == Generator::lhs ||
      generator == Generator::lhs_corr)
    throw std::invalid_argument(std::string("generator '") + to_string(generator) +
                                "' does not support sample-size extension");
}

void write_adaptive_csv_header(std::ostream& out, bool with_replicate) {
  if (with_replicate) out << "replicate,";
  out << "N,statistic,value,ci_lo,ci_hi,metric,converged\n";
}

AdaptiveRunResult run_adaptive(const ExperimentConfig& config, std::uint64_t stream_id,
                               std::ostream* csv) {
  config.validate();
  const ModelSpec model = find_model(config.model);
  RandomStream stream(config.seed, stream_id);

  SampleSet set;
  switch (config.generator) {
    case Generator::rss: set = rss_init(model.marginals, config.n0, stream); break;
    case Generator::srs: set = srs(model.marginals, config.n0, stream); break;
    case Generator::hlhs:
    case Generator::rlh: set = lhs(model.marginals, config.n0, stream); break;
    default: throw std::logic_error("unreachable");  // rejected by validate()
  }

  const bool equal_weights_fast = config.generator == Generator::srs;
  const bool needs_bootstrap =
      config.policy.criterion == ConvergencePolicy::Criterion::bootstrap_ci_width;

  std::vector<double> y;
  y.reserve(set.size());
  RunningSums sums;
  for (const SampleRecord& r : set.records) {
    y.push_back(model(r.x));
    sums.add(y.back(), config.statistic.threshold);
  }

  AdaptiveRunResult result;
  for (;;) {
    IterationRow row;
    row.n = set.size();
    row.value = equal_weights_fast ? sums.statistic(config.statistic)
                                   : weighted_stat_fast(set, y, config.statistic);

    std::optional<BootstrapSummary> boot;
    if (needs_bootstrap) {
      if (config.policy.bootstrap_method == ConvergencePolicy::BootstrapMethod::stratified)
        boot = stratified_bootstrap(set, y, config.statistic,
                                    config.policy.bootstrap_replicates, stream);
      else
        boot = modified_bootstrap(set, y, config.statistic,
                                  config.policy.bootstrap_replicates, stream);
      row.ci_lo = boot->ci_lo;
      row.ci_hi = boot->ci_hi;
    }

    const ConvergenceCheck check = check_convergence(config.policy, row.value, boot);
    row.metric = check.metric;
    row.converged = check.converged;
    result.iterations.push_back(row);
    if (csv) write_row(*csv, row, config.statistic, -1);

    if (check.converged) {
      result.converged = true;
      break;
    }

    // next extension size under the growth rule of the generator
    std::size_t next = 0;
    switch (config.generator) {
      case Generator::rss:
      case Generator::srs: next = set.size() + config.policy.batch; break;
      case Generator::hlhs: next = set.size() * (config.hlhs_refinement + 1); break;
      case Generator::rlh: next = set.size() + config.n0; break;
      default: throw std::logic_error("unreachable");
    }
    if (next > config.max_samples) break;

    const std::size_t old_size = set.size();
    switch (config.generator) {
      case Generator::rss: set = rss_extend(std::move(set), config.policy.batch, stream); break;
      case Generator::srs: set = srs_extend(std::move(set), config.policy.batch, stream); break;
      case Generator::hlhs: set = hlhs_extend(std::move(set), config.hlhs_refinement, stream); break;
      case Generator::rlh: set = rlh_extend(std::move(set), stream); break;
      default: throw std::logic_error("unreachable");
    }
    for (std::size_t i = old_size; i < set.size(); ++i) {
      y.push_back(model(set.records[i].x));
      sums.add(y.back(), config.statistic.threshold);
    }
  }

  set.require_weights_normalized();
  result.n_at_convergence = set.size();
  result.final_value = result.iterations.back().value;
  result.final_metric = result.iterations.back().metric;
  return result;
}

std::vector<AdaptiveRunResult> run_adaptive_replicates(const ExperimentConfig& config,
                                                       std::ostream* csv) {
  config.validate();
  std::vector<AdaptiveRunResult> results;
  results.reserve(config.replicates);
  for (std::size_t r = 0; r < config.replicates; ++r) {
    AdaptiveRunResult res = run_adaptive(config, r, nullptr);
    if (csv)
      for (const IterationRow& row : res.iterations)
        write_row(*csv, row, config.statistic, static_cast<int>(r));
    results.push_back(std::move(res));
  }
  return results;
}

void run_metric_study(const MetricStudyConfig& config, std::ostream& out) {
  out << "generator,N,n,seed,v_metric,wd2,max_rho,cond\n";
  for (const Generator g : config.generators)
    for (const std::size_t count : config.sizes)
      for (const int dim : config.dims)
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
          const std::vector<Distribution> marginals(
              static_cast<std::size_t>(dim), Distribution::uniform(0.0, 1.0));
          RandomStream stream(config.seed,
                              mix64((static_cast<std::uint64_t>(count) << 24) ^
                                    (static_cast<std::uint64_t>(dim) << 16) ^
                                    (static_cast<std::uint64_t>(g) << 8)) +
                                  trial);
          const SampleSet set = generate(g, marginals, count, stream);
          const PointSet pts = PointSet::from_u(set);

          std::string line = to_string(g);
          line += ',' + std::to_string(count) + ',' + std::to_string(dim) + ',' +
                  std::to_string(trial) + ',';
          if (config.with_voronoi) {
            const VoronoiEstimate v = voronoi_volumes(pts, config.n_probe, stream);
            append_double(line, v.v_metric);
          }
          line += ',';
          if (config.with_wd2) append_double(line, wd2(pts));
          line += ',';
          if (config.with_correlation && dim >= 2)
            append_double(line, correlation_stats(pts).max_abs_rho);
          line += ',';
          if (config.with_condition) {
            const double c = condition_number(pts);
            if (std::isinf(c))
              line += "inf";
            else
              append_double(line, c);
          }
          out << line << "\n";
        }
}

}  // namespace rss
