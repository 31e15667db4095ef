#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rss/estimators.hpp"
#include "rss/models.hpp"
#include "rss/samplers.hpp"

namespace rss {

enum class Generator { srs, ss, lhs, lhs_corr, rss, hlhs, rlh };

const char* to_string(Generator g);
Generator parse_generator(const std::string& name);

// Direct one-shot generation for the sampling comparisons.  "ss" builds a
// balanced grid with division counts as even as the factorization of count
// allows, one sample per stratum; "rss" starts balanced and refines up to
// count.  hlhs/rlh are extension schemes, not direct generators.
SampleSet generate(Generator g, const std::vector<Distribution>& marginals,
                   std::size_t count, RandomStream& stream);

// Division counts per dimension whose product is exactly `count`, balanced by
// assigning prime factors (largest first) to the least-divided dimension.
std::vector<int> balanced_divisions(int dimension, std::size_t count);

struct ExperimentConfig {
  std::string model = "cubic-A";
  Generator generator = Generator::rss;
  std::size_t n0 = 20;
  Statistic statistic = Statistic::central_moment(2);
  ConvergencePolicy policy;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::size_t max_samples = 100000;
  unsigned hlhs_refinement = 1;  // t; each HLHS extension multiplies N by t+1

  void validate() const;
};

struct IterationRow {
  std::size_t n = 0;
  double value = 0.0;
  double ci_lo = std::numeric_limits<double>::quiet_NaN();
  double ci_hi = std::numeric_limits<double>::quiet_NaN();
  double metric = 0.0;
  bool converged = false;
};

struct AdaptiveRunResult {
  bool converged = false;
  std::size_t n_at_convergence = 0;  // final size when not converged
  double final_value = 0.0;
  double final_metric = 0.0;
  std::vector<IterationRow> iterations;
};

// One adaptive run: evaluate -> estimate -> check -> extend until the policy
// converges or max_samples would be exceeded.  `stream_id` selects the
// replicate substream.  When `csv` is given, emits one row per iteration in
// the form  N,statistic,value,ci_lo,ci_hi,metric,converged  (ci columns blank
// without a bootstrap criterion).
AdaptiveRunResult run_adaptive(const ExperimentConfig& config,
                               std::uint64_t stream_id = 0,
                               std::ostream* csv = nullptr);

// Replicated driver; rows gain a leading `replicate` column.
std::vector<AdaptiveRunResult> run_adaptive_replicates(const ExperimentConfig& config,
                                                       std::ostream* csv = nullptr);

void write_adaptive_csv_header(std::ostream& out, bool with_replicate);

struct MetricStudyConfig {
  std::vector<Generator> generators = {Generator::srs, Generator::lhs, Generator::ss};
  std::vector<std::size_t> sizes = {100};
  std::vector<int> dims = {2};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t n_probe = 100000;
  bool with_voronoi = true;
  bool with_wd2 = true;
  bool with_correlation = true;
  bool with_condition = true;
};

// Sweeps generator x size x dimension x trial and emits
//   generator,N,n,seed,v_metric,wd2,max_rho,cond
// (blank fields for disabled metrics).  Pure function of (config, seed).
void run_metric_study(const MetricStudyConfig& config, std::ostream& out);

}  // namespace rss
