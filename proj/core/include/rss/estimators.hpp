#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rss/random.hpp"
#include "rss/sample_set.hpp"

namespace rss {

// What to estimate from weighted responses.  std_moment(3) is skewness,
// std_moment(4) is excess kurtosis.
struct Statistic {
  enum class Type { mean, raw_moment, central_moment, std_moment, cdf_at };
  Type type = Type::mean;
  int order = 1;
  double threshold = 0.0;

  static Statistic mean() { return {Type::mean, 1, 0.0}; }
  static Statistic raw_moment(int r) { return {Type::raw_moment, r, 0.0}; }
  static Statistic central_moment(int r) { return {Type::central_moment, r, 0.0}; }
  static Statistic std_moment(int r) { return {Type::std_moment, r, 0.0}; }
  static Statistic cdf_at(double y) { return {Type::cdf_at, 0, y}; }

  std::string name() const;
  static Statistic parse(std::string_view text);  // "mean", "variance", "skewness", ...
};

struct EstimatorResult {
  double value = 0.0;
  Statistic kind;
  std::size_t count = 0;
};

// T = sum_l w_l g(y_l); central and standardized moments derive from the
// weighted moments about the weighted mean.  Throws when y is misaligned or
// the weights do not sum to exactly 1.
EstimatorResult weighted_statistic(const SampleSet& set, std::span<const double> y,
                                   const Statistic& kind);

// Right-continuous step function with value 0 before the first knot; a
// weighted ECDF ends at exactly 1.
class StepFunction {
 public:
  StepFunction(std::vector<double> knots, std::vector<double> cumulative);

  double operator()(double y) const;
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& cumulative() const { return cum_; }
  double support_lo() const { return knots_.front(); }
  double support_hi() const { return knots_.back(); }

 private:
  std::vector<double> knots_;
  std::vector<double> cum_;
};

StepFunction weighted_ecdf(const SampleSet& set, std::span<const double> y);
// Plain helper used by resampling internals and tests; weights need not be
// exact rationals but must sum to ~1.
StepFunction make_ecdf(std::span<const double> y, std::span<const double> w);

// Area validation metric: integral of |F - G| dy.
//
// Step-vs-step is integrated exactly over the union of supports (no window
// needed; outside it both CDFs agree).  Continuous-vs-step integrates each
// constant piece of G by bisecting the single crossing of the monotone F and
// applying adaptive quadrature; the window must cover all reference mass
// beyond 1e-6 tails and all of G's knots.
double area_metric(const StepFunction& f, const StepFunction& g);
double area_metric(const std::function<double(double)>& reference_cdf,
                   const StepFunction& g, double window_lo, double window_hi);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// [min - 4*IQR, max + 4*IQR] of a pooled reference sample.
Interval default_area_window(std::span<const double> reference_sample);

// Exact estimator variance of a stratified design given per-stratum
// conditional moments, plus the balanced-design decomposition against SRS.
struct VarianceDecomposition {
  double var_stratified = 0.0;  // sum_k p_k^2 / M_k * sigma_k^2
  double var_srs = 0.0;         // sigma^2 / N with sigma^2 from total variance
  double between_strata = 0.0;  // (1/N) sum_k p_k (mu_k - tau)^2
  double total_mean = 0.0;
  double total_variance = 0.0;
};

VarianceDecomposition var_ts_oracle(const StratifiedDesign& design,
                                    const std::vector<std::size_t>& per_stratum,
                                    std::span<const double> stratum_means,
                                    std::span<const double> stratum_vars);

struct BootstrapSummary {
  Statistic kind;
  double point_estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t replicates = 0;
};

// Weighted bootstrap: resampling with replacement where selection
// probabilities equal the sample weights, implemented as an exact categorical
// draw over the least-common-denominator expansion (never materialized).
// Each resample statistic is computed with equal weights; with equal input
// weights this is Efron's classical bootstrap.  replicates >= 1000.
BootstrapSummary modified_bootstrap(const SampleSet& set, std::span<const double> y,
                                    const Statistic& kind, std::size_t replicates,
                                    RandomStream& stream);

// Stratification-preserving comparison variant: singleton strata are paired
// with their nearest singleton neighbour (collapsed-strata grouping) and each
// group is resampled internally, so confidence widths track the stratified
// estimator's variance instead of the SRS variance.  Requires a design.
BootstrapSummary stratified_bootstrap(const SampleSet& set, std::span<const double> y,
                                      const Statistic& kind, std::size_t replicates,
                                      RandomStream& stream);

struct ConvergencePolicy {
  enum class Criterion { analytic_relative_error, bootstrap_ci_width };
  enum class BootstrapMethod { weighted, stratified };

  Criterion criterion = Criterion::analytic_relative_error;
  double threshold = 0.01;  // epsilon_th
  double truth = std::numeric_limits<double>::quiet_NaN();
  std::size_t batch = 1;  // samples added per iteration
  std::size_t bootstrap_replicates = 2000;
  BootstrapMethod bootstrap_method = BootstrapMethod::weighted;

  void validate() const;
};

struct ConvergenceCheck {
  bool converged = false;
  double metric = 0.0;
};

// analytic_relative_error: |value - truth| / |truth| <= threshold.
// bootstrap_ci_width: |ci_hi - ci_lo| / max(|T|, 1e-8) <= threshold; a
// statistic below the floor reports non-convergence rather than dividing by
// zero.
ConvergenceCheck check_convergence(const ConvergencePolicy& policy, double value,
                                   const std::optional<BootstrapSummary>& bootstrap = {});

}  // namespace rss
