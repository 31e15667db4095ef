#include "rss/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rss {

namespace {

std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw weight_overflow(what);
  return r;
}

double equal_weight_statistic(std::span<const double> y, const Statistic& kind) {
  const double n = static_cast<double>(y.size());
  switch (kind.type) {
    case Statistic::Type::mean: {
      double s = 0.0;
      for (double v : y) s += v;
      return s / n;
    }
    case Statistic::Type::raw_moment: {
      double s = 0.0;
      for (double v : y) s += std::pow(v, kind.order);
      return s / n;
    }
    case Statistic::Type::cdf_at: {
      double s = 0.0;
      for (double v : y) s += v <= kind.threshold ? 1.0 : 0.0;
      return s / n;
    }
    case Statistic::Type::central_moment:
    case Statistic::Type::std_moment: {
      double mu = 0.0;
      for (double v : y) mu += v;
      mu /= n;
      double m2 = 0.0, mr = 0.0;
      for (double v : y) {
        const double d = v - mu;
        m2 += d * d;
        mr += std::pow(d, kind.order);
      }
      m2 /= n;
      mr /= n;
      if (kind.type == Statistic::Type::central_moment) return mr;
      if (kind.order == 3) return m2 > 0 ? mr / std::pow(m2, 1.5) : 0.0;
      if (kind.order == 4) return m2 > 0 ? mr / (m2 * m2) - 3.0 : 0.0;
      return m2 > 0 ? mr / std::pow(m2, kind.order / 2.0) : 0.0;
    }
  }
  throw std::logic_error("unreachable");
}

// resample statistic evaluated on (y, optional weights); weights normalized
double resample_statistic(std::span<const double> y, std::span<const double> w,
                          const Statistic& kind) {
  if (w.empty()) return equal_weight_statistic(y, kind);
  double wsum = 0.0;
  for (double v : w) wsum += v;
  switch (kind.type) {
    case Statistic::Type::mean: {
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * y[i];
      return s / wsum;
    }
    case Statistic::Type::raw_moment: {
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * std::pow(y[i], kind.order);
      return s / wsum;
    }
    case Statistic::Type::cdf_at: {
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i)
        s += y[i] <= kind.threshold ? w[i] : 0.0;
      return s / wsum;
    }
    case Statistic::Type::central_moment:
    case Statistic::Type::std_moment: {
      double mu = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) mu += w[i] * y[i];
      mu /= wsum;
      double m2 = 0.0, mr = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - mu;
        m2 += w[i] * d * d;
        mr += w[i] * std::pow(d, kind.order);
      }
      m2 /= wsum;
      mr /= wsum;
      if (kind.type == Statistic::Type::central_moment) return mr;
      if (kind.order == 3) return m2 > 0 ? mr / std::pow(m2, 1.5) : 0.0;
      if (kind.order == 4) return m2 > 0 ? mr / (m2 * m2) - 3.0 : 0.0;
      return m2 > 0 ? mr / std::pow(m2, kind.order / 2.0) : 0.0;
    }
  }
  throw std::logic_error("unreachable");
}

// nearest-rank empirical quantile of a sorted vector
double sorted_quantile(const std::vector<double>& sorted, double q) {
  const auto n = sorted.size();
  auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (idx > 0) --idx;
  if (idx >= n) idx = n - 1;
  return sorted[idx];
}

BootstrapSummary summarize(const Statistic& kind, double point,
                           std::vector<double>&& stats) {
  std::sort(stats.begin(), stats.end());
  BootstrapSummary summary;
  summary.kind = kind;
  summary.point_estimate = point;
  summary.ci_lo = sorted_quantile(stats, 0.025);
  summary.ci_hi = sorted_quantile(stats, 0.975);
  summary.replicates = stats.size();
  return summary;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

std::string Statistic::name() const {
  switch (type) {
    case Type::mean: return "mean";
    case Type::raw_moment: return "moment" + std::to_string(order);
    case Type::central_moment:
      return order == 2 ? "variance" : "central_moment" + std::to_string(order);
    case Type::std_moment:
      if (order == 3) return "skewness";
      if (order == 4) return "kurtosis";
      return "std_moment" + std::to_string(order);
    case Type::cdf_at: return "cdf_at";
  }
  return "?";
}

Statistic Statistic::parse(std::string_view text) {
  if (text == "mean") return mean();
  if (text == "variance") return central_moment(2);
  if (text == "std") return central_moment(2);  // reported as variance's sqrt by callers
  if (text == "skewness") return std_moment(3);
  if (text == "kurtosis") return std_moment(4);
  if (text.rfind("moment", 0) == 0 && text.size() > 6)
    return raw_moment(std::stoi(std::string(text.substr(6))));
  throw std::invalid_argument("unknown statistic: '" + std::string(text) + "'");
}

EstimatorResult weighted_statistic(const SampleSet& set, std::span<const double> y,
                                   const Statistic& kind) {
  if (y.size() != set.size())
    throw std::invalid_argument("weighted_statistic: response vector misaligned with records");
  if (y.empty()) throw std::invalid_argument("weighted_statistic: empty sample set");
  set.require_weights_normalized();

  std::vector<double> w;
  w.reserve(set.size());
  for (const SampleRecord& r : set.records) w.push_back(r.weight.to_double());

  EstimatorResult res;
  res.kind = kind;
  res.count = y.size();
  res.value = resample_statistic(y, w, kind);
  if (kind.type == Statistic::Type::cdf_at)
    res.value = std::clamp(res.value, 0.0, 1.0);
  if (!std::isfinite(res.value))
    throw std::runtime_error("weighted_statistic: non-finite estimate");
  return res;
}

StepFunction::StepFunction(std::vector<double> knots, std::vector<double> cumulative)
    : knots_(std::move(knots)), cum_(std::move(cumulative)) {
  if (knots_.empty() || knots_.size() != cum_.size())
    throw std::invalid_argument("step function: knots/values mismatch");
  if (!std::is_sorted(knots_.begin(), knots_.end()))
    throw std::invalid_argument("step function: knots must be sorted");
}

double StepFunction::operator()(double y) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), y);
  if (it == knots_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - knots_.begin() - 1)];
}

StepFunction make_ecdf(std::span<const double> y, std::span<const double> w) {
  if (y.empty() || y.size() != w.size())
    throw std::invalid_argument("ecdf: empty or misaligned inputs");
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });

  std::vector<double> knots, cum;
  knots.reserve(y.size());
  cum.reserve(y.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    acc += w[order[i]];
    const double v = y[order[i]];
    if (!knots.empty() && knots.back() == v)
      cum.back() = acc;
    else {
      knots.push_back(v);
      cum.push_back(acc);
    }
  }
  cum.back() = 1.0;  // exact by construction of the weights
  return StepFunction(std::move(knots), std::move(cum));
}

StepFunction weighted_ecdf(const SampleSet& set, std::span<const double> y) {
  if (y.size() != set.size())
    throw std::invalid_argument("weighted_ecdf: response vector misaligned with records");
  set.require_weights_normalized();
  std::vector<double> w;
  w.reserve(set.size());
  for (const SampleRecord& r : set.records) w.push_back(r.weight.to_double());
  return make_ecdf(y, w);
}

double area_metric(const StepFunction& f, const StepFunction& g) {
  if (f.support_hi() < g.support_lo() || g.support_hi() < f.support_lo())
    throw std::domain_error("area_metric: non-overlapping supports");
  std::vector<double> knots;
  knots.reserve(f.knots().size() + g.knots().size());
  knots.insert(knots.end(), f.knots().begin(), f.knots().end());
  knots.insert(knots.end(), g.knots().begin(), g.knots().end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    area += std::fabs(f(knots[i]) - g(knots[i])) * (knots[i + 1] - knots[i]);
  return area;
}

double area_metric(const std::function<double(double)>& reference_cdf,
                   const StepFunction& g, double window_lo, double window_hi) {
  if (!(window_lo < window_hi))
    throw std::domain_error("area_metric: empty integration window");
  if (reference_cdf(window_lo) > 1e-6 || reference_cdf(window_hi) < 1.0 - 1e-6)
    throw std::domain_error("area_metric: window does not cover the reference mass");
  if (g.support_lo() < window_lo || g.support_hi() > window_hi)
    throw std::domain_error("area_metric: step function extends outside the window");

  std::vector<double> cuts;
  cuts.push_back(window_lo);
  for (double k : g.knots())
    if (k > window_lo && k < window_hi) cuts.push_back(k);
  cuts.push_back(window_hi);

  constexpr double kTol = 1e-11;
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const double c = g(a);
    const double fa = reference_cdf(a) - c, fb = reference_cdf(b) - c;
    auto abs_diff = [&](double t) { return std::fabs(reference_cdf(t) - c); };
    if (fa * fb >= 0.0) {
      area += integrate(abs_diff, a, b, kTol);
      continue;
    }
    // single crossing of the monotone reference inside (a,b)
    double lo = a, hi = b;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * (1.0 + std::fabs(hi)); ++iter) {
      const double mid = 0.5 * (lo + hi);
      ((reference_cdf(mid) - c) * fa <= 0.0 ? hi : lo) = mid;
    }
    const double cross = 0.5 * (lo + hi);
    area += integrate(abs_diff, a, cross, kTol);
    area += integrate(abs_diff, cross, b, kTol);
  }
  return area;
}

Interval default_area_window(std::span<const double> reference_sample) {
  if (reference_sample.empty())
    throw std::invalid_argument("default_area_window: empty reference sample");
  std::vector<double> sorted(reference_sample.begin(), reference_sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  const double q1 = sorted[n / 4];
  const double q3 = sorted[(3 * n) / 4];
  double pad = 4.0 * (q3 - q1);
  if (pad <= 0.0) pad = std::max(1.0, sorted.back() - sorted.front());
  return {sorted.front() - pad, sorted.back() + pad};
}

VarianceDecomposition var_ts_oracle(const StratifiedDesign& design,
                                    const std::vector<std::size_t>& per_stratum,
                                    std::span<const double> stratum_means,
                                    std::span<const double> stratum_vars) {
  const std::size_t m = design.size();
  if (per_stratum.size() != m || stratum_means.size() != m || stratum_vars.size() != m)
    throw std::invalid_argument("var_ts_oracle: per-stratum inputs do not match design");

  double total_n = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (per_stratum[k] < 1)
      throw std::invalid_argument("var_ts_oracle: per-stratum counts must be >= 1");
    total_n += static_cast<double>(per_stratum[k]);
  }

  VarianceDecomposition out;
  double tau = 0.0;
  for (std::size_t k = 0; k < m; ++k)
    tau += design.strata()[k].weight.to_double() * stratum_means[k];
  out.total_mean = tau;

  for (std::size_t k = 0; k < m; ++k) {
    const double p = design.strata()[k].weight.to_double();
    out.var_stratified += p * p / static_cast<double>(per_stratum[k]) * stratum_vars[k];
    out.total_variance +=
        p * (stratum_vars[k] + (stratum_means[k] - tau) * (stratum_means[k] - tau));
    out.between_strata += p * (stratum_means[k] - tau) * (stratum_means[k] - tau);
  }
  out.var_srs = out.total_variance / total_n;
  out.between_strata /= total_n;
  return out;
}

BootstrapSummary modified_bootstrap(const SampleSet& set, std::span<const double> y,
                                    const Statistic& kind, std::size_t replicates,
                                    RandomStream& stream) {
  if (replicates < 1000)
    throw std::invalid_argument("modified_bootstrap: needs >= 1000 replicates");
  if (y.size() != set.size() || y.empty())
    throw std::invalid_argument("modified_bootstrap: response vector misaligned with records");
  set.require_weights_normalized();

  // least common denominator of all weights
  std::uint64_t lcd = 1;
  for (const SampleRecord& r : set.records) {
    const std::uint64_t den = r.weight.denominator();
    const std::uint64_t g = std::gcd(lcd, den);
    lcd = checked_mul_u64(
        lcd, den / g,
        "bootstrap least common denominator overflows; coarsen the weights");
  }

  // multiplicities w_l * lcd, exact; cumulative table for the categorical draw
  std::vector<std::uint64_t> cum(set.size());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Weight& w = set.records[i].weight;
    const std::uint64_t reps = checked_mul_u64(
        w.numerator(), lcd / w.denominator(),
        "bootstrap multiplicity overflows; coarsen the weights");
    acc += reps;
    cum[i] = acc;
  }
  if (acc != lcd) throw std::logic_error("bootstrap multiplicities do not tile the LCD");

  const double point = weighted_statistic(set, y, kind).value;
  const std::size_t n = set.size();
  std::vector<double> stats(replicates);
  std::vector<double> resample(n);
  for (std::size_t b = 0; b < replicates; ++b) {
    RandomStream sub = stream.substream(b);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t j = sub.uniform_int(lcd);
      const auto it = std::upper_bound(cum.begin(), cum.end(), j);
      resample[i] = y[static_cast<std::size_t>(it - cum.begin())];
    }
    stats[b] = equal_weight_statistic(resample, kind);
  }
  return summarize(kind, point, std::move(stats));
}

BootstrapSummary stratified_bootstrap(const SampleSet& set, std::span<const double> y,
                                      const Statistic& kind, std::size_t replicates,
                                      RandomStream& stream) {
  if (replicates < 1000)
    throw std::invalid_argument("stratified_bootstrap: needs >= 1000 replicates");
  if (!set.design)
    throw std::invalid_argument("stratified_bootstrap: sample set has no design");
  if (y.size() != set.size() || y.empty())
    throw std::invalid_argument("stratified_bootstrap: response vector misaligned with records");
  set.require_weights_normalized();

  // group records by stratum
  std::unordered_map<int, std::vector<std::size_t>> by_stratum;
  for (std::size_t i = 0; i < set.size(); ++i)
    by_stratum[set.records[i].stratum_id].push_back(i);

  std::vector<std::vector<std::size_t>> groups;
  std::vector<int> singleton_ids;
  for (const Stratum& s : set.design->strata()) {
    const auto it = by_stratum.find(s.id);
    if (it == by_stratum.end())
      throw std::invalid_argument("stratified_bootstrap: empty stratum " +
                                  std::to_string(s.id));
    if (it->second.size() >= 2)
      groups.push_back(it->second);
    else
      singleton_ids.push_back(s.id);
  }

  // collapse singleton strata into nearest-neighbour pairs (by box centre)
  auto center = [&](int id, std::vector<double>& c) {
    const Stratum& s = set.design->by_id(id);
    c.resize(s.lo.size());
    for (std::size_t d = 0; d < s.lo.size(); ++d) c[d] = 0.5 * (s.lo[d] + s.hi[d]);
  };
  std::vector<bool> used(singleton_ids.size(), false);
  std::vector<double> ca, cb;
  for (std::size_t a = 0; a < singleton_ids.size(); ++a) {
    if (used[a]) continue;
    used[a] = true;
    std::size_t mate = a;
    double best = std::numeric_limits<double>::infinity();
    center(singleton_ids[a], ca);
    for (std::size_t b = a + 1; b < singleton_ids.size(); ++b) {
      if (used[b]) continue;
      center(singleton_ids[b], cb);
      double d2 = 0.0;
      for (std::size_t d = 0; d < ca.size(); ++d) d2 += (ca[d] - cb[d]) * (ca[d] - cb[d]);
      if (d2 < best) {
        best = d2;
        mate = b;
      }
    }
    std::vector<std::size_t> group = by_stratum[singleton_ids[a]];
    if (mate != a) {
      used[mate] = true;
      const auto& other = by_stratum[singleton_ids[mate]];
      group.insert(group.end(), other.begin(), other.end());
    } else if (!groups.empty()) {
      // odd singleton out: absorb into the previous group
      groups.back().push_back(group.front());
      continue;
    }
    groups.push_back(std::move(group));
  }

  // per-group cumulative weights for the internal categorical draws
  struct GroupDraw {
    std::vector<std::size_t> members;
    std::vector<double> cum;  // normalized within the group
    double group_weight = 0.0;
  };
  std::vector<GroupDraw> draws;
  draws.reserve(groups.size());
  for (auto& g : groups) {
    GroupDraw d;
    d.members = std::move(g);
    double acc = 0.0;
    for (std::size_t i : d.members) acc += set.records[i].weight.to_double();
    d.group_weight = acc;
    double run = 0.0;
    for (std::size_t i : d.members) {
      run += set.records[i].weight.to_double() / acc;
      d.cum.push_back(run);
    }
    d.cum.back() = 1.0;
    draws.push_back(std::move(d));
  }

  const double point = weighted_statistic(set, y, kind).value;
  std::vector<double> stats(replicates);
  std::vector<double> ry, rw;
  for (std::size_t b = 0; b < replicates; ++b) {
    RandomStream sub = stream.substream(b);
    ry.clear();
    rw.clear();
    for (const GroupDraw& d : draws) {
      const double share = d.group_weight / static_cast<double>(d.members.size());
      for (std::size_t pick = 0; pick < d.members.size(); ++pick) {
        const double u = sub.next_unit();
        const auto it = std::lower_bound(d.cum.begin(), d.cum.end(), u);
        const std::size_t rec =
            d.members[static_cast<std::size_t>(it - d.cum.begin())];
        ry.push_back(y[rec]);
        rw.push_back(share);
      }
    }
    stats[b] = resample_statistic(ry, rw, kind);
  }
  return summarize(kind, point, std::move(stats));
}

void ConvergencePolicy::validate() const {
  if (!(threshold > 0.0)) throw std::invalid_argument("convergence threshold must be > 0");
  if (batch < 1) throw std::invalid_argument("convergence batch must be >= 1");
  if (criterion == Criterion::analytic_relative_error && !std::isfinite(truth))
    throw std::invalid_argument("analytic criterion requires a finite truth value");
}

ConvergenceCheck check_convergence(const ConvergencePolicy& policy, double value,
                                   const std::optional<BootstrapSummary>& bootstrap) {
  policy.validate();
  ConvergenceCheck out;
  switch (policy.criterion) {
    case ConvergencePolicy::Criterion::analytic_relative_error: {
      if (policy.truth == 0.0)
        throw std::invalid_argument("analytic criterion: truth must be nonzero");
      out.metric = std::fabs(value - policy.truth) / std::fabs(policy.truth);
      out.converged = out.metric <= policy.threshold;
      return out;
    }
    case ConvergencePolicy::Criterion::bootstrap_ci_width: {
      if (!bootstrap)
        throw std::invalid_argument("bootstrap criterion requires a bootstrap summary");
      constexpr double kFloor = 1e-8;
      const double denom = std::max(std::fabs(bootstrap->point_estimate), kFloor);
      out.metric = std::fabs(bootstrap->ci_hi - bootstrap->ci_lo) / denom;
      out.converged = out.metric <= policy.threshold &&
                      std::fabs(bootstrap->point_estimate) >= kFloor;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace rss
