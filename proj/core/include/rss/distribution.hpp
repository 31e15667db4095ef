#pragma once

#include <string>
#include <string_view>

namespace rss {

// Standard normal CDF and its inverse.  The inverse uses a published rational
// approximation polished by one Halley step on the CDF, giving close to full
// double precision over (0,1).
double norm_cdf(double x);
double norm_pdf(double x);
double norm_inv_cdf(double p);

enum class DistKind { uniform, normal, lognormal, truncated_normal };

struct ConditionalMoments {
  double mean = 0;
  double variance = 0;
};

// One-dimensional marginal law with CDF / inverse-CDF / moment queries.
//
// Immutable value type.  Probability arguments at 0 or 1 on an unbounded
// support side are clamped to [1e-15, 1-1e-15] so the inverse stays finite;
// bounded support ends map exactly to the bounds.
class Distribution {
 public:
  static Distribution uniform(double a, double b);
  static Distribution normal(double mu, double sigma);
  static Distribution lognormal(double mu_log, double sigma_log);
  // lo/hi may be +-infinity (at most one side in practice)
  static Distribution truncated_normal(double mu, double sigma, double lo, double hi);

  DistKind kind() const { return kind_; }
  double param(int i) const;  // natural-parameter access, order as in the factory

  double cdf(double x) const;
  double pdf(double x) const;
  double inv_cdf(double u) const;

  double mean() const;
  double variance() const;
  double support_lo() const;
  double support_hi() const;

  // Mean and variance of X conditional on X in [inv_cdf(lo_p), inv_cdf(hi_p)].
  // Closed forms throughout; adaptive quadrature on the truncated density
  // reproduces these to better than 1e-10 absolute (see the test oracles).
  ConditionalMoments conditional_moments(double lo_p, double hi_p) const;

  // "U(a,b)", "N(mu,sigma)", "LN(mu_log,sigma_log)", "TN(mu,sigma,lo,hi)";
  // "inf"/"-inf" accepted for truncation bounds.
  std::string to_string() const;
  static Distribution parse(std::string_view text);

  bool operator==(const Distribution&) const = default;

 private:
  Distribution(DistKind kind, double p0, double p1, double p2, double p3);

  DistKind kind_ = DistKind::uniform;
  double p_[4] = {0, 1, 0, 0};
};

inline constexpr double kProbClampEps = 1e-15;

}  // namespace rss
