#include "rss/distribution.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace rss {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kSqrt2Pi = 2.5066282746310005024;

double clamp_prob(double u) {
  if (u < kProbClampEps) return kProbClampEps;
  if (u > 1.0 - kProbClampEps) return 1.0 - kProbClampEps;
  return u;
}

// Conditional mean/variance of a standard normal restricted to the
// probability interval [lo_p, hi_p].
ConditionalMoments std_normal_conditional(double lo_p, double hi_p) {
  const double z = hi_p - lo_p;
  const bool lo_open = lo_p <= 0.0;
  const bool hi_open = hi_p >= 1.0;
  const double a = lo_open ? 0.0 : norm_inv_cdf(lo_p);
  const double b = hi_open ? 0.0 : norm_inv_cdf(hi_p);
  const double pa = lo_open ? 0.0 : norm_pdf(a);
  const double pb = hi_open ? 0.0 : norm_pdf(b);
  const double apa = lo_open ? 0.0 : a * pa;
  const double bpb = hi_open ? 0.0 : b * pb;
  const double m = (pa - pb) / z;
  const double v = 1.0 + (apa - bpb) / z - m * m;
  return {m, v};
}

}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double norm_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw std::domain_error("norm_inv_cdf: probability outside [0,1]");
  }

  // Acklam's rational approximation (|relative error| < 1.15e-9).
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step against the exact CDF.
  const double e = norm_cdf(x) - p;
  const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

Distribution::Distribution(DistKind kind, double p0, double p1, double p2, double p3)
    : kind_(kind) {
  p_[0] = p0;
  p_[1] = p1;
  p_[2] = p2;
  p_[3] = p3;
}

Distribution Distribution::uniform(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("uniform: requires b > a");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("uniform: bounds must be finite");
  return Distribution(DistKind::uniform, a, b, 0, 0);
}

Distribution Distribution::normal(double mu, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("normal: requires sigma > 0");
  if (!std::isfinite(mu) || !std::isfinite(sigma))
    throw std::invalid_argument("normal: parameters must be finite");
  return Distribution(DistKind::normal, mu, sigma, 0, 0);
}

Distribution Distribution::lognormal(double mu_log, double sigma_log) {
  if (!(sigma_log > 0)) throw std::invalid_argument("lognormal: requires sigma > 0");
  if (!std::isfinite(mu_log) || !std::isfinite(sigma_log))
    throw std::invalid_argument("lognormal: parameters must be finite");
  return Distribution(DistKind::lognormal, mu_log, sigma_log, 0, 0);
}

Distribution Distribution::truncated_normal(double mu, double sigma, double lo, double hi) {
  if (!(sigma > 0)) throw std::invalid_argument("truncated_normal: requires sigma > 0");
  if (!(lo < hi)) throw std::invalid_argument("truncated_normal: requires lo < hi");
  if (!std::isfinite(mu) || !std::isfinite(sigma))
    throw std::invalid_argument("truncated_normal: mu/sigma must be finite");
  return Distribution(DistKind::truncated_normal, mu, sigma, lo, hi);
}

double Distribution::param(int i) const {
  if (i < 0 || i > 3) throw std::out_of_range("distribution parameter index");
  return p_[i];
}

double Distribution::cdf(double x) const {
  switch (kind_) {
    case DistKind::uniform: {
      if (x <= p_[0]) return 0.0;
      if (x >= p_[1]) return 1.0;
      return (x - p_[0]) / (p_[1] - p_[0]);
    }
    case DistKind::normal:
      return norm_cdf((x - p_[0]) / p_[1]);
    case DistKind::lognormal: {
      if (x <= 0.0) return 0.0;
      return norm_cdf((std::log(x) - p_[0]) / p_[1]);
    }
    case DistKind::truncated_normal: {
      if (x <= p_[2]) return 0.0;
      if (x >= p_[3]) return 1.0;
      const double c_lo = std::isinf(p_[2]) ? 0.0 : norm_cdf((p_[2] - p_[0]) / p_[1]);
      const double c_hi = std::isinf(p_[3]) ? 1.0 : norm_cdf((p_[3] - p_[0]) / p_[1]);
      return (norm_cdf((x - p_[0]) / p_[1]) - c_lo) / (c_hi - c_lo);
    }
  }
  throw std::logic_error("unreachable");
}

double Distribution::pdf(double x) const {
  switch (kind_) {
    case DistKind::uniform:
      return (x < p_[0] || x > p_[1]) ? 0.0 : 1.0 / (p_[1] - p_[0]);
    case DistKind::normal:
      return norm_pdf((x - p_[0]) / p_[1]) / p_[1];
    case DistKind::lognormal: {
      if (x <= 0.0) return 0.0;
      return norm_pdf((std::log(x) - p_[0]) / p_[1]) / (x * p_[1]);
    }
    case DistKind::truncated_normal: {
      if (x < p_[2] || x > p_[3]) return 0.0;
      const double c_lo = std::isinf(p_[2]) ? 0.0 : norm_cdf((p_[2] - p_[0]) / p_[1]);
      const double c_hi = std::isinf(p_[3]) ? 1.0 : norm_cdf((p_[3] - p_[0]) / p_[1]);
      return norm_pdf((x - p_[0]) / p_[1]) / (p_[1] * (c_hi - c_lo));
    }
  }
  throw std::logic_error("unreachable");
}

double Distribution::inv_cdf(double u) const {
  if (!(u >= 0.0 && u <= 1.0) || std::isnan(u))
    throw std::domain_error("inv_cdf: probability outside [0,1]");
  switch (kind_) {
    case DistKind::uniform:
      return p_[0] + u * (p_[1] - p_[0]);
    case DistKind::normal:
      return p_[0] + p_[1] * norm_inv_cdf(clamp_prob(u));
    case DistKind::lognormal:
      return std::exp(p_[0] + p_[1] * norm_inv_cdf(clamp_prob(u)));
    case DistKind::truncated_normal: {
      if (u == 0.0 && std::isfinite(p_[2])) return p_[2];
      if (u == 1.0 && std::isfinite(p_[3])) return p_[3];
      const double c_lo = std::isinf(p_[2]) ? 0.0 : norm_cdf((p_[2] - p_[0]) / p_[1]);
      const double c_hi = std::isinf(p_[3]) ? 1.0 : norm_cdf((p_[3] - p_[0]) / p_[1]);
      const double q = clamp_prob(c_lo + clamp_prob(u) * (c_hi - c_lo));
      return p_[0] + p_[1] * norm_inv_cdf(q);
    }
  }
  throw std::logic_error("unreachable");
}

double Distribution::mean() const { return conditional_moments(0.0, 1.0).mean; }

double Distribution::variance() const { return conditional_moments(0.0, 1.0).variance; }

double Distribution::support_lo() const {
  switch (kind_) {
    case DistKind::uniform: return p_[0];
    case DistKind::normal: return -std::numeric_limits<double>::infinity();
    case DistKind::lognormal: return 0.0;
    case DistKind::truncated_normal: return p_[2];
  }
  throw std::logic_error("unreachable");
}

double Distribution::support_hi() const {
  switch (kind_) {
    case DistKind::uniform: return p_[1];
    case DistKind::normal: return std::numeric_limits<double>::infinity();
    case DistKind::lognormal: return std::numeric_limits<double>::infinity();
    case DistKind::truncated_normal: return p_[3];
  }
  throw std::logic_error("unreachable");
}

ConditionalMoments Distribution::conditional_moments(double lo_p, double hi_p) const {
  if (!(lo_p >= 0.0 && hi_p <= 1.0 && lo_p < hi_p))
    throw std::domain_error("conditional_moments: requires 0 <= lo_p < hi_p <= 1");
  switch (kind_) {
    case DistKind::uniform: {
      const double lo = p_[0] + lo_p * (p_[1] - p_[0]);
      const double hi = p_[0] + hi_p * (p_[1] - p_[0]);
      const double len = hi - lo;
      return {0.5 * (lo + hi), len * len / 12.0};
    }
    case DistKind::normal: {
      const ConditionalMoments z = std_normal_conditional(lo_p, hi_p);
      return {p_[0] + p_[1] * z.mean, p_[1] * p_[1] * z.variance};
    }
    case DistKind::lognormal: {
      // E[X^r | interval] = exp(r mu + r^2 s^2 / 2) * (Phi(b - r s) - Phi(a - r s)) / Z
      const double mu = p_[0], s = p_[1];
      const double z = hi_p - lo_p;
      const double a = lo_p <= 0.0 ? -std::numeric_limits<double>::infinity()
                                   : norm_inv_cdf(lo_p);
      const double b = hi_p >= 1.0 ? std::numeric_limits<double>::infinity()
                                   : norm_inv_cdf(hi_p);
      auto raw = [&](double r) {
        const double t1 = std::isinf(b) ? 1.0 : norm_cdf(b - r * s);
        const double t0 = std::isinf(a) ? 0.0 : norm_cdf(a - r * s);
        return std::exp(r * mu + 0.5 * r * r * s * s) * (t1 - t0) / z;
      };
      const double m1 = raw(1.0);
      const double m2 = raw(2.0);
      return {m1, m2 - m1 * m1};
    }
    case DistKind::truncated_normal: {
      // Map the conditional interval back to base-normal probabilities.
      const double c_lo = std::isinf(p_[2]) ? 0.0 : norm_cdf((p_[2] - p_[0]) / p_[1]);
      const double c_hi = std::isinf(p_[3]) ? 1.0 : norm_cdf((p_[3] - p_[0]) / p_[1]);
      const double w = c_hi - c_lo;
      const ConditionalMoments z =
          std_normal_conditional(c_lo + lo_p * w, c_lo + hi_p * w);
      return {p_[0] + p_[1] * z.mean, p_[1] * p_[1] * z.variance};
    }
  }
  throw std::logic_error("unreachable");
}

std::string Distribution::to_string() const {
  char buf[128];
  auto fmt = [](double v, char* out, std::size_t n) {
    if (std::isinf(v))
      std::snprintf(out, n, v > 0 ? "inf" : "-inf");
    else
      std::snprintf(out, n, "%.17g", v);
  };
  char s0[32], s1[32], s2[32], s3[32];
  fmt(p_[0], s0, sizeof s0);
  fmt(p_[1], s1, sizeof s1);
  fmt(p_[2], s2, sizeof s2);
  fmt(p_[3], s3, sizeof s3);
  switch (kind_) {
    case DistKind::uniform:
      std::snprintf(buf, sizeof buf, "U(%s,%s)", s0, s1);
      break;
    case DistKind::normal:
      std::snprintf(buf, sizeof buf, "N(%s,%s)", s0, s1);
      break;
    case DistKind::lognormal:
      std::snprintf(buf, sizeof buf, "LN(%s,%s)", s0, s1);
      break;
    case DistKind::truncated_normal:
      std::snprintf(buf, sizeof buf, "TN(%s,%s,%s,%s)", s0, s1, s2, s3);
      break;
  }
  return buf;
}

Distribution Distribution::parse(std::string_view text) {
  auto fail = [&]() -> Distribution {
    throw std::invalid_argument("cannot parse distribution: '" + std::string(text) + "'");
  };
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') return fail();
  std::string head(text.substr(0, open));
  std::string args(text.substr(open + 1, text.size() - open - 2));

  double v[4] = {0, 0, 0, 0};
  int count = 0;
  std::size_t pos = 0;
  while (pos <= args.size() && count < 4) {
    std::size_t comma = args.find(',', pos);
    if (comma == std::string::npos) comma = args.size();
    std::string tok = args.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (tok.empty()) return fail();
    if (tok == "inf" || tok == "+inf")
      v[count] = std::numeric_limits<double>::infinity();
    else if (tok == "-inf")
      v[count] = -std::numeric_limits<double>::infinity();
    else {
      char* end = nullptr;
      v[count] = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') return fail();
    }
    ++count;
    pos = comma + 1;
    if (comma == args.size()) break;
  }

  if (head == "U" && count == 2) return uniform(v[0], v[1]);
  if (head == "N" && count == 2) return normal(v[0], v[1]);
  if (head == "LN" && count == 2) return lognormal(v[0], v[1]);
  if (head == "TN" && count == 4) return truncated_normal(v[0], v[1], v[2], v[3]);
  return fail();
}

}  // namespace rss
