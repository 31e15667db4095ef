#include "rss/models.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace rss {

namespace {

// raw moments E[X^k]
double lognormal_raw(double sigma_log, int k) {
  return std::exp(0.5 * k * k * sigma_log * sigma_log);  // mu_log = 0
}

double uniform_raw(double b, int k) {  // U(0, b)
  return std::pow(b, k) / (k + 1);
}

double normal_raw(double mu, double sigma, int k) {
  // binomial expansion over central normal moments (odd ones vanish)
  double total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j % 2 == 0) {
      double dfact = 1.0;
      for (int t = j - 1; t > 0; t -= 2) dfact *= t;
      total += binom * std::pow(mu, k - j) * std::pow(sigma, j) * dfact;
    }
    binom = binom * (k - j) / (j + 1);
  }
  return total;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Exact raw moment E[Y^r] of Y = A - B + C with A = X1^2 X2, B = a X1 X2^2,
// C = X1 X2 and independent X1 ~ LN(0,s1), X2 ~ U(0,b2), a ~ N(1,0.1).
double cubic_raw_moment(double s1, double b2, int r) {
  double total = 0.0;
  for (int ai = 0; ai <= r; ++ai)
    for (int bi = 0; bi + ai <= r; ++bi) {
      const int ci = r - ai - bi;
      const double coef = factorial(r) / (factorial(ai) * factorial(bi) * factorial(ci));
      const double sign = bi % 2 == 0 ? 1.0 : -1.0;
      total += coef * sign * normal_raw(1.0, 0.1, bi) *
               lognormal_raw(s1, 2 * ai + bi + ci) * uniform_raw(b2, ai + 2 * bi + ci);
    }
  return total;
}

ModelSpec::Truth cubic_truth(double s1, double b2) {
  const double m1 = cubic_raw_moment(s1, b2, 1);
  const double r2 = cubic_raw_moment(s1, b2, 2);
  const double r3 = cubic_raw_moment(s1, b2, 3);
  const double r4 = cubic_raw_moment(s1, b2, 4);
  const double m2 = r2 - m1 * m1;
  const double m3 = r3 - 3.0 * m1 * r2 + 2.0 * m1 * m1 * m1;
  const double m4 = r4 - 4.0 * m1 * r3 + 6.0 * m1 * m1 * r2 - 3.0 * m1 * m1 * m1 * m1;
  ModelSpec::Truth t;
  t.mean = m1;
  t.variance = m2;
  t.skewness = m3 / std::pow(m2, 1.5);
  t.kurtosis = m4 / (m2 * m2) - 3.0;
  return t;
}

struct CubicParams {
  double sigma1;  // lognormal sigma of X1
  double b2;      // upper bound of X2
};

CubicParams cubic_params(char dist_id) {
  switch (dist_id) {
    case 'A': return {0.01, 20.0};
    case 'B': return {0.1, 10.0};
    case 'C': return {0.1, 7.0};
    case 'D': return {0.1, 6.0};
    case 'E': return {0.1, 5.0};
    case 'F': return {0.3, 5.0};
    case 'G': return {0.4, 5.0};
    case 'H': return {0.45, 5.0};
    case 'I': return {0.475, 5.0};
    case 'J': return {0.5, 5.0};
    default:
      throw std::invalid_argument(std::string("unknown cubic parameter set '") +
                                  dist_id + "'; expected A..J");
  }
}

// 2-DOF demo constants (normalized units; see header note).  The pulse
// oscillates near the lower structural mode so damping is a first-order
// driver of the peak response.
constexpr double kMass1 = 1.0;
constexpr double kMass2 = 5.0;
constexpr double kStiff1 = 4.0e3;
constexpr double kStiff2 = 2.0e3;
constexpr double kPulseAmplitude = 2.0e3;
constexpr double kPulseDecay = 1.0;        // s
constexpr double kPulseFrequency = 16.0;   // rad/s
constexpr double kChargeRef = 117.0;       // reference charge weight
constexpr double kDemoDt = 4.0e-4;         // s
constexpr double kDemoHorizon = 3.0;       // s

}  // namespace

double two_dof_peak_velocity(double damping_ratio, double charge_weight, double dt) {
  const double w = std::max(0.0, charge_weight);
  const double amplitude =
      kPulseAmplitude * std::cbrt(w / kChargeRef);
  const double c1 = 2.0 * damping_ratio * std::sqrt(kStiff1 * kMass1);
  const double c2 = 2.0 * damping_ratio * std::sqrt(kStiff2 * kMass2);

  // state: x1, v1, x2, v2
  std::array<double, 4> s = {0.0, 0.0, 0.0, 0.0};
  auto deriv = [&](double t, const std::array<double, 4>& y) {
    const double force =
        amplitude * std::exp(-t / kPulseDecay) * std::sin(kPulseFrequency * t);
    const double spring = kStiff2 * (y[2] - y[0]);
    const double damper = c2 * (y[3] - y[1]);
    std::array<double, 4> d;
    d[0] = y[1];
    d[1] = (-kStiff1 * y[0] - c1 * y[1] + spring + damper + force) / kMass1;
    d[2] = y[3];
    d[3] = (-spring - damper) / kMass2;
    return d;
  };

  double peak = 0.0;
  const auto steps = static_cast<std::size_t>(kDemoHorizon / dt);
  double t = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto k1 = deriv(t, s);
    std::array<double, 4> tmp;
    for (int j = 0; j < 4; ++j) tmp[j] = s[j] + 0.5 * dt * k1[j];
    const auto k2 = deriv(t + 0.5 * dt, tmp);
    for (int j = 0; j < 4; ++j) tmp[j] = s[j] + 0.5 * dt * k2[j];
    const auto k3 = deriv(t + 0.5 * dt, tmp);
    for (int j = 0; j < 4; ++j) tmp[j] = s[j] + dt * k3[j];
    const auto k4 = deriv(t + dt, tmp);
    for (int j = 0; j < 4; ++j)
      s[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    t += dt;
    peak = std::max(peak, std::fabs(s[3]));
  }
  return peak;
}

ModelSpec model_cubic(char dist_id) {
  const CubicParams p = cubic_params(dist_id);
  ModelSpec model;
  model.name = std::string("cubic-") + dist_id;
  model.marginals = {Distribution::lognormal(0.0, p.sigma1),
                     Distribution::uniform(0.0, p.b2),
                     Distribution::normal(1.0, 0.1)};
  model.evaluator = [](std::span<const double> x) {
    const double x1 = x[0], x2 = x[1], alpha = x[2];
    return x1 * x1 * x2 - alpha * x1 * x2 * x2 + x1 * x2;
  };
  model.truth = cubic_truth(p.sigma1, p.b2);
  return model;
}

ModelSpec model_additive(int n) {
  if (n < 1) throw std::invalid_argument("additive model needs n >= 1");
  ModelSpec model;
  model.name = "additive-" + std::to_string(n);
  model.marginals.assign(static_cast<std::size_t>(n), Distribution::uniform(0.0, 1.0));
  const double scale = 2.0 / n;
  model.evaluator = [scale](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return scale * s;
  };
  ModelSpec::Truth t;
  t.mean = 1.0;
  t.variance = scale * scale * n / 12.0;  // = 1/(3n)
  model.truth = t;
  return model;
}

ModelSpec model_multiplicative(int n) {
  if (n < 1) throw std::invalid_argument("multiplicative model needs n >= 1");
  const double half = std::sqrt(3.0);
  ModelSpec model;
  model.name = "multiplicative-" + std::to_string(n);
  model.marginals.assign(static_cast<std::size_t>(n),
                         Distribution::uniform(1.0 - half, 1.0 + half));
  model.evaluator = [](std::span<const double> x) {
    double p = 1.0;
    for (double v : x) p *= v;
    return p;
  };
  ModelSpec::Truth t;
  t.mean = 1.0;
  t.variance = std::pow(2.0, n) - 1.0;  // E[X^2] = 2 per factor
  model.truth = t;
  return model;
}

ModelSpec model_two_dof_demo() {
  ModelSpec model;
  model.name = "twodof";
  model.marginals = {
      Distribution::truncated_normal(0.025, 0.01, 0.0,
                                     std::numeric_limits<double>::infinity()),
      Distribution::normal(117.0, 1.17)};
  model.evaluator = [](std::span<const double> x) {
    return two_dof_peak_velocity(x[0], x[1], kDemoDt);
  };
  return model;
}

ModelSpec find_model(const std::string& name) {
  if (name.rfind("cubic-", 0) == 0 && name.size() == 7) return model_cubic(name[6]);
  if (name.rfind("additive-", 0) == 0)
    return model_additive(std::stoi(name.substr(9)));
  if (name.rfind("multiplicative-", 0) == 0)
    return model_multiplicative(std::stoi(name.substr(15)));
  if (name == "twodof") return model_two_dof_demo();
  throw std::invalid_argument("unknown model: '" + name + "'");
}

}  // namespace rss
