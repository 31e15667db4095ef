#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rss/distribution.hpp"

namespace rss {

// Deterministic response model Y = F(X) with its input marginals and, when
// available, closed-form output moments.
struct ModelSpec {
  struct Truth {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double variance = std::numeric_limits<double>::quiet_NaN();
    double skewness = std::numeric_limits<double>::quiet_NaN();
    double kurtosis = std::numeric_limits<double>::quiet_NaN();  // excess
  };

  std::string name;
  std::vector<Distribution> marginals;
  std::function<double(std::span<const double>)> evaluator;
  std::optional<Truth> truth;

  std::size_t dimension() const { return marginals.size(); }
  double operator()(std::span<const double> x) const { return evaluator(x); }
};

// Y = X1^2 X2 - a X1 X2^2 + X1 X2 with X1 lognormal, X2 uniform, a normal;
// the ten parameter sets 'A'..'J' span near-uniform through heavy-tailed
// outputs.  Truth moments are exact (multinomial expansion over independent
// input moments).
ModelSpec model_cubic(char dist_id);

// Y1 = (2/n) sum X_i with X_i ~ U(0,1); mean 1.
ModelSpec model_additive(int n);
// Y2 = prod X_i with X_i ~ U(1-sqrt(3), 1+sqrt(3)); mean 1, unit input
// variance, strong interactions.
ModelSpec model_multiplicative(int n);

// Two-degree-of-freedom damped oscillator demo: a primary mass supporting a
// five-times-heavier equipment mass, excited by an exponentially decaying
// oscillatory base-pressure pulse whose amplitude scales with the cube root
// of the charge weight.  Inputs: damping ratio ~ TN(0.025, 0.01, 0, inf),
// charge weight ~ N(117, 1.17).  Response: peak velocity magnitude of the
// equipment mass.  The forcing law and structural constants are demo
// stand-ins, not calibrated physics; the integration step is fixed so that
// halving it moves the peak by less than 0.1%.
ModelSpec model_two_dof_demo();

// Registry lookup: "cubic-A".."cubic-J", "additive-<n>", "multiplicative-<n>",
// "twodof".
ModelSpec find_model(const std::string& name);

// Fixed-step RK4 peak response used by the demo model; exposed for the
// step-halving check.
double two_dof_peak_velocity(double damping_ratio, double charge_weight, double dt);

}  // namespace rss
