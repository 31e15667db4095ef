#include "rss/refine_opt.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace rss {

namespace {

constexpr double kZLo = 0.01;
constexpr double kZHi = 0.99;

double golden_section(const RefinementProblem& problem, double lo, double hi,
                      double tol) {
  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = variance_of_split(problem, c);
  double fd = variance_of_split(problem, d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = variance_of_split(problem, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = variance_of_split(problem, d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void RefinementProblem::validate() const {
  if (!(boundary > 0.0 && boundary < 1.0))
    throw std::invalid_argument("refinement boundary must lie in (0,1)");
}

double variance_of_split(const RefinementProblem& problem, double z) {
  problem.validate();
  if (!(z > 0.0 && z < 1.0))
    throw std::domain_error("imbalance factor must lie in (0,1)");
  const double p1 = problem.boundary;
  const double p2 = 1.0 - problem.boundary;
  const double cut = problem.boundary + z * p2;

  const double s1 = problem.output_dist.conditional_moments(0.0, problem.boundary).variance;
  const double s21 = problem.output_dist.conditional_moments(problem.boundary, cut).variance;
  const double s22 = problem.output_dist.conditional_moments(cut, 1.0).variance;

  const double p21 = z * p2;
  const double p22 = (1.0 - z) * p2;
  return p1 * p1 * s1 + p21 * p21 * s21 + p22 * p22 * s22;
}

double no_refinement_variance(const RefinementProblem& problem) {
  problem.validate();
  const double p1 = problem.boundary;
  const double p2 = 1.0 - problem.boundary;
  const double s1 = problem.output_dist.conditional_moments(0.0, problem.boundary).variance;
  const double s2 = problem.output_dist.conditional_moments(problem.boundary, 1.0).variance;
  return p1 * p1 * s1 + 0.5 * p2 * p2 * s2;
}

double two_sample_variance(const RefinementProblem& problem) {
  problem.validate();
  const double p1 = problem.boundary;
  const double p2 = 1.0 - problem.boundary;
  const double s1 = problem.output_dist.conditional_moments(0.0, problem.boundary).variance;
  const double s2 = problem.output_dist.conditional_moments(problem.boundary, 1.0).variance;
  return p1 * p1 * s1 + p2 * p2 * s2;
}

OptimalSplit optimize_z(const RefinementProblem& problem, double tol) {
  problem.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_z: tol must be > 0");

  // coarse unimodality prescan
  constexpr int kScan = 101;
  std::vector<double> f(kScan);
  int minima = 0;
  int best = 0;
  for (int i = 0; i < kScan; ++i) {
    const double z = kZLo + (kZHi - kZLo) * i / (kScan - 1);
    f[static_cast<std::size_t>(i)] = variance_of_split(problem, z);
    if (f[static_cast<std::size_t>(i)] < f[static_cast<std::size_t>(best)]) best = i;
  }
  for (int i = 1; i + 1 < kScan; ++i)
    if (f[static_cast<std::size_t>(i)] < f[static_cast<std::size_t>(i - 1)] &&
        f[static_cast<std::size_t>(i)] < f[static_cast<std::size_t>(i + 1)])
      ++minima;

  OptimalSplit out;
  if (minima <= 1) {
    out.z_star = golden_section(problem, kZLo, kZHi, tol);
  } else {
    // non-unimodal: dense grid, then polish the best bracket
    constexpr int kDense = 10000;
    int arg = 0;
    double fmin = variance_of_split(problem, kZLo);
    for (int i = 1; i < kDense; ++i) {
      const double z = kZLo + (kZHi - kZLo) * i / (kDense - 1);
      const double v = variance_of_split(problem, z);
      if (v < fmin) {
        fmin = v;
        arg = i;
      }
    }
    const double step = (kZHi - kZLo) / (kDense - 1);
    const double lo = std::max(kZLo, kZLo + (arg - 1) * step);
    const double hi = std::min(kZHi, kZLo + (arg + 1) * step);
    out.z_star = golden_section(problem, lo, hi, tol);
  }
  out.var_star = variance_of_split(problem, out.z_star);
  return out;
}

void write_variance_sweep(std::ostream& out, const RefinementProblem& problem,
                          int points) {
  if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  const std::string label = problem.output_dist.to_string();
  out << "dist,z,var\n";
  char buf[64];
  for (int i = 0; i < points; ++i) {
    const double z = kZLo + (kZHi - kZLo) * i / (points - 1);
    std::snprintf(buf, sizeof buf, "%.12g,%.12g", z, variance_of_split(problem, z));
    out << label << ',' << buf << "\n";
  }
}

}  // namespace rss
