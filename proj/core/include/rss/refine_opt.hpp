#pragma once

#include <iosfwd>

#include "rss/distribution.hpp"

namespace rss {

// Variance of the mean estimator for a two-stratum partition of an output
// distribution where the second stratum gets refined.  Probability intervals:
// the fixed stratum is [0, boundary], the split one [boundary, 1], with
// boundary = 0.5 in the canonical setup (p1 = p2 = 1/2).
struct RefinementProblem {
  Distribution output_dist = Distribution::normal(0, 1);
  double boundary = 0.5;

  void validate() const;
};

// Var[T] = p1^2 s1^2 + p21^2 s21^2 + p22^2 s22^2 with the split stratum
// divided at imbalance factor z (lower child receives z of its probability);
// one sample per stratum.
double variance_of_split(const RefinementProblem& problem, double z);

// Baseline without refinement: one sample in the fixed stratum, two in the
// undivided split stratum; p1^2 s1^2 + (p2^2 / 2) s2^2.
double no_refinement_variance(const RefinementProblem& problem);

// Two-sample baseline p1^2 s1^2 + p2^2 s2^2 (one sample per stratum, no
// third sample yet).
double two_sample_variance(const RefinementProblem& problem);

struct OptimalSplit {
  double z_star = 0.5;
  double var_star = 0.0;
};

// Golden-section search for the minimizing imbalance factor on [0.01, 0.99].
// A coarse prescan guards against non-unimodal objectives; if more than one
// local minimum shows up the search falls back to a 1e4-point grid plus a
// local golden polish.
OptimalSplit optimize_z(const RefinementProblem& problem, double tol = 1e-4);

// "dist,z,var" sweep rows for plotting variance vs imbalance factor.
void write_variance_sweep(std::ostream& out, const RefinementProblem& problem,
                          int points = 97);

}  // namespace rss
