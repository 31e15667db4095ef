#pragma once

#include <span>
#include <vector>

#include "rss/random.hpp"
#include "rss/sample_set.hpp"

namespace rss {

// Row-major N x n point matrix on the unit hypercube.
struct PointSet {
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t count() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }
  static PointSet from_u(const SampleSet& set);
};

struct VoronoiEstimate {
  std::vector<double> cell_volumes;  // N_i / N_p, sums to 1 exactly
  std::size_t n_probe = 0;
  double v_metric = 0.0;  // coefficient of variation of the volumes
  double min_volume = 0.0;
  double max_volume = 0.0;
  bool degenerate = false;  // single-point input
};

enum class NearestMode { automatic, brute_force, kd_tree };

// Monte Carlo Voronoi cell volumes: n_probe uniform probes, each attributed
// to its nearest point (Euclidean; exact ties go to the lowest point index).
// automatic uses brute force for dim <= 3 and a kd-tree above; the two paths
// produce identical assignments.
VoronoiEstimate voronoi_volumes(const PointSet& points, std::size_t n_probe,
                                RandomStream& stream,
                                NearestMode mode = NearestMode::automatic);

// Wrap-around L2 discrepancy (closed form):
//   WD2^2 = -(4/3)^n + (1/N^2) sum_{i,j} prod_k [3/2 - |d| (1 - |d|)],
// d = u_ik - u_jk.  Periodic, so translation modulo 1 leaves it unchanged.
double wd2(const PointSet& points);

struct CorrelationStats {
  double max_abs_rho = 0.0;
  std::vector<double> pairwise;  // upper-triangle order (0,1),(0,2),...
};

// Pearson correlations between all coordinate pairs of one point set; the
// spread across repeated trials is assembled by the caller.
CorrelationStats correlation_stats(const PointSet& points);

// cond(X^T X) with points affinely scaled to [-1,1]^n; 1 means perfectly
// orthogonal columns, rank deficiency reports +infinity.
double condition_number(const PointSet& points);

// Eigenvalues of a small dense symmetric matrix (ascending), by Householder
// tridiagonalization followed by implicit-shift QL.
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, std::size_t n);

}  // namespace rss
