#include "rss/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rss {

namespace {

struct KdNode {
  std::size_t point = 0;   // index into the point set
  int axis = -1;           // -1 marks a leaf
  std::size_t left = 0;
  std::size_t right = 0;   // 0 = absent (node 0 is always the root)
};

// Small exact-median kd-tree over point indices.  Ties on distance must
// resolve to the lowest point index, identical to the brute-force scan, so
// the search visits subtrees whenever the slab distance does not strictly
// exceed the current best.
class KdTree {
 public:
  explicit KdTree(const PointSet& pts) : pts_(pts) {
    std::vector<std::size_t> idx(pts.count());
    std::iota(idx.begin(), idx.end(), 0);
    nodes_.reserve(idx.size());
    root_ = build(idx.begin(), idx.end(), 0);
  }

  std::size_t nearest(std::span<const double> q) const {
    best_d2_ = std::numeric_limits<double>::infinity();
    best_idx_ = std::numeric_limits<std::size_t>::max();
    search(root_, q);
    return best_idx_;
  }

 private:
  using It = std::vector<std::size_t>::iterator;

  std::size_t build(It first, It last, int depth) {
    const auto n = static_cast<std::size_t>(last - first);
    if (n == 0) return kNone;
    const int axis = depth % static_cast<int>(pts_.dim);
    const It mid = first + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(first, mid, last, [&](std::size_t a, std::size_t b) {
      const double va = pts_.row(a)[static_cast<std::size_t>(axis)];
      const double vb = pts_.row(b)[static_cast<std::size_t>(axis)];
      return va < vb || (va == vb && a < b);
    });
    KdNode node;
    node.point = *mid;
    node.axis = axis;
    nodes_.push_back(node);
    const std::size_t self = nodes_.size() - 1;
    nodes_[self].left = build(first, mid, depth + 1);
    nodes_[self].right = build(mid + 1, last, depth + 1);
    return self;
  }

  void consider(std::size_t point, std::span<const double> q) const {
    double d2 = 0.0;
    const auto row = pts_.row(point);
    for (std::size_t d = 0; d < pts_.dim; ++d) {
      const double diff = q[d] - row[d];
      d2 += diff * diff;
    }
    if (d2 < best_d2_ || (d2 == best_d2_ && point < best_idx_)) {
      best_d2_ = d2;
      best_idx_ = point;
    }
  }

  void search(std::size_t node_id, std::span<const double> q) const {
    if (node_id == kNone) return;
    const KdNode& node = nodes_[node_id];
    consider(node.point, q);
    const auto axis = static_cast<std::size_t>(node.axis);
    const double delta = q[axis] - pts_.row(node.point)[axis];
    const std::size_t near = delta < 0.0 ? node.left : node.right;
    const std::size_t far = delta < 0.0 ? node.right : node.left;
    search(near, q);
    if (delta * delta <= best_d2_) search(far, q);
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  const PointSet& pts_;
  std::vector<KdNode> nodes_;
  std::size_t root_ = kNone;
  mutable double best_d2_ = 0.0;
  mutable std::size_t best_idx_ = 0;
};

std::size_t brute_nearest(const PointSet& pts, std::span<const double> q) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < pts.count(); ++i) {
    const auto row = pts.row(i);
    double d2 = 0.0;
    for (std::size_t d = 0; d < pts.dim; ++d) {
      const double diff = q[d] - row[d];
      d2 += diff * diff;
    }
    if (d2 < best) {
      best = d2;
      best_idx = i;
    }
  }
  return best_idx;
}

}  // namespace

PointSet PointSet::from_u(const SampleSet& set) {
  PointSet p;
  p.dim = set.dimension();
  p.data.reserve(set.size() * p.dim);
  for (const SampleRecord& r : set.records)
    p.data.insert(p.data.end(), r.u.begin(), r.u.end());
  return p;
}

VoronoiEstimate voronoi_volumes(const PointSet& points, std::size_t n_probe,
                                RandomStream& stream, NearestMode mode) {
  const std::size_t count = points.count();
  if (count == 0) throw std::invalid_argument("voronoi_volumes: empty point set");
  if (n_probe < 10000)
    throw std::invalid_argument("voronoi_volumes: needs at least 1e4 probe points");

  VoronoiEstimate est;
  est.n_probe = n_probe;
  if (count == 1) {
    est.cell_volumes = {1.0};
    est.v_metric = 0.0;
    est.min_volume = est.max_volume = 1.0;
    est.degenerate = true;
    return est;
  }

  const bool use_tree = mode == NearestMode::kd_tree ||
                        (mode == NearestMode::automatic && points.dim > 3);
  std::vector<std::size_t> hits(count, 0);
  std::vector<double> probe(points.dim);
  if (use_tree) {
    KdTree tree(points);
    for (std::size_t p = 0; p < n_probe; ++p) {
      for (double& v : probe) v = stream.next_unit();
      ++hits[tree.nearest(probe)];
    }
  } else {
    for (std::size_t p = 0; p < n_probe; ++p) {
      for (double& v : probe) v = stream.next_unit();
      ++hits[brute_nearest(points, probe)];
    }
  }

  est.cell_volumes.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    est.cell_volumes[i] =
        static_cast<double>(hits[i]) / static_cast<double>(n_probe);

  const double mean = 1.0 / static_cast<double>(count);
  double var = 0.0;
  est.min_volume = est.cell_volumes.front();
  est.max_volume = est.cell_volumes.front();
  for (double v : est.cell_volumes) {
    var += (v - mean) * (v - mean);
    est.min_volume = std::min(est.min_volume, v);
    est.max_volume = std::max(est.max_volume, v);
  }
  var /= static_cast<double>(count);
  est.v_metric = std::sqrt(var) / mean;
  return est;
}

double wd2(const PointSet& points) {
  const std::size_t count = points.count();
  if (count == 0) throw std::invalid_argument("wd2: empty point set");
  const auto n = static_cast<double>(points.dim);

  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto ri = points.row(i);
    for (std::size_t j = 0; j < count; ++j) {
      const auto rj = points.row(j);
      double prod = 1.0;
      for (std::size_t d = 0; d < points.dim; ++d) {
        const double diff = std::fabs(ri[d] - rj[d]);
        prod *= 1.5 - diff * (1.0 - diff);
      }
      sum += prod;
    }
  }
  const double nn = static_cast<double>(count);
  const double sq = -std::pow(4.0 / 3.0, n) + sum / (nn * nn);
  return std::sqrt(std::max(0.0, sq));
}

CorrelationStats correlation_stats(const PointSet& points) {
  const std::size_t count = points.count();
  const std::size_t dim = points.dim;
  if (count < 3) throw std::invalid_argument("correlation_stats: needs at least 3 points");
  if (dim < 2) throw std::invalid_argument("correlation_stats: needs at least 2 dimensions");

  std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto row = points.row(i);
    for (std::size_t d = 0; d < dim; ++d) mean[d] += row[d];
  }
  for (double& m : mean) m /= static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto row = points.row(i);
    for (std::size_t d = 0; d < dim; ++d)
      sd[d] += (row[d] - mean[d]) * (row[d] - mean[d]);
  }
  for (std::size_t d = 0; d < dim; ++d) {
    sd[d] = std::sqrt(sd[d]);
    if (sd[d] == 0.0)
      throw std::invalid_argument("correlation_stats: coordinate " + std::to_string(d) +
                                  " has zero variance");
  }

  CorrelationStats out;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const auto row = points.row(i);
        acc += (row[a] - mean[a]) * (row[b] - mean[b]);
      }
      const double rho = acc / (sd[a] * sd[b]);
      out.pairwise.push_back(rho);
      out.max_abs_rho = std::max(out.max_abs_rho, std::fabs(rho));
    }
  return out;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("symmetric_eigenvalues: bad size");
  std::vector<double> d(n, 0.0), e(n, 0.0);

  // Householder reduction to tridiagonal form (values-only variant).
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(a[i * n + k]);
      if (scale == 0.0) {
        e[i] = a[i * n + l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a[i * n + k] /= scale;
          h += a[i * n + k] * a[i * n + k];
        }
        double f = a[i * n + l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i * n + l] = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a[j * n + k] * a[i * n + k];
          for (std::size_t k = j + 1; k <= l; ++k) g += a[k * n + j] * a[i * n + k];
          e[j] = g / h;
          f += e[j] * a[i * n + j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a[i * n + j];
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k)
            a[j * n + k] -= f * e[k] + g * a[i * n + k];
        }
      }
    } else {
      e[i] = a[i * n + l];
    }
    d[i] = h;
  }
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];

  // Implicit-shift QL on the tridiagonal (d, e).
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m = l;
    for (;;) {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++iterations > 50)
        throw std::runtime_error("symmetric_eigenvalues: QL failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

double condition_number(const PointSet& points) {
  const std::size_t count = points.count();
  const std::size_t dim = points.dim;
  if (count == 0 || dim == 0) throw std::invalid_argument("condition_number: empty input");
  if (count <= dim)
    throw std::invalid_argument("condition_number: needs more points than dimensions");

  // Gram matrix of the design scaled to [-1,1]^n
  std::vector<double> gram(dim * dim, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto row = points.row(i);
    for (std::size_t a = 0; a < dim; ++a) {
      const double xa = 2.0 * row[a] - 1.0;
      for (std::size_t b = a; b < dim; ++b) {
        const double xb = 2.0 * row[b] - 1.0;
        gram[a * dim + b] += xa * xb;
      }
    }
  }
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < a; ++b) gram[a * dim + b] = gram[b * dim + a];

  const std::vector<double> eig = symmetric_eigenvalues(std::move(gram), dim);
  const double lo = eig.front(), hi = eig.back();
  if (lo <= hi * 1e-13 || lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace rss
