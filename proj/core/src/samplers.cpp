#include "rss/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace rss {

namespace {

std::vector<double> physical_point(const std::vector<Distribution>& marginals,
                                   const std::vector<double>& u) {
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = marginals[i].inv_cdf(u[i]);
  return x;
}

// Guards against the (j + r)/N sum rounding up into the next bin.
double in_bin_value(std::size_t bin, double offset, std::size_t bins) {
  const double n = static_cast<double>(bins);
  double v = (static_cast<double>(bin) + offset) / n;
  const double hi = static_cast<double>(bin + 1) / n;
  if (v >= hi) v = std::nextafter(hi, 0.0);
  return v;
}

// Sample columns rearranged so each column's ranks match the ranks of a
// decorrelated score matrix (Iman-Conover, identity target, single pass).
void iman_conover_repair(std::vector<std::vector<double>>& columns,
                         RandomStream& stream) {
  const std::size_t count = columns.front().size();
  const std::size_t dim = columns.size();
  if (count <= dim)
    throw std::invalid_argument("correlation_reduced pairing requires N > dimension");

  // van der Waerden scores
  std::vector<double> scores(count);
  for (std::size_t i = 0; i < count; ++i)
    scores[i] = norm_inv_cdf(static_cast<double>(i + 1) /
                             static_cast<double>(count + 1));

  std::vector<std::vector<double>> s(dim, std::vector<double>(count));
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<double> perm = scores;
    stream.shuffle(perm);
    s[d] = std::move(perm);
  }

  // correlation of the score matrix (columns have zero mean by symmetry)
  std::vector<std::vector<double>> corr(dim, std::vector<double>(dim, 0.0));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < count; ++i) acc += s[a][i] * s[b][i];
      corr[a][b] = corr[b][a] = acc / static_cast<double>(count);
    }
  for (std::size_t a = 0; a < dim; ++a) {
    const double da = std::sqrt(corr[a][a]);
    for (std::size_t b = 0; b < dim; ++b) corr[a][b] /= da;
    for (std::size_t b = 0; b < dim; ++b) corr[b][a] /= da;
  }

  // lower Cholesky of corr
  std::vector<std::vector<double>> l(dim, std::vector<double>(dim, 0.0));
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double acc = corr[a][b];
      for (std::size_t k = 0; k < b; ++k) acc -= l[a][k] * l[b][k];
      if (a == b) {
        if (acc <= 0.0)
          throw std::runtime_error("score correlation matrix is not positive definite");
        l[a][a] = std::sqrt(acc);
      } else {
        l[a][b] = acc / l[b][b];
      }
    }
  }

  // s* = s (L^-1)^T  computed row-wise by forward substitution
  std::vector<std::vector<double>> target(dim, std::vector<double>(count));
  std::vector<double> row(dim);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t a = 0; a < dim; ++a) {
      double acc = s[a][i];
      for (std::size_t k = 0; k < a; ++k) acc -= l[a][k] * row[k];
      row[a] = acc / l[a][a];
    }
    for (std::size_t a = 0; a < dim; ++a) target[a][i] = row[a];
  }

  // rank-match each sample column to the decorrelated scores
  std::vector<std::size_t> order(count), rank(count);
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<double> sorted = columns[d];
    std::sort(sorted.begin(), sorted.end());

    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return target[d][a] < target[d][b];
    });
    for (std::size_t r = 0; r < count; ++r) rank[order[r]] = r;
    for (std::size_t i = 0; i < count; ++i) columns[d][i] = sorted[rank[i]];
  }
}

SampleSet assemble_from_columns(const std::vector<Distribution>& marginals,
                                std::vector<std::vector<double>>&& columns,
                                std::size_t count) {
  SampleSet set;
  set.marginals = marginals;
  set.records.reserve(count);
  const Weight w(1, count);
  for (std::size_t i = 0; i < count; ++i) {
    SampleRecord r;
    r.index = i;
    r.u.resize(marginals.size());
    for (std::size_t d = 0; d < marginals.size(); ++d) r.u[d] = columns[d][i];
    r.x = physical_point(marginals, r.u);
    r.weight = w;
    set.records.push_back(std::move(r));
  }
  return set;
}

std::vector<double> lhs_column(std::size_t count, std::size_t resolution,
                               RandomStream& stream) {
  std::vector<std::size_t> bins(count);
  std::iota(bins.begin(), bins.end(), 0);
  stream.shuffle(bins);
  std::vector<double> col(count);
  for (std::size_t i = 0; i < count; ++i)
    col[i] = in_bin_value(bins[i], stream.next_unit(), resolution);
  return col;
}

}  // namespace

SampleSet srs(const std::vector<Distribution>& marginals, std::size_t count,
              RandomStream& stream) {
  if (count < 1) throw std::invalid_argument("srs: count must be >= 1");
  if (marginals.empty()) throw std::invalid_argument("srs: no marginals");
  SampleSet set;
  set.marginals = marginals;
  set.generator = "srs";
  set.seed = stream.seed();
  const Weight w(1, count);
  set.records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SampleRecord r;
    r.index = i;
    r.u.resize(marginals.size());
    for (double& v : r.u) v = stream.next_unit();
    r.x = physical_point(marginals, r.u);
    r.weight = w;
    set.records.push_back(std::move(r));
  }
  return set;
}

SampleSet stratified_sample(const std::vector<Distribution>& marginals,
                            StratifiedDesign design,
                            const std::vector<std::size_t>& per_stratum,
                            RandomStream& stream) {
  if (marginals.size() != static_cast<std::size_t>(design.dimension()))
    throw std::invalid_argument("stratified_sample: marginals do not match design dimension");
  if (per_stratum.size() != design.size())
    throw std::invalid_argument("stratified_sample: per-stratum counts do not match design");
  for (std::size_t m : per_stratum)
    if (m < 1) throw std::invalid_argument("stratified_sample: per-stratum counts must be >= 1");

  SampleSet set;
  set.marginals = marginals;
  set.generator = "ss";
  set.seed = stream.seed();
  std::size_t index = 0;
  for (std::size_t k = 0; k < design.size(); ++k) {
    const Stratum& s = design.strata()[k];
    const Weight w = s.weight.over(per_stratum[k]);
    for (std::size_t m = 0; m < per_stratum[k]; ++m) {
      SampleRecord r;
      r.index = index++;
      r.u.resize(marginals.size());
      for (std::size_t d = 0; d < marginals.size(); ++d)
        r.u[d] = stream.uniform(s.lo[d], s.hi[d]);
      r.x = physical_point(marginals, r.u);
      r.weight = w;
      r.stratum_id = s.id;
      set.records.push_back(std::move(r));
    }
  }
  set.design = std::move(design);
  return set;
}

SampleSet lhs(const std::vector<Distribution>& marginals, std::size_t count,
              RandomStream& stream, LhsPairing pairing) {
  if (count < 2) throw std::invalid_argument("lhs: count must be >= 2");
  if (marginals.empty()) throw std::invalid_argument("lhs: no marginals");

  std::vector<std::vector<double>> columns;
  columns.reserve(marginals.size());
  for (std::size_t d = 0; d < marginals.size(); ++d)
    columns.push_back(lhs_column(count, count, stream));

  if (pairing == LhsPairing::correlation_reduced)
    iman_conover_repair(columns, stream);

  SampleSet set = assemble_from_columns(marginals, std::move(columns), count);
  set.generator = pairing == LhsPairing::random ? "lhs" : "lhs-corr";
  set.seed = stream.seed();
  set.latin_resolution = count;
  return set;
}

SampleSet srs_extend(SampleSet set, std::size_t k_new, RandomStream& stream) {
  if (set.design)
    throw std::invalid_argument("srs_extend: set is stratified; use rss_extend");
  const std::size_t total = set.size() + k_new;
  const Weight w(1, total);
  for (SampleRecord& r : set.records) r.weight = w;
  for (std::size_t i = 0; i < k_new; ++i) {
    SampleRecord r;
    r.index = set.records.size();
    r.u.resize(set.dimension());
    for (double& v : r.u) v = stream.next_unit();
    r.x = physical_point(set.marginals, r.u);
    r.weight = w;
    set.records.push_back(std::move(r));
  }
  set.latin_resolution = 0;
  return set;
}

SampleSet rss_extend(SampleSet set, std::size_t k_new, RandomStream& stream) {
  if (!set.design)
    throw std::invalid_argument("rss_extend: sample set has no stratified design");
  StratifiedDesign& design = *set.design;
  const std::size_t dim = set.dimension();

  // stratum id -> record positions
  std::unordered_map<int, std::vector<std::size_t>> members;
  members.reserve(design.size() * 2);
  for (std::size_t i = 0; i < set.records.size(); ++i) {
    const SampleRecord& r = set.records[i];
    if (r.stratum_id == kNoStratum || !design.has_id(r.stratum_id))
      throw std::invalid_argument("rss_extend: record " + std::to_string(r.index) +
                                  " has no valid stratum reference");
    members[r.stratum_id].push_back(i);
  }
  for (const Stratum& s : design.strata())
    if (members.find(s.id) == members.end())
      throw std::invalid_argument("rss_extend: stratum " + std::to_string(s.id) +
                                  " holds no sample");

  for (std::size_t step = 0; step < k_new; ++step) {
    // 1. maximal-weight stratum, ties broken uniformly at random
    Weight best = design.strata().front().weight;
    for (const Stratum& s : design.strata())
      if (s.weight > best) best = s.weight;
    std::vector<int> tied;
    for (const Stratum& s : design.strata())
      if (s.weight == best) tied.push_back(s.id);
    const int chosen =
        tied.size() == 1 ? tied.front()
                         : tied[static_cast<std::size_t>(stream.uniform_int(tied.size()))];

    // 2. split along the longest edge, ties broken uniformly at random
    const Stratum& parent = design.by_id(chosen);
    double longest = parent.edge(0);
    for (std::size_t d = 1; d < dim; ++d) longest = std::max(longest, parent.edge(static_cast<int>(d)));
    std::vector<int> tied_dims;
    for (std::size_t d = 0; d < dim; ++d)
      if (parent.edge(static_cast<int>(d)) == longest) tied_dims.push_back(static_cast<int>(d));
    const int split_dim =
        tied_dims.size() == 1
            ? tied_dims.front()
            : tied_dims[static_cast<std::size_t>(stream.uniform_int(tied_dims.size()))];

    const int upper_id = design.split(chosen, split_dim, 0.5);

    // existing samples follow whichever child contains them (half-open boxes)
    const Stratum& lower = design.by_id(chosen);
    const Stratum& upper = design.by_id(upper_id);
    std::vector<std::size_t> lower_members, upper_members;
    for (std::size_t i : members[chosen]) {
      if (lower.contains(set.records[i].u))
        lower_members.push_back(i);
      else
        upper_members.push_back(i);
    }

    // 3. draw one sample in the emptier child (the empty one, canonically)
    const Stratum* target = nullptr;
    if (upper_members.empty() && !lower_members.empty())
      target = &upper;
    else if (lower_members.empty() && !upper_members.empty())
      target = &lower;
    else
      target = (lower_members.size() < upper_members.size() ||
                (lower_members.size() == upper_members.size() && stream.uniform_int(2) == 0))
                   ? &lower
                   : &upper;

    SampleRecord fresh;
    fresh.index = set.records.size();
    fresh.u.resize(dim);
    for (std::size_t d = 0; d < dim; ++d)
      fresh.u[d] = stream.uniform(target->lo[d], target->hi[d]);
    fresh.x = physical_point(set.marginals, fresh.u);
    fresh.stratum_id = target->id;
    set.records.push_back(std::move(fresh));
    (target->id == chosen ? lower_members : upper_members).push_back(set.records.size() - 1);

    // 4. reweight the two children as p_k / M_k
    for (std::size_t i : lower_members) {
      set.records[i].stratum_id = chosen;
      set.records[i].weight = lower.weight.over(lower_members.size());
    }
    for (std::size_t i : upper_members) {
      set.records[i].stratum_id = upper_id;
      set.records[i].weight = upper.weight.over(upper_members.size());
    }
    members[chosen] = std::move(lower_members);
    members[upper_id] = std::move(upper_members);
  }

  set.generator = "rss";
  return set;
}

std::vector<int> greedy_halving(int dimension, std::uint64_t strata) {
  if (dimension < 1) throw std::invalid_argument("greedy_halving: dimension must be >= 1");
  if (strata == 0 || !std::has_single_bit(strata))
    throw std::invalid_argument("greedy_halving: stratum count must be a power of two");
  std::vector<int> divisions(static_cast<std::size_t>(dimension), 1);
  for (std::uint64_t product = 1; product < strata; product <<= 1) {
    std::size_t widest = 0;
    for (std::size_t d = 1; d < divisions.size(); ++d)
      if (divisions[d] < divisions[widest]) widest = d;
    divisions[widest] *= 2;
  }
  return divisions;
}

SampleSet rss_init(const std::vector<Distribution>& marginals, std::size_t count,
                   RandomStream& stream) {
  if (count < 1) throw std::invalid_argument("rss_init: count must be >= 1");
  const auto balanced = std::bit_floor(static_cast<std::uint64_t>(count));
  StratifiedDesign design = make_sbsd(
      static_cast<int>(marginals.size()),
      greedy_halving(static_cast<int>(marginals.size()), balanced));
  SampleSet set = stratified_sample(marginals, std::move(design),
                                    std::vector<std::size_t>(balanced, 1), stream);
  if (count > balanced) set = rss_extend(std::move(set), count - balanced, stream);
  set.generator = "rss";
  return set;
}

bool latin_property_holds(const SampleSet& set, std::size_t resolution) {
  if (resolution < 1 || set.size() % resolution != 0) return false;
  const std::size_t mult = set.size() / resolution;
  std::vector<std::size_t> bins(resolution);
  for (std::size_t d = 0; d < set.dimension(); ++d) {
    std::fill(bins.begin(), bins.end(), 0);
    for (const SampleRecord& r : set.records) {
      auto b = static_cast<std::size_t>(r.u[d] * static_cast<double>(resolution));
      if (b >= resolution) b = resolution - 1;
      ++bins[b];
    }
    for (std::size_t b : bins)
      if (b != mult) return false;
  }
  return true;
}

SampleSet hlhs_extend(SampleSet set, unsigned refinement, RandomStream& stream) {
  if (refinement < 1) throw std::invalid_argument("hlhs_extend: refinement must be >= 1");
  const std::size_t count = set.size();
  if (set.latin_resolution != count || !latin_property_holds(set, count))
    throw std::invalid_argument("hlhs_extend: set is not a Latin hypercube sample");

  const std::size_t dim = set.dimension();
  const std::size_t t = refinement;
  const std::size_t fine = count * (t + 1);

  // per dimension: fill the t empty children of every original axis stratum,
  // then shuffle the new components for random pairing
  std::vector<std::vector<double>> new_columns(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<bool> occupied(fine, false);
    for (const SampleRecord& r : set.records) {
      auto b = static_cast<std::size_t>(r.u[d] * static_cast<double>(fine));
      if (b >= fine) b = fine - 1;
      occupied[b] = true;
    }
    std::vector<double>& col = new_columns[d];
    col.reserve(count * t);
    for (std::size_t b = 0; b < fine; ++b)
      if (!occupied[b]) col.push_back(in_bin_value(b, stream.next_unit(), fine));
    stream.shuffle(col);
  }

  const Weight w(1, fine);
  for (SampleRecord& r : set.records) r.weight = w;
  for (std::size_t i = 0; i < count * t; ++i) {
    SampleRecord r;
    r.index = set.records.size();
    r.u.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) r.u[d] = new_columns[d][i];
    r.x = physical_point(set.marginals, r.u);
    r.weight = w;
    set.records.push_back(std::move(r));
  }

  set.latin_resolution = fine;
  set.generator = "hlhs";
  return set;
}

SampleSet rlh_extend(SampleSet set, RandomStream& stream) {
  const std::size_t res = set.latin_resolution;
  if (res < 2 || !latin_property_holds(set, res))
    throw std::invalid_argument("rlh_extend: set is not a (replicated) Latin hypercube sample");

  const std::size_t dim = set.dimension();
  std::vector<std::vector<double>> columns;
  columns.reserve(dim);
  for (std::size_t d = 0; d < dim; ++d) columns.push_back(lhs_column(res, res, stream));

  const std::size_t total = set.size() + res;
  const Weight w(1, total);
  for (SampleRecord& r : set.records) r.weight = w;
  for (std::size_t i = 0; i < res; ++i) {
    SampleRecord r;
    r.index = set.records.size();
    r.u.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) r.u[d] = columns[d][i];
    r.x = physical_point(set.marginals, r.u);
    r.weight = w;
    set.records.push_back(std::move(r));
  }
  set.generator = "rlh";
  return set;
}

}  // namespace rss
