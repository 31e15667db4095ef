#include "rss/strata.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rss {

namespace {

constexpr double kEdgeTol = 1e-12;

bool nearly_equal(double a, double b) {
  return std::fabs(a - b) <= kEdgeTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Exact rational value of the double z (every finite double is dyadic).
Weight dyadic_of_double(double z) {
  if (!(z > 0.0 && z < 1.0)) throw std::domain_error("split fraction must lie in (0,1)");
  int exp = 0;
  const double f = std::frexp(z, &exp);  // z = f * 2^exp, f in [0.5, 1)
  const auto mant = static_cast<std::uint64_t>(std::ldexp(f, 53));
  const int log2den = 53 - exp;
  if (log2den >= 64)
    throw weight_overflow("split fraction too small for exact dyadic weight");
  return Weight::dyadic(mant, static_cast<unsigned>(log2den));
}

void append_double(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

}  // namespace

double Stratum::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool Stratum::contains(std::span<const double> u) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (u[i] < lo[i]) return false;
    if (u[i] >= hi[i] && !(hi[i] == 1.0 && u[i] == 1.0)) return false;
  }
  return true;
}

const char* to_string(DesignClass c) {
  switch (c) {
    case DesignClass::sbsd: return "SBSD";
    case DesignClass::absd: return "ABSD";
    case DesignClass::ubsd: return "UBSD";
  }
  return "?";
}

StratifiedDesign::StratifiedDesign(int dimension, std::vector<Stratum> strata)
    : dimension_(dimension), strata_(std::move(strata)) {
  if (dimension < 1) throw std::invalid_argument("design dimension must be >= 1");
  if (strata_.empty()) throw std::invalid_argument("design must have at least one stratum");
  for (std::size_t i = 0; i < strata_.size(); ++i) {
    const Stratum& s = strata_[i];
    if (static_cast<int>(s.lo.size()) != dimension ||
        static_cast<int>(s.hi.size()) != dimension)
      throw std::invalid_argument("stratum dimensionality mismatch");
    if (!index_.emplace(s.id, i).second)
      throw std::invalid_argument("duplicate stratum id " + std::to_string(s.id));
    next_id_ = std::max(next_id_, s.id + 1);
  }
  reclassify();
}

const Stratum& StratifiedDesign::by_id(int id) const {
  const auto it = index_.find(id);
  if (it == index_.end())
    throw std::out_of_range("no stratum with id " + std::to_string(id));
  return strata_[it->second];
}

Weight StratifiedDesign::weight_sum() const {
  Weight total;
  for (const Stratum& s : strata_) total = total + s.weight;
  return total;
}

void StratifiedDesign::reclassify() {
  const Weight w0 = strata_.front().weight;
  bool equal_weights = true;
  for (const Stratum& s : strata_)
    if (s.weight != w0) {
      equal_weights = false;
      break;
    }
  if (!equal_weights) {
    class_ = DesignClass::ubsd;
    return;
  }
  // SBSD additionally requires every stratum to be the same hypercube shape.
  const double e0 = strata_.front().edge(0);
  bool congruent_cubes = true;
  for (const Stratum& s : strata_) {
    for (int d = 0; d < dimension_ && congruent_cubes; ++d)
      if (!nearly_equal(s.edge(d), e0)) congruent_cubes = false;
    if (!congruent_cubes) break;
  }
  class_ = congruent_cubes ? DesignClass::sbsd : DesignClass::absd;
}

int StratifiedDesign::split(int stratum_id, int dim, double z) {
  if (dim < 0 || dim >= dimension_)
    throw std::out_of_range("split dimension out of range");
  const auto it = index_.find(stratum_id);
  if (it == index_.end())
    throw std::out_of_range("no stratum with id " + std::to_string(stratum_id));
  Stratum& parent = strata_[it->second];

  const Weight z_rat = dyadic_of_double(z);
  const std::size_t d = static_cast<std::size_t>(dim);
  const double mid = parent.lo[d] + z * (parent.hi[d] - parent.lo[d]);
  if (!(mid > parent.lo[d] && mid < parent.hi[d]))
    throw std::domain_error("split point degenerates to a stratum face");

  Stratum upper = parent;
  upper.id = next_id_++;
  upper.lo[d] = mid;
  upper.weight = parent.weight - parent.weight * z_rat;

  parent.hi[d] = mid;
  parent.weight = parent.weight * z_rat;

  index_.emplace(upper.id, strata_.size());
  strata_.push_back(std::move(upper));
  reclassify();
  return strata_.back().id;
}

StratifiedDesign make_grid(int dimension, const std::vector<int>& divisions_per_dim) {
  if (dimension < 1) throw std::invalid_argument("grid dimension must be >= 1");
  if (static_cast<int>(divisions_per_dim.size()) != dimension)
    throw std::invalid_argument("division counts must match dimension");
  std::uint64_t total = 1;
  for (int d : divisions_per_dim) {
    if (d < 1) throw std::invalid_argument("division counts must be >= 1");
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(d), &total))
      throw weight_overflow("grid stratum count overflows");
  }
  const Weight w(1, total);

  std::vector<Stratum> strata;
  strata.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(dimension), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    Stratum s;
    s.id = static_cast<int>(k);
    s.lo.resize(static_cast<std::size_t>(dimension));
    s.hi.resize(static_cast<std::size_t>(dimension));
    for (int d = 0; d < dimension; ++d) {
      const double n = divisions_per_dim[static_cast<std::size_t>(d)];
      s.lo[static_cast<std::size_t>(d)] = idx[static_cast<std::size_t>(d)] / n;
      s.hi[static_cast<std::size_t>(d)] = (idx[static_cast<std::size_t>(d)] + 1) / n;
    }
    s.weight = w;
    strata.push_back(std::move(s));
    // mixed-radix increment, last dimension fastest
    for (int d = dimension - 1; d >= 0; --d) {
      if (++idx[static_cast<std::size_t>(d)] < divisions_per_dim[static_cast<std::size_t>(d)]) break;
      idx[static_cast<std::size_t>(d)] = 0;
    }
  }
  return StratifiedDesign(dimension, std::move(strata));
}

StratifiedDesign make_sbsd(int dimension, const std::vector<int>& divisions_per_dim) {
  for (int d : divisions_per_dim)
    if (d < 1 || !std::has_single_bit(static_cast<unsigned>(d)))
      throw unsupported_partition(
          "unsupported partition: division counts must be powers of two, got " +
          std::to_string(d));
  return make_grid(dimension, divisions_per_dim);
}

std::pair<StratifiedDesign, int> split_stratum(const StratifiedDesign& design,
                                               int stratum_id, int dim, double z) {
  StratifiedDesign copy = design;
  const int new_id = copy.split(stratum_id, dim, z);
  return {std::move(copy), new_id};
}

bool ValidationReport::clean() const {
  return overlapping_ids.empty() && weights_sum_to_one && bad_bounds_ids.empty() &&
         weight_mismatch_ids.empty() && class_consistent;
}

std::string ValidationReport::summary() const {
  if (clean()) return "ok";
  std::ostringstream os;
  if (!overlapping_ids.empty()) os << overlapping_ids.size() << " overlapping pair(s); ";
  if (!weights_sum_to_one) os << "weight sum " << weight_sum.to_string() << " != 1; ";
  if (!bad_bounds_ids.empty()) os << bad_bounds_ids.size() << " stratum(s) with bad bounds; ";
  if (!weight_mismatch_ids.empty())
    os << weight_mismatch_ids.size() << " weight/volume mismatch(es); ";
  if (!class_consistent) os << "class tag inconsistent with strata";
  return os.str();
}

ValidationReport validate(const StratifiedDesign& design) {
  ValidationReport report;
  const auto& strata = design.strata();
  const int n = design.dimension();

  for (const Stratum& s : strata) {
    bool ok = true;
    for (int d = 0; d < n; ++d) {
      const auto i = static_cast<std::size_t>(d);
      if (!(s.lo[i] >= 0.0 && s.hi[i] <= 1.0 && s.lo[i] < s.hi[i])) ok = false;
    }
    if (!ok) report.bad_bounds_ids.push_back(s.id);
    if (!nearly_equal(s.weight.to_double(), s.volume()) &&
        std::fabs(s.weight.to_double() - s.volume()) > 1e-9)
      report.weight_mismatch_ids.push_back(s.id);
  }

  // sweep along dimension 0 so only candidate pairs get the full box test
  std::vector<std::size_t> order(strata.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return strata[a].lo[0] < strata[b].lo[0];
  });
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Stratum& sa = strata[order[a]];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Stratum& sb = strata[order[b]];
      if (sb.lo[0] >= sa.hi[0]) break;
      bool overlap = true;
      for (int d = 0; d < n && overlap; ++d) {
        const auto i = static_cast<std::size_t>(d);
        if (sa.hi[i] <= sb.lo[i] || sb.hi[i] <= sa.lo[i]) overlap = false;
      }
      if (overlap)
        report.overlapping_ids.emplace_back(std::min(sa.id, sb.id),
                                            std::max(sa.id, sb.id));
    }
  }

  report.weight_sum = design.weight_sum();
  report.weights_sum_to_one = report.weight_sum == Weight::one();

  // re-derive the class from scratch and compare
  StratifiedDesign probe(design.dimension(), design.strata());
  report.implied_class = probe.design_class();
  report.class_consistent = report.implied_class == design.design_class();
  return report;
}

void save_design(const StratifiedDesign& design, std::ostream& out) {
  out << "dim=" << design.dimension() << "\n";
  for (const Stratum& s : design.strata()) {
    std::string line = std::to_string(s.id);
    for (double v : s.lo) {
      line += ' ';
      append_double(line, v);
    }
    for (double v : s.hi) {
      line += ' ';
      append_double(line, v);
    }
    line += ' ';
    line += std::to_string(s.weight.numerator());
    line += ' ';
    if (s.weight.is_dyadic())
      line += std::to_string(s.weight.log2_denominator());
    else
      line += '-' + std::to_string(s.weight.denominator());
    out << line << "\n";
  }
}

StratifiedDesign load_design(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("dim=", 0) != 0)
    throw std::runtime_error("design file: missing 'dim=' header");
  const int n = std::stoi(header.substr(4));
  if (n < 1) throw std::runtime_error("design file: bad dimension");

  std::vector<Stratum> strata;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    Stratum s;
    long long num = 0, den_field = 0;
    if (!(is >> s.id)) throw std::runtime_error("design file: bad stratum line");
    s.lo.resize(static_cast<std::size_t>(n));
    s.hi.resize(static_cast<std::size_t>(n));
    for (double& v : s.lo)
      if (!(is >> v)) throw std::runtime_error("design file: truncated bounds");
    for (double& v : s.hi)
      if (!(is >> v)) throw std::runtime_error("design file: truncated bounds");
    if (!(is >> num >> den_field) || num < 0)
      throw std::runtime_error("design file: bad weight fields");
    if (den_field >= 0)
      s.weight = Weight::dyadic(static_cast<std::uint64_t>(num),
                                static_cast<unsigned>(den_field));
    else
      s.weight = Weight(static_cast<std::uint64_t>(num),
                        static_cast<std::uint64_t>(-den_field));
    strata.push_back(std::move(s));
  }
  return StratifiedDesign(n, std::move(strata));
}

void save_design_file(const StratifiedDesign& design, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_design(design, out);
}

StratifiedDesign load_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_design(in);
}

}  // namespace rss
