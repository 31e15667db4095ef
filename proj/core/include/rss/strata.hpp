#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rss/weight.hpp"

namespace rss {

// Axis-aligned box in the n-dimensional unit probability hypercube.
// Membership is half-open [lo, hi) per dimension except at the domain
// boundary, where hi == 1 is closed; this removes the ambiguity at shared
// faces.
struct Stratum {
  int id = 0;
  std::vector<double> lo;
  std::vector<double> hi;
  Weight weight;

  double volume() const;
  bool contains(std::span<const double> u) const;
  // probability-space edge lengths lambda_i = hi_i - lo_i
  double edge(int dim) const { return hi[static_cast<std::size_t>(dim)] - lo[static_cast<std::size_t>(dim)]; }
};

enum class DesignClass { sbsd, absd, ubsd };

const char* to_string(DesignClass c);

// Disjoint covering stratification of [0,1]^n.  Value type: the splitting
// operation below returns a modified copy; samplers that own their design
// use the in-place member.
class StratifiedDesign {
 public:
  StratifiedDesign(int dimension, std::vector<Stratum> strata);

  int dimension() const { return dimension_; }
  std::size_t size() const { return strata_.size(); }
  const std::vector<Stratum>& strata() const { return strata_; }
  const Stratum& by_id(int id) const;
  bool has_id(int id) const { return index_.count(id) != 0; }
  DesignClass design_class() const { return class_; }
  Weight weight_sum() const;

  // Splits stratum `stratum_id` at lo + z*(hi-lo) along `dim`.  The lower
  // child keeps the parent's id; the upper child receives a fresh id, which
  // is returned.  Child weights are z*w and (1-z)*w, exact (z is converted
  // to the dyadic rational the double literally encodes).
  int split(int stratum_id, int dim, double z);

 private:
  void reclassify();

  int dimension_ = 0;
  std::vector<Stratum> strata_;
  std::unordered_map<int, std::size_t> index_;
  int next_id_ = 0;
  DesignClass class_ = DesignClass::sbsd;
};

// Grid designs.  make_sbsd requires power-of-two division counts so that all
// weights stay dyadic (halving-refinement exactness); non-power-of-two counts
// raise an unsupported-partition error.  make_grid accepts any counts >= 1
// and carries the weights as exact rationals instead.
StratifiedDesign make_sbsd(int dimension, const std::vector<int>& divisions_per_dim);
StratifiedDesign make_grid(int dimension, const std::vector<int>& divisions_per_dim);

struct unsupported_partition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pure-value split; see StratifiedDesign::split.
std::pair<StratifiedDesign, int> split_stratum(const StratifiedDesign& design,
                                               int stratum_id, int dim, double z);

// Structural diagnostics; never throws on an invalid design.
struct ValidationReport {
  std::vector<std::pair<int, int>> overlapping_ids;  // open-interior overlaps
  bool weights_sum_to_one = true;
  Weight weight_sum;
  std::vector<int> bad_bounds_ids;         // lo/hi outside [0,1] or lo >= hi
  std::vector<int> weight_mismatch_ids;    // weight vs box volume disagreement
  bool class_consistent = true;
  DesignClass implied_class = DesignClass::sbsd;

  bool clean() const;
  std::string summary() const;
};

ValidationReport validate(const StratifiedDesign& design);

// Line-oriented text serialization:
//   dim=n
//   id lo_1 .. lo_n hi_1 .. hi_n num log2den
// Doubles are written with 17 significant digits (bit-exact round-trip).
// For the rare non-dyadic weight the last column holds the negated full
// denominator instead of a log2 (log2den >= 0 <=> dyadic).
void save_design(const StratifiedDesign& design, std::ostream& out);
StratifiedDesign load_design(std::istream& in);
void save_design_file(const StratifiedDesign& design, const std::string& path);
StratifiedDesign load_design_file(const std::string& path);

}  // namespace rss
