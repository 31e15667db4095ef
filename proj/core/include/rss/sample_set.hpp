#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rss/distribution.hpp"
#include "rss/strata.hpp"
#include "rss/weight.hpp"

namespace rss {

inline constexpr int kNoStratum = -1;

struct SampleRecord {
  std::size_t index = 0;
  std::vector<double> u;  // probability-space point in [0,1]^n
  std::vector<double> x;  // physical-space point, x_i = inv_cdf(marginal_i, u_i)
  Weight weight;
  int stratum_id = kNoStratum;
};

struct SampleSet {
  std::vector<Distribution> marginals;
  std::optional<StratifiedDesign> design;
  std::vector<SampleRecord> records;

  // provenance
  std::string generator;
  std::uint64_t seed = 0;

  // Axis resolution of the Latin structure, when the set has one.  For a
  // plain LHS this equals the size; replicated sets keep the original
  // stratification and hold size/resolution components per bin.
  std::size_t latin_resolution = 0;

  std::size_t dimension() const { return marginals.size(); }
  std::size_t size() const { return records.size(); }

  Weight weight_sum() const;
  // throws std::runtime_error when the weights do not sum to exactly 1
  void require_weights_normalized() const;

  std::vector<double> column_u(int dim) const;
  std::vector<double> column_x(int dim) const;

  // Model responses in record order.
  template <typename F>
  std::vector<double> evaluate(F&& model) const {
    std::vector<double> y;
    y.reserve(records.size());
    for (const SampleRecord& r : records) y.push_back(model(r.x));
    return y;
  }
};

// CSV serialization:
//   index,u_1..u_n,x_1..x_n,weight_num,weight_log2den,stratum_id
// Doubles carry 17 significant digits so a round trip is bit exact.
// weight_log2den holds log2 of the denominator for dyadic weights; for the
// documented rational extension (equal weights 1/N with composite N) it holds
// the negated full denominator.  stratum_id is -1 for unstratified sets.
void save_samples(const SampleSet& set, std::ostream& out);
void save_samples_file(const SampleSet& set, const std::string& path);

// Marginals are not part of the CSV and must be supplied by the caller.
SampleSet load_samples(std::istream& in, std::vector<Distribution> marginals);
SampleSet load_samples_file(const std::string& path, std::vector<Distribution> marginals);

// Largest axis resolution R such that every axis has exactly size/R points
// per 1/R bin; 0 when the set has no Latin structure.  Used to recover
// latin_resolution for deserialized sets.
std::size_t infer_latin_resolution(const SampleSet& set);

}  // namespace rss
