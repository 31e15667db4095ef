#include "rss/sample_set.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rss {

namespace {

void append_double(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

}  // namespace

Weight SampleSet::weight_sum() const {
  Weight total;
  for (const SampleRecord& r : records) total = total + r.weight;
  return total;
}

void SampleSet::require_weights_normalized() const {
  const Weight total = weight_sum();
  if (total != Weight::one())
    throw std::runtime_error("inconsistent sample set: weights sum to " +
                             total.to_string() + ", expected 1");
}

std::vector<double> SampleSet::column_u(int dim) const {
  std::vector<double> col;
  col.reserve(records.size());
  for (const SampleRecord& r : records) col.push_back(r.u[static_cast<std::size_t>(dim)]);
  return col;
}

std::vector<double> SampleSet::column_x(int dim) const {
  std::vector<double> col;
  col.reserve(records.size());
  for (const SampleRecord& r : records) col.push_back(r.x[static_cast<std::size_t>(dim)]);
  return col;
}

void save_samples(const SampleSet& set, std::ostream& out) {
  const std::size_t n = set.dimension();
  std::string header = "index";
  for (std::size_t i = 1; i <= n; ++i) header += ",u_" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) header += ",x_" + std::to_string(i);
  header += ",weight_num,weight_log2den,stratum_id";
  out << header << "\n";

  for (const SampleRecord& r : set.records) {
    std::string line = std::to_string(r.index);
    for (double v : r.u) {
      line += ',';
      append_double(line, v);
    }
    for (double v : r.x) {
      line += ',';
      append_double(line, v);
    }
    line += ',';
    line += std::to_string(r.weight.numerator());
    line += ',';
    if (r.weight.is_dyadic())
      line += std::to_string(r.weight.log2_denominator());
    else
      line += '-' + std::to_string(r.weight.denominator());
    line += ',';
    line += std::to_string(r.stratum_id);
    out << line << "\n";
  }
}

void save_samples_file(const SampleSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_samples(set, out);
}

SampleSet load_samples(std::istream& in, std::vector<Distribution> marginals) {
  const std::size_t n = marginals.size();
  SampleSet set;
  set.marginals = std::move(marginals);
  set.generator = "file";

  std::string line;
  if (!std::getline(in, line) || line.rfind("index,", 0) != 0)
    throw std::runtime_error("sample CSV: missing header");

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    SampleRecord r;
    r.u.resize(n);
    r.x.resize(n);
    char comma = 0;
    long long num = 0, den_field = 0;
    if (!(is >> r.index)) throw std::runtime_error("sample CSV: bad index field");
    for (double& v : r.u)
      if (!(is >> comma >> v)) throw std::runtime_error("sample CSV: bad u field");
    for (double& v : r.x)
      if (!(is >> comma >> v)) throw std::runtime_error("sample CSV: bad x field");
    if (!(is >> comma >> num >> comma >> den_field) || num < 0)
      throw std::runtime_error("sample CSV: bad weight fields");
    if (den_field >= 0)
      r.weight = Weight::dyadic(static_cast<std::uint64_t>(num),
                                static_cast<unsigned>(den_field));
    else
      r.weight = Weight(static_cast<std::uint64_t>(num),
                        static_cast<std::uint64_t>(-den_field));
    if (!(is >> comma >> r.stratum_id))
      throw std::runtime_error("sample CSV: bad stratum_id field");
    set.records.push_back(std::move(r));
  }
  return set;
}

SampleSet load_samples_file(const std::string& path, std::vector<Distribution> marginals) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_samples(in, std::move(marginals));
}

std::size_t infer_latin_resolution(const SampleSet& set) {
  const std::size_t count = set.size();
  if (count == 0) return 0;
  auto is_latin_at = [&](std::size_t res) {
    const std::size_t mult = count / res;
    std::vector<std::size_t> bins(res);
    for (std::size_t d = 0; d < set.dimension(); ++d) {
      std::fill(bins.begin(), bins.end(), 0);
      for (const SampleRecord& r : set.records) {
        auto b = static_cast<std::size_t>(r.u[d] * static_cast<double>(res));
        if (b >= res) b = res - 1;
        ++bins[b];
      }
      for (std::size_t b : bins)
        if (b != mult) return false;
    }
    return true;
  };
  for (std::size_t res = count; res >= 2; --res) {
    if (count % res != 0) continue;
    if (is_latin_at(res)) return res;
  }
  return 0;
}

}  // namespace rss
