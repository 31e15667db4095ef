#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rss {

// Exact nonnegative rational sample weight.
//
// Halving refinements of a dyadic stratified design only ever produce
// denominators that are powers of two, and a set of such weights sums to
// exactly 1 under integer arithmetic -- which is what the weighted bootstrap's
// least-common-denominator expansion relies on.  Equal-weight designs of
// non-power-of-two size N are carried exactly as well (denominator N).
//
// All arithmetic is overflow-checked and throws rss::weight_overflow instead
// of silently wrapping.
class Weight {
 public:
  constexpr Weight() = default;  // zero
  Weight(std::uint64_t numerator, std::uint64_t denominator);

  static Weight zero() { return Weight(); }
  static Weight one() { return Weight(1, 1); }
  // numerator / 2^log2_denominator
  static Weight dyadic(std::uint64_t numerator, unsigned log2_denominator);

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  // True when the (reduced) denominator is a power of two.
  bool is_dyadic() const;
  // log2 of the denominator; throws std::domain_error for non-dyadic weights.
  unsigned log2_denominator() const;

  double to_double() const;
  std::string to_string() const;  // "num/den"

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;  // throws if result negative
  Weight operator*(const Weight& o) const;
  Weight half() const { return over(2); }
  Weight over(std::uint64_t k) const;  // exact division of the weight by k
  Weight times(std::uint64_t k) const;

  bool operator==(const Weight& o) const = default;
  std::strong_ordering operator<=>(const Weight& o) const;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

struct weight_overflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

}  // namespace rss
