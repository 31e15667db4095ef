#include "rss/weight.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace rss {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw weight_overflow("weight arithmetic overflow (multiply)");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw weight_overflow("weight arithmetic overflow (add)");
  return r;
}

}  // namespace

Weight::Weight(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("weight denominator is zero");
  const std::uint64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

Weight Weight::dyadic(std::uint64_t numerator, unsigned log2_denominator) {
  if (log2_denominator >= 64) throw weight_overflow("dyadic denominator exceeds 2^63");
  return Weight(numerator, std::uint64_t{1} << log2_denominator);
}

bool Weight::is_dyadic() const { return std::has_single_bit(den_); }

unsigned Weight::log2_denominator() const {
  if (!is_dyadic()) throw std::domain_error("weight " + to_string() + " is not dyadic");
  return static_cast<unsigned>(std::countr_zero(den_));
}

double Weight::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Weight::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Weight Weight::operator+(const Weight& o) const {
  const std::uint64_t g = std::gcd(den_, o.den_);
  const std::uint64_t scale_a = o.den_ / g;
  const std::uint64_t scale_b = den_ / g;
  const std::uint64_t den = checked_mul(den_, scale_a);
  const std::uint64_t num =
      checked_add(checked_mul(num_, scale_a), checked_mul(o.num_, scale_b));
  return Weight(num, den);
}

Weight Weight::operator-(const Weight& o) const {
  if (*this < o) throw std::domain_error("weight subtraction would be negative");
  const std::uint64_t g = std::gcd(den_, o.den_);
  const std::uint64_t scale_a = o.den_ / g;
  const std::uint64_t scale_b = den_ / g;
  const std::uint64_t den = checked_mul(den_, scale_a);
  const std::uint64_t num = checked_mul(num_, scale_a) - checked_mul(o.num_, scale_b);
  return Weight(num, den);
}

Weight Weight::operator*(const Weight& o) const {
  // cross-reduce before multiplying to keep intermediates small
  const std::uint64_t g1 = std::gcd(num_, o.den_);
  const std::uint64_t g2 = std::gcd(o.num_, den_);
  return Weight(checked_mul(num_ / g1, o.num_ / g2),
                checked_mul(den_ / g2, o.den_ / g1));
}

Weight Weight::over(std::uint64_t k) const {
  if (k == 0) throw std::invalid_argument("weight division by zero");
  return Weight(num_, checked_mul(den_, k));
}

Weight Weight::times(std::uint64_t k) const { return Weight(checked_mul(num_, k), den_); }

std::strong_ordering Weight::operator<=>(const Weight& o) const {
  // exact cross-multiplication in 128 bits
  const auto lhs = static_cast<unsigned __int128>(num_) * o.den_;
  const auto rhs = static_cast<unsigned __int128>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace rss
