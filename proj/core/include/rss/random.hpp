#pragma once

#include <cstdint>
#include <vector>

namespace rss {

// Counter-based pseudo-random stream (Philox-4x64 with 10 rounds).
//
// The (seed, stream_id) pair keys the generator; the block counter supplies
// the input, so identical (seed, stream_id) replays the identical sequence on
// any platform.  Distinct stream_ids key statistically independent sequences,
// which is how replicate runs and parallel bootstrap replicates get their
// substreams.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random bits.
  double next_unit();

  // Uniform on [lo, hi]; always consumes exactly one draw, so replay stays
  // aligned even for degenerate intervals.
  double uniform(double lo, double hi);

  // Unbiased integer on [0, bound); bound must be nonzero.
  std::uint64_t uniform_int(std::uint64_t bound);

  // Fisher-Yates; consumes size-1 integer draws.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent stream derived from this one's identity; does not perturb or
  // consume this stream's state.
  RandomStream substream(std::uint64_t k) const;

 private:
  void refill();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t block_ = 0;
  std::uint64_t buf_[4] = {0, 0, 0, 0};
  int pos_ = 4;
};

// SplitMix64 mix; used for stream-id derivation and seeding helpers.
std::uint64_t mix64(std::uint64_t x);

}  // namespace rss
