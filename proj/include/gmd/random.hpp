#pragma once

// Counter-based random streams (Philox4x32-10).
//
// A stream is identified by (seed, stream id); the n-th output is a pure
// function of (seed, stream id, n). Replication r of a Monte Carlo loop gets
// its own stream, so results do not depend on how replications are spread
// over worker threads.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace gmd {

// Philox4x32 with 10 rounds: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Mixes a list of integers into a 64-bit stream id.
std::uint64_t stream_id(std::initializer_list<std::uint64_t> parts);

// UniformRandomBitGenerator over 64-bit outputs.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}
  RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> parts)
      : RandomStream(seed, stream_id(parts)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Next 32 random bits.
  std::uint32_t next32();

  // Uniform integer in [0, bound), bound > 0; unbiased by rejection.
  // Bounds up to 2^32 consume 32-bit words.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> words_{};
  int used_ = 4;
};

// Draws uniform n-subsets of {0..N-1} by a partial Fisher-Yates shuffle of
// an index array. The array is restored after each draw, so every draw
// depends only on the stream it is given.
class SubsetSampler {
 public:
  explicit SubsetSampler(std::size_t population_size);

  // Returns n distinct indices; valid until the next call.
  std::span<const std::size_t> draw(std::size_t n, RandomStream& rng);

  // Same subset as draw(), listed in increasing order.
  std::span<const std::size_t> draw_sorted(std::size_t n, RandomStream& rng);

  std::size_t population_size() const { return perm_.size(); }

 private:
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> swaps_;
  std::vector<std::size_t> chosen_;
  std::vector<char> marks_;
};

}  // namespace gmd
