#include "gmd/random.hpp"

#include <algorithm>
#include <utility>

namespace gmd {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

std::uint64_t stream_id(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

void RandomStream::refill() {
  const std::array<std::uint32_t, 4> ctr{
      static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                         static_cast<std::uint32_t>(seed_ >> 32)};
  words_ = philox4x32(ctr, key);
  ++counter_;
  used_ = 0;
}

std::uint32_t RandomStream::next32() {
  if (used_ == 4) refill();
  return words_[used_++];
}

RandomStream::result_type RandomStream::operator()() {
  const std::uint64_t lo = next32();
  return (static_cast<std::uint64_t>(next32()) << 32) | lo;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low region.
  if (bound <= (std::uint64_t{1} << 32)) {
    std::uint64_t m = static_cast<std::uint64_t>(next32()) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const auto threshold = static_cast<std::uint32_t>((std::uint64_t{1} << 32) % bound);
      while (low < threshold) {
        m = static_cast<std::uint64_t>(next32()) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return m >> 32;
  }
  std::uint64_t x = (*this)();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

SubsetSampler::SubsetSampler(std::size_t population_size) : perm_(population_size) {
  for (std::size_t i = 0; i < population_size; ++i) perm_[i] = i;
}

std::span<const std::size_t> SubsetSampler::draw(std::size_t n, RandomStream& rng) {
  const std::size_t size = perm_.size();
  swaps_.resize(n);
  chosen_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(size - i));
    std::swap(perm_[i], perm_[j]);
    swaps_[i] = j;
    chosen_[i] = perm_[i];
  }
  for (std::size_t i = n; i-- > 0;) std::swap(perm_[i], perm_[swaps_[i]]);
  return chosen_;
}

std::span<const std::size_t> SubsetSampler::draw_sorted(std::size_t n, RandomStream& rng) {
  draw(n, rng);
  const std::size_t size = perm_.size();
  if (n * 16 < size) {
    std::sort(chosen_.begin(), chosen_.end());
    return chosen_;
  }
  marks_.resize(size);
  for (std::size_t i : chosen_) marks_[i] = 1;
  std::size_t k = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (marks_[i]) {
      chosen_[k++] = i;
      marks_[i] = 0;
    }
  }
  return chosen_;
}

}  // namespace gmd
