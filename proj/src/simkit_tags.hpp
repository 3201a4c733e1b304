#pragma once

#include <cstdint>

// Stream identifiers for the seeded generators; each purpose gets its own
// family of substreams.
namespace gmd::tags {

inline constexpr std::uint64_t kPopulation = 1;
inline constexpr std::uint64_t kOutlierIndex = 2;
inline constexpr std::uint64_t kOutlierValue = 3;
inline constexpr std::uint64_t kAuxiliary = 4;
inline constexpr std::uint64_t kMcReference = 5;
inline constexpr std::uint64_t kSample = 6;
inline constexpr std::uint64_t kBootstrap = 7;
inline constexpr std::uint64_t kBiasSample = 8;

}  // namespace gmd::tags
