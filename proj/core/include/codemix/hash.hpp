#pragma once

#include <cstdint>
#include <string_view>

namespace codemix {

inline constexpr std::string_view kHashName = "murmur3_x86_32/seed0";

/// MurmurHash3 x86 32-bit (Austin Appleby), little-endian block reads.
std::uint32_t murmur3_32(std::string_view key, std::uint32_t seed = 0);

}  // namespace codemix
