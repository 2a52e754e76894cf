#pragma once

#include <cstdint>

namespace gracefill {

/// splitmix64 mixing step; used to derive independent sub-seeds from one
/// base seed so parallel satellite/axis runs stay reproducible.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Sub-seed for a tagged stream (e.g. per satellite/axis, or the shuffle
/// stream as opposed to the init stream).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix64(base ^ splitmix64(tag + 1));
}

}  // namespace gracefill
