#pragma once

#include <cstdint>
#include <initializer_list>

namespace bzap {

/// One SplitMix64 step: advances `state` and returns the mixed output.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Folds a list of keys (trial id, role tag, sweep index, ...) into a base
 * seed. Streams for different key tuples are independent of evaluation
 * order, which keeps parallel and serial runs identical.
 */
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t state = base;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t key : keys) {
        state = out ^ (key + 0x632be59bd9b4e019ULL);
        out = splitmix64(state);
    }
    return out;
}

} // namespace bzap
