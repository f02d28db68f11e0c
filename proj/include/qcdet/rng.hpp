#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qcdet::rng {

// splitmix64 finalizer; whitens correlated seed material before it reaches
// the main engine.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Stream seed for (master, trial, purpose). Streams with different trial
// indices or purposes are statistically independent, so ensemble results do
// not depend on scheduling order.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t trial,
                                    std::string_view purpose) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ splitmix64(trial + 0x51ed270b0a9cd1b5ULL));
    return splitmix64(s ^ hash_label(purpose));
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t trial,
                                   std::string_view purpose) {
    return std::mt19937_64(stream_seed(master, trial, purpose));
}

}  // namespace qcdet::rng
