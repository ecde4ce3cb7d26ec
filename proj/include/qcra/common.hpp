#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcra {

// One bit per byte, values 0/1. Packed I/O lives at the CLI boundary.
using BitVec = std::vector<std::uint8_t>;
using LlrVec = std::vector<double>;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// SplitMix64 step, used to derive independent per-trial seeds from
// (master_seed, trial_index) so results never depend on scheduling order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(trial_index + 0x51ed270b0a1ull));
}

// FNV-1a over a string, used for provenance hashes in result files.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace qcra
