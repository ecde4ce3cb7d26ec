#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcra/common.hpp"

namespace qcra {

inline constexpr std::uint32_t kGroupSize = 360;

// Compact quasi-cyclic code description: for each group of 360 message
// columns, the row indices of the ones in the group's first column.
struct CirculantTable {
    std::uint32_t n = 0;         // codeword length in bits
    std::uint32_t rate_num = 0;  // code rate as a fraction
    std::uint32_t rate_den = 0;
    std::vector<std::vector<std::uint32_t>> groups;

    std::uint32_t k() const { return static_cast<std::uint32_t>(std::uint64_t(n) * rate_num / rate_den); }
    std::uint32_t m() const { return n - k(); }

    // Throws StructureError when any invariant fails.
    void validate() const;
};

// Parses the table file format:
//   header line  `N <int> RATE <num>/<den>`
//   then exactly K/360 lines of space-separated row indices.
// Lines starting with `#` are comments. Throws ParseError (with line number)
// or StructureError.
CirculantTable parse_circulant_table(const std::string& text);

// Same grammar, loaded from disk.
CirculantTable load_circulant_table(const std::string& path);

std::string serialize_circulant_table(const CirculantTable& table);

// The built-in rate-1/10 code: N = 64800, K = 6480, M = 58320,
// 7 groups of weight 19 and 11 groups of weight 3.
const CirculantTable& builtin_rate_one_tenth();

}  // namespace qcra
