#include "qcra/code.hpp"

#include <algorithm>

namespace qcra {

QcRaCode::QcRaCode(const CirculantTable& table) : table_(table) {
    table_.validate();
    n_ = table_.n;
    k_ = table_.k();
    m_ = table_.m();
    q_ = m_ / kGroupSize;

    // Column-major first: column 360*g + j has ones at rows (x + j*q) mod M.
    col_off_.assign(k_ + 1, 0);
    std::uint64_t total = 0;
    for (std::uint32_t g = 0; g < table_.groups.size(); ++g) {
        total += std::uint64_t(kGroupSize) * table_.groups[g].size();
    }
    col_rows_.reserve(total);
    for (std::uint32_t g = 0; g < table_.groups.size(); ++g) {
        const auto& first_col = table_.groups[g];
        for (std::uint32_t j = 0; j < kGroupSize; ++j) {
            const std::uint32_t c = kGroupSize * g + j;
            for (std::uint32_t x : first_col) {
                col_rows_.push_back((x + std::uint64_t(j) * q_) % m_);
            }
            std::sort(col_rows_.begin() + col_off_[c], col_rows_.end());
            col_off_[c + 1] = static_cast<std::uint32_t>(col_rows_.size());
        }
    }

    // Transpose into row-major by counting sort.
    row_off_.assign(m_ + 2, 0);
    for (std::uint32_t r : col_rows_) ++row_off_[r + 2];
    for (std::uint32_t r = 2; r < row_off_.size(); ++r) row_off_[r] += row_off_[r - 1];
    row_cols_.resize(col_rows_.size());
    for (std::uint32_t c = 0; c < k_; ++c) {
        for (const std::uint32_t* p = col_begin(c); p != col_end(c); ++p) {
            row_cols_[row_off_[*p + 1]++] = c;
        }
    }
    row_off_.pop_back();
}

}  // namespace qcra
