#pragma once

#include <cstdint>
#include <vector>

#include "qcra/circulant_table.hpp"

namespace qcra {

// Fully expanded QC-RA code. H = [H1 | A] where H1 is stored explicitly
// (both row- and column-major, CSR) and A is the implicit M x M
// lower-bidiagonal accumulator: row i has ones in parity columns i and i-1
// (row 0 only column 0). Immutable after build; safe to share across threads.
class QcRaCode {
public:
    explicit QcRaCode(const CirculantTable& table);

    std::uint32_t n() const { return n_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t m() const { return m_; }
    // Per-column cyclic shift step within a group, q = M/360.
    std::uint32_t expansion_step() const { return q_; }

    // Message columns of row r: [row_begin(r), row_end(r)).
    const std::uint32_t* row_begin(std::uint32_t r) const { return row_cols_.data() + row_off_[r]; }
    const std::uint32_t* row_end(std::uint32_t r) const { return row_cols_.data() + row_off_[r + 1]; }
    std::uint32_t row_weight(std::uint32_t r) const { return row_off_[r + 1] - row_off_[r]; }

    // Rows of message column c: [col_begin(c), col_end(c)).
    const std::uint32_t* col_begin(std::uint32_t c) const { return col_rows_.data() + col_off_[c]; }
    const std::uint32_t* col_end(std::uint32_t c) const { return col_rows_.data() + col_off_[c + 1]; }
    std::uint32_t col_weight(std::uint32_t c) const { return col_off_[c + 1] - col_off_[c]; }

    std::uint64_t h1_ones() const { return row_cols_.size(); }

    const CirculantTable& table() const { return table_; }

private:
    CirculantTable table_;
    std::uint32_t n_, k_, m_, q_;
    std::vector<std::uint32_t> row_off_, row_cols_;  // H1 row-major
    std::vector<std::uint32_t> col_off_, col_rows_;  // H1 column-major
};

inline QcRaCode expand(const CirculantTable& table) { return QcRaCode(table); }

}  // namespace qcra
