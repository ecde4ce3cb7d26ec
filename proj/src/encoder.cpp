#include "qcra/encoder.hpp"

namespace qcra {

BitVec encode(const QcRaCode& code, const BitVec& message) {
    if (message.size() != code.k()) {
        throw ArgumentError("message length " + std::to_string(message.size()) +
                            " != K = " + std::to_string(code.k()));
    }
    BitVec word(code.n());
    std::copy(message.begin(), message.end(), word.begin());
    std::uint8_t acc = 0;
    for (std::uint32_t r = 0; r < code.m(); ++r) {
        for (const std::uint32_t* p = code.row_begin(r); p != code.row_end(r); ++p) {
            acc ^= message[*p];
        }
        word[code.k() + r] = acc;
    }
    return word;
}

std::uint64_t syndrome_weight(const QcRaCode& code, const BitVec& word) {
    if (word.size() != code.n()) {
        throw ArgumentError("word length " + std::to_string(word.size()) +
                            " != N = " + std::to_string(code.n()));
    }
    std::uint64_t unsatisfied = 0;
    for (std::uint32_t r = 0; r < code.m(); ++r) {
        std::uint8_t sum = word[code.k() + r];
        if (r > 0) sum ^= word[code.k() + r - 1];
        for (const std::uint32_t* p = code.row_begin(r); p != code.row_end(r); ++p) {
            sum ^= word[*p];
        }
        unsatisfied += sum;
    }
    return unsatisfied;
}

}  // namespace qcra
