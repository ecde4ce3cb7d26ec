#pragma once

#include "qcra/code.hpp"
#include "qcra/common.hpp"

namespace qcra {

// Systematic back-substitution encoding: codeword = [message | parity],
// p_0 = xor of H1 row 0 over the message, p_i = p_{i-1} xor (row i sum).
BitVec encode(const QcRaCode& code, const BitVec& message);

// Number of unsatisfied checks of [H1 | A] for a length-N word.
std::uint64_t syndrome_weight(const QcRaCode& code, const BitVec& word);

}  // namespace qcra
