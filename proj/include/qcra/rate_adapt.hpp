#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcra/code.hpp"
#include "qcra/common.hpp"
#include "qcra/decoder.hpp"

namespace qcra {

enum class AdaptKind { Hop, Puncture, Extend, Repeat };

std::string adapt_kind_name(AdaptKind k);

struct RateAdaptScheme {
    AdaptKind kind = AdaptKind::Hop;
    std::vector<std::uint32_t> puncture_pattern;  // Puncture only
    std::uint32_t extension_count = 0;            // Extend only
    std::uint32_t repeat_factor = 1;              // Repeat only, >= 2

    // Exact overall rate for a base code with dimensions (n, k), reduced.
    std::pair<std::uint64_t, std::uint64_t> overall_rate_fraction(std::uint32_t n,
                                                                  std::uint32_t k) const;
    double overall_rate(std::uint32_t n, std::uint32_t k) const;
    std::string describe() const;
};

// Evenly spaced puncture positions within the parity block:
// K + floor(i*M/count) for i = 0..count-1. Message bits are never punctured.
std::vector<std::uint32_t> parity_puncture_pattern(std::uint32_t n, std::uint32_t k,
                                                   std::uint32_t count);
std::vector<std::uint32_t> parity_puncture_pattern(const QcRaCode& code, std::uint32_t count);

// Punctured bits become erasures: LLR 0 at every pattern position.
LlrVec puncture_llrs(const LlrVec& llrs, const std::vector<std::uint32_t>& pattern);

// Base code lengthened by extension_count extra weight-2 checks:
//   H_etnd = [[H1, A, 0], [E, 0, I]],
// E row i connects message columns i mod K and (i + 1 + i/K) mod K; the
// extra parity bit is their XOR, computable independently of the base chain.
class ExtendedCode {
public:
    ExtendedCode(const QcRaCode& base, std::uint32_t extension_count);

    const QcRaCode& base() const { return *base_; }
    std::uint32_t extension_count() const { return static_cast<std::uint32_t>(e_rows_.size()); }
    std::uint32_t n() const { return base_->n() + extension_count(); }
    std::uint32_t k() const { return base_->k(); }
    const std::array<std::uint32_t, 2>& e_row(std::uint32_t i) const { return e_rows_[i]; }

    BitVec encode(const BitVec& message) const;
    std::uint64_t syndrome_weight(const BitVec& word) const;
    TannerGraph graph() const;

private:
    const QcRaCode* base_;
    std::vector<std::array<std::uint32_t, 2>> e_rows_;
};

inline ExtendedCode build_extended(const QcRaCode& code, std::uint32_t m_e) {
    return ExtendedCode(code, m_e);
}

// LLR combining for a rate-1/k repetition layer: each output is the sum of
// the k independent observations of that bit (k times the SNR per bit).
LlrVec combine_repeated_llrs(const std::vector<LlrVec>& observations);

// One measured (scheme, rate, threshold) point of a codebank, produced by
// the harness at a fixed WER target.
struct MeasuredThreshold {
    std::string code_label;
    RateAdaptScheme scheme;
    double overall_rate;
    double threshold_snr_db;
    // Base code dimensions, needed to materialize puncture/extend schemes.
    std::uint32_t base_n = 0;
    std::uint32_t base_k = 0;
};

struct SchemeSelection {
    bool feasible = false;
    std::string code_label;
    RateAdaptScheme scheme;
    double overall_rate = 0.0;
    double predicted_threshold_db = 0.0;
};

// Picks the scheme with the highest overall rate whose predicted threshold
// (linear interpolation of measured thresholds in dB vs. rate) is at or
// below target_snr. hop_only restricts to code hopping + repetition.
// wer_target is recorded metadata; the bank must have been measured at it.
SchemeSelection select_scheme(double target_snr_linear, double wer_target,
                              const std::vector<MeasuredThreshold>& bank, bool hop_only = false);

}  // namespace qcra
