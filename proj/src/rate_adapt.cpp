#include "qcra/rate_adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcra/channel.hpp"
#include "qcra/encoder.hpp"

namespace qcra {

std::string adapt_kind_name(AdaptKind k) {
    switch (k) {
        case AdaptKind::Hop: return "hop";
        case AdaptKind::Puncture: return "puncture";
        case AdaptKind::Extend: return "extend";
        case AdaptKind::Repeat: return "repeat";
    }
    return "?";
}

std::pair<std::uint64_t, std::uint64_t> RateAdaptScheme::overall_rate_fraction(
    std::uint32_t n, std::uint32_t k) const {
    std::uint64_t num = k, den = n;
    switch (kind) {
        case AdaptKind::Hop: break;
        case AdaptKind::Puncture: den = n - puncture_pattern.size(); break;
        case AdaptKind::Extend: den = std::uint64_t(n) + extension_count; break;
        case AdaptKind::Repeat: den = std::uint64_t(n) * repeat_factor; break;
    }
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

double RateAdaptScheme::overall_rate(std::uint32_t n, std::uint32_t k) const {
    auto [num, den] = overall_rate_fraction(n, k);
    return double(num) / double(den);
}

std::string RateAdaptScheme::describe() const {
    switch (kind) {
        case AdaptKind::Hop: return "hop";
        case AdaptKind::Puncture:
            return "puncture:" + std::to_string(puncture_pattern.size());
        case AdaptKind::Extend: return "extend:" + std::to_string(extension_count);
        case AdaptKind::Repeat: return "repeat:" + std::to_string(repeat_factor);
    }
    return "?";
}

std::vector<std::uint32_t> parity_puncture_pattern(std::uint32_t n, std::uint32_t k,
                                                   std::uint32_t count) {
    const std::uint32_t m = n - k;
    if (count > m) throw ArgumentError("puncture count exceeds parity length");
    std::vector<std::uint32_t> pattern(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        pattern[i] = k + static_cast<std::uint32_t>(std::uint64_t(i) * m / count);
    }
    return pattern;
}

std::vector<std::uint32_t> parity_puncture_pattern(const QcRaCode& code, std::uint32_t count) {
    return parity_puncture_pattern(code.n(), code.k(), count);
}

LlrVec puncture_llrs(const LlrVec& llrs, const std::vector<std::uint32_t>& pattern) {
    LlrVec out = llrs;
    for (std::uint32_t pos : pattern) {
        if (pos >= out.size()) {
            throw ArgumentError("puncture position " + std::to_string(pos) + " out of range");
        }
        out[pos] = 0.0;
    }
    return out;
}

ExtendedCode::ExtendedCode(const QcRaCode& base, std::uint32_t extension_count) : base_(&base) {
    if (extension_count < 1) throw ArgumentError("extension count must be >= 1");
    const std::uint32_t k = base.k();
    e_rows_.reserve(extension_count);
    for (std::uint32_t i = 0; i < extension_count; ++i) {
        const std::uint32_t j1 = i % k;
        const std::uint32_t j2 = (i + 1 + i / k) % k;
        if (j1 == j2) {
            throw StructureError("extension row " + std::to_string(i) +
                                 " degenerates to a single column");
        }
        e_rows_.push_back({j1, j2});
    }
}

BitVec ExtendedCode::encode(const BitVec& message) const {
    BitVec word = qcra::encode(*base_, message);
    word.reserve(n());
    for (const auto& row : e_rows_) {
        word.push_back(message[row[0]] ^ message[row[1]]);
    }
    return word;
}

std::uint64_t ExtendedCode::syndrome_weight(const BitVec& word) const {
    if (word.size() != n()) {
        throw ArgumentError("word length " + std::to_string(word.size()) +
                            " != extended N = " + std::to_string(n()));
    }
    BitVec base_word(word.begin(), word.begin() + base_->n());
    std::uint64_t unsatisfied = qcra::syndrome_weight(*base_, base_word);
    for (std::uint32_t i = 0; i < extension_count(); ++i) {
        unsatisfied += word[e_rows_[i][0]] ^ word[e_rows_[i][1]] ^ word[base_->n() + i];
    }
    return unsatisfied;
}

TannerGraph ExtendedCode::graph() const {
    TannerGraph g = TannerGraph::from_code(*base_);
    g.n_vars = n();
    for (std::uint32_t i = 0; i < extension_count(); ++i) {
        g.edge_var.push_back(e_rows_[i][0]);
        g.edge_var.push_back(e_rows_[i][1]);
        g.edge_var.push_back(base_->n() + i);
        g.chk_off.push_back(static_cast<std::uint32_t>(g.edge_var.size()));
    }
    g.finalize();
    return g;
}

LlrVec combine_repeated_llrs(const std::vector<LlrVec>& observations) {
    if (observations.size() < 2) throw ArgumentError("repetition combining needs k >= 2");
    const std::size_t len = observations.front().size();
    LlrVec out(len, 0.0);
    for (const auto& obs : observations) {
        if (obs.size() != len) throw ArgumentError("ragged repetition groups");
        for (std::size_t i = 0; i < len; ++i) out[i] += obs[i];
    }
    return out;
}

namespace {

// Walks a piecewise-linear (rate, threshold_db) curve with threshold
// monotone in rate and returns the highest rate whose threshold is <=
// target_db, or a negative value if even the first point is infeasible.
double max_feasible_rate(std::vector<std::pair<double, double>> pts, double target_db) {
    std::sort(pts.begin(), pts.end());
    // ascending rate; thresholds ascend too
    if (pts.empty() || pts.front().second > target_db) return -1.0;
    double best = pts.front().first;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto [r0, t0] = pts[i - 1];
        const auto [r1, t1] = pts[i];
        if (t1 <= target_db) {
            best = r1;
        } else if (t0 <= target_db && t1 > t0) {
            best = r0 + (target_db - t0) / (t1 - t0) * (r1 - r0);
            break;
        } else {
            break;
        }
    }
    return best;
}

}  // namespace

SchemeSelection select_scheme(double target_snr_linear, double wer_target,
                              const std::vector<MeasuredThreshold>& bank, bool hop_only) {
    if (!(target_snr_linear > 0.0)) throw ArgumentError("target SNR must be positive");
    if (!(wer_target > 0.0 && wer_target < 1.0)) throw ArgumentError("WER target in (0,1)");
    if (bank.empty()) throw ArgumentError("empty codebank");
    const double s_db = db_from_linear(target_snr_linear);
    constexpr int kMaxRepeat = 16;
    constexpr double kEpsDb = 1e-9;

    std::vector<SchemeSelection> candidates;

    // Code hopping: best base code already at or below the target SNR.
    for (const auto& p : bank) {
        if (p.scheme.kind != AdaptKind::Hop) continue;
        if (p.threshold_snr_db <= s_db + kEpsDb) {
            SchemeSelection c;
            c.feasible = true;
            c.code_label = p.code_label;
            c.scheme = p.scheme;
            c.overall_rate = p.overall_rate;
            c.predicted_threshold_db = p.threshold_snr_db;
            candidates.push_back(c);
        }
    }

    auto add_repeat_candidates = [&] {
        for (const auto& p : bank) {
            if (p.scheme.kind != AdaptKind::Hop) continue;
            const double thr_lin = linear_from_db(p.threshold_snr_db);
            const int k = static_cast<int>(std::ceil(thr_lin / target_snr_linear - 1e-12));
            if (k < 2 || k > kMaxRepeat) continue;
            SchemeSelection c;
            c.feasible = true;
            c.code_label = p.code_label;
            c.scheme.kind = AdaptKind::Repeat;
            c.scheme.repeat_factor = static_cast<std::uint32_t>(k);
            c.overall_rate = p.overall_rate / k;
            c.predicted_threshold_db = p.threshold_snr_db - db_from_linear(double(k));
            candidates.push_back(c);
        }
    };

    if (hop_only) add_repeat_candidates();

    if (!hop_only) {
        // Per base code: interpolate within the measured puncture and extend
        // families, each anchored at the base hop point.
        for (const auto& base : bank) {
            if (base.scheme.kind != AdaptKind::Hop) continue;
            std::vector<std::pair<double, double>> punct{{base.overall_rate, base.threshold_snr_db}};
            std::vector<std::pair<double, double>> extend = punct;
            for (const auto& p : bank) {
                if (p.code_label != base.code_label) continue;
                if (p.scheme.kind == AdaptKind::Puncture) {
                    punct.push_back({p.overall_rate, p.threshold_snr_db});
                } else if (p.scheme.kind == AdaptKind::Extend) {
                    extend.push_back({p.overall_rate, p.threshold_snr_db});
                }
            }
            const double base_rate = base.overall_rate;
            if (punct.size() > 1 && base.base_n > 0) {
                const double r = max_feasible_rate(punct, s_db);
                if (r > base_rate) {
                    // rate = K/(N - p), so p = N - K/r, rounded down to stay
                    // at or under the feasible rate
                    const auto p = static_cast<std::uint32_t>(
                        std::floor(double(base.base_n) - double(base.base_k) / r + 1e-9));
                    if (p > 0) {
                        SchemeSelection c;
                        c.feasible = true;
                        c.code_label = base.code_label;
                        c.scheme.kind = AdaptKind::Puncture;
                        c.scheme.puncture_pattern =
                            parity_puncture_pattern(base.base_n, base.base_k, p);
                        c.overall_rate = c.scheme.overall_rate(base.base_n, base.base_k);
                        c.predicted_threshold_db = std::min(s_db, punct.back().second);
                        candidates.push_back(c);
                    }
                }
            }
            if (extend.size() > 1) {
                const double best = max_feasible_rate(extend, s_db);
                if (best > 0.0 && best < base_rate && base.base_n > 0) {
                    // rate = K/(N + m_e), so m_e = K/r - N, rounded up to stay
                    // at or under the feasible rate
                    const auto m_e = static_cast<std::uint32_t>(
                        std::ceil(double(base.base_k) / best - double(base.base_n) - 1e-9));
                    if (m_e > 0) {
                        SchemeSelection c;
                        c.feasible = true;
                        c.code_label = base.code_label;
                        c.scheme.kind = AdaptKind::Extend;
                        c.scheme.extension_count = m_e;
                        c.overall_rate = c.scheme.overall_rate(base.base_n, base.base_k);
                        c.predicted_threshold_db = s_db;
                        candidates.push_back(c);
                    }
                }
            }
        }
        if (candidates.empty()) add_repeat_candidates();
    }

    SchemeSelection result;
    for (const auto& c : candidates) {
        if (!result.feasible || c.overall_rate > result.overall_rate + 1e-12 ||
            (std::abs(c.overall_rate - result.overall_rate) <= 1e-12 &&
             c.scheme.kind == AdaptKind::Hop)) {
            result = c;
        }
    }
    return result;
}

}  // namespace qcra
