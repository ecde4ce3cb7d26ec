#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qcra/channel.hpp"
#include "qcra/code.hpp"
#include "qcra/common.hpp"
#include "qcra/decoder.hpp"
#include "qcra/rate_adapt.hpp"

namespace qcra {

// 95% Wilson score interval for errors/trials. Zero errors yields the
// one-sided bound (low = 0).
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials,
                                          double z = 1.959963984540054);

struct StopRule {
    std::uint64_t min_errors = 50;
    std::uint64_t max_trials = 10000;
};

struct WerPoint {
    double snr_linear = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t word_errors = 0;
    std::uint64_t undetected_errors = 0;
    double wer = 0.0;
    double ci_low = 0.0, ci_high = 1.0;
    int max_iterations = 0;
    std::string decoder_variant;
    std::uint64_t seed = 0;
    double avg_iterations = 0.0;
};

// A base code plus one rate-adaptation scheme; precomputes the decode graph
// once. One trial is a pure function of its seed: random message -> encode
// -> transmit (-> adapt) -> decode.
class TransmissionPlan {
public:
    TransmissionPlan(const QcRaCode& code, RateAdaptScheme scheme = {},
                     std::string label = "code");

    const QcRaCode& code() const { return *code_; }
    const RateAdaptScheme& scheme() const { return scheme_; }
    const std::string& label() const { return label_; }
    const TannerGraph& graph() const { return graph_; }
    double overall_rate() const { return scheme_.overall_rate(code_->n(), code_->k()); }
    std::uint64_t transmitted_bits() const;

    struct TrialOutcome {
        bool failure = false;      // detected or undetected
        bool undetected = false;   // converged to the wrong codeword
        int iterations = 0;
    };
    // decoder must have been built over graph().
    TrialOutcome run_trial(double snr_linear, int max_iterations, BpVariant variant,
                           std::uint64_t seed, BpDecoder& decoder) const;

private:
    const QcRaCode* code_;
    RateAdaptScheme scheme_;
    std::optional<ExtendedCode> extended_;
    TannerGraph graph_;
    std::string label_;
};

struct WerConfig {
    int max_iterations = 100;
    StopRule stop;
    BpVariant variant = BpVariant::SumProduct;
    std::uint64_t seed = 1;
    int workers = 1;
};

// Monte-Carlo WER estimate. Trial i derives its RNG stream from
// (seed, i); the counted trial set is a deterministic prefix, so the result
// is byte-identical for any worker count.
WerPoint estimate_wer(const TransmissionPlan& plan, double snr_linear, const WerConfig& cfg);

struct ThresholdResult {
    double wer_target = 0.0;
    double snr_linear = 0.0;
    double snr_db = 0.0;
    std::vector<WerPoint> bracket;  // all evaluated points, low to high SNR
};

struct ThresholdConfig {
    WerConfig wer;
    double tolerance_db = 0.05;
    double snr_db_lo = -16.0;  // initial bracket guess, expanded as needed
    double snr_db_hi = 0.0;
    double snr_db_min = -25.0;
    double snr_db_max = 15.0;
};

// Bisection on SNR in dB; the final value interpolates log-WER linearly
// inside the last bracket. Throws StructureError when no bracket straddles
// the target within [snr_db_min, snr_db_max].
ThresholdResult find_snr_at_wer(const TransmissionPlan& plan, double wer_target,
                                const ThresholdConfig& cfg);

struct SweepRow {
    std::string label;
    std::string scheme;
    double overall_rate = 0.0;
    double wer_target = 0.0;
    double threshold_snr_db = 0.0;
    double threshold_snr_linear = 0.0;
    double c_of_s = 0.0;
    double beta = 0.0;
    std::string capacity_model;
    std::uint64_t trials = 0;
};

// beta at the measured threshold for every plan x WER target.
std::vector<SweepRow> efficiency_sweep(const std::vector<const TransmissionPlan*>& plans,
                                       const std::vector<double>& wer_targets,
                                       const ThresholdConfig& cfg,
                                       CapacityModel model = CapacityModel::Gaussian);

// CSV with `# key=value` provenance header lines; no timestamps, so output
// is a pure function of config + seed.
void write_provenance(std::ostream& out,
                      const std::vector<std::pair<std::string, std::string>>& items);
void write_wer_csv(std::ostream& out, const std::vector<WerPoint>& points,
                   const std::vector<std::pair<std::string, std::string>>& provenance);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::vector<std::pair<std::string, std::string>>& provenance);

std::string scheme_json(const RateAdaptScheme& scheme, std::uint32_t n, std::uint32_t k);

}  // namespace qcra
