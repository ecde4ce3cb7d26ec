#include "qcra/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "qcra/encoder.hpp"

#include "json.hpp"

namespace qcra {

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    // zero or all errors: one-sided bound at the same confidence level
    if (errors == 0 || errors == trials) z = 1.6448536269514722;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    double lo = center - half, hi = center + half;
    if (errors == 0) lo = 0.0;
    if (errors == trials) hi = 1.0;
    return {std::max(0.0, lo), std::min(1.0, hi)};
}

TransmissionPlan::TransmissionPlan(const QcRaCode& code, RateAdaptScheme scheme,
                                   std::string label)
    : code_(&code), scheme_(std::move(scheme)), label_(std::move(label)) {
    for (std::uint32_t pos : scheme_.puncture_pattern) {
        if (pos >= code.n()) throw ArgumentError("puncture position out of range");
    }
    if (scheme_.kind == AdaptKind::Extend) {
        extended_.emplace(code, scheme_.extension_count);
        graph_ = extended_->graph();
    } else {
        graph_ = TannerGraph::from_code(code);
    }
    if (scheme_.kind == AdaptKind::Repeat && scheme_.repeat_factor < 2) {
        throw ArgumentError("repeat factor must be >= 2");
    }
}

std::uint64_t TransmissionPlan::transmitted_bits() const {
    switch (scheme_.kind) {
        case AdaptKind::Hop: return code_->n();
        case AdaptKind::Puncture: return code_->n() - scheme_.puncture_pattern.size();
        case AdaptKind::Extend: return std::uint64_t(code_->n()) + scheme_.extension_count;
        case AdaptKind::Repeat: return std::uint64_t(code_->n()) * scheme_.repeat_factor;
    }
    return code_->n();
}

TransmissionPlan::TrialOutcome TransmissionPlan::run_trial(double snr_linear, int max_iterations,
                                                           BpVariant variant, std::uint64_t seed,
                                                           BpDecoder& decoder) const {
    std::mt19937_64 msg_rng(splitmix64(seed ^ 0xa5a5a5a5ull));
    BitVec message(code_->k());
    for (auto& b : message) b = static_cast<std::uint8_t>(msg_rng() & 1u);

    const ChannelParams params(snr_linear);
    BitVec word;
    LlrVec llrs;
    switch (scheme_.kind) {
        case AdaptKind::Hop:
            word = encode(*code_, message);
            llrs = transmit(word, params, splitmix64(seed ^ 0x7ull));
            break;
        case AdaptKind::Puncture:
            word = encode(*code_, message);
            llrs = puncture_llrs(transmit(word, params, splitmix64(seed ^ 0x7ull)),
                                 scheme_.puncture_pattern);
            break;
        case AdaptKind::Extend:
            word = extended_->encode(message);
            llrs = transmit(word, params, splitmix64(seed ^ 0x7ull));
            break;
        case AdaptKind::Repeat: {
            word = encode(*code_, message);
            std::vector<LlrVec> obs;
            obs.reserve(scheme_.repeat_factor);
            for (std::uint32_t r = 0; r < scheme_.repeat_factor; ++r) {
                obs.push_back(transmit(word, params, splitmix64(seed ^ (0x7ull + r))));
            }
            llrs = combine_repeated_llrs(obs);
            break;
        }
    }

    DecodeResult res = decoder.decode(llrs, max_iterations, variant);
    TrialOutcome out;
    out.iterations = res.iterations_used;
    if (!res.converged) {
        out.failure = true;
    } else if (res.bits != word) {
        out.failure = true;
        out.undetected = true;
    }
    return out;
}

WerPoint estimate_wer(const TransmissionPlan& plan, double snr_linear, const WerConfig& cfg) {
    if (!(snr_linear > 0.0)) throw ArgumentError("SNR must be positive");
    const int workers = std::max(1, cfg.workers);
    constexpr std::uint64_t kBlock = 64;

    std::vector<TransmissionPlan::TrialOutcome> outcomes;
    outcomes.reserve(std::min<std::uint64_t>(cfg.stop.max_trials, 4 * kBlock));

    std::uint64_t counted = 0, errors = 0, undetected = 0;
    std::uint64_t iter_sum = 0;
    std::uint64_t next = 0;
    bool stopped = false;
    while (!stopped && next < cfg.stop.max_trials) {
        const std::uint64_t block_end = std::min<std::uint64_t>(next + kBlock, cfg.stop.max_trials);
        outcomes.resize(block_end - next);
        auto run_range = [&](std::uint64_t stride_start) {
            BpDecoder decoder(plan.graph());
            for (std::uint64_t i = next + stride_start; i < block_end;
                 i += static_cast<std::uint64_t>(workers)) {
                outcomes[i - next] = plan.run_trial(snr_linear, cfg.max_iterations, cfg.variant,
                                                    trial_seed(cfg.seed, i), decoder);
            }
        };
        if (workers == 1) {
            run_range(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(run_range, std::uint64_t(w));
            for (auto& t : pool) t.join();
        }
        // Count sequentially so the stopping trial index is a pure function
        // of the seed, independent of worker count.
        for (std::uint64_t i = next; i < block_end; ++i) {
            const auto& o = outcomes[i - next];
            ++counted;
            iter_sum += static_cast<std::uint64_t>(o.iterations);
            if (o.failure) {
                ++errors;
                undetected += o.undetected ? 1 : 0;
                if (errors >= cfg.stop.min_errors) {
                    stopped = true;
                    break;
                }
            }
        }
        next = block_end;
    }

    WerPoint p;
    p.snr_linear = snr_linear;
    p.trials = counted;
    p.word_errors = errors;
    p.undetected_errors = undetected;
    p.wer = counted ? double(errors) / double(counted) : 0.0;
    std::tie(p.ci_low, p.ci_high) = wilson_interval(errors, counted);
    p.max_iterations = cfg.max_iterations;
    p.decoder_variant = variant_name(cfg.variant);
    p.seed = cfg.seed;
    p.avg_iterations = counted ? double(iter_sum) / double(counted) : 0.0;
    return p;
}

namespace {

double log_wer(const WerPoint& p) {
    const double w = std::max(p.wer, 0.5 / std::max<std::uint64_t>(p.trials, 1));
    return std::log(w);
}

}  // namespace

ThresholdResult find_snr_at_wer(const TransmissionPlan& plan, double wer_target,
                                const ThresholdConfig& cfg) {
    if (!(wer_target > 0.0 && wer_target < 1.0)) throw ArgumentError("WER target in (0,1)");

    auto eval = [&](double db) { return estimate_wer(plan, linear_from_db(db), cfg.wer); };

    double lo_db = cfg.snr_db_lo, hi_db = cfg.snr_db_hi;
    WerPoint lo = eval(lo_db);
    // expand downward until WER exceeds the target at the low edge
    while (lo.wer <= wer_target) {
        lo_db -= 1.0;
        if (lo_db < cfg.snr_db_min) throw StructureError("no SNR bracket below target WER");
        lo = eval(lo_db);
    }
    WerPoint hi = eval(hi_db);
    while (hi.wer > wer_target) {
        hi_db += 1.0;
        if (hi_db > cfg.snr_db_max) throw StructureError("no SNR bracket above target WER");
        hi = eval(hi_db);
    }

    std::vector<WerPoint> points{lo, hi};
    while (hi_db - lo_db > cfg.tolerance_db) {
        const double mid_db = 0.5 * (lo_db + hi_db);
        WerPoint mid = eval(mid_db);
        points.push_back(mid);
        if (mid.wer > wer_target) {
            lo_db = mid_db;
            lo = mid;
        } else {
            hi_db = mid_db;
            hi = mid;
        }
    }

    // log-WER is near-linear in dB through the waterfall
    const double llo = log_wer(lo), lhi = log_wer(hi), lt = std::log(wer_target);
    double t = (llo == lhi) ? 0.5 : (lt - llo) / (lhi - llo);
    t = std::clamp(t, 0.0, 1.0);
    ThresholdResult r;
    r.wer_target = wer_target;
    r.snr_db = lo_db + t * (hi_db - lo_db);
    r.snr_linear = linear_from_db(r.snr_db);
    std::sort(points.begin(), points.end(),
              [](const WerPoint& a, const WerPoint& b) { return a.snr_linear < b.snr_linear; });
    r.bracket = std::move(points);
    return r;
}

std::vector<SweepRow> efficiency_sweep(const std::vector<const TransmissionPlan*>& plans,
                                       const std::vector<double>& wer_targets,
                                       const ThresholdConfig& cfg, CapacityModel model) {
    std::vector<SweepRow> rows;
    for (const TransmissionPlan* plan : plans) {
        for (double target : wer_targets) {
            ThresholdResult thr = find_snr_at_wer(*plan, target, cfg);
            std::uint64_t trials = 0;
            for (const auto& p : thr.bracket) trials += p.trials;
            SweepRow row;
            row.label = plan->label();
            row.scheme = plan->scheme().describe();
            row.overall_rate = plan->overall_rate();
            row.wer_target = target;
            row.threshold_snr_db = thr.snr_db;
            row.threshold_snr_linear = thr.snr_linear;
            row.c_of_s = capacity(thr.snr_linear, model);
            row.beta = row.overall_rate / row.c_of_s;
            row.capacity_model = capacity_model_name(model);
            row.trials = trials;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_provenance(std::ostream& out,
                      const std::vector<std::pair<std::string, std::string>>& items) {
    std::string blob;
    for (const auto& [k, v] : items) blob += k + "=" + v + ";";
    out << "# provenance_hash=" << std::hex << fnv1a(blob) << std::dec << "\n";
    for (const auto& [k, v] : items) out << "# " << k << "=" << v << "\n";
}

void write_wer_csv(std::ostream& out, const std::vector<WerPoint>& points,
                   const std::vector<std::pair<std::string, std::string>>& provenance) {
    write_provenance(out, provenance);
    out << "snr_linear,snr_db,trials,word_errors,undetected_errors,wer,wilson_low,wilson_high,"
           "max_iterations,avg_iterations,decoder_variant,seed\n";
    for (const auto& p : points) {
        out << p.snr_linear << ',' << db_from_linear(p.snr_linear) << ',' << p.trials << ','
            << p.word_errors << ',' << p.undetected_errors << ',' << p.wer << ',' << p.ci_low
            << ',' << p.ci_high << ',' << p.max_iterations << ',' << p.avg_iterations << ','
            << p.decoder_variant << ',' << p.seed << "\n";
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::vector<std::pair<std::string, std::string>>& provenance) {
    write_provenance(out, provenance);
    out << "label,scheme,overall_rate,wer_target,threshold_snr_db,threshold_snr_linear,"
           "capacity,beta,capacity_model,trials\n";
    for (const auto& r : rows) {
        out << r.label << ',' << r.scheme << ',' << r.overall_rate << ',' << r.wer_target << ','
            << r.threshold_snr_db << ',' << r.threshold_snr_linear << ',' << r.c_of_s << ','
            << r.beta << ',' << r.capacity_model << ',' << r.trials << "\n";
    }
}

std::string scheme_json(const RateAdaptScheme& scheme, std::uint32_t n, std::uint32_t k) {
    nlohmann::json j;
    j["kind"] = adapt_kind_name(scheme.kind);
    auto [num, den] = scheme.overall_rate_fraction(n, k);
    j["overall_rate"] = {{"num", num}, {"den", den}};
    switch (scheme.kind) {
        case AdaptKind::Puncture:
            j["puncture_count"] = scheme.puncture_pattern.size();
            break;
        case AdaptKind::Extend:
            j["extension_count"] = scheme.extension_count;
            break;
        case AdaptKind::Repeat:
            j["repeat_factor"] = scheme.repeat_factor;
            break;
        case AdaptKind::Hop:
            break;
    }
    return j.dump();
}

}  // namespace qcra
