// Acceptance suite: ten independent criteria, one PASS/FAIL line each.
// Exits nonzero when any criterion fails. Several criteria run long
// Monte-Carlo campaigns at full code length; expect on the order of an
// hour on a single core.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcra/channel.hpp"
#include "qcra/circulant_table.hpp"
#include "qcra/code.hpp"
#include "qcra/common.hpp"
#include "qcra/cvqkd.hpp"
#include "qcra/decoder.hpp"
#include "qcra/encoder.hpp"
#include "qcra/harness.hpp"
#include "qcra/rate_adapt.hpp"

using namespace qcra;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    std::printf("[%2d] %s  %s\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

BitVec random_message(std::uint32_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitVec msg(k);
    for (std::uint32_t i = 0; i < k; ++i) msg[i] = static_cast<std::uint8_t>(rng() & 1);
    return msg;
}

std::string fmt(double x, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

// --- 1: structural reproduction of the builtin rate-1/10 code ---

void criterion1(const QcRaCode& code) {
    const CirculantTable& t = code.table();
    bool ok = code.n() == 64800 && code.k() == 6480 && code.m() == 58320 &&
              code.expansion_step() == 162 && t.groups.size() == 18;
    int w19 = 0, w3 = 0;
    for (const auto& g : t.groups) {
        if (g.size() == 19) ++w19;
        else if (g.size() == 3) ++w3;
    }
    ok = ok && w19 == 7 && w3 == 11 && code.h1_ones() == 59760;

    int clean = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        BitVec word = encode(code, random_message(code.k(), 1000 + i));
        if (syndrome_weight(code, word) == 0) ++clean;
    }
    ok = ok && clean == 1000;
    report(1, ok,
           "structure: N=" + std::to_string(code.n()) + " K=" + std::to_string(code.k()) +
               " M=" + std::to_string(code.m()) + " groups=18 (7x19 + 11x3) ones=" +
               std::to_string(code.h1_ones()) + "; encode round-trips " +
               std::to_string(clean) + "/1000 with zero syndrome");
}

// --- 2: noiseless decode in at most two iterations ---

void criterion2(const QcRaCode& code) {
    TannerGraph graph = TannerGraph::from_code(code);
    BpDecoder dec(graph);
    int good = 0, worst_iters = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        BitVec word = encode(code, random_message(code.k(), 2000 + i));
        LlrVec llrs(code.n());
        for (std::uint32_t j = 0; j < code.n(); ++j) llrs[j] = word[j] ? -25.0 : 25.0;
        DecodeResult res = dec.decode(llrs, 5);
        worst_iters = std::max(worst_iters, res.iterations_used);
        if (res.converged && res.iterations_used <= 2 && res.bits == word) ++good;
    }
    report(2, good == 100,
           "noiseless decode: " + std::to_string(good) +
               "/100 exact within 2 iterations (worst " + std::to_string(worst_iters) + ")");
}

// --- 3: waterfall bracket at s=0.5 and s=0.05, iteration cap 100 ---

void criterion3(const TransmissionPlan& base) {
    WerConfig cfg;
    cfg.max_iterations = 100;
    cfg.stop = {100000, 400};  // run all 400 trials
    cfg.seed = 3001;
    WerPoint high = estimate_wer(base, 0.5, cfg);

    cfg.stop = {100000, 200};
    cfg.seed = 3002;
    WerPoint low = estimate_wer(base, 0.05, cfg);
    const double detected_rate =
        static_cast<double>(low.word_errors - low.undetected_errors) / low.trials;

    bool ok = high.trials >= 200 && high.wer <= 0.01 && detected_rate >= 0.99;
    report(3, ok,
           "waterfall: WER(s=0.5)=" + fmt(high.wer) + " over " + std::to_string(high.trials) +
               " trials (cap 100); detected-failure rate(s=0.05)=" + fmt(detected_rate) +
               " over " + std::to_string(low.trials) + " trials");
}

// --- 4: efficiency of the base code at WER 0.1 ---

double criterion4(const TransmissionPlan& base) {
    ThresholdConfig cfg;
    cfg.wer.max_iterations = 300;
    cfg.wer.stop = {30, 500};
    cfg.wer.seed = 4001;
    cfg.tolerance_db = 0.05;
    cfg.snr_db_lo = -7.9;
    cfg.snr_db_hi = -7.1;

    ThresholdResult thr = find_snr_at_wer(base, 0.1, cfg);
    const double beta = base.overall_rate() / capacity_gaussian(thr.snr_linear);

    // CI of the bracket point nearest the interpolated threshold
    const WerPoint* nearest = &thr.bracket.front();
    for (const WerPoint& p : thr.bracket) {
        if (std::fabs(p.snr_linear - thr.snr_linear) <
            std::fabs(nearest->snr_linear - thr.snr_linear)) {
            nearest = &p;
        }
    }
    report(4, beta >= 0.80,
           "efficiency: WER-0.1 threshold s=" + fmt(thr.snr_linear) + " (" + fmt(thr.snr_db, 4) +
               " dB, cap 300), beta=" + fmt(beta, 4) +
               " [gaussian capacity model] >= 0.80; nearest bracket point WER=" +
               fmt(nearest->wer) + " CI [" + fmt(nearest->ci_low) + ", " + fmt(nearest->ci_high) +
               "] over " + std::to_string(nearest->trials) + " trials");
    return thr.snr_linear;
}

// --- 5: beta at WER 0.5 exceeds beta at WER 0.01 by >= 2 points ---

void criterion5(const TransmissionPlan& base) {
    ThresholdConfig half;
    half.wer.max_iterations = 300;
    half.wer.stop = {30, 120};
    half.wer.seed = 5001;
    half.tolerance_db = 0.08;
    half.snr_db_lo = -8.1;
    half.snr_db_hi = -7.3;
    ThresholdResult thr_half = find_snr_at_wer(base, 0.5, half);

    ThresholdConfig strict;
    strict.wer.max_iterations = 300;
    strict.wer.stop = {12, 1500};
    strict.wer.seed = 5002;
    strict.tolerance_db = 0.08;
    strict.snr_db_lo = -7.7;
    strict.snr_db_hi = -7.1;
    ThresholdResult thr_strict = find_snr_at_wer(base, 0.01, strict);

    const double rate = base.overall_rate();
    const double b_half = rate / capacity_gaussian(thr_half.snr_linear);
    const double b_strict = rate / capacity_gaussian(thr_strict.snr_linear);
    report(5, b_half - b_strict >= 0.02,
           "WER dependence: beta(WER 0.5)=" + fmt(b_half, 4) + " at " + fmt(thr_half.snr_db, 4) +
               " dB, beta(WER 0.01)=" + fmt(b_strict, 4) + " at " + fmt(thr_strict.snr_db, 4) +
               " dB, gap=" + fmt(100.0 * (b_half - b_strict), 3) + " pp >= 2 pp");
}

// --- 6: puncture/extend beats hop/repetition across an SNR grid ---

struct LadderEntry {
    RateAdaptScheme scheme;
    double guess_db;  // rough threshold guess to seed the bracket
};

void criterion6(const QcRaCode& code, double base_threshold_s) {
    const std::uint32_t n = code.n(), k = code.k();
    std::vector<LadderEntry> ladder;
    for (auto [p, db] : std::vector<std::pair<std::uint32_t, double>>{
             {38880, -2.6}, {24300, -4.9}, {12960, -6.2}}) {
        RateAdaptScheme s;
        s.kind = AdaptKind::Puncture;
        s.puncture_pattern = parity_puncture_pattern(n, k, p);
        ladder.push_back({s, db});
    }
    ladder.push_back({RateAdaptScheme{}, -7.5});  // the base code itself
    for (auto [m_e, db] : std::vector<std::pair<std::uint32_t, double>>{
             {25920, -8.8}, {64800, -10.4}}) {
        RateAdaptScheme s;
        s.kind = AdaptKind::Extend;
        s.extension_count = m_e;
        ladder.push_back({s, db});
    }

    const double margin = std::pow(10.0, 0.05);  // +0.5 dB operating margin
    bool ok = true;
    int strict_points = 0;
    std::ostringstream detail;
    std::uint64_t seed = 6001;

    for (std::size_t i = 0; i < ladder.size() && ok; ++i) {
        TransmissionPlan plan(code, ladder[i].scheme, "ladder" + std::to_string(i));
        ThresholdConfig cfg;
        cfg.wer.max_iterations = 150;
        cfg.wer.stop = {15, 150};
        cfg.wer.seed = seed++;
        cfg.tolerance_db = 0.2;
        cfg.snr_db_lo = ladder[i].guess_db - 1.0;
        cfg.snr_db_hi = ladder[i].guess_db + 1.5;
        ThresholdResult thr = find_snr_at_wer(plan, 0.1, cfg);

        const double s_grid = thr.snr_linear * margin;
        const double r_pe = plan.overall_rate();

        // hop/repetition alternative at the same grid SNR: smallest k whose
        // combined SNR clears the base-code threshold with the same margin
        std::uint32_t k_rep = 1;
        while (k_rep * s_grid < base_threshold_s * margin && k_rep < 16) ++k_rep;
        const double r_hr = plan.code().k() / static_cast<double>(plan.code().n()) / k_rep;

        WerConfig val;
        val.max_iterations = 150;
        val.stop = {100000, 400};
        val.seed = seed++;
        WerPoint pe = estimate_wer(plan, s_grid, val);

        RateAdaptScheme rep;
        if (k_rep > 1) {
            rep.kind = AdaptKind::Repeat;
            rep.repeat_factor = k_rep;
        }
        TransmissionPlan hr_plan(code, rep, "hop-rep");
        val.seed = seed++;
        WerPoint hr = estimate_wer(hr_plan, s_grid, val);

        const double cap = capacity_gaussian(s_grid);
        const double beta_pe = r_pe / cap, beta_hr = r_hr / cap;
        const bool strict = r_pe > r_hr;
        if (strict) ++strict_points;

        // feasibility at 95%: the puncture/extend point must hold its WER
        // below target with its whole Wilson interval when it claims a rate
        // the hop/repetition family cannot reach
        bool point_ok = beta_pe >= beta_hr && pe.wer <= 0.1 && hr.wer <= 0.1;
        if (strict) point_ok = point_ok && pe.ci_high <= 0.1;
        ok = ok && point_ok;
        detail << (i ? ", " : "") << "s=" << fmt(s_grid, 3) << ":" << fmt(beta_pe, 3)
               << (strict ? ">" : ">=") << fmt(beta_hr, 3);
    }
    report(6, ok && strict_points >= 1,
           "rate adaptation: puncture/extend beta >= hop/repetition beta at every grid point "
           "(" + detail.str() + ")");
}

// --- 7: k=2 repetition at s matches direct transmission at 2s ---

void criterion7(const QcRaCode& code) {
    const double s = 0.09;
    RateAdaptScheme rep;
    rep.kind = AdaptKind::Repeat;
    rep.repeat_factor = 2;
    TransmissionPlan repeated(code, rep, "rep2");
    TransmissionPlan direct(code, {}, "direct");

    WerConfig cfg;
    cfg.max_iterations = 150;
    cfg.stop = {1000000, 600};
    cfg.seed = 7001;
    WerPoint a = estimate_wer(repeated, s, cfg);
    cfg.seed = 7002;
    WerPoint b = estimate_wer(direct, 2.0 * s, cfg);

    const bool overlap = a.ci_low <= b.ci_high && b.ci_low <= a.ci_high;
    report(7, overlap && a.trials >= 500 && b.trials >= 500,
           "repetition equivalence: k=2 at s=" + fmt(s) + " WER=" + fmt(a.wer) + " CI [" +
               fmt(a.ci_low) + ", " + fmt(a.ci_high) + "], direct at 2s WER=" + fmt(b.wer) +
               " CI [" + fmt(b.ci_low) + ", " + fmt(b.ci_high) + "], " +
               std::to_string(a.trials) + "+" + std::to_string(b.trials) + " trials, intervals " +
               (overlap ? "overlap" : "disjoint"));
}

// --- 8: key-rate curve shape and ordering ---

void criterion8() {
    CvqkdParams tmpl;
    tmpl.excess_noise = 0.01;
    tmpl.detector_efficiency = 0.6;
    tmpl.electronic_noise = 0.01;
    tmpl.attenuation_db_per_km = 0.2;

    auto profile = [](const std::string& label, double rate) {
        CodeProfile p;
        p.label = label;
        p.rate = rate;
        p.beta = 0.85;
        p.operating_snr = std::pow(2.0, 2.0 * rate / p.beta) - 1.0;
        p.p_fail = 0.1;
        return p;
    };

    std::vector<double> distances;
    for (double d = 1.0; d <= 220.0; d += 1.0) distances.push_back(d);

    auto curve10 = key_rate_vs_distance(profile("r1_10", 0.1), tmpl, distances);
    auto curve2 = key_rate_vs_distance(profile("r1_2", 0.5), tmpl, distances);

    auto max_positive = [](const std::vector<KeyRatePoint>& c) {
        double best = 0.0;
        for (const auto& p : c) {
            if (p.feasible && p.delta_i > 0.0) best = std::max(best, p.distance_km);
        }
        return best;
    };
    const double reach10 = max_positive(curve10);
    const double reach2 = max_positive(curve2);

    bool monotone = true, identity = true;
    const KeyRatePoint* prev = nullptr;
    for (const auto& p : curve10) {
        if (!p.feasible) continue;
        if (prev && p.delta_i > prev->delta_i + 1e-12) monotone = false;
        prev = &p;
        CvqkdParams at = tmpl;
        at.transmission = p.transmission;
        at.modulation_variance = p.modulation_variance;
        const double expect = (p.beta * mutual_information_ab(at) - holevo_bound(at)) *
                              (1.0 - p.p_fail);
        if (std::fabs(expect - p.delta_i) > 1e-12) identity = false;
    }

    report(8, reach10 > reach2 && reach10 > 0.0 && monotone && identity,
           "key rate: rate-1/10 reach " + fmt(reach10, 4) + " km > rate-1/2 reach " +
               fmt(reach2, 4) + " km; delta-I non-increasing " + (monotone ? "yes" : "NO") +
               "; identity on all points " + (identity ? "yes" : "NO"));
}

// --- 9: worker count never changes the CSV body ---

void criterion9(const TransmissionPlan& base) {
    WerConfig cfg;
    cfg.max_iterations = 100;
    cfg.stop = {10, 80};
    cfg.seed = 9001;

    std::vector<std::string> bodies;
    for (int workers : {1, 3, 6}) {
        cfg.workers = workers;
        WerPoint p = estimate_wer(base, 0.19, cfg);
        std::ostringstream out;
        write_wer_csv(out, {p}, {{"seed", "9001"}, {"code", "builtin:r1_10"}});
        bodies.push_back(out.str());
    }
    const bool same = bodies[0] == bodies[1] && bodies[0] == bodies[2];
    report(9, same, std::string("determinism: CSV byte-identical for workers {1, 3, 6}: ") +
                        (same ? "yes" : "NO"));
}

// --- 10: capacity oracles ---

double mc_capacity_bi_awgn(double s, std::uint64_t seed) {
    const double sigma = 1.0 / std::sqrt(s);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    const std::uint64_t samples = 6000000;
    double acc = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double llr = 2.0 * s * (1.0 + noise(rng));
        acc += llr > 40.0 ? 0.0 : std::log2(1.0 + std::exp(-llr));
    }
    return 1.0 - acc / samples;
}

void criterion10() {
    bool ok = capacity_gaussian(1.0) == 0.5;
    double worst = 0.0;
    const double grid[] = {0.05, 0.1, 0.2, 0.5, 1.0, 2.0};
    for (int i = 0; i < 6; ++i) {
        const double s = grid[i];
        const double quad = capacity_bi_awgn(s);
        const double mc = mc_capacity_bi_awgn(s, 101 + i);
        worst = std::max(worst, std::fabs(quad - mc));
        ok = ok && std::fabs(quad - mc) <= 1e-3;
        ok = ok && quad <= std::min(1.0, capacity_gaussian(s)) + 1e-12;
    }
    report(10, ok,
           "capacity: gaussian(1)=0.5 exact; BI-AWGN vs Monte-Carlo oracle worst |diff|=" +
               fmt(worst, 3) + " <= 1e-3; BI-AWGN <= min(1, gaussian) on the grid");
}

}  // namespace

int main(int argc, char** argv) {
    // optional args: criterion numbers to run (default: all ten)
    std::vector<bool> wanted(11, argc <= 1);
    for (int i = 1; i < argc; ++i) {
        const int c = std::atoi(argv[i]);
        if (c >= 1 && c <= 10) wanted[c] = true;
    }

    QcRaCode code(builtin_rate_one_tenth());
    TransmissionPlan base(code, {}, "builtin:r1_10");

    if (wanted[1]) criterion1(code);
    if (wanted[2]) criterion2(code);
    if (wanted[3]) criterion3(base);
    double base_threshold_s = 0.178;  // replaced by the measured value below
    if (wanted[4]) base_threshold_s = criterion4(base);
    if (wanted[5]) criterion5(base);
    if (wanted[6]) criterion6(code, base_threshold_s);
    if (wanted[7]) criterion7(code);
    if (wanted[8]) criterion8();
    if (wanted[9]) criterion9(base);
    if (wanted[10]) criterion10();

    if (g_failures == 0) {
        std::printf(argc <= 1 ? "acceptance: all 10 criteria passed\n"
                              : "acceptance: selected criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
