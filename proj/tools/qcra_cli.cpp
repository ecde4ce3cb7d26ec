// Command-line front end: code inspection, encode/decode on bit files, WER
// simulation, efficiency sweeps and CVQKD key-rate curves. CSV/JSON outputs
// carry a provenance header and are a pure function of config + seed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qcra/cvqkd.hpp"
#include "qcra/encoder.hpp"
#include "qcra/harness.hpp"

using namespace qcra;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

CirculantTable resolve_table(const std::string& spec) {
    if (spec == "builtin:r1_10") return builtin_rate_one_tenth();
    std::filesystem::path p(spec);
    if (!std::filesystem::exists(p)) {
        if (const char* dir = std::getenv("QCRA_CONFIG_DIR")) {
            std::filesystem::path alt = std::filesystem::path(dir) / p;
            if (std::filesystem::exists(alt)) p = alt;
        }
    }
    return load_circulant_table(p.string());
}

// Packed bit files: LSB-first within each byte, bit count in a sidecar
// <path>.json so trailing pad bits are unambiguous.
void write_bits(const std::string& path, const BitVec& bits) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot write " + path);
    std::uint8_t byte = 0;
    int fill = 0;
    for (std::uint8_t b : bits) {
        byte |= static_cast<std::uint8_t>((b & 1) << fill);
        if (++fill == 8) {
            f.put(static_cast<char>(byte));
            byte = 0;
            fill = 0;
        }
    }
    if (fill) f.put(static_cast<char>(byte));
    std::ofstream side(path + ".json");
    side << json{{"bits", bits.size()}}.dump() << "\n";
}

BitVec read_bits(const std::string& path) {
    std::ifstream side(path + ".json");
    if (!side) throw ArgumentError("missing sidecar " + path + ".json");
    json j = json::parse(side);
    const std::size_t count = j.at("bits").get<std::size_t>();
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot read " + path);
    BitVec bits;
    bits.reserve(count);
    char c;
    while (bits.size() < count && f.get(c)) {
        const auto byte = static_cast<std::uint8_t>(c);
        for (int i = 0; i < 8 && bits.size() < count; ++i) {
            bits.push_back((byte >> i) & 1u);
        }
    }
    if (bits.size() != count) throw ArgumentError("bit file shorter than sidecar count");
    return bits;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot write " + path);
    return f;
}

struct SchemeFlags {
    std::uint32_t puncture = 0;
    std::uint32_t extend = 0;
    std::uint32_t repeat = 1;

    RateAdaptScheme build(const QcRaCode& code) const {
        int set = (puncture > 0) + (extend > 0) + (repeat > 1);
        if (set > 1) throw ArgumentError("at most one of --puncture/--extend/--repeat");
        RateAdaptScheme s;
        if (puncture > 0) {
            s.kind = AdaptKind::Puncture;
            s.puncture_pattern = parity_puncture_pattern(code, puncture);
        } else if (extend > 0) {
            s.kind = AdaptKind::Extend;
            s.extension_count = extend;
        } else if (repeat > 1) {
            s.kind = AdaptKind::Repeat;
            s.repeat_factor = repeat;
        }
        return s;
    }
};

// Flags override config-file values; the merged config is echoed into the
// output provenance.
template <typename T>
void from_config(const json& cfg, const char* key, T& value, const CLI::Option* opt) {
    if (cfg.contains(key) && opt->count() == 0) value = cfg.at(key).get<T>();
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot open config " + path);
    return json::parse(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-cyclic repeat-accumulate code toolkit"};
    app.require_subcommand(1);

    std::string code_spec = "builtin:r1_10";
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    int max_iter = 100;
    int workers = 1;
    std::string variant_name_flag = "sum-product";
    SchemeFlags scheme_flags;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--code", code_spec, "table path or builtin:r1_10");
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
        cmd->add_option("--seed", seed, "master RNG seed");
        cmd->add_option("--max-iter", max_iter, "decoder iteration cap");
        cmd->add_option("--workers", workers, "worker threads (results are worker-independent)");
        cmd->add_option("--variant", variant_name_flag, "sum-product | min-sum");
        cmd->add_option("--out", out_path, "output file");
    };

    auto add_scheme = [&](CLI::App* cmd) {
        cmd->add_option("--puncture", scheme_flags.puncture, "puncture this many parity bits");
        cmd->add_option("--extend", scheme_flags.extend, "append this many weight-2 checks");
        cmd->add_option("--repeat", scheme_flags.repeat, "repetition factor k >= 2");
    };

    // build-code
    auto* cmd_build = app.add_subcommand("build-code", "load, validate and summarize a code");
    add_common(cmd_build);

    // encode
    auto* cmd_encode = app.add_subcommand("encode", "encode a packed message bit file");
    std::string in_path;
    add_common(cmd_encode);
    cmd_encode->add_option("--in", in_path, "message bit file (with .json sidecar)")->required();

    // decode
    auto* cmd_decode = app.add_subcommand("decode", "decode a text file of per-bit LLRs");
    std::string llr_path;
    add_common(cmd_decode);
    cmd_decode->add_option("--llrs", llr_path, "LLR file, one value per line")->required();

    // simulate
    auto* cmd_sim = app.add_subcommand("simulate", "WER point or threshold search");
    double snr_db = 0.0;
    double wer_target = 0.0;
    std::uint64_t min_errors = 50, max_trials = 10000;
    double tolerance_db = 0.05;
    add_common(cmd_sim);
    add_scheme(cmd_sim);
    auto* opt_snr = cmd_sim->add_option("--snr-db", snr_db, "channel SNR in dB");
    auto* opt_target =
        cmd_sim->add_option("--wer-target", wer_target, "search the SNR at this WER instead");
    cmd_sim->add_option("--min-errors", min_errors, "stop rule: error count");
    cmd_sim->add_option("--max-trials", max_trials, "stop rule: trial cap");
    cmd_sim->add_option("--tolerance-db", tolerance_db, "threshold bracket width");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "efficiency vs WER targets");
    std::vector<double> wer_targets{0.5, 0.1, 0.01, 0.001};
    std::vector<std::uint32_t> sweep_extend, sweep_puncture;
    add_common(cmd_sweep);
    cmd_sweep->add_option("--wer-targets", wer_targets, "WER targets");
    cmd_sweep->add_option("--extend-counts", sweep_extend, "also sweep these extensions");
    cmd_sweep->add_option("--puncture-counts", sweep_puncture, "also sweep these puncture sizes");
    cmd_sweep->add_option("--min-errors", min_errors, "stop rule: error count");
    cmd_sweep->add_option("--max-trials", max_trials, "stop rule: trial cap");
    cmd_sweep->add_option("--tolerance-db", tolerance_db, "threshold bracket width");

    // keyrate
    auto* cmd_key = app.add_subcommand("keyrate", "secret key rate vs distance");
    double vel = 0.01, eps = 0.01, eta = 0.6, atten = 0.2;
    double profile_rate = 0.1, profile_snr_db = -7.5, profile_beta = 0.85, profile_pfail = 0.1;
    double dist_max = 80.0, dist_step = 1.0;
    add_common(cmd_key);
    auto* o_eps = cmd_key->add_option("--excess-noise", eps, "channel excess noise (SNU)");
    auto* o_eta = cmd_key->add_option("--detector-efficiency", eta, "homodyne efficiency");
    auto* o_vel = cmd_key->add_option("--electronic-noise", vel, "electronic noise (SNU)");
    auto* o_att = cmd_key->add_option("--attenuation", atten, "dB per km");
    auto* o_rate = cmd_key->add_option("--rate", profile_rate, "code profile: overall rate");
    auto* o_psnr = cmd_key->add_option("--operating-snr-db", profile_snr_db,
                                       "code profile: operating SNR (dB)");
    auto* o_beta = cmd_key->add_option("--beta", profile_beta, "code profile: efficiency");
    auto* o_pfail = cmd_key->add_option("--p-fail", profile_pfail, "code profile: WER");
    cmd_key->add_option("--distance-max", dist_max, "km");
    cmd_key->add_option("--distance-step", dist_step, "km");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
    }

    try {
        const json cfg = load_config(config_path);
        const BpVariant variant =
            variant_name_flag == "min-sum" ? BpVariant::MinSumScaled : BpVariant::SumProduct;

        if (*cmd_build) {
            CirculantTable table = resolve_table(code_spec);
            QcRaCode code(table);
            std::map<std::size_t, int> weights;
            for (const auto& g : table.groups) ++weights[g.size()];
            std::cout << "N=" << code.n() << " K=" << code.k() << " M=" << code.m()
                      << " groups=" << table.groups.size() << "\n";
            std::cout << "h1_ones=" << code.h1_ones() << " density="
                      << double(code.h1_ones()) / (double(code.m()) * code.k()) << "\n";
            std::cout << "column_weights:";
            for (auto [w, c] : weights) std::cout << " " << w << "x" << c * 360;
            std::cout << "\nexpansion_step_q=" << code.expansion_step() << "\n";
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                if (!f) throw ArgumentError("cannot open " + out_path);
                f << serialize_circulant_table(table);
            }
            return kExitOk;
        }

        if (*cmd_encode) {
            QcRaCode code(resolve_table(code_spec));
            BitVec msg = read_bits(in_path);
            BitVec word = encode(code, msg);
            if (out_path.empty()) throw ArgumentError("--out required for encode");
            write_bits(out_path, word);
            std::cout << "encoded " << msg.size() << " -> " << word.size()
                      << " bits, syndrome_weight=" << syndrome_weight(code, word) << "\n";
            return kExitOk;
        }

        if (*cmd_decode) {
            QcRaCode code(resolve_table(code_spec));
            std::ifstream f(llr_path);
            if (!f) throw ArgumentError("cannot open " + llr_path);
            LlrVec llrs;
            double v;
            while (f >> v) llrs.push_back(v);
            DecodeResult res = decode(code, llrs, max_iter, variant);
            std::cout << (res.converged ? "converged" : "detected-failure")
                      << " iterations=" << res.iterations_used << "\n";
            if (!out_path.empty()) write_bits(out_path, res.bits);
            return res.converged ? kExitOk : kExitInfeasible;
        }

        if (*cmd_sim) {
            QcRaCode code(resolve_table(code_spec));
            TransmissionPlan plan(code, scheme_flags.build(code), code_spec);
            WerConfig wcfg;
            wcfg.max_iterations = max_iter;
            wcfg.stop = {min_errors, max_trials};
            wcfg.variant = variant;
            wcfg.seed = seed;
            wcfg.workers = workers;
            std::vector<std::pair<std::string, std::string>> prov{
                {"code", code_spec},
                {"scheme", plan.scheme().describe()},
                {"scheme_json", scheme_json(plan.scheme(), code.n(), code.k())},
                {"variant", variant_name(variant)},
                {"max_iter", std::to_string(max_iter)},
                {"seed", std::to_string(seed)},
                {"min_errors", std::to_string(min_errors)},
                {"max_trials", std::to_string(max_trials)},
            };
            std::ostringstream body;
            if (opt_target->count() > 0) {
                ThresholdConfig tcfg;
                tcfg.wer = wcfg;
                tcfg.tolerance_db = tolerance_db;
                if (opt_snr->count() > 0) {
                    tcfg.snr_db_lo = snr_db - 2.0;
                    tcfg.snr_db_hi = snr_db + 2.0;
                }
                ThresholdResult thr = find_snr_at_wer(plan, wer_target, tcfg);
                prov.push_back({"wer_target", std::to_string(wer_target)});
                prov.push_back({"threshold_snr_db", std::to_string(thr.snr_db)});
                write_wer_csv(body, thr.bracket, prov);
            } else {
                if (opt_snr->count() == 0) throw ArgumentError("--snr-db or --wer-target needed");
                WerPoint p = estimate_wer(plan, linear_from_db(snr_db), wcfg);
                write_wer_csv(body, {p}, prov);
            }
            if (out_path.empty()) {
                std::cout << body.str();
            } else {
                open_out(out_path) << body.str();
            }
            return kExitOk;
        }

        if (*cmd_sweep) {
            QcRaCode code(resolve_table(code_spec));
            std::vector<TransmissionPlan> plans;
            plans.emplace_back(code, RateAdaptScheme{}, code_spec);
            for (std::uint32_t m_e : sweep_extend) {
                RateAdaptScheme s;
                s.kind = AdaptKind::Extend;
                s.extension_count = m_e;
                plans.emplace_back(code, s, code_spec);
            }
            for (std::uint32_t p : sweep_puncture) {
                RateAdaptScheme s;
                s.kind = AdaptKind::Puncture;
                s.puncture_pattern = parity_puncture_pattern(code, p);
                plans.emplace_back(code, s, code_spec);
            }
            std::vector<const TransmissionPlan*> ptrs;
            for (const auto& p : plans) ptrs.push_back(&p);
            ThresholdConfig tcfg;
            tcfg.wer.max_iterations = max_iter;
            tcfg.wer.stop = {min_errors, max_trials};
            tcfg.wer.variant = variant;
            tcfg.wer.seed = seed;
            tcfg.wer.workers = workers;
            tcfg.tolerance_db = tolerance_db;
            auto rows = efficiency_sweep(ptrs, wer_targets, tcfg);
            std::ostringstream body;
            write_sweep_csv(body, rows,
                            {{"code", code_spec},
                             {"variant", variant_name(variant)},
                             {"max_iter", std::to_string(max_iter)},
                             {"seed", std::to_string(seed)}});
            if (out_path.empty()) {
                std::cout << body.str();
            } else {
                open_out(out_path) << body.str();
            }
            return kExitOk;
        }

        if (*cmd_key) {
            CvqkdParams params;
            from_config(cfg, "excess_noise", eps, o_eps);
            from_config(cfg, "detector_efficiency", eta, o_eta);
            from_config(cfg, "electronic_noise", vel, o_vel);
            from_config(cfg, "attenuation_db_per_km", atten, o_att);
            from_config(cfg, "rate", profile_rate, o_rate);
            from_config(cfg, "operating_snr_db", profile_snr_db, o_psnr);
            from_config(cfg, "beta", profile_beta, o_beta);
            from_config(cfg, "p_fail", profile_pfail, o_pfail);
            params.excess_noise = eps;
            params.detector_efficiency = eta;
            params.electronic_noise = vel;
            params.attenuation_db_per_km = atten;
            params.validate();

            CodeProfile profile;
            profile.label = "rate_" + std::to_string(profile_rate);
            profile.rate = profile_rate;
            profile.operating_snr = linear_from_db(profile_snr_db);
            profile.beta = profile_beta;
            profile.p_fail = profile_pfail;

            std::vector<double> grid;
            for (double d = dist_step; d <= dist_max + 1e-9; d += dist_step) grid.push_back(d);
            auto curve = key_rate_vs_distance(profile, params, grid);
            std::ostringstream body;
            write_keyrate_csv(body, profile.label, curve,
                              {{"excess_noise", std::to_string(eps)},
                               {"detector_efficiency", std::to_string(eta)},
                               {"electronic_noise", std::to_string(vel)},
                               {"attenuation_db_per_km", std::to_string(atten)},
                               {"beta", std::to_string(profile_beta)},
                               {"p_fail", std::to_string(profile_pfail)},
                               {"operating_snr_db", std::to_string(profile_snr_db)}});
            if (out_path.empty()) {
                std::cout << body.str();
            } else {
                open_out(out_path) << body.str();
            }
            return kExitOk;
        }
    } catch (const StructureError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
