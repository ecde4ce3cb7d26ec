#include "qcra/channel.hpp"

#include <array>
#include <cmath>
#include <random>

namespace qcra {

double db_from_linear(double s) { return 10.0 * std::log10(s); }
double linear_from_db(double db) { return std::pow(10.0, db / 10.0); }
double ChannelParams::snr_db() const { return db_from_linear(snr_linear); }

LlrVec transmit(const BitVec& codeword, const ChannelParams& params, std::uint64_t seed) {
    const double sigma2 = params.noise_variance();
    const double sigma = std::sqrt(sigma2);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    LlrVec llrs(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const double x = codeword[i] ? -1.0 : 1.0;
        const double y = x + noise(rng);
        llrs[i] = 2.0 * y / sigma2;
    }
    return llrs;
}

double capacity_gaussian(double s) {
    if (!(s > 0.0)) throw ArgumentError("SNR must be positive");
    return 0.5 * std::log2(1.0 + s);
}

namespace {

constexpr int kGhNodes = 63;

struct GhRule {
    std::array<double, kGhNodes> node, weight;
};

// Gauss-Hermite nodes/weights (weight e^{-t^2}) by Newton iteration on the
// Hermite recurrence, largest root inward.
GhRule build_gh_rule() {
    GhRule r{};
    const int n = kGhNodes;
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    double z = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(n, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * r.node[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * r.node[1];
        } else {
            z = 2.0 * z - r.node[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        r.node[i] = z;
        r.node[n - 1 - i] = -z;
        r.weight[i] = 2.0 / (pp * pp);
        r.weight[n - 1 - i] = r.weight[i];
    }
    return r;
}

// log2(1 + e^x), overflow safe
inline double log2_1p_exp(double x) {
    constexpr double inv_ln2 = 1.4426950408889634;
    if (x > 35.0) return x * inv_ln2;
    if (x < -45.0) return std::exp(x) * inv_ln2;
    return std::log1p(std::exp(x)) * inv_ln2;
}

}  // namespace

double capacity_bi_awgn(double s) {
    if (!(s > 0.0)) throw ArgumentError("SNR must be positive");
    static const GhRule gh = build_gh_rule();
    const double sigma = 1.0 / std::sqrt(s);
    const double sigma2 = sigma * sigma;
    // C = 1 - E_z[log2(1 + exp(-2(1 + sigma z)/sigma^2))], z ~ N(0,1);
    // z = sqrt(2) t under the e^{-t^2} weight.
    const double inv_sqrt_pi = 0.5641895835477563;
    double acc = 0.0;
    for (int i = 0; i < kGhNodes; ++i) {
        const double z = std::sqrt(2.0) * gh.node[i];
        acc += gh.weight[i] * log2_1p_exp(-2.0 * (1.0 + sigma * z) / sigma2);
    }
    return 1.0 - inv_sqrt_pi * acc;
}

std::string capacity_model_name(CapacityModel m) {
    return m == CapacityModel::Gaussian ? "gaussian" : "bi_awgn";
}

double capacity(double s, CapacityModel model) {
    return model == CapacityModel::Gaussian ? capacity_gaussian(s) : capacity_bi_awgn(s);
}

EfficiencyResult efficiency(double rate, double s, CapacityModel model,
                            double wer_at_measurement) {
    EfficiencyResult r;
    r.rate = rate;
    r.capacity_model = model;
    r.c_of_s = capacity(s, model);
    r.beta = rate / r.c_of_s;
    r.wer_at_measurement = wer_at_measurement;
    r.snr_at_measurement = s;
    return r;
}

}  // namespace qcra
