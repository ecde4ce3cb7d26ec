#pragma once

#include <cstdint>
#include <string>

#include "qcra/common.hpp"

namespace qcra {

// Unit-energy BPSK over AWGN: s = 1/sigma^2, per symbol.
struct ChannelParams {
    double snr_linear;

    explicit ChannelParams(double s) : snr_linear(s) {
        if (!(s > 0.0)) throw ArgumentError("SNR must be positive");
    }
    double noise_variance() const { return 1.0 / snr_linear; }
    double snr_db() const;
};

double db_from_linear(double s);
double linear_from_db(double db);

// BPSK-maps bits (0 -> +1), adds Gaussian noise, returns channel LLRs
// 2y/sigma^2. Deterministic given the seed.
LlrVec transmit(const BitVec& codeword, const ChannelParams& params, std::uint64_t seed);

// Shannon capacity of the AWGN channel with Gaussian input, 0.5*log2(1+s).
double capacity_gaussian(double s);

// Mutual information of BPSK over AWGN at SNR s; 63-node Gauss-Hermite
// quadrature, absolute error below 1e-6 over the SNRs of interest.
double capacity_bi_awgn(double s);

enum class CapacityModel { Gaussian, BiAwgn };

std::string capacity_model_name(CapacityModel m);
double capacity(double s, CapacityModel model);

struct EfficiencyResult {
    double rate;
    CapacityModel capacity_model;
    double c_of_s;
    double beta;
    double wer_at_measurement;  // NaN when not tied to a measurement
    double snr_at_measurement;
};

EfficiencyResult efficiency(double rate, double s, CapacityModel model,
                            double wer_at_measurement = -1.0);

}  // namespace qcra
