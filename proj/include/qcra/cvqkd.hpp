#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qcra/common.hpp"

namespace qcra {

// Coherent-state CVQKD with homodyne detection and reverse reconciliation,
// collective attacks, asymptotic key length. All noises in shot-noise units.
struct CvqkdParams {
    double modulation_variance = 1.0;   // V_A
    double transmission = 1.0;          // T in (0, 1]
    double excess_noise = 0.0;          // epsilon, channel input referred
    double detector_efficiency = 1.0;   // eta in (0, 1]
    double electronic_noise = 0.0;      // v_el
    double attenuation_db_per_km = 0.2;

    void validate() const;
};

double transmission_from_distance(double distance_km, double attenuation_db_per_km);

// s = eta*T*V_A / (1 + v_el + eta*T*eps)
double snr_from_params(const CvqkdParams& p);

// V_A that makes snr_from_params hit a target SNR (closed-form inversion).
double modulation_variance_for_snr(double target_snr, const CvqkdParams& p);

// Mutual information of the homodyne channel, 1/2 log2((V+chi_tot)/(1+chi_tot)).
double mutual_information_ab(const CvqkdParams& p);

// Holevo bound on the eavesdropper's information from the symplectic
// eigenvalues of the Gaussian-state covariance matrices.
double holevo_bound(const CvqkdParams& p);

struct KeyRatePoint {
    double distance_km = 0.0;
    double transmission = 0.0;
    double modulation_variance = 0.0;
    double snr_linear = 0.0;
    double beta = 0.0;
    double p_fail = 0.0;
    double i_ab = 0.0;      // bits/symbol
    double i_e = 0.0;       // bits/symbol
    double delta_i = 0.0;   // raw value, may be negative
    bool feasible = true;

    double delta_i_floored() const { return delta_i > 0.0 ? delta_i : 0.0; }
};

// Delta I = (beta*I_AB - I_E)(1 - p_fail)
KeyRatePoint key_rate(const CvqkdParams& p, double beta, double p_fail);

// Measured operating point of one code, produced by the harness.
struct CodeProfile {
    std::string label;
    double rate = 0.0;
    double operating_snr = 0.0;  // linear
    double beta = 0.0;
    double p_fail = 0.0;
};

// At each distance sets T from the attenuation, solves V_A so the channel
// SNR equals the code's operating SNR, and evaluates the key rate. Points
// whose required V_A is non-positive or above v_a_cap are marked infeasible.
std::vector<KeyRatePoint> key_rate_vs_distance(const CodeProfile& profile,
                                               const CvqkdParams& params_template,
                                               const std::vector<double>& distances_km,
                                               double v_a_cap = 100.0);

void write_keyrate_csv(std::ostream& out, const std::string& label,
                       const std::vector<KeyRatePoint>& points,
                       const std::vector<std::pair<std::string, std::string>>& provenance);

}  // namespace qcra
