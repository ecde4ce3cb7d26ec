#include "qcra/cvqkd.hpp"

#include <algorithm>
#include <cmath>

#include "qcra/harness.hpp"

namespace qcra {

void CvqkdParams::validate() const {
    if (!(modulation_variance > 0.0)) throw ArgumentError("V_A must be positive");
    if (!(transmission > 0.0 && transmission <= 1.0)) throw ArgumentError("T must be in (0,1]");
    if (excess_noise < 0.0) throw ArgumentError("excess noise must be >= 0");
    if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0)) {
        throw ArgumentError("detector efficiency must be in (0,1]");
    }
    if (electronic_noise < 0.0) throw ArgumentError("electronic noise must be >= 0");
}

double transmission_from_distance(double distance_km, double attenuation_db_per_km) {
    return std::pow(10.0, -attenuation_db_per_km * distance_km / 10.0);
}

double snr_from_params(const CvqkdParams& p) {
    p.validate();
    const double eta_t = p.detector_efficiency * p.transmission;
    return eta_t * p.modulation_variance /
           (1.0 + p.electronic_noise + eta_t * p.excess_noise);
}

double modulation_variance_for_snr(double target_snr, const CvqkdParams& p) {
    const double eta_t = p.detector_efficiency * p.transmission;
    return target_snr * (1.0 + p.electronic_noise + eta_t * p.excess_noise) / eta_t;
}

namespace {

double g_entropy(double x) {
    // (x+1)log2(x+1) - x log2 x, the bosonic entropy term; g(0) = 0
    if (x <= 1e-14) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

struct Noises {
    double v;         // V_A + 1
    double chi_line;  // 1/T - 1 + eps
    double chi_hom;   // (1 + v_el)/eta - 1
    double chi_tot;   // chi_line + chi_hom/T
};

Noises noises(const CvqkdParams& p) {
    Noises n;
    n.v = p.modulation_variance + 1.0;
    n.chi_line = 1.0 / p.transmission - 1.0 + p.excess_noise;
    n.chi_hom = (1.0 + p.electronic_noise) / p.detector_efficiency - 1.0;
    n.chi_tot = n.chi_line + n.chi_hom / p.transmission;
    return n;
}

}  // namespace

double mutual_information_ab(const CvqkdParams& p) {
    p.validate();
    const Noises n = noises(p);
    return 0.5 * std::log2((n.v + n.chi_tot) / (1.0 + n.chi_tot));
}

double holevo_bound(const CvqkdParams& p) {
    p.validate();
    const Noises nz = noises(p);
    const double v = nz.v;
    const double t = p.transmission;
    const double a_coef = v * v * (1.0 - 2.0 * t) + 2.0 * t +
                          t * t * (v + nz.chi_line) * (v + nz.chi_line);
    const double b_coef = t * t * (v * nz.chi_line + 1.0) * (v * nz.chi_line + 1.0);
    const double sqrt_b = std::sqrt(std::max(0.0, b_coef));
    auto symplectic_pair = [](double sum, double prod) {
        const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * prod));
        const double l1 = std::sqrt(std::max(1.0, 0.5 * (sum + disc)));
        const double l2 = std::sqrt(std::max(1.0, 0.5 * (sum - disc)));
        return std::pair{l1, l2};
    };
    const auto [l1, l2] = symplectic_pair(a_coef, b_coef);

    const double denom = t * (v + nz.chi_tot);
    const double c_coef =
        (a_coef * nz.chi_hom + v * sqrt_b + t * (v + nz.chi_line)) / denom;
    const double d_coef = sqrt_b * (v + sqrt_b * nz.chi_hom) / denom;
    const auto [l3, l4] = symplectic_pair(c_coef, d_coef);

    return g_entropy(0.5 * (l1 - 1.0)) + g_entropy(0.5 * (l2 - 1.0)) -
           g_entropy(0.5 * (l3 - 1.0)) - g_entropy(0.5 * (l4 - 1.0));
}

KeyRatePoint key_rate(const CvqkdParams& p, double beta, double p_fail) {
    if (!(beta > 0.0 && beta <= 1.0)) throw ArgumentError("beta must be in (0,1]");
    if (!(p_fail >= 0.0 && p_fail <= 1.0)) throw ArgumentError("p_fail must be in [0,1]");
    KeyRatePoint pt;
    pt.transmission = p.transmission;
    pt.modulation_variance = p.modulation_variance;
    pt.snr_linear = snr_from_params(p);
    pt.beta = beta;
    pt.p_fail = p_fail;
    pt.i_ab = mutual_information_ab(p);
    pt.i_e = holevo_bound(p);
    pt.delta_i = (beta * pt.i_ab - pt.i_e) * (1.0 - p_fail);
    return pt;
}

std::vector<KeyRatePoint> key_rate_vs_distance(const CodeProfile& profile,
                                               const CvqkdParams& params_template,
                                               const std::vector<double>& distances_km,
                                               double v_a_cap) {
    std::vector<KeyRatePoint> out;
    out.reserve(distances_km.size());
    for (double d : distances_km) {
        CvqkdParams p = params_template;
        p.transmission = transmission_from_distance(d, p.attenuation_db_per_km);
        const double v_a = modulation_variance_for_snr(profile.operating_snr, p);
        KeyRatePoint pt;
        if (!(v_a > 0.0) || v_a > v_a_cap) {
            pt.distance_km = d;
            pt.transmission = p.transmission;
            pt.modulation_variance = v_a;
            pt.feasible = false;
        } else {
            p.modulation_variance = v_a;
            pt = key_rate(p, profile.beta, profile.p_fail);
            pt.distance_km = d;
        }
        out.push_back(pt);
    }
    return out;
}

void write_keyrate_csv(std::ostream& out, const std::string& label,
                       const std::vector<KeyRatePoint>& points,
                       const std::vector<std::pair<std::string, std::string>>& provenance) {
    write_provenance(out, provenance);
    out << "label,distance_km,T,V_A,snr,beta,p_fail,i_ab,i_e,delta_i,delta_i_floored,feasible\n";
    for (const auto& p : points) {
        out << label << ',' << p.distance_km << ',' << p.transmission << ','
            << p.modulation_variance << ',' << p.snr_linear << ',' << p.beta << ',' << p.p_fail
            << ',' << p.i_ab << ',' << p.i_e << ',' << p.delta_i << ',' << p.delta_i_floored()
            << ',' << (p.feasible ? 1 : 0) << "\n";
    }
}

}  // namespace qcra
