#include "qcra/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace qcra {

namespace {

constexpr float kLlrClamp = 30.0f;
// Keeps atanh away from its pole; |2*atanh(1 - 1e-7)| ~ 16.8.
constexpr float kTanhClamp = 1.0f - 1e-7f;
constexpr float kMinSumScale = 0.8f;

inline float clampf(float x, float lim) { return x < -lim ? -lim : (x > lim ? lim : x); }

// Bit-level finiteness test; robust under -ffast-math.
inline bool finite_bits(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return ((u >> 52) & 0x7ff) != 0x7ff;
}

}  // namespace

void TannerGraph::finalize() {
    var_off.assign(n_vars + 2, 0);
    for (std::uint32_t v : edge_var) ++var_off[v + 2];
    for (std::size_t i = 2; i < var_off.size(); ++i) var_off[i] += var_off[i - 1];
    var_edges.resize(edge_var.size());
    for (std::uint32_t e = 0; e < edge_var.size(); ++e) {
        var_edges[var_off[edge_var[e] + 1]++] = e;
    }
    var_off.pop_back();
}

TannerGraph TannerGraph::from_code(const QcRaCode& code) {
    TannerGraph g;
    g.n_vars = code.n();
    g.chk_off.reserve(code.m() + 1);
    g.chk_off.push_back(0);
    g.edge_var.reserve(code.h1_ones() + 2ull * code.m());
    for (std::uint32_t r = 0; r < code.m(); ++r) {
        for (const std::uint32_t* p = code.row_begin(r); p != code.row_end(r); ++p) {
            g.edge_var.push_back(*p);
        }
        if (r > 0) g.edge_var.push_back(code.k() + r - 1);
        g.edge_var.push_back(code.k() + r);
        g.chk_off.push_back(static_cast<std::uint32_t>(g.edge_var.size()));
    }
    g.finalize();
    return g;
}

std::string variant_name(BpVariant v) {
    return v == BpVariant::SumProduct ? "sum-product" : "min-sum-0.8";
}

BpDecoder::BpDecoder(const TannerGraph& graph) : graph_(graph) {
    c2v_.resize(graph_.n_edges());
    work_.resize(graph_.n_edges());
    belief_.resize(graph_.n_vars);
    hard_.resize(graph_.n_vars);
}

DecodeResult BpDecoder::decode(const LlrVec& llrs, int max_iterations, BpVariant variant) {
    if (llrs.size() != graph_.n_vars) {
        throw ArgumentError("LLR length " + std::to_string(llrs.size()) + " != " +
                            std::to_string(graph_.n_vars) + " variables");
    }
    if (max_iterations < 1) throw ArgumentError("max_iterations must be >= 1");
    for (double x : llrs) {
        if (!finite_bits(x)) throw ArgumentError("non-finite LLR input");
    }

    const std::uint32_t n_vars = graph_.n_vars;
    const std::uint32_t n_checks = graph_.n_checks();
    const std::uint32_t n_edges = graph_.n_edges();
    const std::uint32_t* chk_off = graph_.chk_off.data();
    const std::uint32_t* edge_var = graph_.edge_var.data();

    for (std::uint32_t v = 0; v < n_vars; ++v) {
        belief_[v] = clampf(static_cast<float>(llrs[v]), kLlrClamp);
    }
    std::fill(c2v_.begin(), c2v_.end(), 0.0f);

    DecodeResult result;
    result.bits.resize(n_vars);

    for (int it = 1; it <= max_iterations; ++it) {
        // Variable-to-check messages, in place over the edge array.
        if (variant == BpVariant::SumProduct) {
            for (std::uint32_t e = 0; e < n_edges; ++e) {
                work_[e] = clampf(belief_[edge_var[e]] - c2v_[e], kLlrClamp);
            }
            // tanh(x/2) = 1 - 2/(e^x + 1); expf vectorizes where tanhf may not
            for (std::uint32_t e = 0; e < n_edges; ++e) {
                work_[e] = 1.0f - 2.0f / (std::exp(work_[e]) + 1.0f);
            }
            for (std::uint32_t c = 0; c < n_checks; ++c) {
                const std::uint32_t b = chk_off[c], t = chk_off[c + 1];
                // forward partial products into c2v_, backward on the fly
                float fwd = 1.0f;
                for (std::uint32_t e = b; e < t; ++e) {
                    c2v_[e] = fwd;
                    fwd *= work_[e];
                }
                float bwd = 1.0f;
                for (std::uint32_t e = t; e-- > b;) {
                    c2v_[e] = clampf(c2v_[e] * bwd, kTanhClamp);
                    bwd *= work_[e];
                }
            }
            // 2*atanh(p) = log((1+p)/(1-p))
            for (std::uint32_t e = 0; e < n_edges; ++e) {
                c2v_[e] = std::log((1.0f + c2v_[e]) / (1.0f - c2v_[e]));
            }
        } else {
            for (std::uint32_t e = 0; e < n_edges; ++e) {
                work_[e] = clampf(belief_[edge_var[e]] - c2v_[e], kLlrClamp);
            }
            for (std::uint32_t c = 0; c < n_checks; ++c) {
                const std::uint32_t b = chk_off[c], t = chk_off[c + 1];
                float min1 = kLlrClamp + 1.0f, min2 = kLlrClamp + 1.0f;
                std::uint32_t argmin = b;
                std::uint32_t sign_all = 0;
                for (std::uint32_t e = b; e < t; ++e) {
                    const float mag = std::fabs(work_[e]);
                    if (mag < min1) {
                        min2 = min1;
                        min1 = mag;
                        argmin = e;
                    } else if (mag < min2) {
                        min2 = mag;
                    }
                    sign_all ^= work_[e] < 0.0f;
                }
                for (std::uint32_t e = b; e < t; ++e) {
                    const std::uint32_t sign = sign_all ^ (work_[e] < 0.0f);
                    const float mag = kMinSumScale * (e == argmin ? min2 : min1);
                    c2v_[e] = sign ? -mag : mag;
                }
            }
        }

        // A-posteriori beliefs and hard decision.
        for (std::uint32_t v = 0; v < n_vars; ++v) {
            float sum = static_cast<float>(llrs[v]);
            for (std::uint32_t i = graph_.var_off[v]; i < graph_.var_off[v + 1]; ++i) {
                sum += c2v_[graph_.var_edges[i]];
            }
            belief_[v] = clampf(sum, kLlrClamp);
            hard_[v] = belief_[v] < 0.0f ? 1 : 0;
        }

        bool valid = true;
        for (std::uint32_t c = 0; c < n_checks && valid; ++c) {
            std::uint8_t parity = 0;
            for (std::uint32_t e = chk_off[c]; e < chk_off[c + 1]; ++e) {
                parity ^= hard_[edge_var[e]];
            }
            valid = parity == 0;
        }
        if (valid) {
            result.converged = true;
            result.iterations_used = it;
            break;
        }
        result.iterations_used = it;
    }

    result.detected_failure = !result.converged;
    result.bits.assign(hard_.begin(), hard_.end());
    return result;
}

DecodeResult decode(const QcRaCode& code, const LlrVec& llrs, int max_iterations,
                    BpVariant variant) {
    TannerGraph graph = TannerGraph::from_code(code);
    BpDecoder dec(graph);
    return dec.decode(llrs, max_iterations, variant);
}

std::vector<double> check_node_update(const std::vector<double>& inbound) {
    if (inbound.size() < 2) throw ArgumentError("check node needs >= 2 inbound messages");
    const std::size_t d = inbound.size();
    std::vector<double> th(d), fwd(d), out(d);
    for (std::size_t i = 0; i < d; ++i) th[i] = std::tanh(0.5 * inbound[i]);
    double acc = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        fwd[i] = acc;
        acc *= th[i];
    }
    double bwd = 1.0;
    for (std::size_t i = d; i-- > 0;) {
        double prod = fwd[i] * bwd;
        bwd *= th[i];
        prod = std::clamp(prod, -(1.0 - 1e-15), 1.0 - 1e-15);
        out[i] = 2.0 * std::atanh(prod);
    }
    return out;
}

}  // namespace qcra
