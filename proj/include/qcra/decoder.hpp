#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcra/code.hpp"
#include "qcra/common.hpp"

namespace qcra {

// Bipartite check/variable graph in CSR form (check-major edge list plus a
// variable-major view onto the same edges).
struct TannerGraph {
    std::uint32_t n_vars = 0;
    std::vector<std::uint32_t> chk_off;   // size n_checks + 1
    std::vector<std::uint32_t> edge_var;  // variable of each edge, check-major
    std::vector<std::uint32_t> var_off;   // size n_vars + 1
    std::vector<std::uint32_t> var_edges; // edge indices, variable-major

    std::uint32_t n_checks() const { return static_cast<std::uint32_t>(chk_off.size()) - 1; }
    std::uint32_t n_edges() const { return static_cast<std::uint32_t>(edge_var.size()); }

    // Builds the variable-major view; call once after filling chk_off/edge_var.
    void finalize();

    // Graph of H = [H1 | A] for a base code.
    static TannerGraph from_code(const QcRaCode& code);
};

enum class BpVariant {
    SumProduct,     // flooding sum-product, tanh rule (baseline)
    MinSumScaled,   // min-sum with scale factor 0.8
};

std::string variant_name(BpVariant v);

struct DecodeResult {
    BitVec bits;
    bool converged = false;
    int iterations_used = 0;
    bool detected_failure = true;  // = !converged
};

// Flooding-schedule BP decoder. Owns scratch buffers sized to one graph;
// reuse one instance per worker to avoid reallocation. The referenced graph
// must outlive the decoder.
class BpDecoder {
public:
    explicit BpDecoder(const TannerGraph& graph);

    // Early-stops on a zero syndrome after each iteration. LLR convention:
    // positive favours bit 0; ties decide 0. Messages are clamped to +-30.
    // Throws ArgumentError on length mismatch or non-finite input.
    DecodeResult decode(const LlrVec& llrs, int max_iterations,
                        BpVariant variant = BpVariant::SumProduct);

private:
    const TannerGraph& graph_;
    std::vector<float> c2v_, work_, belief_;
    BitVec hard_;
};

// Convenience wrapper for one-off decodes of a base code.
DecodeResult decode(const QcRaCode& code, const LlrVec& llrs, int max_iterations,
                    BpVariant variant = BpVariant::SumProduct);

// Reference sum-product check-node kernel (double precision), exposed for
// testing: outbound_i = 2*atanh(prod_{j != i} tanh(inbound_j / 2)).
std::vector<double> check_node_update(const std::vector<double>& inbound);

}  // namespace qcra
