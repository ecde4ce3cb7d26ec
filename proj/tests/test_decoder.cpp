#include <cmath>
#include <limits>

#include "doctest.h"
#include "qcra/channel.hpp"
#include "qcra/decoder.hpp"
#include "qcra/encoder.hpp"
#include "test_util.hpp"

using namespace qcra;

namespace {

// Independent log-domain route for the sum-product kernel:
// phi(x) = -ln tanh(x/2); |out| = phi(sum of phi(|in|)), sign = product.
std::vector<double> check_node_update_logdomain(const std::vector<double>& in) {
    auto phi = [](double x) { return -std::log(std::tanh(0.5 * x)); };
    std::vector<double> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        double phi_sum = 0.0;
        int sign = 1;
        for (std::size_t j = 0; j < in.size(); ++j) {
            if (j == i) continue;
            phi_sum += phi(std::fabs(in[j]));
            if (in[j] < 0) sign = -sign;
        }
        out[i] = sign * phi(phi_sum);
    }
    return out;
}

LlrVec noiseless_llrs(const BitVec& word, double magnitude = 20.0) {
    LlrVec llrs(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) llrs[i] = word[i] ? -magnitude : magnitude;
    return llrs;
}

}  // namespace

TEST_CASE("check_node_update: erasure absorbs") {
    auto out = check_node_update({0.0, 1.7});
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[0] == doctest::Approx(2.0 * std::atanh(std::tanh(0.85))));
}

TEST_CASE("check_node_update: two equal edges reproduce the input") {
    for (double a : {0.3, -1.2, 4.0}) {
        auto out = check_node_update({a, a});
        CHECK(out[0] == doctest::Approx(a).epsilon(1e-12));
        CHECK(out[1] == doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_CASE("check_node_update: agrees with log-domain route") {
    const std::vector<double> in{2.0, 3.0, -1.0};
    auto direct = check_node_update(in);
    auto logdom = check_node_update_logdomain(in);
    for (std::size_t i = 0; i < in.size(); ++i) {
        CHECK(direct[i] == doctest::Approx(logdom[i]).epsilon(1e-9));
    }
    CHECK_THROWS_AS(check_node_update({1.0}), ArgumentError);
}

TEST_CASE("decode: all-zero codeword at +20 LLR converges immediately") {
    QcRaCode code(builtin_rate_one_tenth());
    DecodeResult res = decode(code, LlrVec(code.n(), 20.0), 10);
    CHECK(res.converged);
    CHECK_FALSE(res.detected_failure);
    CHECK(res.iterations_used <= 1);
    CHECK(res.bits == BitVec(code.n(), 0));
}

TEST_CASE("decode: noiseless round trip, both variants") {
    QcRaCode code = test::toy_code();
    BitVec word = encode(code, test::random_message(code.k(), 77));
    for (BpVariant v : {BpVariant::SumProduct, BpVariant::MinSumScaled}) {
        DecodeResult res = decode(code, noiseless_llrs(word), 10, v);
        CHECK(res.converged);
        CHECK(res.bits == word);
    }
}

TEST_CASE("decode: converged implies zero syndrome on noisy trials") {
    QcRaCode code = test::toy_code();
    TannerGraph graph = TannerGraph::from_code(code);
    BpDecoder dec(graph);
    int converged_count = 0;
    for (std::uint64_t t = 0; t < 30; ++t) {
        BitVec word = encode(code, test::random_message(code.k(), t));
        LlrVec llrs = transmit(word, ChannelParams(2.2), 900 + t);
        DecodeResult res = dec.decode(llrs, 50);
        CHECK(res.converged == (syndrome_weight(code, res.bits) == 0));
        if (res.converged) ++converged_count;
    }
    CHECK(converged_count > 0);
}

TEST_CASE("decode: deterministic and monotone in the iteration budget") {
    QcRaCode code = test::toy_code();
    BitVec word = encode(code, test::random_message(code.k(), 5));
    LlrVec llrs = transmit(word, ChannelParams(1.2), 42);

    DecodeResult a = decode(code, llrs, 50);
    DecodeResult b = decode(code, llrs, 50);
    CHECK(a.bits == b.bits);
    CHECK(a.iterations_used == b.iterations_used);

    if (a.converged) {
        DecodeResult c = decode(code, llrs, 200);
        CHECK(c.converged);
        CHECK(c.iterations_used == a.iterations_used);
        CHECK(c.bits == a.bits);
    }
}

TEST_CASE("decode: argument errors") {
    QcRaCode code = test::toy_code();
    TannerGraph graph = TannerGraph::from_code(code);
    BpDecoder dec(graph);
    CHECK_THROWS_AS(dec.decode(LlrVec(code.n() - 1, 1.0), 10), ArgumentError);
    LlrVec bad(code.n(), 1.0);
    bad[7] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(dec.decode(bad, 10), ArgumentError);
    bad[7] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(dec.decode(bad, 10), ArgumentError);
    CHECK_THROWS_AS(dec.decode(LlrVec(code.n(), 1.0), 0), ArgumentError);
}

TEST_CASE("decode: all-erasure input is deterministic and self-consistent") {
    QcRaCode code = test::toy_code();
    // every position erased (LLR 0): no information to work with
    DecodeResult a = decode(code, LlrVec(code.n(), 0.0), 10);
    DecodeResult b = decode(code, LlrVec(code.n(), 0.0), 10);
    CHECK(a.bits == b.bits);
    CHECK(a.converged == (syndrome_weight(code, a.bits) == 0));
    // ties in the hard decision resolve to 0
    if (a.converged) CHECK(a.bits == BitVec(code.n(), 0));
}

TEST_CASE("decode: erased bits recover from unpunctured neighbors") {
    QcRaCode code = test::toy_code();
    BitVec word = encode(code, test::random_message(code.k(), 21));
    LlrVec llrs = noiseless_llrs(word, 12.0);
    // erase a sparse set of parity positions
    for (std::uint32_t i = code.k(); i < code.n(); i += 37) llrs[i] = 0.0;
    DecodeResult res = decode(code, llrs, 30);
    CHECK(res.converged);
    CHECK(res.bits == word);
}
