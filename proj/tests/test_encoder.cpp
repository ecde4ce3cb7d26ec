#include "doctest.h"
#include "qcra/encoder.hpp"
#include "test_util.hpp"

using namespace qcra;

namespace {

// Independent oracle: dense H = [H1 | A] syndrome over GF(2).
std::uint64_t dense_syndrome_weight(const QcRaCode& code, const BitVec& word) {
    std::uint64_t weight = 0;
    for (std::uint32_t r = 0; r < code.m(); ++r) {
        std::uint8_t sum = 0;
        for (std::uint32_t c = 0; c < code.k(); ++c) {
            bool one = false;
            for (const std::uint32_t* p = code.col_begin(c); p != code.col_end(c); ++p) {
                if (*p == r) one = true;
            }
            if (one) sum ^= word[c];
        }
        sum ^= word[code.k() + r];
        if (r > 0) sum ^= word[code.k() + r - 1];
        weight += sum;
    }
    return weight;
}

}  // namespace

TEST_CASE("encode: all-zero message gives all-zero codeword") {
    QcRaCode code = test::toy_code();
    BitVec word = encode(code, BitVec(code.k(), 0));
    CHECK(word == BitVec(code.n(), 0));
}

TEST_CASE("encode: back-substitution parity chain on unit message") {
    QcRaCode code(test::toy_table_weight1());
    // message e_0: H1 column 0 has its single one at row 3, so the
    // accumulator chain turns on from parity bit 3 onward
    BitVec msg(code.k(), 0);
    msg[0] = 1;
    BitVec word = encode(code, msg);
    for (std::uint32_t r = 0; r < code.m(); ++r) {
        CHECK(word[code.k() + r] == (r >= 3 ? 1 : 0));
    }
    CHECK(syndrome_weight(code, word) == 0);
}

TEST_CASE("encode: output valid against dense syndrome oracle") {
    QcRaCode code = test::toy_code();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        BitVec word = encode(code, test::random_message(code.k(), seed));
        CHECK(syndrome_weight(code, word) == 0);
        CHECK(dense_syndrome_weight(code, word) == 0);
    }
}

TEST_CASE("encode: linearity") {
    QcRaCode code = test::toy_code();
    BitVec u = test::random_message(code.k(), 11);
    BitVec v = test::random_message(code.k(), 22);
    BitVec uv(code.k());
    for (std::uint32_t i = 0; i < code.k(); ++i) uv[i] = u[i] ^ v[i];
    BitVec cu = encode(code, u), cv = encode(code, v), cuv = encode(code, uv);
    for (std::uint32_t i = 0; i < code.n(); ++i) {
        REQUIRE(cuv[i] == (cu[i] ^ cv[i]));
    }
}

TEST_CASE("encode: rate-1/10 random round trips") {
    QcRaCode code(builtin_rate_one_tenth());
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        BitVec word = encode(code, test::random_message(code.k(), seed));
        REQUIRE(syndrome_weight(code, word) == 0);
    }
}

TEST_CASE("syndrome_weight: single flipped message bit costs its column weight") {
    QcRaCode code = test::toy_code();
    BitVec word = encode(code, test::random_message(code.k(), 3));
    for (std::uint32_t c : {0u, 5u, 400u}) {
        BitVec flipped = word;
        flipped[c] ^= 1;
        CHECK(syndrome_weight(code, flipped) == code.col_weight(c));
    }

    QcRaCode big(builtin_rate_one_tenth());
    BitVec bw = encode(big, test::random_message(big.k(), 4));
    bw[10] ^= 1;  // group 0, weight 19
    CHECK(syndrome_weight(big, bw) == 19);
    bw[10] ^= 1;
    bw[360 * 9 + 7] ^= 1;  // weight-3 group
    CHECK(syndrome_weight(big, bw) == 3);
}

TEST_CASE("encode/syndrome: argument errors") {
    QcRaCode code = test::toy_code();
    CHECK_THROWS_AS(encode(code, BitVec(code.k() + 1, 0)), ArgumentError);
    CHECK_THROWS_AS(syndrome_weight(code, BitVec(code.n() - 1, 0)), ArgumentError);
}
