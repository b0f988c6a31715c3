#include <doctest.h>

#include "qrmark/rs.hpp"
#include "testutil.hpp"

using namespace qrmark;

namespace {

int symbol_distance(const BitVec& a, const BitVec& b, int m) {
    auto sa = bits_to_symbols(a, m);
    auto sb = bits_to_symbols(b, m);
    int d = 0;
    for (size_t i = 0; i < sa.size(); ++i) d += (sa[i] != sb[i]);
    return d;
}

} // namespace

TEST_CASE("bit packing is msb-first per symbol") {
    BitVec bits = {0, 1, 0, 1, 1, 1, 1, 0};
    auto symbols = bits_to_symbols(bits, 4);
    REQUIRE(symbols.size() == 2);
    CHECK(symbols[0] == 0x5);
    CHECK(symbols[1] == 0xe);
    CHECK(symbols_to_bits(symbols, 4) == bits);
    CHECK(bits_to_hex(bits) == "5e");
    CHECK(hex_to_bits("5e", 8) == bits);
    CHECK_THROWS_AS(hex_to_bits("5e", 12), InvalidInput);
}

TEST_CASE("profiles") {
    CodeParams gf16 = resolve_profile("gf16-15-12");
    CHECK(gf16.n == 15);
    CHECK(gf16.k == 12);
    CHECK(gf16.t == 1);
    CHECK(gf16.message_bits() == 48);
    CHECK(gf16.codeword_bits() == 60);

    // 8-bit symbols with two redundant symbols correct one symbol error.
    CodeParams gf256 = resolve_profile("gf256-dynamic", 48);
    CHECK(gf256.field->bits() == 8);
    CHECK(gf256.k == 6);
    CHECK(gf256.n == 8);
    CHECK(gf256.t == 1);

    CHECK_THROWS_AS(resolve_profile("nope"), InvalidInput);
    CHECK_THROWS_AS(resolve_profile("gf256-dynamic", 42), InvalidInput);
}

TEST_CASE("eval points are pairwise distinct") {
    for (const char* name : {"gf16-15-12", "gf256-dynamic"}) {
        CodeParams p = resolve_profile(name, 48);
        for (size_t i = 0; i < p.eval_points.size(); ++i)
            for (size_t j = i + 1; j < p.eval_points.size(); ++j)
                CHECK(p.eval_points[i] != p.eval_points[j]);
    }
}

TEST_CASE("encode: zero message, systematic prefix, lengths") {
    CodeParams params = resolve_profile("gf16-15-12");

    BitVec zeros(48, 0);
    BitVec zero_word = rs_encode(zeros, params);
    CHECK(zero_word == BitVec(60, 0));

    CounterRng rng(21, 0);
    for (int trial = 0; trial < 50; ++trial) {
        BitVec msg = testutil::random_bits(rng, 48);
        BitVec word = rs_encode(msg, params);
        REQUIRE(word.size() == 60);
        CHECK(BitVec(word.begin(), word.begin() + 48) == msg);
    }
    CHECK_THROWS_AS(rs_encode(BitVec(47, 0), params), InvalidInput);
}

TEST_CASE("decode: error-free round trip in both profiles") {
    CounterRng rng(22, 0);
    for (const char* name : {"gf16-15-12", "gf256-dynamic"}) {
        CodeParams params = resolve_profile(name, 48);
        for (int trial = 0; trial < 200; ++trial) {
            BitVec msg = testutil::random_bits(rng, params.message_bits());
            BitVec word = rs_encode(msg, params);
            auto result = bw_decode(word, params);
            REQUIRE(result.has_value());
            CHECK(result->message == msg);
            CHECK(result->codeword == word);
            CHECK(result->errors_corrected == 0);
        }
    }
}

TEST_CASE("decode: single-symbol corruptions recover exactly") {
    CodeParams params = resolve_profile("gf16-15-12");
    CounterRng rng(23, 0);
    for (int trial = 0; trial < 10; ++trial) {
        BitVec msg = testutil::random_bits(rng, 48);
        BitVec word = rs_encode(msg, params);
        auto symbols = bits_to_symbols(word, 4);
        for (int pos = 0; pos < params.n; ++pos) {
            for (uint16_t wrong = 0; wrong < 16; ++wrong) {
                if (wrong == symbols[pos]) continue;
                auto corrupted = symbols;
                corrupted[pos] = wrong;
                auto result = bw_decode(symbols_to_bits(corrupted, 4), params);
                REQUIRE(result.has_value());
                CHECK(result->message == msg);
                CHECK(result->errors_corrected == 1);
                // errors_corrected equals the symbol Hamming distance.
                CHECK(symbol_distance(symbols_to_bits(corrupted, 4), result->codeword, 4) == 1);
            }
        }
    }
}

TEST_CASE("decode: t=2 profile corrects double errors") {
    CodeParams params = CodeParams::make(FieldSpec::gf256(), 12, 8);
    REQUIRE(params.t == 2);
    CounterRng rng(24, 0);
    for (int trial = 0; trial < 150; ++trial) {
        BitVec msg = testutil::random_bits(rng, params.message_bits());
        BitVec word = rs_encode(msg, params);
        auto symbols = bits_to_symbols(word, 8);
        int p1 = static_cast<int>(rng.below(params.n));
        int p2 = static_cast<int>(rng.below(params.n));
        while (p2 == p1) p2 = static_cast<int>(rng.below(params.n));
        symbols[p1] ^= static_cast<uint16_t>(1 + rng.below(255));
        symbols[p2] ^= static_cast<uint16_t>(1 + rng.below(255));
        auto result = bw_decode(symbols_to_bits(symbols, 8), params);
        REQUIRE(result.has_value());
        CHECK(result->message == msg);
        CHECK(result->errors_corrected == 2);
    }
}

TEST_CASE("decode: beyond-capacity corruption never silently passes") {
    CodeParams params = resolve_profile("gf16-15-12");
    CounterRng rng(25, 0);
    int failures = 0;
    for (int trial = 0; trial < 300; ++trial) {
        BitVec msg = testutil::random_bits(rng, 48);
        BitVec word = rs_encode(msg, params);
        auto symbols = bits_to_symbols(word, 4);
        // Three corrupted symbols exceed the code's reach; the original
        // message cannot come back.
        int positions[3];
        positions[0] = static_cast<int>(rng.below(15));
        do positions[1] = static_cast<int>(rng.below(15));
        while (positions[1] == positions[0]);
        do positions[2] = static_cast<int>(rng.below(15));
        while (positions[2] == positions[0] || positions[2] == positions[1]);
        for (int p : positions) symbols[p] ^= static_cast<uint16_t>(1 + rng.below(15));

        auto result = bw_decode(symbols_to_bits(symbols, 4), params);
        if (!result) {
            ++failures;
        } else {
            CHECK(result->message != msg);
            CHECK(result->errors_corrected <= params.t);
        }
    }
    CHECK(failures > 0); // the ladder does report uncorrectable words
}

TEST_CASE("rs_aware_loss counts symbol-level excess") {
    CodeParams params = resolve_profile("gf16-15-12");
    BitVec a(48, 0);

    CHECK(rs_aware_loss(a, a, params) == 0.0);

    // Exactly t symbol errors incur no cost.
    BitVec b = a;
    b[0] = 1; // one bad bit = one bad symbol
    CHECK(rs_aware_loss(b, a, params) == 0.0);

    // t + 2 symbol errors cost (t+2-t)^2 = 4.
    BitVec c = a;
    c[0] = 1;
    c[4] = 1;
    c[9] = 1;
    CHECK(rs_aware_loss(c, a, params) == 4.0);

    // Multiple bad bits within one symbol still count once.
    BitVec d = a;
    d[0] = d[1] = d[2] = 1;
    CHECK(rs_aware_loss(d, a, params) == 0.0);

    CHECK_THROWS_AS(rs_aware_loss(BitVec(44, 0), a, params), InvalidInput);
}

TEST_CASE("rs_aware_loss is monotone in the symbol error count") {
    CodeParams params = resolve_profile("gf16-15-12");
    BitVec target(48, 0);
    double prev = 0.0;
    BitVec probe(48, 0);
    for (int symbols = 0; symbols <= 12; ++symbols) {
        if (symbols > 0) probe[(symbols - 1) * 4] = 1;
        double loss = rs_aware_loss(probe, target, params);
        CHECK(loss >= prev);
        prev = loss;
    }
    CHECK(prev == 121.0); // (12 - 1)^2
}

TEST_CASE("bit and word accuracy") {
    BitVec a(48, 0), b(48, 1);
    CHECK(bit_accuracy(a, a) == 1.0);
    CHECK(bit_accuracy(a, b) == 0.0);
    BitVec c = a;
    c[17] = 1;
    CHECK(bit_accuracy(a, c) == doctest::Approx(47.0 / 48.0));
    CHECK_THROWS_AS(bit_accuracy(a, BitVec(4, 0)), InvalidInput);

    std::vector<BitVec> dec = {a, b, c};
    std::vector<BitVec> truth = {a, b, a};
    CHECK(word_accuracy(dec, truth) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(word_accuracy(dec, {a}), InvalidInput);
}
