#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrmark/gf.hpp"

namespace qrmark {

// Bit sequence, one 0/1 value per entry, most significant bit of each symbol
// first. The packing is fixed so codewords are byte-exact across
// implementations.
using BitVec = std::vector<uint8_t>;

std::vector<uint16_t> bits_to_symbols(const BitVec& bits, int m);
BitVec symbols_to_bits(std::span<const uint16_t> symbols, int m);

std::string bits_to_hex(const BitVec& bits);
BitVec hex_to_bits(const std::string& hex, size_t n_bits);

// (n, k, t) code geometry over a field, with the evaluation set
// X_i = alpha^i for i = 0..n-1.
struct CodeParams {
    const FieldSpec* field = nullptr;
    int n = 0;
    int k = 0;
    int t = 0;
    std::vector<uint16_t> eval_points;

    static CodeParams make(const FieldSpec& field, int n, int k);

    int message_bits() const { return k * field->bits(); }
    int codeword_bits() const { return n * field->bits(); }
};

// Named profiles exposed on the CLI.
//   gf16-15-12    : GF(16), n=15, k=12 — 48 info bits, 60-bit codeword, t=1.
//   gf256-dynamic : GF(256), k picked from the payload size, n = k + 2, t=1.
CodeParams resolve_profile(const std::string& name, int payload_bits = 48);

struct DecodeResult {
    BitVec message;       // corrected k*m information bits
    BitVec codeword;      // corrected n*m codeword bits
    int errors_corrected; // symbol positions changed, <= t
};

// Systematic evaluation-based encoding: interpolate P through the message
// symbols at the first k evaluation points, emit C_i = P(X_i) for all i.
BitVec rs_encode(const BitVec& message, const CodeParams& params);

// Berlekamp-Welch decoding. Solves N(X_i) = R_i Q(X_i) with deg Q <= t',
// deg N <= t' + k - 1 and Q's degree-t' coefficient fixed to 1, retrying
// with t' = t, t-1, ..., 0. Returns nullopt for an uncorrectable word.
std::optional<DecodeResult> bw_decode(const BitVec& received, const CodeParams& params);

// [max(0, E - t)]^2 with E counted in symbols (m-bit groups).
double rs_aware_loss(const BitVec& predicted, const BitVec& target, const CodeParams& params);

// Fraction of matching bits.
double bit_accuracy(const BitVec& a, const BitVec& b);
// Fraction of exactly recovered messages.
double word_accuracy(const std::vector<BitVec>& decoded, const std::vector<BitVec>& truth);

} // namespace qrmark
