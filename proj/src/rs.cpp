#include "qrmark/rs.hpp"

#include <algorithm>
#include <cctype>

namespace qrmark {

std::vector<uint16_t> bits_to_symbols(const BitVec& bits, int m) {
    if (bits.size() % m != 0) throw InvalidInput("bit count not a multiple of symbol size");
    std::vector<uint16_t> out(bits.size() / m);
    for (size_t s = 0; s < out.size(); ++s) {
        uint16_t v = 0;
        for (int b = 0; b < m; ++b) v = static_cast<uint16_t>((v << 1) | (bits[s * m + b] & 1));
        out[s] = v;
    }
    return out;
}

BitVec symbols_to_bits(std::span<const uint16_t> symbols, int m) {
    BitVec out(symbols.size() * m);
    for (size_t s = 0; s < symbols.size(); ++s)
        for (int b = 0; b < m; ++b)
            out[s * m + b] = (symbols[s] >> (m - 1 - b)) & 1;
    return out;
}

std::string bits_to_hex(const BitVec& bits) {
    if (bits.size() % 4 != 0) throw InvalidInput("bit count not a multiple of 4");
    static const char* digits = "0123456789abcdef";
    std::string out(bits.size() / 4, '0');
    for (size_t i = 0; i < out.size(); ++i) {
        int v = (bits[4 * i] << 3) | (bits[4 * i + 1] << 2) | (bits[4 * i + 2] << 1) | bits[4 * i + 3];
        out[i] = digits[v];
    }
    return out;
}

BitVec hex_to_bits(const std::string& hex, size_t n_bits) {
    if (hex.size() * 4 != n_bits) throw InvalidInput("hex string length does not match bit count");
    BitVec out(n_bits);
    for (size_t i = 0; i < hex.size(); ++i) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[i])));
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else throw InvalidInput("invalid hex digit");
        for (int b = 0; b < 4; ++b) out[4 * i + b] = (v >> (3 - b)) & 1;
    }
    return out;
}

CodeParams CodeParams::make(const FieldSpec& field, int n, int k) {
    if (n > field.order() - 1) throw InvalidInput("codeword length exceeds field bound");
    if (k <= 0 || k >= n) throw InvalidInput("message length must satisfy 0 < k < n");
    CodeParams p;
    p.field = &field;
    p.n = n;
    p.k = k;
    p.t = (n - k) / 2;
    p.eval_points.resize(n);
    for (int i = 0; i < n; ++i) p.eval_points[i] = field.alpha_pow(i);
    return p;
}

CodeParams resolve_profile(const std::string& name, int payload_bits) {
    if (name == "gf16-15-12") {
        return CodeParams::make(FieldSpec::gf16(), 15, 12);
    }
    if (name == "gf256-dynamic") {
        if (payload_bits <= 0 || payload_bits % 8 != 0)
            throw InvalidInput("gf256-dynamic payload must be a positive multiple of 8 bits");
        int k = payload_bits / 8;
        return CodeParams::make(FieldSpec::gf256(), k + 2, k);
    }
    throw InvalidInput("unknown code profile: " + name);
}

BitVec rs_encode(const BitVec& message, const CodeParams& params) {
    const FieldSpec& f = *params.field;
    if (static_cast<int>(message.size()) != params.message_bits())
        throw InvalidInput("message bit length does not match profile");

    std::vector<uint16_t> msg_symbols = bits_to_symbols(message, f.bits());
    std::vector<std::pair<uint16_t, uint16_t>> points(params.k);
    for (int i = 0; i < params.k; ++i) points[i] = {params.eval_points[i], msg_symbols[i]};
    Poly p = lagrange_interpolate(f, points);

    std::vector<uint16_t> codeword(params.n);
    for (int i = 0; i < params.n; ++i) codeword[i] = p.eval(params.eval_points[i]);
    return symbols_to_bits(codeword, f.bits());
}

namespace {

// Gaussian elimination over GF(2^m). Returns a solution with free variables
// set to zero, or nullopt when the system is inconsistent.
std::optional<std::vector<uint16_t>> solve_linear(const FieldSpec& f,
                                                  std::vector<std::vector<uint16_t>> a,
                                                  std::vector<uint16_t> b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pivot = row;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[row]);
        std::swap(b[pivot], b[row]);
        uint16_t inv = f.inv(a[row][col]);
        for (size_t j = col; j < cols; ++j) a[row][j] = f.mul(a[row][j], inv);
        b[row] = f.mul(b[row], inv);
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || a[r][col] == 0) continue;
            uint16_t factor = a[r][col];
            for (size_t j = col; j < cols; ++j) a[r][j] ^= f.mul(factor, a[row][j]);
            b[r] ^= f.mul(factor, b[row]);
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    for (size_t r = row; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;

    std::vector<uint16_t> x(cols, 0);
    for (size_t r = 0; r < row; ++r) x[pivot_col_of_row[r]] = b[r];
    return x;
}

// One Berlekamp-Welch attempt at an assumed error count t'.
std::optional<DecodeResult> bw_attempt(std::span<const uint16_t> received,
                                       const CodeParams& params, int t_assumed) {
    const FieldSpec& f = *params.field;
    int n = params.n;
    int k = params.k;
    int nq = t_assumed;         // unknown Q coefficients below the pinned leading 1
    int nn = t_assumed + k;     // N coefficients, deg N <= t' + k - 1

    // Row i: sum_j Q_j R_i X_i^j + sum_j N_j X_i^j-over-GF = R_i X_i^{t'}
    // with Q_{t'} = 1 moved to the right-hand side.
    std::vector<std::vector<uint16_t>> a(n, std::vector<uint16_t>(nq + nn, 0));
    std::vector<uint16_t> b(n, 0);
    for (int i = 0; i < n; ++i) {
        uint16_t x = params.eval_points[i];
        uint16_t xp = 1;
        for (int j = 0; j < nq; ++j) {
            a[i][j] = f.mul(received[i], xp);
            xp = f.mul(xp, x);
        }
        b[i] = f.mul(received[i], xp); // R_i * X_i^{t'}
        xp = 1;
        for (int j = 0; j < nn; ++j) {
            a[i][nq + j] = xp;
            xp = f.mul(xp, x);
        }
    }

    auto solution = solve_linear(f, std::move(a), std::move(b));
    if (!solution) return std::nullopt;

    std::vector<uint16_t> q_coeffs(solution->begin(), solution->begin() + nq);
    q_coeffs.push_back(1);
    Poly q(f, std::move(q_coeffs));
    Poly numerator(f, std::vector<uint16_t>(solution->begin() + nq, solution->end()));

    if (numerator.degree() >= q.degree() + k) return std::nullopt;
    auto [p, rem] = Poly::divmod(numerator, q);
    if (!rem.is_zero()) return std::nullopt;
    if (p.degree() >= k) return std::nullopt;

    std::vector<uint16_t> codeword(n);
    int errors = 0;
    for (int i = 0; i < n; ++i) {
        codeword[i] = p.eval(params.eval_points[i]);
        if (codeword[i] != received[i]) ++errors;
    }
    if (errors > params.t) return std::nullopt;

    DecodeResult result;
    result.codeword = symbols_to_bits(codeword, f.bits());
    result.message = BitVec(result.codeword.begin(), result.codeword.begin() + params.message_bits());
    result.errors_corrected = errors;
    return result;
}

} // namespace

std::optional<DecodeResult> bw_decode(const BitVec& received, const CodeParams& params) {
    if (static_cast<int>(received.size()) != params.codeword_bits())
        throw InvalidInput("received bit length does not match profile");
    std::vector<uint16_t> symbols = bits_to_symbols(received, params.field->bits());
    for (int t_assumed = params.t; t_assumed >= 0; --t_assumed) {
        if (auto result = bw_attempt(symbols, params, t_assumed)) return result;
    }
    return std::nullopt;
}

double rs_aware_loss(const BitVec& predicted, const BitVec& target, const CodeParams& params) {
    if (predicted.size() != target.size()) throw InvalidInput("bit length mismatch");
    int m = params.field->bits();
    if (predicted.size() % m != 0) throw InvalidInput("bit count not a multiple of symbol size");
    int errors = 0;
    for (size_t s = 0; s < predicted.size() / m; ++s) {
        for (int b = 0; b < m; ++b) {
            if (predicted[s * m + b] != target[s * m + b]) {
                ++errors;
                break;
            }
        }
    }
    double excess = std::max(0, errors - params.t);
    return excess * excess;
}

double bit_accuracy(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw InvalidInput("bit length mismatch");
    if (a.empty()) return 1.0;
    size_t match = 0;
    for (size_t i = 0; i < a.size(); ++i) match += (a[i] == b[i]);
    return static_cast<double>(match) / static_cast<double>(a.size());
}

double word_accuracy(const std::vector<BitVec>& decoded, const std::vector<BitVec>& truth) {
    if (decoded.size() != truth.size()) throw InvalidInput("word count mismatch");
    if (decoded.empty()) return 1.0;
    size_t match = 0;
    for (size_t i = 0; i < decoded.size(); ++i) match += (decoded[i] == truth[i]);
    return static_cast<double>(match) / static_cast<double>(decoded.size());
}

} // namespace qrmark
