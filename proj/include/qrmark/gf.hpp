#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qrmark/errors.hpp"

namespace qrmark {

// GF(2^m) with multiplication through log/antilog tables over the generator
// alpha = 0x2. Instances are immutable after construction and shareable
// across threads.
class FieldSpec {
public:
    // GF(16), reduction polynomial x^4 + x + 1.
    static const FieldSpec& gf16();
    // GF(256), reduction polynomial x^8 + x^4 + x^3 + x^2 + 1.
    static const FieldSpec& gf256();

    int bits() const { return m_; }
    int order() const { return order_; }
    uint32_t primitive_poly() const { return poly_; }

    uint16_t add(uint16_t a, uint16_t b) const { return check(a), check(b), a ^ b; }
    uint16_t mul(uint16_t a, uint16_t b) const;
    uint16_t inv(uint16_t a) const;
    uint16_t div(uint16_t a, uint16_t b) const;
    uint16_t pow(uint16_t a, uint64_t e) const;

    // alpha^i, for building evaluation sets.
    uint16_t alpha_pow(uint32_t i) const { return exp_[i % (order_ - 1)]; }

    bool operator==(const FieldSpec& other) const { return this == &other; }

private:
    FieldSpec(int m, uint32_t poly);

    void check(uint16_t v) const {
        if (v >= order_) throw InvalidInput("field element out of range");
    }

    int m_;
    uint32_t poly_;
    int order_;
    std::vector<uint16_t> exp_; // alpha^i for i in [0, order-1)
    std::vector<uint16_t> log_; // log_alpha(v) for v in [1, order)
};

// Value-with-field wrapper. Mixing elements from different fields is a usage
// error and throws.
struct FieldElement {
    uint16_t value = 0;
    const FieldSpec* spec = nullptr;

    FieldElement() = default;
    FieldElement(uint16_t v, const FieldSpec& s) : value(v), spec(&s) {}

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        same_spec(a, b);
        return {a.spec->add(a.value, b.value), *a.spec};
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        same_spec(a, b);
        return {a.spec->mul(a.value, b.value), *a.spec};
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) {
        same_spec(a, b);
        return {a.spec->div(a.value, b.value), *a.spec};
    }
    friend bool operator==(FieldElement a, FieldElement b) {
        return a.value == b.value && a.spec == b.spec;
    }

    static void same_spec(const FieldElement& a, const FieldElement& b) {
        if (a.spec == nullptr || a.spec != b.spec)
            throw InvalidInput("field elements from different fields");
    }
};

// Polynomial over GF(2^m), coefficients lowest degree first. Canonical form
// of the zero polynomial is the empty coefficient list; trailing zero
// coefficients are trimmed on construction.
class Poly {
public:
    explicit Poly(const FieldSpec& spec) : spec_(&spec) {}
    Poly(const FieldSpec& spec, std::vector<uint16_t> coeffs);

    static Poly zero(const FieldSpec& spec) { return Poly(spec); }
    static Poly constant(const FieldSpec& spec, uint16_t c);

    const FieldSpec& spec() const { return *spec_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const uint16_t> coeffs() const { return coeffs_; }
    uint16_t coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

    uint16_t eval(uint16_t x) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);

    Poly scaled(uint16_t s) const;

    // num = quotient * den + remainder, deg(remainder) < deg(den).
    static std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);

    bool operator==(const Poly& other) const {
        return spec_ == other.spec_ && coeffs_ == other.coeffs_;
    }

private:
    void trim();

    const FieldSpec* spec_;
    std::vector<uint16_t> coeffs_;
};

// Unique polynomial of degree < points.size() through the given points.
// X coordinates must be pairwise distinct.
Poly lagrange_interpolate(const FieldSpec& spec,
                          std::span<const std::pair<uint16_t, uint16_t>> points);

} // namespace qrmark
