#include "qrmark/gf.hpp"

#include <algorithm>

namespace qrmark {

FieldSpec::FieldSpec(int m, uint32_t poly) : m_(m), poly_(poly), order_(1 << m) {
    exp_.resize(order_ - 1);
    log_.assign(order_, 0);
    // Generate the cyclic group of alpha = 0x2 by repeated shift-and-reduce.
    uint32_t v = 1;
    for (int i = 0; i < order_ - 1; ++i) {
        exp_[i] = static_cast<uint16_t>(v);
        log_[v] = static_cast<uint16_t>(i);
        v <<= 1;
        if (v & (1u << m_)) v ^= poly_;
    }
}

const FieldSpec& FieldSpec::gf16() {
    static const FieldSpec spec(4, 0x13);
    return spec;
}

const FieldSpec& FieldSpec::gf256() {
    static const FieldSpec spec(8, 0x11d);
    return spec;
}

uint16_t FieldSpec::mul(uint16_t a, uint16_t b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    int s = log_[a] + log_[b];
    if (s >= order_ - 1) s -= order_ - 1;
    return exp_[s];
}

uint16_t FieldSpec::inv(uint16_t a) const {
    check(a);
    if (a == 0) throw DivisionByZero("inverse of zero field element");
    return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
}

uint16_t FieldSpec::div(uint16_t a, uint16_t b) const {
    return mul(a, inv(b));
}

uint16_t FieldSpec::pow(uint16_t a, uint64_t e) const {
    check(a);
    if (e == 0) return 1;
    if (a == 0) return 0;
    uint64_t s = (static_cast<uint64_t>(log_[a]) * (e % (order_ - 1))) % (order_ - 1);
    return exp_[s];
}

Poly::Poly(const FieldSpec& spec, std::vector<uint16_t> coeffs)
    : spec_(&spec), coeffs_(std::move(coeffs)) {
    trim();
}

Poly Poly::constant(const FieldSpec& spec, uint16_t c) {
    return Poly(spec, {c});
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

uint16_t Poly::eval(uint16_t x) const {
    // Horner form.
    uint16_t acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        acc = spec_->add(spec_->mul(acc, x), coeffs_[i]);
    }
    return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.spec_ != b.spec_) throw InvalidInput("polynomials from different fields");
    std::vector<uint16_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) ^ b.coeff(i);
    return Poly(*a.spec_, std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.spec_ != b.spec_) throw InvalidInput("polynomials from different fields");
    if (a.is_zero() || b.is_zero()) return Poly::zero(*a.spec_);
    std::vector<uint16_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] ^= a.spec_->mul(a.coeffs_[i], b.coeffs_[j]);
        }
    }
    return Poly(*a.spec_, std::move(out));
}

Poly Poly::scaled(uint16_t s) const {
    std::vector<uint16_t> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = spec_->mul(coeffs_[i], s);
    return Poly(*spec_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& num, const Poly& den) {
    if (num.spec_ != den.spec_) throw InvalidInput("polynomials from different fields");
    if (den.is_zero()) throw DivisionByZero("polynomial division by zero");
    const FieldSpec& f = *num.spec_;
    std::vector<uint16_t> rem(num.coeffs_.begin(), num.coeffs_.end());
    if (num.degree() < den.degree()) return {Poly::zero(f), num};

    std::vector<uint16_t> quot(num.degree() - den.degree() + 1, 0);
    uint16_t lead_inv = f.inv(den.coeffs_.back());
    for (int d = num.degree(); d >= den.degree(); --d) {
        uint16_t c = rem[d];
        if (c == 0) continue;
        uint16_t q = f.mul(c, lead_inv);
        quot[d - den.degree()] = q;
        for (size_t i = 0; i < den.coeffs_.size(); ++i) {
            rem[d - den.degree() + i] ^= f.mul(q, den.coeffs_[i]);
        }
    }
    return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly lagrange_interpolate(const FieldSpec& spec,
                          std::span<const std::pair<uint16_t, uint16_t>> points) {
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw InvalidInput("duplicate x coordinate in interpolation");

    Poly acc = Poly::zero(spec);
    for (size_t i = 0; i < points.size(); ++i) {
        // Basis l_i(x) = prod_{j!=i} (x - X_j) / (X_i - X_j); subtraction is XOR.
        Poly basis = Poly::constant(spec, 1);
        uint16_t denom = 1;
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis = basis * Poly(spec, {points[j].first, 1});
            denom = spec.mul(denom, spec.add(points[i].first, points[j].first));
        }
        acc = acc + basis.scaled(spec.div(points[i].second, denom));
    }
    return acc;
}

} // namespace qrmark
