#include <doctest.h>

#include "qrmark/gf.hpp"
#include "testutil.hpp"

using namespace qrmark;

TEST_CASE("gf16 add basics") {
    const FieldSpec& f = FieldSpec::gf16();
    for (uint16_t a = 0; a < 16; ++a) {
        CHECK(f.add(a, a) == 0);
        CHECK(f.add(0, a) == a);
    }
    CHECK(f.add(0x5, 0x3) == 0x6);
}

TEST_CASE("gf16 multiplication matches shift-and-xor oracle") {
    const FieldSpec& f = FieldSpec::gf16();
    for (uint16_t a = 0; a < 16; ++a)
        for (uint16_t b = 0; b < 16; ++b)
            CHECK(f.mul(a, b) == testutil::clmul_mod(a, b, f.primitive_poly(), 4));
}

TEST_CASE("gf16 multiplicative structure") {
    const FieldSpec& f = FieldSpec::gf16();
    for (uint16_t b = 0; b < 16; ++b) CHECK(f.mul(1, b) == b);
    for (uint16_t a = 1; a < 16; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(f.inv(0), DivisionByZero);
    CHECK_THROWS_AS(f.div(3, 0), DivisionByZero);
}

TEST_CASE("gf16 field axioms, exhaustive") {
    const FieldSpec& f = FieldSpec::gf16();
    for (uint16_t a = 0; a < 16; ++a) {
        for (uint16_t b = 0; b < 16; ++b) {
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), b) == a); // involution
            for (uint16_t c = 0; c < 16; ++c) {
                CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

TEST_CASE("gf256 axioms and oracle on random triples") {
    const FieldSpec& f = FieldSpec::gf256();
    CounterRng rng(7, 1);
    for (int i = 0; i < 10000; ++i) {
        auto a = static_cast<uint16_t>(rng.below(256));
        auto b = static_cast<uint16_t>(rng.below(256));
        auto c = static_cast<uint16_t>(rng.below(256));
        CHECK(f.mul(a, b) == testutil::clmul_mod(a, b, f.primitive_poly(), 8));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
}

TEST_CASE("pow is repeated multiplication") {
    const FieldSpec& f = FieldSpec::gf256();
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.pow(0, 5) == 0);
    for (uint16_t a : {2, 3, 19, 255}) {
        uint16_t acc = 1;
        for (uint64_t e = 0; e < 20; ++e) {
            CHECK(f.pow(a, e) == acc);
            acc = f.mul(acc, a);
        }
    }
}

TEST_CASE("alpha generates all nonzero elements") {
    for (const FieldSpec* f : {&FieldSpec::gf16(), &FieldSpec::gf256()}) {
        std::vector<bool> seen(f->order(), false);
        for (int i = 0; i < f->order() - 1; ++i) {
            uint16_t v = f->alpha_pow(i);
            CHECK(!seen[v]);
            seen[v] = true;
        }
        CHECK(!seen[0]);
    }
}

TEST_CASE("field elements from different fields do not mix") {
    FieldElement a(3, FieldSpec::gf16());
    FieldElement b(3, FieldSpec::gf256());
    CHECK_THROWS_AS(a + b, InvalidInput);
    CHECK_THROWS_AS(a * b, InvalidInput);
    FieldElement c(5, FieldSpec::gf16());
    CHECK((a + c).value == 0x6);
}

TEST_CASE("poly evaluation") {
    const FieldSpec& f = FieldSpec::gf16();
    Poly constant = Poly::constant(f, 9);
    Poly zero = Poly::zero(f);
    for (uint16_t x = 0; x < 16; ++x) {
        CHECK(constant.eval(x) == 9);
        CHECK(zero.eval(x) == 0);
    }
    CHECK(zero.degree() == -1);
    // Trailing zero coefficients normalize away.
    CHECK(Poly(f, {0, 0, 0}).is_zero());
    CHECK(Poly(f, {1, 2, 0}).degree() == 1);
}

TEST_CASE("poly scale and exact division") {
    const FieldSpec& f = FieldSpec::gf256();
    CounterRng rng(11, 2);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint16_t> ac(1 + rng.below(6)), bc(1 + rng.below(6));
        for (auto& v : ac) v = static_cast<uint16_t>(rng.below(256));
        for (auto& v : bc) v = static_cast<uint16_t>(rng.below(256));
        Poly a(f, ac), b(f, bc);
        if (b.is_zero()) continue;

        CHECK(a.scaled(1) == a);
        auto [q, r] = Poly::divmod(a * b, b);
        CHECK(q == a);
        CHECK(r.is_zero());
    }
}

TEST_CASE("poly divmod reconstructs the numerator") {
    const FieldSpec& f = FieldSpec::gf256();
    CounterRng rng(12, 3);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<uint16_t> nc(1 + rng.below(8)), dc(1 + rng.below(8));
        for (auto& v : nc) v = static_cast<uint16_t>(rng.below(256));
        for (auto& v : dc) v = static_cast<uint16_t>(rng.below(256));
        Poly num(f, nc), den(f, dc);
        if (den.is_zero()) continue;
        auto [q, r] = Poly::divmod(num, den);
        CHECK(q * den + r == num);
        if (!r.is_zero()) CHECK(r.degree() < den.degree());
    }
    CHECK_THROWS_AS(Poly::divmod(Poly::constant(f, 1), Poly::zero(f)), DivisionByZero);
}

TEST_CASE("lagrange interpolation") {
    const FieldSpec& f16 = FieldSpec::gf16();

    SUBCASE("single point gives a constant") {
        std::vector<std::pair<uint16_t, uint16_t>> pts = {{7, 11}};
        Poly p = lagrange_interpolate(f16, pts);
        CHECK(p == Poly::constant(f16, 11));
    }

    SUBCASE("line through sampled points") {
        // P(x) = 3x + 5 sampled at four x values.
        Poly line(f16, {5, 3});
        std::vector<std::pair<uint16_t, uint16_t>> pts;
        for (uint16_t x : {1, 2, 3, 4}) pts.emplace_back(x, line.eval(x));
        Poly p = lagrange_interpolate(f16, pts);
        CHECK(p.degree() <= 1);
        for (auto [x, y] : pts) CHECK(p.eval(x) == y);
        CHECK(p == line);
    }

    SUBCASE("twelve random points evaluate back") {
        CounterRng rng(13, 4);
        std::vector<std::pair<uint16_t, uint16_t>> pts;
        for (int i = 0; i < 12; ++i)
            pts.emplace_back(FieldSpec::gf16().alpha_pow(i), static_cast<uint16_t>(rng.below(16)));
        Poly p = lagrange_interpolate(f16, pts);
        CHECK(p.degree() < 12);
        for (auto [x, y] : pts) CHECK(p.eval(x) == y);
    }

    SUBCASE("duplicate x rejected") {
        std::vector<std::pair<uint16_t, uint16_t>> pts = {{3, 1}, {3, 2}};
        CHECK_THROWS_AS(lagrange_interpolate(f16, pts), InvalidInput);
    }
}

TEST_CASE("interpolation reproduces any sampled polynomial") {
    CounterRng rng(14, 5);
    for (const FieldSpec* f : {&FieldSpec::gf16(), &FieldSpec::gf256()}) {
        for (int trial = 0; trial < 60; ++trial) {
            int deg = static_cast<int>(rng.below(6));
            std::vector<uint16_t> coeffs(deg + 1);
            for (auto& v : coeffs) v = static_cast<uint16_t>(rng.below(f->order()));
            Poly p(*f, coeffs);
            int samples = std::max(p.degree() + 1, 1) + static_cast<int>(rng.below(3));
            std::vector<std::pair<uint16_t, uint16_t>> pts;
            for (int i = 0; i < samples; ++i) {
                uint16_t x = f->alpha_pow(i); // distinct for i < order-1
                pts.emplace_back(x, p.eval(x));
            }
            CHECK(lagrange_interpolate(*f, pts) == p);
        }
    }
}
