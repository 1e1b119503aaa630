#include <catch2/catch_amalgamated.hpp>

#include <fflab/fflab.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace fflab;

TEST_CASE("cyclotomic values reduce to the power basis 1..zeta^{p-2}", "[cyclo]") {
    for (int p : {3, 5, 7, 11, 13}) {
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
        CycloValue top = CycloValue::root_power(p, p - 1);
        CycloValue expect(p);
        for (int e = 0; e <= p - 2; ++e) expect.add_monomial(e, Rational(-1));
        REQUIRE(top == expect);
        // zeta^p = 1 and exponents reduce mod p.
        REQUIRE(CycloValue::root_power(p, p) == CycloValue::one(p));
        REQUIRE(CycloValue::root_power(p, p + 3) == CycloValue::root_power(p, 3));
        REQUIRE(CycloValue::root_power(p, -1) == CycloValue::root_power(p, p - 1));
        // 1 + zeta + ... + zeta^{p-1} = 0.
        CycloValue s(p);
        for (int e = 0; e < p; ++e) s += CycloValue::root_power(p, e);
        REQUIRE(s == CycloValue(p));
    }
}

TEST_CASE("cyclotomic ring operations agree with complex evaluation", "[cyclo][property]") {
    Rng rng(0xc1c10);
    for (int p : {3, 5, 7}) {
        for (int t = 0; t < 200; ++t) {
            CycloValue a(p), b(p);
            for (int e = 0; e <= p - 2; ++e) {
                a.add_monomial(e, Rational(rng.int_in(-4, 4)));
                b.add_monomial(e, Rational(rng.int_in(-4, 4)));
            }
            auto za = a.to_complex(), zb = b.to_complex();
            REQUIRE(std::abs((a + b).to_complex() - (za + zb)) < 1e-9);
            REQUIRE(std::abs((a * b).to_complex() - (za * zb)) < 1e-9);
            REQUIRE(std::abs(a.conj().to_complex() - std::conj(za)) < 1e-9);
            // |a|^2 lives in the real subfield; compare through evaluation
            REQUIRE(std::abs(a.modulus_squared().to_complex() -
                             std::complex<double>(std::norm(za), 0.0)) < 1e-8);
        }
    }
}

TEST_CASE("rational detection and extraction", "[cyclo]") {
    CycloValue r = CycloValue::from_rational(5, make_rational(7, 3));
    REQUIRE(r.is_rational());
    REQUIRE(r.as_rational() == make_rational(7, 3));
    CycloValue z = CycloValue::root_power(5, 1);
    REQUIRE_FALSE(z.is_rational());
    REQUIRE_THROWS_AS(z.as_rational(), std::domain_error);
    // |chi| = 1 for every character value.
    auto f = Field::make_q(25);
    for (long i = 0; i < 25; ++i)
        REQUIRE(chi(f->element(i)).modulus_squared_rational() == Rational(1));
}

TEST_CASE("character sum orthogonality", "[cyclo]") {
    for (long q : {3L, 9L, 25L, 27L}) {
        auto f = Field::make_q(q);
        REQUIRE(char_sum_orthogonality(*f, f->zero()) ==
                CycloValue::from_rational(f->p(), Rational(q)));
        for (long a = 1; a < q; ++a)
            REQUIRE(char_sum_orthogonality(*f, f->element(a)) == CycloValue(f->p()));
    }
}

TEST_CASE("additive character is a homomorphism", "[cyclo][property]") {
    for (long q : {9L, 27L, 49L}) {
        auto f = Field::make_q(q);
        Rng rng(0xadd + static_cast<std::uint64_t>(q));
        for (int t = 0; t < 300; ++t) {
            FieldElement a = f->element(rng.int_in(0, q - 1));
            FieldElement b = f->element(rng.int_in(0, q - 1));
            REQUIRE(chi(a) * chi(b) == chi(a + b));
        }
    }
}

TEST_CASE("gauss sum square, modulus, and conjugate", "[gauss]") {
    for (long q : {3L, 5L, 7L, 9L, 11L, 13L, 25L, 27L, 49L}) {
        auto f = Field::make_q(q);
        GaussSum g = gauss_sum(f);
        const int em1 = eta(-f->one());
        // G^2 = eta(-1) q.
        REQUIRE(g.value * g.value == CycloValue::from_rational(f->p(), Rational(em1) * Rational(q)));
        // |G|^2 = q.
        REQUIRE(g.value.modulus_squared_rational() == Rational(q));
        // conj(G) = eta(-1) G.
        REQUIRE(g.value.conj() == g.value * CycloValue::from_rational(f->p(), Rational(em1)));
    }
}

TEST_CASE("gauss sum over F_3 in closed coordinates", "[gauss]") {
    // G = chi(1) - chi(2) = zeta - zeta^2 = 1 + 2 zeta on the basis {1, zeta},
    // so G = i sqrt(3) and G^2 = -3.
    auto f = Field::make_q(3);
    GaussSum g = gauss_sum(f);
    auto c = g.value.coeffs();
    REQUIRE(c.size() == 2);
    REQUIRE(c[0] == Rational(1));
    REQUIRE(c[1] == Rational(2));
    REQUIRE(g.value * g.value == CycloValue::from_rational(3, Rational(-3)));
    std::complex<double> z = g.value.to_complex();
    REQUIRE(std::abs(z - std::complex<double>(0.0, std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("completing the square matches direct summation exhaustively", "[gauss]") {
    for (long q : {3L, 5L, 7L, 9L, 25L, 27L}) {
        auto f = Field::make_q(q);
        GaussSum g = gauss_sum(f);
        for (long ai = 0; ai < q; ++ai)
            for (long bi = 0; bi < q; ++bi) {
                FieldElement a = f->element(ai), b = f->element(bi);
                CycloValue direct(f->p());
                for (long t = 0; t < q; ++t) {
                    FieldElement tt = f->element(t);
                    direct += chi(a * tt * tt + b * tt);
                }
                REQUIRE(quad_sum(g, a, b) == direct);
            }
    }
}

TEST_CASE("gauss powers multiply exactly", "[gauss]") {
    auto f = Field::make_q(7);
    GaussSum g = gauss_sum(f);
    CycloValue acc = CycloValue::one(7);
    for (unsigned k = 0; k <= 5; ++k) {
        REQUIRE(gauss_power(g, k) == acc);
        acc = acc * g.value;
    }
}
