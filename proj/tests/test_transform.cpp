#include <catch2/catch_amalgamated.hpp>

#include <fflab/fflab.hpp>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

using namespace fflab;

TEST_CASE("fast transform equals the direct-definition oracle exactly", "[transform]") {
    const std::vector<std::pair<long, int>> cases{{3, 2}, {3, 3}, {5, 2}, {7, 2}, {9, 2}};
    for (auto [q, n] : cases) {
        auto f = Field::make_q(q);
        Rng rng(0xfa57 + static_cast<std::uint64_t>(q * 16 + n));
        CycloGrid g = random_cyclo_grid(f, n, Measure::Counting, rng);
        CycloGrid fast = fourier_forward(g);
        CycloGrid slow = naive_fourier_forward(g);
        for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(fast[i] == slow[i]);

        CycloGrid h = random_cyclo_grid(f, n, Measure::Normalized, rng);
        CycloGrid inv_fast = inverse_transform(h);
        CycloGrid inv_slow = naive_inverse_transform(h);
        for (std::size_t i = 0; i < h.size(); ++i) REQUIRE(inv_fast[i] == inv_slow[i]);
    }
}

TEST_CASE("int128 kernel path agrees with the generic axis pass", "[transform]") {
    // unnormalized_transform takes the fixed-width path whenever the growth
    // bound fits; replaying the per-axis passes with the arbitrary-precision
    // kernel must give identical values.
    for (auto [q, n] : std::vector<std::pair<long, int>>{{3, 4}, {5, 2}, {9, 2}, {25, 2}}) {
        auto f = Field::make_q(q);
        Rng rng(0x128 + static_cast<std::uint64_t>(q * 8 + n));
        CycloGrid g = random_cyclo_grid(f, n, Measure::Counting, rng);
        std::vector<CycloValue> fixed = g.values();
        detail::unnormalized_transform(fixed, f, n, true);

        std::vector<CycloValue> generic = g.values();
        const auto& ct = character_tables(f);
        std::size_t stride = 1;
        for (int i = 0; i < n - 1; ++i) stride *= static_cast<std::size_t>(q);
        for (int axis = 0; axis < n; ++axis) {
            detail::axis_pass(generic, *f, q, stride, ct.exp_neg.data(), ct);
            stride /= static_cast<std::size_t>(q);
        }
        for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(fixed[i] == generic[i]);
    }
}

TEST_CASE("float transform stays within 1e-10 of the oracle", "[transform]") {
    for (auto [q, n] : std::vector<std::pair<long, int>>{{5, 2}, {3, 4}, {9, 2}}) {
        auto f = Field::make_q(q);
        Rng rng(0xf10a7 + static_cast<std::uint64_t>(q));
        ComplexGrid g = random_complex_grid(f, n, Measure::Counting, rng);
        REQUIRE(max_abs_diff(fourier_forward(g), naive_fourier_forward(g)) < 1e-10);
    }
}

TEST_CASE("inversion round-trips on both sides", "[transform]") {
    for (auto [q, n] : std::vector<std::pair<long, int>>{{3, 3}, {5, 2}, {9, 2}}) {
        auto f = Field::make_q(q);
        Rng rng(0x1f + static_cast<std::uint64_t>(q * 32 + n));
        CycloGrid g = random_cyclo_grid(f, n, Measure::Counting, rng);
        CycloGrid back = inverse_transform(fourier_forward(g));
        for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(back[i] == g[i]);

        CycloGrid h = random_cyclo_grid(f, n, Measure::Normalized, rng);
        CycloGrid hback = fourier_forward(inverse_transform(h));
        for (std::size_t i = 0; i < h.size(); ++i) REQUIRE(hback[i] == h[i]);
    }
}

TEST_CASE("plancherel identity in the counting normalization", "[transform]") {
    // sum_m |g(m)|^2 = q^{-n} sum_x |g^(x)|^2, exactly.
    for (auto [q, n] : std::vector<std::pair<long, int>>{{3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
        auto f = Field::make_q(q);
        Rng rng(0x91a + static_cast<std::uint64_t>(q * 4 + n));
        CycloGrid g = random_cyclo_grid(f, n, Measure::Counting, rng);
        CycloGrid ghat = fourier_forward(g);
        // each |.|^2 lies in the real subfield; the identity holds there
        CycloValue lhs(f->p()), rhs(f->p());
        for (std::size_t i = 0; i < g.size(); ++i) lhs += g[i].modulus_squared();
        for (std::size_t i = 0; i < ghat.size(); ++i) rhs += ghat[i].modulus_squared();
        rhs *= Rational(1) / pow_of(q, n);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("transform is linear over the rationals", "[transform][property]") {
    auto f = Field::make_q(5);
    const int n = 2;
    Rng rng(0x11e4);
    for (int t = 0; t < 20; ++t) {
        CycloGrid g1 = random_cyclo_grid(f, n, Measure::Counting, rng);
        CycloGrid g2 = random_cyclo_grid(f, n, Measure::Counting, rng);
        CycloValue a = CycloValue::from_rational(5, make_rational(rng.int_in(-5, 5), 3));
        CycloValue b = CycloValue::from_rational(5, Rational(rng.int_in(-4, 4)));
        CycloGrid comb(f, n, Measure::Counting);
        for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = g1[i] * a + g2[i] * b;
        CycloGrid lhs = fourier_forward(comb);
        CycloGrid h1 = fourier_forward(g1), h2 = fourier_forward(g2);
        for (std::size_t i = 0; i < lhs.size(); ++i) REQUIRE(lhs[i] == h1[i] * a + h2[i] * b);
    }
}

TEST_CASE("convolution via the transform equals the direct sum", "[transform]") {
    for (auto [q, n] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}}) {
        auto f = Field::make_q(q);
        Rng rng(static_cast<std::uint64_t>(0xc0 + q));
        CycloGrid g1 = random_cyclo_grid(f, n, Measure::Counting, rng);
        CycloGrid g2 = random_cyclo_grid(f, n, Measure::Counting, rng);
        CycloGrid fastc = convolve_counting(g1, g2);
        CycloGrid slowc = naive_convolve_counting(g1, g2);
        for (std::size_t i = 0; i < fastc.size(); ++i) REQUIRE(fastc[i] == slowc[i]);

        CycloGrid f1 = random_cyclo_grid(f, n, Measure::Normalized, rng);
        CycloGrid f2 = random_cyclo_grid(f, n, Measure::Normalized, rng);
        CycloGrid fastn = convolve_normalized(f1, f2);
        CycloGrid slown = naive_convolve_normalized(f1, f2);
        for (std::size_t i = 0; i < fastn.size(); ++i) REQUIRE(fastn[i] == slown[i]);
    }
}

TEST_CASE("convolution norm inequalities on random inputs", "[transform][property]") {
    // Two instances of Young's inequality in the counting normalization:
    // ||f*g||_inf <= ||f||_2 ||g||_2 and ||f*g||_1 <= ||f||_1 ||g||_1.
    for (long q : {3L, 5L}) {
        auto f = Field::make_q(q);
        Rng rng(0x404 + static_cast<std::uint64_t>(q));
        for (int t = 0; t < 10; ++t) {
            ComplexGrid g1 = random_complex_grid(f, 2, Measure::Counting, rng);
            ComplexGrid g2 = random_complex_grid(f, 2, Measure::Counting, rng);
            ComplexGrid conv = convolve_counting(g1, g2);
            double slack = 1e-9;
            REQUIRE(lp_norm(conv, LpExp::infinity()) <=
                    lp_norm(g1, Rational(2)) * lp_norm(g2, Rational(2)) + slack);
            REQUIRE(lp_norm(conv, Rational(1)) <=
                    lp_norm(g1, Rational(1)) * lp_norm(g2, Rational(1)) + slack);
        }
    }
}

TEST_CASE("surface-measure transform normalizes total mass to one", "[transform]") {
    auto f = Field::make_q(5);
    auto v = flat_disk(f, 2);
    CycloGrid sigma = surface_measure(v).as_grid<CycloValue>();
    CycloGrid inv = inverse_transform(sigma);
    // (d sigma)v(0) = average of chi(0) over the variety = 1.
    REQUIRE(inv[0] == CycloValue::one(5));
    CycloGrid slow = naive_inverse_transform(sigma);
    for (std::size_t i = 0; i < inv.size(); ++i) REQUIRE(inv[i] == slow[i]);
}

TEST_CASE("measure tags are enforced", "[transform]") {
    auto f = Field::make_q(3);
    CycloGrid counting(f, 2, Measure::Counting);
    CycloGrid normalized(f, 2, Measure::Normalized);
    REQUIRE_THROWS_AS(fourier_forward(normalized), std::invalid_argument);
    REQUIRE_THROWS_AS(inverse_transform(counting), std::invalid_argument);
    REQUIRE_THROWS_AS(convolve_counting(counting, normalized), std::invalid_argument);
}
