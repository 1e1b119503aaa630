#include <catch2/catch_amalgamated.hpp>

#include <fflab/fflab.hpp>

#include <vector>

using namespace fflab;

TEST_CASE("kernel decomposition reassembles the surface transform", "[kernels]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {3, 3}}) {
        auto f = Field::make_q(q);
        SigmaTransform sigma(f, d);
        CycloGrid total(f, 2 * d, Measure::Counting);
        for (int j = 1; j <= 5; ++j) {
            CycloGrid k = kernel_grid(sigma, j);
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += k[i];
        }
        total[0] += CycloValue::one(f->p());  // the delta at m = 0
        CycloGrid direct = sigma.as_grid();
        for (std::size_t i = 0; i < total.size(); ++i) REQUIRE(total[i] == direct[i]);
    }
}

TEST_CASE("kernel sup moduli take their closed-form values", "[kernels]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}, {5, 3}}) {
        auto f = Field::make_q(q);
        SigmaTransform sigma(f, d);
        for (int j : {1, 3}) {
            KernelStats s = kernel_stats(sigma, j);
            REQUIRE(s.zero);
            REQUIRE(s.sup_sq == Rational(0));
        }
        for (int j : {2, 5}) {
            KernelStats s = kernel_stats(sigma, j);
            REQUIRE(s.sup_exact);
            REQUIRE(s.sup_sq == Rational(1) / pow_of(q, 2 * d - 2));
        }
        KernelStats s4 = kernel_stats(sigma, 4);
        REQUIRE(s4.sup_exact);
        REQUIRE(s4.sup_sq == Rational(1) / pow_of(q, d - 1));
    }
}

TEST_CASE("kernel hat sups respect the explicit constants", "[kernels]") {
    // Compared in squares: |K4^| <= 2q and |K2^|, |K5^| <= 4 q^2.
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {3, 3}}) {
        auto f = Field::make_q(q);
        SigmaTransform sigma(f, d);
        REQUIRE(kernel_stats(sigma, 4).hat_sup_sq <= Rational(4) * pow_of(q, 2));
        REQUIRE(kernel_stats(sigma, 2).hat_sup_sq <= Rational(16) * pow_of(q, 4));
        REQUIRE(kernel_stats(sigma, 5).hat_sup_sq <= Rational(16) * pow_of(q, 4));
    }
}

TEST_CASE("membership-sum form of the second kernel hat", "[kernels]") {
    // K2^(x) = q * #{y_d : x + y_d e_d in F} - #{(y_d, y_2d) : both shifts in F},
    // expressed by the closed form; compare against transforming K2 directly.
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {5, 2}}) {
        auto f = Field::make_q(q);
        auto F = flat_disk(f, d);
        SigmaTransform sigma(f, d);
        CycloGrid k2 = kernel_grid(sigma, 2);
        // kernel grids live on the frequency side (counting measure).
        CycloGrid k2hat = fourier_forward(k2);
        std::vector<std::uint16_t> x(2 * d, 0);
        for (std::size_t xi = 0;; ++xi) {
            REQUIRE(k2hat[xi].as_rational() == kernel2_hat_sum_form(F, x));
            int i = 2 * d - 1;
            while (i >= 0 && ++x[i] == q) x[i--] = 0;
            if (i < 0) break;
        }
    }
}

TEST_CASE("kernel report passes end to end", "[kernels][checks]") {
    for (auto [q, d] : std::vector<std::pair<long, int>>{{3, 2}, {3, 3}}) {
        auto f = Field::make_q(q);
        Report rep = check_kernels(f, d);
        CAPTURE(rep.to_json().dump(2));
        REQUIRE(rep.pass());
    }
}
