#pragma once

// Report-producing verification routines shared by the command-line driver
// and the acceptance suite.  Each function builds a Report whose checks carry
// a measured value, an expected value, and a pass flag; callers decide how to
// render or persist the result.

#include <array>
#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "exponents.hpp"
#include "json_io.hpp"
#include "normlab.hpp"
#include "oracle.hpp"
#include "report.hpp"

namespace fflab {

namespace detail {

inline std::string count_str(long ok, long total) {
    return std::to_string(ok) + "/" + std::to_string(total);
}

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::size_t grid_size(long q, int n) {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(q);
    return s;
}

// Direct evaluation of (g1 * g2)(x) from the definition, used to spot-check
// convolution results on grids too large for the full quadratic oracle.
template <class T>
inline T convolution_at(const GridFunction<T>& g1, const GridFunction<T>& g2, std::size_t x) {
    const auto& f = *g1.field();
    const int n = g1.n();
    const std::size_t size = g1.size();
    std::vector<std::uint16_t> xs = g1.decode(x);
    std::vector<std::uint16_t> ks(n, 0);
    T acc = value_traits<T>::zero(f);
    for (std::size_t k = 0; k < size; ++k) {
        std::size_t didx = 0;
        for (int i = 0; i < n; ++i)
            didx = didx * static_cast<std::size_t>(f.q()) + f.add_idx(xs[i], f.neg_idx(ks[i]));
        acc += g1[didx] * g2[k];
        for (int i = n - 1; i >= 0; --i) {
            if (++ks[i] < f.q()) break;
            ks[i] = 0;
        }
    }
    return acc;
}

} // namespace detail

// ---------------------------------------------------------------------------
// verify oracle: closed-form surface transform against the brute-force sum.
// ---------------------------------------------------------------------------

inline Report check_oracle(const FieldPtr& f, int d) {
    Report rep;
    rep.command = "verify oracle";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}, {"d", d}};

    // The partition constructor cross-checks every class size against its
    // closed form by exhaustive enumeration and throws on mismatch.
    bool sizes_ok = true;
    std::string sizes_msg = "all class sizes match closed forms";
    try {
        OmegaPartition part(f, d);
    } catch (const std::exception& e) {
        sizes_ok = false;
        sizes_msg = e.what();
    }
    rep.add("frequency_partition_sizes", sizes_msg, "exhaustive counts equal closed forms", sizes_ok);

    SigmaVerification v = verify_sigma_ft(f, d);
    rep.add("closed_form_equals_bruteforce",
            std::to_string(v.mismatches) + " mismatches over " + std::to_string(v.points_checked) + " points",
            "0 mismatches", v.pass);
    if (!v.first_mismatch.empty()) rep.extra["first_mismatch"] = v.first_mismatch;

    std::string devs;
    bool all_zero = true;
    for (int j = 0; j < 6; ++j) {
        if (j) devs += ",";
        devs += v.per_class_max_dev[j];
        all_zero = all_zero && v.per_class_max_dev[j] == "0";
    }
    rep.add("per_class_max_deviation", devs, "0,0,0,0,0,0", all_zero);

    SigmaTransform sigma(f, d);
    DecayProfile dec = decay_profile(sigma);
    Rational expect = Rational(1) / pow_of(f->q(), d - 1);
    rep.add("decay_max_modulus_squared", rational_str(dec.max_sq), rational_str(expect),
            dec.all_moduli_rational && dec.max_sq == expect);

    std::string attained;
    for (int j = 0; j < 6; ++j) {
        if (dec.attained[j]) {
            if (!attained.empty()) attained += ",";
            attained += std::to_string(j);
        }
    }
    rep.add("decay_attained_classes", attained.empty() ? "none" : attained, "4",
            attained == "4");
    return rep;
}

// ---------------------------------------------------------------------------
// verify gauss: Gauss-sum identities and completed-square character sums.
// ---------------------------------------------------------------------------

inline Report check_gauss(const FieldPtr& f) {
    Report rep;
    rep.command = "verify gauss";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}};

    const long q = f->q();
    GaussSum G = gauss_sum(f);
    const int eta_m1 = f->eta_idx(f->neg_idx(1));

    CycloValue g2 = G.value * G.value;
    Rational g2_expect = Rational(eta_m1) * Rational(q);
    bool g2_ok = g2 == CycloValue::from_rational(f->p(), g2_expect);
    rep.add("gauss_square", g2.is_rational() ? rational_str(g2.as_rational()) : g2.str(),
            rational_str(g2_expect), g2_ok);

    CycloValue ms = G.value.modulus_squared();
    bool ms_ok = ms == CycloValue::from_rational(f->p(), Rational(q));
    rep.add("gauss_modulus_squared", ms.is_rational() ? rational_str(ms.as_rational()) : ms.str(),
            std::to_string(q), ms_ok);

    CycloValue conj_expect = G.value;
    conj_expect *= Rational(eta_m1);
    bool conj_ok = G.value.conj() == conj_expect;
    rep.add("gauss_conjugate", conj_ok ? "conj(G) == eta(-1)*G" : "relation violated",
            "conj(G) == eta(-1)*G", conj_ok);

    // Completed-square identity for sum_t chi(a t^2 + b t): exhaustive over
    // all (a, b) on small fields, seeded sample on larger ones.
    long pairs_total = 0, pairs_ok = 0;
    auto check_pair = [&](std::uint16_t ai, std::uint16_t bi) {
        CycloValue direct(f->p());
        for (long t = 0; t < q; ++t) {
            auto ti = static_cast<std::uint16_t>(t);
            std::uint16_t val = f->add_idx(f->mul_idx(ai, f->mul_idx(ti, ti)), f->mul_idx(bi, ti));
            direct.add_monomial(f->trace_idx(val), Rational(1));
        }
        CycloValue closed = quad_sum(G, f->element(ai), f->element(bi));
        ++pairs_total;
        if (direct == closed) ++pairs_ok;
    };
    if (q <= 27) {
        for (long a = 0; a < q; ++a)
            for (long b = 0; b < q; ++b)
                check_pair(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b));
    } else {
        Rng rng(static_cast<std::uint64_t>(q) * 1315423911u);
        for (int i = 0; i < 200; ++i)
            check_pair(static_cast<std::uint16_t>(rng.below(static_cast<std::uint64_t>(q))),
                       static_cast<std::uint16_t>(rng.below(static_cast<std::uint64_t>(q))));
    }
    rep.add(q <= 27 ? "completed_square_exhaustive" : "completed_square_sampled",
            detail::count_str(pairs_ok, pairs_total) + " pairs exact",
            detail::count_str(pairs_total, pairs_total), pairs_ok == pairs_total);
    return rep;
}

// ---------------------------------------------------------------------------
// verify kernels: decomposition, decay split, and kernel Fourier bounds.
// ---------------------------------------------------------------------------

inline Report check_kernels(const FieldPtr& f, int d) {
    Report rep;
    rep.command = "verify kernels";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}, {"d", d}};

    const long q = f->q();
    const int n = 2 * d;
    SigmaTransform sigma(f, d);
    auto F = flat_disk(f, d);

    std::array<KernelStats, 6> stats;
    CycloGrid sum(f, n, Measure::Counting);
    sum[0] = CycloValue::one(f->p());
    for (int j = 1; j <= 5; ++j) {
        stats[j] = kernel_stats(sigma, j);
        CycloGrid K = kernel_grid(sigma, j);
        for (std::size_t i = 0; i < K.size(); ++i) sum[i] += K[i];
    }

    rep.add("kernel1_vanishes", stats[1].zero ? "identically zero" : "nonzero entry found",
            "identically zero", stats[1].zero);
    rep.add("kernel3_vanishes", stats[3].zero ? "identically zero" : "nonzero entry found",
            "identically zero", stats[3].zero);

    Rational small = Rational(1) / pow_of(q, 2 * d - 2);
    Rational big = Rational(1) / pow_of(q, d - 1);
    auto sup_check = [&](int j, const Rational& expect, const char* name) {
        bool ok = stats[j].sup_exact && stats[j].sup_sq == expect;
        rep.add(name,
                stats[j].sup_exact ? rational_str(stats[j].sup_sq) : format_double(stats[j].sup_float),
                rational_str(expect), ok);
    };
    sup_check(2, small, "kernel2_sup_modulus_squared");
    sup_check(4, big, "kernel4_sup_modulus_squared");
    sup_check(5, small, "kernel5_sup_modulus_squared");

    // Fourier-side sup bounds, stated on |K_j^|: |K4^| <= 2q and
    // |K2^|, |K5^| <= 4q^2; compared in squared modulus.
    auto hat_check = [&](int j, const Rational& bound_sq, const char* name, const std::string& label) {
        bool ok = stats[j].hat_exact ? stats[j].hat_sup_sq <= bound_sq
                                     : stats[j].hat_sup_float * stats[j].hat_sup_float <=
                                           to_double(bound_sq) * (1.0 + 1e-9);
        std::string measured = stats[j].hat_exact ? rational_str(stats[j].hat_sup_sq)
                                                  : format_double(stats[j].hat_sup_float *
                                                                  stats[j].hat_sup_float);
        rep.add(name, "sup |hat K|^2 = " + measured, label, ok);
    };
    hat_check(4, Rational(4) * Rational(q) * Rational(q), "kernel4_hat_bound", "<= 4*q^2");
    Rational q4 = Rational(q) * Rational(q) * Rational(q) * Rational(q);
    hat_check(2, Rational(16) * q4, "kernel2_hat_bound", "<= 16*q^4");
    hat_check(5, Rational(16) * q4, "kernel5_hat_bound", "<= 16*q^4");

    CycloGrid sig = sigma.as_grid();
    bool decomp = grids_equal(sum, sig);
    rep.add("delta_plus_kernels_equals_transform", decomp ? "exact equality at all points" : "mismatch",
            "exact equality", decomp);

    // Closed forms for the Fourier transform of the class indicators.
    for (int j : {2, 4, 5}) {
        CycloGrid ind(f, n, Measure::Counting);
        std::vector<std::uint16_t> pt(n, 0);
        for (std::size_t i = 0; i < ind.size(); ++i) {
            if (omega_classify(pt, d) == j) ind[i] = CycloValue::one(f->p());
            for (int k = n - 1; k >= 0; --k) {
                if (++pt[k] < f->q()) break;
                pt[k] = 0;
            }
        }
        CycloGrid ind_hat = fourier_forward(ind);
        std::size_t bad = 0;
        std::vector<std::uint16_t> y(n, 0);
        for (std::size_t i = 0; i < ind_hat.size(); ++i) {
            Rational expect = omega_hat_closed(f, d, j, y);
            if (!(ind_hat[i] == CycloValue::from_rational(f->p(), expect))) ++bad;
            for (int k = n - 1; k >= 0; --k) {
                if (++y[k] < f->q()) break;
                y[k] = 0;
            }
        }
        rep.add("indicator" + std::to_string(j) + "_hat_closed_form",
                std::to_string(bad) + " mismatches over " + std::to_string(ind_hat.size()) + " points",
                "0 mismatches", bad == 0);
    }

    // Membership-count expansion of the second kernel's Fourier transform.
    {
        CycloGrid K2 = kernel_grid(sigma, 2);
        CycloGrid K2hat = fourier_forward(K2);
        std::size_t bad = 0;
        std::vector<std::uint16_t> x(n, 0);
        for (std::size_t i = 0; i < K2hat.size(); ++i) {
            Rational expect = kernel2_hat_sum_form(F, x);
            if (!(K2hat[i] == CycloValue::from_rational(f->p(), expect))) ++bad;
            for (int k = n - 1; k >= 0; --k) {
                if (++x[k] < f->q()) break;
                x[k] = 0;
            }
        }
        rep.add("kernel2_hat_membership_sum",
                std::to_string(bad) + " mismatches over " + std::to_string(K2hat.size()) + " points",
                "0 mismatches", bad == 0);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// verify transform: fast path against the quadratic path, plus inversion,
// linearity, and Plancherel on random inputs.
// ---------------------------------------------------------------------------

inline Report check_transform(const FieldPtr& f, int n, int trials, std::uint64_t seed,
                              const std::string& backend) {
    Report rep;
    rep.command = "verify transform";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}, {"n", n},
                  {"trials", trials}, {"seed", seed}, {"backend", backend}};

    const std::size_t size = detail::grid_size(f->q(), n);
    const bool do_cyclo = backend == "cyclo" || backend == "both";
    const bool do_complex = backend == "complex" || backend == "both";
    const bool naive_cyclo = size <= 729;
    const bool naive_complex = size <= 6561;

    if (do_cyclo) {
        long naive_ok = 0, inv_ok = 0, plan_ok = 0, lin_ok = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng(seed).child(static_cast<std::uint64_t>(t));
            CycloGrid g = random_cyclo_grid(f, n, Measure::Counting, rng);
            CycloGrid ghat = fourier_forward(g);
            if (naive_cyclo) {
                if (grids_equal(ghat, naive_fourier_forward(g))) ++naive_ok;
            } else {
                ++naive_ok;
            }
            if (grids_equal(inverse_transform(ghat), g)) ++inv_ok;

            // Plancherel with the weights used here:
            // sum_x |g|^2 = q^{-n} sum_m |ghat|^2.
            CycloValue lhs = CycloValue(f->p());
            for (std::size_t i = 0; i < size; ++i) lhs += g[i].modulus_squared();
            CycloValue rhs = CycloValue(f->p());
            for (std::size_t i = 0; i < size; ++i) rhs += ghat[i].modulus_squared();
            rhs *= Rational(1, static_cast<long>(size));
            if (lhs == rhs) ++plan_ok;

            CycloGrid h = random_cyclo_grid(f, n, Measure::Counting, rng);
            Rational a(rng.int_in(-4, 4));
            Rational b(rng.int_in(-4, 4));
            CycloGrid comb(f, n, Measure::Counting);
            for (std::size_t i = 0; i < size; ++i) {
                CycloValue v = g[i];
                v *= a;
                CycloValue w = h[i];
                w *= b;
                v += w;
                comb[i] = v;
            }
            CycloGrid chat = fourier_forward(comb);
            CycloGrid hhat = fourier_forward(h);
            bool lin = true;
            for (std::size_t i = 0; i < size && lin; ++i) {
                CycloValue v = ghat[i];
                v *= a;
                CycloValue w = hhat[i];
                w *= b;
                v += w;
                lin = chat[i] == v;
            }
            if (lin) ++lin_ok;
        }
        rep.add(naive_cyclo ? "cyclo_fast_equals_naive" : "cyclo_fast_equals_naive_skipped_large",
                detail::count_str(naive_ok, trials), detail::count_str(trials, trials),
                naive_ok == trials);
        rep.add("cyclo_inversion_roundtrip", detail::count_str(inv_ok, trials),
                detail::count_str(trials, trials), inv_ok == trials);
        rep.add("cyclo_plancherel", detail::count_str(plan_ok, trials),
                detail::count_str(trials, trials), plan_ok == trials);
        rep.add("cyclo_linearity", detail::count_str(lin_ok, trials),
                detail::count_str(trials, trials), lin_ok == trials);
    }

    if (do_complex) {
        const double tol = 1e-10;
        long naive_ok = 0, inv_ok = 0, plan_ok = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng(seed).child(0x100000 + static_cast<std::uint64_t>(t));
            ComplexGrid g = random_complex_grid(f, n, Measure::Counting, rng);
            ComplexGrid ghat = fourier_forward(g);
            double scale = 0.0;
            for (std::size_t i = 0; i < size; ++i) scale = std::max(scale, std::abs(ghat[i]));
            if (naive_complex) {
                ComplexGrid slow = naive_fourier_forward(g);
                if (max_abs_diff(ghat, slow) <= tol * std::max(1.0, scale)) ++naive_ok;
            } else {
                ++naive_ok;
            }
            ComplexGrid back = inverse_transform(ghat);
            if (max_abs_diff(back, g) <= tol) ++inv_ok;
            double lhs = 0.0, rhs = 0.0;
            for (std::size_t i = 0; i < size; ++i) lhs += std::norm(g[i]);
            for (std::size_t i = 0; i < size; ++i) rhs += std::norm(ghat[i]);
            rhs /= static_cast<double>(size);
            if (detail::rel_close(lhs, rhs, tol)) ++plan_ok;
        }
        rep.add(naive_complex ? "complex_fast_equals_naive" : "complex_fast_equals_naive_skipped_large",
                detail::count_str(naive_ok, trials), detail::count_str(trials, trials),
                naive_ok == trials);
        rep.add("complex_inversion_roundtrip", detail::count_str(inv_ok, trials),
                detail::count_str(trials, trials), inv_ok == trials);
        rep.add("complex_plancherel", detail::count_str(plan_ok, trials),
                detail::count_str(trials, trials), plan_ok == trials);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// verify identities: Plancherel, inversion, convolution, adjointness, and the
// restriction/extension composition identity on the flat disk.
// ---------------------------------------------------------------------------

inline Report check_identities(const FieldPtr& f, int d, int trials, std::uint64_t seed,
                               const std::string& backend) {
    Report rep;
    rep.command = "verify identities";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}, {"d", d},
                  {"trials", trials}, {"seed", seed}, {"backend", backend}};

    const int n = 2 * d;
    auto F = flat_disk(f, d);
    SurfaceMeasure sm = surface_measure(F);
    const std::size_t size = detail::grid_size(f->q(), n);
    const bool do_cyclo = backend == "cyclo" || backend == "both";
    const bool do_complex = backend == "complex" || backend == "both";
    const bool full_conv_cyclo = size <= 729;
    const bool full_conv_complex = size <= 6561;
    const int conv_samples = 3;

    if (do_cyclo) {
        CycloGrid sigma_inv = inverse_transform(sm.as_grid<CycloValue>());
        CycloGrid sigma_inv_hat = fourier_forward(sigma_inv);
        long plan_ok = 0, inv_ok = 0, conv_ok = 0, adj_ok = 0, rr_ok = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng(seed).child(static_cast<std::uint64_t>(t));
            CycloGrid g = random_cyclo_grid(f, n, Measure::Counting, rng);
            CycloGrid ghat = fourier_forward(g);

            if (inner_product_exact(ghat, ghat) == inner_product_exact(g, g)) ++plan_ok;
            if (grids_equal(inverse_transform(ghat), g)) ++inv_ok;

            {
                CycloGrid g2 = random_cyclo_grid(f, n, Measure::Counting, rng);
                CycloGrid conv = inverse_transform(pointwise_mul(ghat, fourier_forward(g2)));
                bool ok;
                if (full_conv_cyclo) {
                    ok = grids_equal(conv, naive_convolve_counting(g, g2));
                } else {
                    ok = true;
                    for (int s = 0; s < conv_samples && ok; ++s) {
                        auto x = static_cast<std::size_t>(rng.below(size));
                        ok = conv[x] == detail::convolution_at(g, g2, x);
                    }
                }
                if (ok) ++conv_ok;
            }

            CycloGrid fV = random_cyclo_grid(f, n, Measure::Surface, rng, F);
            CycloGrid rg(f, n, Measure::Surface, F);
            for (auto i : F->points) rg[i] = ghat[i];
            CycloGrid ext = extend(fV);
            if (inner_product_exact(rg, fV) == inner_product_exact(g, ext)) ++adj_ok;

            CycloValue lhs = inner_product_exact(rg, rg);
            CycloGrid conv_sigma = inverse_transform(pointwise_mul(ghat, sigma_inv_hat));
            if (lhs == inner_product_exact(g, conv_sigma)) ++rr_ok;
        }
        auto row = [&](const std::string& name, long ok) {
            rep.add(name, detail::count_str(ok, trials) + " exact",
                    detail::count_str(trials, trials), ok == trials);
        };
        row("cyclo_plancherel", plan_ok);
        row("cyclo_inversion", inv_ok);
        row(full_conv_cyclo ? "cyclo_convolution_full" : "cyclo_convolution_sampled", conv_ok);
        row("cyclo_adjointness", adj_ok);
        row("cyclo_restriction_composition", rr_ok);
    }

    if (do_complex) {
        const double tol = 1e-10;
        ComplexGrid sigma_inv = inverse_transform(sm.as_grid<std::complex<double>>());
        ComplexGrid sigma_inv_hat = fourier_forward(sigma_inv);
        long plan_ok = 0, inv_ok = 0, conv_ok = 0, adj_ok = 0, rr_ok = 0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng(seed).child(0x200000 + static_cast<std::uint64_t>(t));
            ComplexGrid g = random_complex_grid(f, n, Measure::Counting, rng);
            ComplexGrid ghat = fourier_forward(g);

            {
                std::complex<double> lhs = inner_product(ghat, ghat);
                std::complex<double> rhs = inner_product(g, g);
                if (std::abs(lhs - rhs) <= tol * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
                    ++plan_ok;
            }
            {
                ComplexGrid back = inverse_transform(ghat);
                double scale = 0.0;
                for (std::size_t i = 0; i < size; ++i) scale = std::max(scale, std::abs(g[i]));
                if (max_abs_diff(back, g) <= tol * std::max(1.0, scale)) ++inv_ok;
            }
            {
                ComplexGrid g2 = random_complex_grid(f, n, Measure::Counting, rng);
                ComplexGrid conv = inverse_transform(pointwise_mul(ghat, fourier_forward(g2)));
                double scale = 0.0;
                for (std::size_t i = 0; i < size; ++i) scale = std::max(scale, std::abs(conv[i]));
                bool ok;
                if (full_conv_complex) {
                    ok = max_abs_diff(conv, naive_convolve_counting(g, g2)) <=
                         tol * std::max(1.0, scale);
                } else {
                    ok = true;
                    for (int s = 0; s < 8 && ok; ++s) {
                        auto x = static_cast<std::size_t>(rng.below(size));
                        ok = std::abs(conv[x] - detail::convolution_at(g, g2, x)) <=
                             tol * std::max(1.0, scale);
                    }
                }
                if (ok) ++conv_ok;
            }

            ComplexGrid fV = random_complex_grid(f, n, Measure::Surface, rng, F);
            ComplexGrid rg(f, n, Measure::Surface, F);
            for (auto i : F->points) rg[i] = ghat[i];
            ComplexGrid ext = extend(fV);
            {
                std::complex<double> lhs = inner_product(rg, fV);
                std::complex<double> rhs = inner_product(g, ext);
                if (std::abs(lhs - rhs) <= tol * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
                    ++adj_ok;
            }
            {
                std::complex<double> lhs = inner_product(rg, rg);
                ComplexGrid conv_sigma = inverse_transform(pointwise_mul(ghat, sigma_inv_hat));
                std::complex<double> rhs = inner_product(g, conv_sigma);
                if (std::abs(lhs - rhs) <= tol * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
                    ++rr_ok;
            }
        }
        auto row = [&](const std::string& name, long ok) {
            rep.add(name, detail::count_str(ok, trials) + " within 1e-10",
                    detail::count_str(trials, trials), ok == trials);
        };
        row("complex_plancherel", plan_ok);
        row("complex_inversion", inv_ok);
        row(full_conv_complex ? "complex_convolution_full" : "complex_convolution_sampled", conv_ok);
        row("complex_adjointness", adj_ok);
        row("complex_restriction_composition", rr_ok);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// norms probes: structured-input ratios against their closed forms.
// ---------------------------------------------------------------------------

inline Report check_probes(const FieldPtr& f, int d) {
    Report rep;
    rep.command = "norms probes";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}, {"d", d}};

    auto F = flat_disk(f, d);
    const int n = 2 * d;
    const double tol = 1e-12;

    const std::vector<Rational> ps = {Rational(2), Rational(8, 3), Rational(4)};
    const std::vector<Rational> rs = {Rational(2), Rational(4), Rational(6)};
    for (ProbeKind kind : {ProbeKind::SubspaceH, ProbeKind::PointMass}) {
        long ok = 0, total = 0;
        double worst = 0.0;
        for (const Rational& pv : ps) {
            for (const Rational& rv : rs) {
                ProbeResult pr = probe_ratio(kind, F, LpExp::finite(pv), rv);
                double cf = pr.closed_form.value();
                double rel = std::abs(pr.ratio - cf) / std::max(1.0, std::abs(cf));
                worst = std::max(worst, rel);
                ++total;
                if (rel <= tol) ++ok;
            }
        }
        rep.add(std::string(probe_name(kind)) + "_grid",
                detail::count_str(ok, total) + " within 1e-12 (worst rel dev " +
                    format_double(worst) + ")",
                detail::count_str(total, total), ok == total);
    }

    // At the endpoint pair (2, (2n+4)/(n-2)) the subspace probe is exactly
    // norm-neutral: its log_q exponent is the zero rational.
    Rational r_sharp = make_rational(2 * n + 4, n - 2);
    ProbeResult sharp = probe_ratio(ProbeKind::SubspaceH, F, LpExp::finite(Rational(2)), r_sharp);
    bool exact_zero = sharp.log_q_exact.has_value() && *sharp.log_q_exact == Rational(0);
    rep.add("endpoint_exponent_zero",
            sharp.log_q_exact ? rational_str(*sharp.log_q_exact) : "not exact", "0", exact_zero);
    rep.add("endpoint_ratio_one", format_double(sharp.ratio), "1",
            std::abs(sharp.ratio - 1.0) <= tol);
    rep.extra["endpoint_r"] = rational_str(r_sharp);
    return rep;
}

// ---------------------------------------------------------------------------
// norms extension: iterative lower bounds for the extension operator norm.
// ---------------------------------------------------------------------------

inline Report run_extension(const FieldPtr& f, const std::string& variety, int d, const Rational& r,
                            int iters, int restarts, double tol, std::uint64_t seed) {
    Report rep;
    rep.command = "norms extension";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}, {"d", d},
                  {"variety", variety}, {"r", rational_str(r)},
                  {"iters", iters}, {"restarts", restarts}, {"tol", format_double(tol)},
                  {"seed", seed}};

    VarietyPtr V;
    if (variety == "flat_disk") V = flat_disk(f, d);
    else if (variety == "paraboloid") V = paraboloid(f, d);
    else if (variety == "subspace_h") V = subspace_h(f, d);
    else throw std::invalid_argument("unknown variety: " + variety);

    OperatorEstimate est = opnorm_lower(V, r, iters, restarts, tol, seed);

    rep.add("lower_bound_positive", format_double(est.best), "> 0", est.best > 0.0);
    rep.add("witness_reproduces_bound", format_double(est.witness_value),
            "matches bound within 1e-10",
            detail::rel_close(est.witness_value, est.best, 1e-10));
    rep.add("monotone_iteration", est.monotone_ok ? "nondecreasing" : "decrease detected",
            "nondecreasing", est.monotone_ok);

    rep.extra["best"] = format_double(est.best);
    rep.extra["best_start"] = est.best_start;
    rep.extra["converged"] = est.converged;
    rep.extra["iterations_used"] = est.iterations_used;
    ordered_json per = ordered_json::array();
    for (std::size_t i = 0; i < est.per_start.size(); ++i)
        per.push_back({{"start", static_cast<int>(i)}, {"value", format_double(est.per_start[i])}});
    rep.extra["per_start"] = per;
    ordered_json tr = ordered_json::array();
    for (double v : est.trace) tr.push_back(format_double(v));
    rep.extra["trace"] = tr;
    if (est.witness.size() <= 4096) {
        ordered_json w = ordered_json::array();
        for (const auto& z : est.witness)
            w.push_back({format_double(z.real()), format_double(z.imag())});
        rep.extra["witness"] = w;
    } else {
        rep.extra["witness_omitted"] = "variety larger than 4096 points";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// kakeya: exact maximal-function examples and the directional ratio.
// ---------------------------------------------------------------------------

inline Report check_kakeya(const FieldPtr& f, int d, std::uint64_t seed) {
    Report rep;
    rep.command = "kakeya";
    rep.config = {{"q", f->q()}, {"p", f->p()}, {"ell", f->ell()}, {"d", d}, {"seed", seed}};

    const long q = f->q();
    const std::size_t domain = detail::grid_size(q, d);
    const std::size_t dirs = detail::grid_size(q, d - 1);
    Rng rng(seed);

    {
        ComplexGrid h(f, d, Measure::Counting);
        for (std::size_t i = 0; i < domain; ++i) h[i] = 1.0;
        ComplexGrid hs = kakeya_maximal(h);
        bool ok = true;
        for (std::size_t i = 0; i < dirs; ++i) ok = ok && hs[i] == std::complex<double>(q, 0.0);
        rep.add("constant_function", ok ? "h* == q in every direction" : "unexpected value",
                "h* == q", ok);
    }
    {
        ComplexGrid h(f, d, Measure::Counting);
        auto at = static_cast<std::size_t>(rng.below(domain));
        h[at] = 1.0;
        ComplexGrid hs = kakeya_maximal(h);
        bool ok = true;
        for (std::size_t i = 0; i < dirs; ++i) ok = ok && hs[i] == std::complex<double>(1.0, 0.0);
        rep.add("point_mass", ok ? "h* == 1 in every direction" : "unexpected value",
                "h* == 1", ok);
    }
    {
        // Indicator of a single line with direction v0 through base point z0.
        std::vector<std::uint16_t> z0(d - 1), v0(d - 1);
        for (int i = 0; i < d - 1; ++i)
            z0[i] = static_cast<std::uint16_t>(rng.below(static_cast<std::uint64_t>(q)));
        for (int i = 0; i < d - 1; ++i)
            v0[i] = static_cast<std::uint16_t>(rng.below(static_cast<std::uint64_t>(q)));
        ComplexGrid h(f, d, Measure::Counting);
        for (long t = 0; t < q; ++t) {
            auto ti = static_cast<std::uint16_t>(t);
            std::size_t idx = 0;
            for (int i = 0; i < d - 1; ++i)
                idx = idx * static_cast<std::size_t>(q) + f->add_idx(z0[i], f->mul_idx(ti, v0[i]));
            idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(t);
            h[idx] = 1.0;
        }
        ComplexGrid hs = kakeya_maximal(h);
        std::size_t v0_idx = 0;
        for (int i = 0; i < d - 1; ++i) v0_idx = v0_idx * static_cast<std::size_t>(q) + v0[i];
        bool ok = hs[v0_idx] == std::complex<double>(q, 0.0);
        for (std::size_t i = 0; i < dirs && ok; ++i) {
            if (i == v0_idx) continue;
            ok = hs[i] == std::complex<double>(1.0, 0.0);
        }
        rep.add("single_line", ok ? "h* == q at its direction, 1 elsewhere" : "unexpected value",
                "q at v0, 1 otherwise", ok);
    }
    {
        ComplexGrid h(f, d, Measure::Counting);
        for (std::size_t i = 0; i < domain; ++i) h[i] = std::abs(rng.gaussian());
        ComplexGrid hs = kakeya_maximal(h);
        double linf = lp_norm(hs, LpExp::infinity());
        double l1 = lp_norm(h, LpExp::finite(Rational(1)));
        rep.add("sup_bounded_by_mass", format_double(linf) + " vs " + format_double(l1),
                "||h*||_inf <= ||h||_1", linf <= l1 * (1.0 + 1e-12));
        double ratio = kakeya_ratio(h, LpExp::finite(Rational(d)), LpExp::finite(Rational(d)));
        rep.add("diagonal_ratio", format_double(ratio), "<= 2", ratio <= 2.0);
        rep.extra["diagonal_ratio"] = format_double(ratio);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// exponents derive / check.
// ---------------------------------------------------------------------------

inline Report check_exponents() {
    Report rep;
    rep.command = "exponents derive";
    rep.config = ordered_json::object();
    LedgerResult led = derive_ledger();
    for (const auto& c : led.checks) rep.add(c.name, c.got, c.expected, c.pass);
    ordered_json rows = ordered_json::array();
    for (const auto& row : led.rows) {
        rows.push_back({{"id", row.id},
                        {"variety", row.variety},
                        {"d_range", row.d_range},
                        {"rep_d", row.rep_d},
                        {"hypotheses", row.hypotheses},
                        {"eps_mode", row.eps_mode},
                        {"via", row.via},
                        {"p", row.pair.p_str()},
                        {"r", row.pair.r_str()},
                        {"necessary_ok", row.necessary},
                        {"region", region_name(row.region)}});
    }
    rep.extra["rows"] = rows;
    return rep;
}

inline std::string ledger_csv(const LedgerResult& led) {
    std::ostringstream os;
    os << "id,variety,d_range,rep_d,hypotheses,eps_mode,via,p,r,necessary_ok,region\n";
    for (const auto& row : led.rows) {
        os << row.id << ',' << row.variety << ',' << row.d_range << ',' << row.rep_d << ",\""
           << row.hypotheses << "\"," << row.eps_mode << ',' << row.via << ',' << row.pair.p_str()
           << ',' << row.pair.r_str() << ',' << (row.necessary ? "true" : "false") << ','
           << region_name(row.region) << '\n';
    }
    return os.str();
}

inline Report exponents_point_check(const std::string& p_str, const std::string& r_str, int n,
                                    std::optional<int> kakeya_d) {
    Report rep;
    rep.command = "exponents check";
    rep.config = {{"p", p_str}, {"r", r_str}, {"n", n}};

    EpsExponent inv_p = (p_str == "inf") ? EpsExponent(Rational(0))
                                         : parse_eps_exponent(p_str).reciprocal();
    EpsExponent inv_r = (r_str == "inf") ? EpsExponent(Rational(0))
                                         : parse_eps_exponent(r_str).reciprocal();
    ExponentPair pair = ExponentPair::from_inverses(inv_p, inv_r);

    bool nec = necessary_ok(pair, n);
    Region reg = conjecture_region(pair, n);
    rep.add("necessary_ok", nec ? "true" : "false", "informational", true);
    rep.add("conjecture_region", region_name(reg), "informational", true);
    rep.extra["necessary_ok"] = nec;
    rep.extra["region"] = region_name(reg);
    if (kakeya_d) {
        bool kd = kakeya_derivable(pair, *kakeya_d);
        rep.add("kakeya_derivable", kd ? "true" : "false", "informational", true);
        rep.extra["kakeya_d"] = *kakeya_d;
        rep.extra["kakeya_derivable"] = kd;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// sweep: one quantity across a list of field sizes, with a trailing
// max-over-min summary row.  Rows are computed concurrently and assembled in
// the order of the q list.
// ---------------------------------------------------------------------------

struct SweepRow {
    long q = 0;
    int p = 0;
    int ell = 0;
    int d = 0;
    std::string quantity;
    double value = 0.0;
    std::string expected;  // empty when informational
    bool pass = true;
};

struct SweepParams {
    std::string quantity;       // opnorm | decay | kakeya
    std::vector<long> qs;
    int d = 2;
    Rational r = Rational(6);   // opnorm exponent
    Rational kp = Rational(2);  // kakeya (p, r)
    Rational kr = Rational(2);
    std::string variety = "flat_disk";
    int iters = 500;
    int restarts = 16;
    double tol = 1e-10;
    std::uint64_t seed = 0;
};

inline SweepRow sweep_row(const SweepParams& sp, long q) {
    FieldPtr f = Field::make_q(q);
    SweepRow row;
    row.q = q;
    row.p = f->p();
    row.ell = f->ell();
    row.d = sp.d;
    row.quantity = sp.quantity;
    if (sp.quantity == "decay") {
        SigmaTransform sigma(f, sp.d);
        DecayProfile dec = decay_profile(sigma);
        Rational expect = Rational(1) / pow_of(q, sp.d - 1);
        row.value = to_double(dec.max_sq);
        row.expected = format_double(to_double(expect));
        row.pass = dec.all_moduli_rational && dec.max_sq == expect;
    } else if (sp.quantity == "opnorm") {
        VarietyPtr V;
        if (sp.variety == "flat_disk") V = flat_disk(f, sp.d);
        else if (sp.variety == "paraboloid") V = paraboloid(f, sp.d);
        else throw std::invalid_argument("unknown variety: " + sp.variety);
        OperatorEstimate est = opnorm_lower(V, sp.r, sp.iters, sp.restarts, sp.tol, sp.seed);
        row.value = est.best;
        row.expected = ">=1";
        row.pass = est.best >= 1.0 - 1e-9;
    } else if (sp.quantity == "kakeya") {
        ComplexGrid h(f, sp.d, Measure::Counting);
        Rng rng = Rng(sp.seed).child(static_cast<std::uint64_t>(q));
        for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::abs(rng.gaussian());
        row.value = kakeya_ratio(h, LpExp::finite(sp.kp), LpExp::finite(sp.kr));
        row.expected = "";
        row.pass = true;
    } else {
        throw std::invalid_argument("unknown sweep quantity: " + sp.quantity);
    }
    return row;
}

inline std::vector<SweepRow> run_sweep(const SweepParams& sp) {
    std::vector<std::future<SweepRow>> futs;
    futs.reserve(sp.qs.size());
    for (long q : sp.qs)
        futs.push_back(std::async(std::launch::async, [&sp, q] { return sweep_row(sp, q); }));
    std::vector<SweepRow> rows;
    rows.reserve(sp.qs.size() + 1);
    for (auto& fu : futs) rows.push_back(fu.get());

    SweepRow summary;
    summary.d = sp.d;
    summary.quantity = sp.quantity + "_max_over_min";
    double mx = 0.0, mn = 0.0;
    bool first = true;
    bool all_pass = true;
    for (const auto& r : rows) {
        all_pass = all_pass && r.pass;
        if (first) {
            mx = mn = r.value;
            first = false;
        } else {
            mx = std::max(mx, r.value);
            mn = std::min(mn, r.value);
        }
    }
    summary.value = (mn != 0.0) ? mx / mn : 0.0;
    summary.expected = "";
    summary.pass = all_pass;
    rows.push_back(summary);
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "q,p,ell,d,quantity,value,expected,pass\n";
    for (const auto& r : rows) {
        os << r.q << ',' << r.p << ',' << r.ell << ',' << r.d << ',' << r.quantity << ','
           << format_double(r.value) << ',' << r.expected << ',' << (r.pass ? "true" : "false")
           << '\n';
    }
    return os.str();
}

inline Report sweep_report(const SweepParams& sp, const std::vector<SweepRow>& rows) {
    Report rep;
    rep.command = "sweep";
    ordered_json qs = ordered_json::array();
    for (long q : sp.qs) qs.push_back(q);
    rep.config = {{"quantity", sp.quantity}, {"qs", qs}, {"d", sp.d}, {"seed", sp.seed}};
    if (sp.quantity == "opnorm") {
        rep.config["variety"] = sp.variety;
        rep.config["r"] = rational_str(sp.r);
        rep.config["iters"] = sp.iters;
        rep.config["restarts"] = sp.restarts;
    }
    if (sp.quantity == "kakeya") {
        rep.config["p"] = rational_str(sp.kp);
        rep.config["r"] = rational_str(sp.kr);
    }
    for (const auto& r : rows) {
        std::string name = r.quantity + (r.q ? "_q" + std::to_string(r.q) : "");
        rep.add(name, format_double(r.value), r.expected.empty() ? "recorded" : r.expected,
                r.pass);
    }
    return rep;
}

} // namespace fflab
