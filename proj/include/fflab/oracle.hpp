#pragma once

// Closed-form inverse Fourier transform of the flat-disk surface measure,
// its verification against brute force, and the kernel decomposition
//
//   (ds)v = delta_0 + K_1 + ... + K_5,   K_j = (ds)v restricted to Omega_j.
//
// On the two classes with m_d = 0 the value completes squares in the beta
// block only; on Omega_4 the alpha block contributes one Gauss sum per
// coordinate, kept exact here as the product form
//   q^{1-d} eta(m_d)^{d-1} G^{d-1} chi(|m'|^2 / (-4 m_d)),
// which is what the case analysis actually produces and stays well defined
// for every d (the half-power constant usually quoted collapses G^{d-1}
// via G^2 = eta(-1) q and only reads cleanly for odd d).

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "transform.hpp"

namespace fflab {

class SigmaTransform {
  public:
    SigmaTransform(FieldPtr field, int d)
        : field_(std::move(field)), d_(d), gauss_(gauss_sum(field_)) {
        if (d < 2) throw std::invalid_argument("sigma transform: d must be >= 2");
        gpow_ = gauss_.value.pow(static_cast<unsigned>(d - 1));
        scale_ = Rational(1) / pow_of(field_->q(), d - 1);  // q^{1-d}
        eta_md_pow_odd_ = (d - 1) % 2 == 1;
    }

    const FieldPtr& field() const { return field_; }
    int d() const { return d_; }
    int n() const { return 2 * d_; }
    const GaussSum& gauss() const { return gauss_; }

    // (ds)v(m) for one frequency point, coordinates 0-based.
    CycloValue eval(const std::vector<std::uint16_t>& m) const {
        const Field& f = *field_;
        const int p = f.p();
        const int d = d_;
        switch (omega_classify(m, d)) {
            case 0:
                return CycloValue::one(p);
            case 1:
            case 3:
                return CycloValue(p);
            case 2: {
                // q^{1-d} chi(s / (-m_2d)), s = sum m_i m_{d+i}
                std::uint16_t s = dot_alpha_beta(m);
                std::uint16_t arg = f.mul_idx(s, f.inv_idx(f.neg_idx(m[2 * d - 1])));
                return CycloValue::root_power(p, f.trace_idx(arg)) * scale_;
            }
            case 4: {
                // q^{1-d} eta(m_d)^{d-1} G^{d-1} chi(|m'|^2 / (-4 m_d))
                std::uint16_t md = m[d - 1];
                std::uint16_t nrm = 0;
                for (int i = 0; i < d - 1; ++i) nrm = f.add_idx(nrm, f.mul_idx(m[i], m[i]));
                std::uint16_t den = f.neg_idx(f.mul_idx(f.from_int(4).idx, md));
                std::uint16_t arg = f.mul_idx(nrm, f.inv_idx(den));
                CycloValue v = gpow_ * scale_;
                CycloValue rot(p);
                rot.add_rotated(v, f.trace_idx(arg));
                if (eta_md_pow_odd_ && f.eta_idx(md) < 0) return -rot;
                return rot;
            }
            default: {
                // q^{1-d} chi(m_d |m''|^2 / m_2d^2) chi(s / (-m_2d))
                std::uint16_t md = m[d - 1], m2d = m[2 * d - 1];
                std::uint16_t nrm = 0;
                for (int i = d; i < 2 * d - 1; ++i) nrm = f.add_idx(nrm, f.mul_idx(m[i], m[i]));
                std::uint16_t inv2 = f.inv_idx(f.mul_idx(m2d, m2d));
                std::uint16_t arg1 = f.mul_idx(f.mul_idx(md, nrm), inv2);
                std::uint16_t s = dot_alpha_beta(m);
                std::uint16_t arg2 = f.mul_idx(s, f.inv_idx(f.neg_idx(m2d)));
                long e = f.trace_idx(arg1) + f.trace_idx(arg2);
                return CycloValue::root_power(p, e) * scale_;
            }
        }
    }

    // Dense closed-form grid on the frequency side.
    CycloGrid as_grid() const {
        CycloGrid g(field_, n(), Measure::Counting);
        std::vector<std::uint16_t> m(n(), 0);
        const long q = field_->q();
        for (std::size_t idx = 0;; ++idx) {
            g[idx] = eval(m);
            int i = n() - 1;
            while (i >= 0 && ++m[i] == q) m[i--] = 0;
            if (i < 0) break;
        }
        return g;
    }

  private:
    std::uint16_t dot_alpha_beta(const std::vector<std::uint16_t>& m) const {
        const Field& f = *field_;
        std::uint16_t s = 0;
        for (int i = 0; i < d_ - 1; ++i) s = f.add_idx(s, f.mul_idx(m[i], m[d_ + i]));
        return s;
    }

    FieldPtr field_;
    int d_;
    GaussSum gauss_;
    CycloValue gpow_;
    Rational scale_;
    bool eta_md_pow_odd_;
};

struct SigmaVerification {
    long q = 0;
    int d = 0;
    std::size_t points_checked = 0;
    std::size_t mismatches = 0;
    std::array<std::string, 6> per_class_max_dev;  // "0" when exactly zero
    std::string first_mismatch;
    bool pass = false;
};

// Exhaustive comparison of the closed form against the brute-force
// transform of the measure (fast path; the fast path itself is checked
// against the naive double loop elsewhere). Exact cyclotomic arithmetic.
inline SigmaVerification verify_sigma_ft(const FieldPtr& f, int d) {
    SigmaVerification out;
    out.q = f->q();
    out.d = d;
    SigmaTransform sigma(f, d);
    auto F = flat_disk(f, d);
    GridFunction<CycloValue> one_f(f, 2 * d, Measure::Surface, F);
    CycloValue unit = CycloValue::one(f->p());
    for (auto i : F->points) one_f[i] = unit;
    CycloGrid brute = inverse_transform(one_f);

    std::array<double, 6> dev{};
    std::vector<std::uint16_t> m(2 * d, 0);
    const long q = f->q();
    for (std::size_t idx = 0;; ++idx) {
        int j = omega_classify(m, d);
        CycloValue closed = sigma.eval(m);
        if (closed != brute[idx]) {
            ++out.mismatches;
            double dv = std::abs((closed - brute[idx]).to_complex());
            dev[j] = std::max(dev[j], dv);
            if (out.first_mismatch.empty())
                out.first_mismatch = "class " + std::to_string(j) + " at flat index " + std::to_string(idx);
        }
        ++out.points_checked;
        int i = 2 * d - 1;
        while (i >= 0 && ++m[i] == q) m[i--] = 0;
        if (i < 0) break;
    }
    for (int j = 0; j < 6; ++j)
        out.per_class_max_dev[j] = dev[j] == 0.0 ? "0" : std::to_string(dev[j]);
    out.pass = out.mismatches == 0;
    return out;
}

// K_j as a counting-side grid, from the verified closed form.
inline CycloGrid kernel_grid(const SigmaTransform& sigma, int j) {
    if (j < 1 || j > 5) throw std::invalid_argument("kernel_grid: j must be in 1..5");
    CycloGrid g(sigma.field(), sigma.n(), Measure::Counting);
    std::vector<std::uint16_t> m(sigma.n(), 0);
    const long q = sigma.field()->q();
    for (std::size_t idx = 0;; ++idx) {
        if (omega_classify(m, sigma.d()) == j) g[idx] = sigma.eval(m);
        int i = sigma.n() - 1;
        while (i >= 0 && ++m[i] == q) m[i--] = 0;
        if (i < 0) break;
    }
    return g;
}

// Closed form of the transform of the class indicator, defined for
// j in {2, 4, 5}; integer valued.
inline Rational omega_hat_closed(const FieldPtr& f, int d, int j, const std::vector<std::uint16_t>& y) {
    const long q = f->q();
    auto block_zero = [&](int lo, int hi) {  // [lo, hi) of 0-based coords
        for (int i = lo; i < hi; ++i)
            if (y[i] != 0) return false;
        return true;
    };
    const bool alpha0 = block_zero(0, d - 1);
    const bool beta0 = block_zero(d, 2 * d - 1);
    const Rational qd = pow_of(q, d - 1);
    const Rational q2d = pow_of(q, 2 * d - 2);
    switch (j) {
        case 2:
            if (!(alpha0 && beta0)) return Rational(0);
            return q2d * Rational(y[2 * d - 1] == 0 ? q - 1 : -1);
        case 4:
            if (!alpha0) return Rational(0);
            return qd * Rational(y[d - 1] == 0 ? q - 1 : -1);
        case 5:
            if (!(alpha0 && beta0)) return Rational(0);
            return q2d * Rational(y[d - 1] == 0 ? q - 1 : -1) * Rational(y[2 * d - 1] == 0 ? q - 1 : -1);
        default:
            throw std::invalid_argument("omega_hat_closed: closed form only for j in {2,4,5}");
    }
}

// K_2^(x) expanded as flat-disk counts:
//   q * sum_{y_d} 1_F(..., x_d - y_d, ..., x_2d)
//     - sum_{y_d, y_2d} 1_F(..., x_d - y_d, ..., x_2d - y_2d).
inline Rational kernel2_hat_sum_form(const VarietyPtr& F, const std::vector<std::uint16_t>& x) {
    const Field& f = *F->field;
    const int d = F->d;
    const long q = f.q();
    std::vector<std::uint16_t> t = x;
    long single = 0, dbl = 0;
    for (long yd = 0; yd < q; ++yd) {
        t[d - 1] = f.add_idx(x[d - 1], f.neg_idx(static_cast<std::uint16_t>(yd)));
        t[2 * d - 1] = x[2 * d - 1];
        std::size_t idx = 0;
        for (auto c : t) idx = idx * q + c;
        if (F->contains(idx)) ++single;
        for (long y2d = 0; y2d < q; ++y2d) {
            t[2 * d - 1] = f.add_idx(x[2 * d - 1], f.neg_idx(static_cast<std::uint16_t>(y2d)));
            idx = 0;
            for (auto c : t) idx = idx * q + c;
            if (F->contains(idx)) ++dbl;
        }
    }
    return Rational(q) * Rational(single) - Rational(dbl);
}

struct KernelStats {
    int j = 0;
    bool zero = false;
    Rational sup_sq;        // sup |K_j|^2, exact
    bool sup_exact = true;
    Rational hat_sup_sq;    // sup |K_j^|^2, exact when every value is rational
    bool hat_exact = true;
    double sup_float = 0.0;
    double hat_sup_float = 0.0;
};

inline KernelStats kernel_stats(const SigmaTransform& sigma, int j) {
    KernelStats st;
    st.j = j;
    CycloGrid K = kernel_grid(sigma, j);
    bool all_zero = true;
    for (std::size_t i = 0; i < K.size(); ++i) {
        const CycloValue& v = K[i];
        if (v.is_zero()) continue;
        all_zero = false;
        CycloValue ms = v.modulus_squared();
        if (ms.is_rational()) {
            Rational r = ms.as_rational();
            if (r > st.sup_sq) st.sup_sq = r;
        } else {
            st.sup_exact = false;
        }
        st.sup_float = std::max(st.sup_float, std::abs(v.to_complex()));
    }
    st.zero = all_zero;
    if (all_zero) {
        st.hat_sup_sq = 0;
        return st;
    }
    CycloGrid Khat = fourier_forward(K);
    for (std::size_t i = 0; i < Khat.size(); ++i) {
        const CycloValue& v = Khat[i];
        if (v.is_zero()) continue;
        CycloValue ms = v.modulus_squared();
        if (ms.is_rational()) {
            Rational r = ms.as_rational();
            if (r > st.hat_sup_sq) st.hat_sup_sq = r;
        } else {
            st.hat_exact = false;
        }
        st.hat_sup_float = std::max(st.hat_sup_float, std::abs(v.to_complex()));
    }
    return st;
}

struct DecayProfile {
    Rational max_sq;               // max over m != 0 of |(ds)v(m)|^2
    std::array<bool, 6> attained{};  // classes achieving the max
    bool all_moduli_rational = true;
};

inline DecayProfile decay_profile(const SigmaTransform& sigma) {
    DecayProfile out;
    out.max_sq = 0;
    std::vector<std::uint16_t> m(sigma.n(), 0);
    const long q = sigma.field()->q();
    std::vector<Rational> class_max(6, Rational(0));
    for (std::size_t idx = 0;; ++idx) {
        if (idx != 0) {
            int j = omega_classify(m, sigma.d());
            CycloValue v = sigma.eval(m);
            if (!v.is_zero()) {
                CycloValue ms = v.modulus_squared();
                if (!ms.is_rational()) {
                    out.all_moduli_rational = false;
                } else {
                    Rational r = ms.as_rational();
                    if (r > class_max[j]) class_max[j] = r;
                    if (r > out.max_sq) out.max_sq = r;
                }
            }
        }
        int i = sigma.n() - 1;
        while (i >= 0 && ++m[i] == q) m[i--] = 0;
        if (i < 0) break;
    }
    for (int j = 0; j < 6; ++j) out.attained[j] = class_max[j] == out.max_sq && out.max_sq != 0;
    return out;
}

}  // namespace fflab
