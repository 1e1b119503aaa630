#pragma once

// Fourier analysis on F_q^n with the conventions
//
//   forward (dm -> dx):   g^(x)        = sum_m chi(-x.m) g(m)
//   inverse against dx:   (f dx)v(m)   = q^{-n} sum_x chi(x.m) f(x)
//   inverse against ds:   (f ds)v(m)   = |V|^{-1} sum_{x in V} chi(x.m) f(x)
//
// chi is multiplicative over coordinates, so the full transform factors
// into n one-dimensional passes of cost q per point: O(n q^{n+1}) total
// instead of O(q^{2n}). The naive double loop is kept as the permanent
// oracle for the fast path. Both run on the exact cyclotomic backend and
// on complex doubles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "varieties.hpp"

namespace fflab {

struct CharacterTables {
    FieldPtr field;
    long q;
    int p;
    std::vector<std::uint8_t> exp_pos;  // trace(a b)
    std::vector<std::uint8_t> exp_neg;  // trace(-a b) = (p - exp_pos) mod p
    std::vector<std::complex<double>> zpow;  // z^k, k in [0, p)

    explicit CharacterTables(FieldPtr f) : field(std::move(f)), q(field->q()), p(field->p()) {
        exp_pos.resize(static_cast<std::size_t>(q) * q);
        exp_neg.resize(exp_pos.size());
        for (long a = 0; a < q; ++a)
            for (long b = 0; b < q; ++b) {
                int e = field->trace_idx(field->mul_idx(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)));
                exp_pos[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint8_t>(e);
                exp_neg[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint8_t>(e == 0 ? 0 : p - e);
            }
        zpow.resize(p);
        const double tau = 6.283185307179586476925287;
        for (int k = 0; k < p; ++k) zpow[k] = {std::cos(tau * k / p), std::sin(tau * k / p)};
    }
};

inline const CharacterTables& character_tables(const FieldPtr& f) {
    static std::vector<std::unique_ptr<CharacterTables>> cache;
    for (const auto& ct : cache)
        if (ct->field->same_as(*f)) return *ct;
    cache.push_back(std::make_unique<CharacterTables>(f));
    return *cache.back();
}

namespace detail {

inline void kernel_accum(CycloValue& acc, const CycloValue& v, int e, const CharacterTables&) {
    acc.add_rotated(v, e);
}
inline void kernel_accum(std::complex<double>& acc, const std::complex<double>& v, int e,
                         const CharacterTables& ct) {
    acc += ct.zpow[e] * v;
}

// One axis of the unnormalized transform sum_t z^{E[j][t]} v[t].
template <class T>
void axis_pass(std::vector<T>& v, const Field& fld, long q, std::size_t stride,
               const std::uint8_t* E, const CharacterTables& ct) {
    const std::size_t block = stride * static_cast<std::size_t>(q);
    const std::size_t nblocks = v.size() / block;
    std::vector<T> in(q, value_traits<T>::zero(fld)), out(q, value_traits<T>::zero(fld));
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t base0 = b * block;
        for (std::size_t s = 0; s < stride; ++s) {
            const std::size_t base = base0 + s;
            for (long t = 0; t < q; ++t) in[t] = v[base + t * stride];
            for (long j = 0; j < q; ++j) {
                T acc = value_traits<T>::zero(fld);
                const std::uint8_t* row = E + static_cast<std::size_t>(j) * q;
                for (long t = 0; t < q; ++t) kernel_accum(acc, in[t], row[t], ct);
                out[j] = acc;
            }
            for (long j = 0; j < q; ++j) v[base + j * stride] = std::move(out[j]);
        }
    }
}

// sum over the full grid with kernel z^{+-trace(x.m)} per coordinate.
template <class T>
void unnormalized_transform(std::vector<T>& v, const FieldPtr& f, int n, bool negative) {
    const CharacterTables& ct = character_tables(f);
    const long q = f->q();
    std::size_t stride = 1;
    for (int i = 0; i < n - 1; ++i) stride *= q;
    const std::uint8_t* E = negative ? ct.exp_neg.data() : ct.exp_pos.data();
    for (int axis = 0; axis < n; ++axis) {
        axis_pass(v, *f, q, stride, E, ct);
        stride /= q;
    }
}

// --- exact integer fast path for the cyclotomic backend ---------------
//
// During the unnormalized passes every value is an integer combination of
// roots of unity over one common denominator. Lifting to the redundant
// basis z^0..z^{p-1} of Z[x]/(x^p - 1) makes a rotation a pure cyclic
// shift, each axis pass grows magnitudes by a factor of exactly q, and the
// whole transform runs in 128-bit integers with a proven headroom check.
// The projection back to the power basis (subtract the z^{p-1} slot) is a
// ring homomorphism, so the result is identical to the generic path.

inline mpz_class mpz_from_i128(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u =
        neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class m(static_cast<unsigned long>(u >> 64));
    m <<= 64;
    m += static_cast<unsigned long>(u);
    if (neg) m = -m;
    return m;
}

struct CycloInt128View {
    int p = 0;
    std::size_t npoints = 0;
    std::vector<__int128> a;  // a[i * p + k]: point i, slot z^k
    mpz_class den;
};

inline bool cyclo_i128_load(const std::vector<CycloValue>& v, int p, int n, long q,
                            CycloInt128View& w) {
    if (mp_bits_per_limb != 64) return false;
    w.p = p;
    w.npoints = v.size();
    w.den = 1;
    for (const auto& x : v)
        mpz_lcm(w.den.get_mpz_t(), w.den.get_mpz_t(), x.raw_den().get_mpz_t());
    const double growth = n * std::log2(static_cast<double>(q));
    const double max_bits = 125.0 - growth;  // one spare bit under the 127 available
    if (max_bits < 8.0) return false;
    w.a.assign(w.npoints * static_cast<std::size_t>(p), 0);
    mpz_class s, t;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const CycloValue& x = v[i];
        const bool unit = x.raw_den() == w.den;
        if (!unit) mpz_divexact(s.get_mpz_t(), w.den.get_mpz_t(), x.raw_den().get_mpz_t());
        for (int k = 0; k + 1 < p; ++k) {
            const mpz_class& nk = x.raw_num(k);
            if (nk == 0) continue;
            const mpz_class* src = &nk;
            if (!unit) {
                t = nk * s;
                src = &t;
            }
            if (mpz_sizeinbase(src->get_mpz_t(), 2) > static_cast<std::size_t>(max_bits)) return false;
            unsigned __int128 u = 0;
            const std::size_t limbs = mpz_size(src->get_mpz_t());
            if (limbs > 2) return false;
            for (std::size_t l = 0; l < limbs; ++l)
                u |= static_cast<unsigned __int128>(mpz_getlimbn(src->get_mpz_t(), l)) << (64 * l);
            w.a[i * p + k] = mpz_sgn(src->get_mpz_t()) < 0 ? -static_cast<__int128>(u)
                                                           : static_cast<__int128>(u);
        }
    }
    return true;
}

inline void cyclo_i128_axis_pass(CycloInt128View& w, long q, std::size_t stride,
                                 const std::uint8_t* E) {
    const int p = w.p;
    const std::size_t block = stride * static_cast<std::size_t>(q);
    const std::size_t nblocks = w.npoints / block;
    std::vector<__int128> in(static_cast<std::size_t>(q) * p), out(static_cast<std::size_t>(q) * p);
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t base0 = b * block;
        for (std::size_t s = 0; s < stride; ++s) {
            const std::size_t base = base0 + s;
            for (long t = 0; t < q; ++t)
                std::copy_n(&w.a[(base + t * stride) * p], p, &in[static_cast<std::size_t>(t) * p]);
            std::fill(out.begin(), out.end(), 0);
            for (long j = 0; j < q; ++j) {
                __int128* o = &out[static_cast<std::size_t>(j) * p];
                const std::uint8_t* row = E + static_cast<std::size_t>(j) * q;
                for (long t = 0; t < q; ++t) {
                    const __int128* src = &in[static_cast<std::size_t>(t) * p];
                    const int e = row[t];
                    const int m = p - e;
                    for (int k = 0; k < m; ++k) o[e + k] += src[k];
                    for (int k = 0; k < e; ++k) o[k] += src[m + k];
                }
            }
            for (long j = 0; j < q; ++j)
                std::copy_n(&out[static_cast<std::size_t>(j) * p], p, &w.a[(base + j * stride) * p]);
        }
    }
}

inline void cyclo_i128_store(std::vector<CycloValue>& v, const CycloInt128View& w) {
    const int p = w.p;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<mpz_class> nums(p - 1);
        const __int128 top = w.a[i * p + p - 1];
        for (int k = 0; k + 1 < p; ++k) nums[k] = mpz_from_i128(w.a[i * p + k] - top);
        v[i] = CycloValue::from_raw(p, std::move(nums), w.den);
    }
}

inline void unnormalized_transform(std::vector<CycloValue>& v, const FieldPtr& f, int n,
                                   bool negative) {
    const CharacterTables& ct = character_tables(f);
    const long q = f->q();
    const int p = f->p();
    const std::uint8_t* E = negative ? ct.exp_neg.data() : ct.exp_pos.data();
    std::size_t stride = 1;
    for (int i = 0; i < n - 1; ++i) stride *= q;
    CycloInt128View w;
    if (cyclo_i128_load(v, p, n, q, w)) {
        for (int axis = 0; axis < n; ++axis) {
            cyclo_i128_axis_pass(w, q, stride, E);
            stride /= q;
        }
        cyclo_i128_store(v, w);
        return;
    }
    for (int axis = 0; axis < n; ++axis) {
        axis_pass(v, *f, q, stride, E, ct);
        stride /= q;
    }
}

inline void scale_values(std::vector<CycloValue>& v, const Rational& r) {
    for (auto& x : v) x *= r;
}
inline void scale_values(std::vector<std::complex<double>>& v, const Rational& r) {
    const double s = to_double(r);
    for (auto& x : v) x *= s;
}

}  // namespace detail

// g^(x) = sum_m chi(-x.m) g(m); input on dm, output on dx.
template <class T>
GridFunction<T> fourier_forward(const GridFunction<T>& g) {
    if (g.measure() != Measure::Counting)
        throw std::invalid_argument("fourier_forward: input must carry the counting measure");
    GridFunction<T> out(g.field(), g.n(), Measure::Normalized);
    out.values() = g.values();
    detail::unnormalized_transform(out.values(), g.field(), g.n(), true);
    return out;
}

// (f dmu)v for dmu = dx or d(sigma), decided by the measure tag; output on dm.
template <class T>
GridFunction<T> inverse_transform(const GridFunction<T>& f) {
    if (f.measure() == Measure::Counting)
        throw std::invalid_argument("inverse_transform: input must carry dx or surface measure");
    GridFunction<T> out(f.field(), f.n(), Measure::Counting);
    Rational scale;
    if (f.measure() == Measure::Normalized) {
        out.values() = f.values();
        scale = Rational(1) / pow_of(f.field()->q(), f.n());
    } else {
        const Variety& V = *f.variety();
        for (auto i : V.points) out[i] = f[i];
        scale = Rational(1) / Rational(static_cast<long>(V.count()));
    }
    detail::unnormalized_transform(out.values(), f.field(), f.n(), false);
    detail::scale_values(out.values(), scale);
    return out;
}

// Direct-definition oracles for the fast paths. Quadratic cost; small grids.
template <class T>
GridFunction<T> naive_fourier_forward(const GridFunction<T>& g) {
    if (g.measure() != Measure::Counting)
        throw std::invalid_argument("fourier_forward: input must carry the counting measure");
    const CharacterTables& ct = character_tables(g.field());
    const int p = g.field()->p();
    GridFunction<T> out(g.field(), g.n(), Measure::Normalized);
    for (std::size_t xi = 0; xi < g.size(); ++xi) {
        auto x = g.decode(xi);
        T acc = value_traits<T>::zero(*g.field());
        for (std::size_t mi = 0; mi < g.size(); ++mi) {
            auto m = g.decode(mi);
            int e = 0;
            for (int i = 0; i < g.n(); ++i) e += ct.exp_neg[static_cast<std::size_t>(x[i]) * ct.q + m[i]];
            detail::kernel_accum(acc, g[mi], e % p, ct);
        }
        out[xi] = acc;
    }
    return out;
}

template <class T>
GridFunction<T> naive_inverse_transform(const GridFunction<T>& f) {
    if (f.measure() == Measure::Counting)
        throw std::invalid_argument("inverse_transform: input must carry dx or surface measure");
    const CharacterTables& ct = character_tables(f.field());
    const int p = f.field()->p();
    GridFunction<T> out(f.field(), f.n(), Measure::Counting);
    const bool surf = f.measure() == Measure::Surface;
    Rational scale = surf ? Rational(1) / Rational(static_cast<long>(f.variety()->count()))
                          : Rational(1) / pow_of(f.field()->q(), f.n());
    for (std::size_t mi = 0; mi < f.size(); ++mi) {
        auto m = f.decode(mi);
        T acc = value_traits<T>::zero(*f.field());
        for (std::size_t xi = 0; xi < f.size(); ++xi) {
            if (surf && !f.variety()->contains(xi)) continue;
            auto x = f.decode(xi);
            int e = 0;
            for (int i = 0; i < f.n(); ++i) e += ct.exp_pos[static_cast<std::size_t>(x[i]) * ct.q + m[i]];
            detail::kernel_accum(acc, f[xi], e % p, ct);
        }
        out[mi] = acc;
    }
    detail::scale_values(out.values(), scale);
    return out;
}

// Counting-side convolution (g1 * g2)(m) = sum_{m'} g1(m - m') g2(m');
// computed through the transform identity (g1 * g2)^ = g1^ g2^ and
// inversion. Exact on the cyclotomic backend since every scaling is
// rational.
template <class T>
GridFunction<T> convolve_counting(const GridFunction<T>& g1, const GridFunction<T>& g2) {
    if (g1.measure() != Measure::Counting || g2.measure() != Measure::Counting)
        throw std::invalid_argument("convolve_counting: inputs must carry the counting measure");
    auto prod = pointwise_mul(fourier_forward(g1), fourier_forward(g2));
    return inverse_transform(prod);
}

// Normalized convolution on the space side:
// (f1 * f2)(x) = q^{-n} sum_y f1(x - y) f2(y).
template <class T>
GridFunction<T> convolve_normalized(const GridFunction<T>& f1, const GridFunction<T>& f2) {
    if (f1.measure() != Measure::Normalized || f2.measure() != Measure::Normalized)
        throw std::invalid_argument("convolve_normalized: inputs must carry dx");
    auto u = pointwise_mul(inverse_transform(f1), inverse_transform(f2));
    return fourier_forward(u);
}

// Direct-definition convolution oracles.
template <class T>
GridFunction<T> naive_convolve_counting(const GridFunction<T>& g1, const GridFunction<T>& g2) {
    if (g1.measure() != Measure::Counting || g2.measure() != Measure::Counting)
        throw std::invalid_argument("convolve_counting: inputs must carry the counting measure");
    if (!g1.compatible(g2)) throw std::invalid_argument("convolve: incompatible grids");
    const Field& f = *g1.field();
    GridFunction<T> out(g1.field(), g1.n(), Measure::Counting);
    std::vector<std::uint16_t> diff(g1.n());
    for (std::size_t mi = 0; mi < g1.size(); ++mi) {
        auto m = g1.decode(mi);
        T acc = value_traits<T>::zero(f);
        for (std::size_t ki = 0; ki < g1.size(); ++ki) {
            auto k = g1.decode(ki);
            for (int i = 0; i < g1.n(); ++i) diff[i] = f.add_idx(m[i], f.neg_idx(k[i]));
            acc += g1[g1.encode(diff)] * g2[ki];
        }
        out[mi] = acc;
    }
    return out;
}

template <class T>
GridFunction<T> naive_convolve_normalized(const GridFunction<T>& f1, const GridFunction<T>& f2) {
    if (f1.measure() != Measure::Normalized || f2.measure() != Measure::Normalized)
        throw std::invalid_argument("convolve_normalized: inputs must carry dx");
    if (!f1.compatible(f2)) throw std::invalid_argument("convolve: incompatible grids");
    const Field& f = *f1.field();
    GridFunction<T> out(f1.field(), f1.n(), Measure::Normalized);
    std::vector<std::uint16_t> diff(f1.n());
    for (std::size_t xi = 0; xi < f1.size(); ++xi) {
        auto x = f1.decode(xi);
        T acc = value_traits<T>::zero(f);
        for (std::size_t yi = 0; yi < f1.size(); ++yi) {
            auto y = f1.decode(yi);
            for (int i = 0; i < f1.n(); ++i) diff[i] = f.add_idx(x[i], f.neg_idx(y[i]));
            acc += f1[f1.encode(diff)] * f2[yi];
        }
        out[xi] = acc;
    }
    detail::scale_values(out.values(), Rational(1) / pow_of(f.q(), f1.n()));
    return out;
}

}  // namespace fflab
