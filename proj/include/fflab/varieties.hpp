#pragma once

// The varieties under study and the frequency-side partition attached to
// the flat disk.
//
//   flat disk   F = {(a, a.a, b, a.b) : a, b in F_q^{d-1}}  in F_q^{2d}
//   paraboloid  P = {(x', x'.x') : x' in F_q^{d-1}}          in F_q^d
//   subspace    H = {0} x F_q^{d-1} x {0}                    in F_q^{2d}
//
// Frequency points m in F_q^{2d} split into six classes by (m_d, m_{2d})
// and the middle block (m_{d+1}, ..., m_{2d-1}); the inverse transform of
// the surface measure is constant-modulus on each class. Class sizes have
// closed forms and the constructor cross-checks them against an exhaustive
// count.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace fflab {

enum class VarietyKind { FlatDisk, Paraboloid, SubspaceH };

inline const char* variety_name(VarietyKind k) {
    switch (k) {
        case VarietyKind::FlatDisk: return "flat_disk";
        case VarietyKind::Paraboloid: return "paraboloid";
        default: return "subspace_h";
    }
}

struct Variety {
    VarietyKind kind;
    FieldPtr field;
    int d;  // parameter dimension; ambient is n
    int n;
    std::vector<std::uint32_t> points;  // sorted flat indices into F_q^n
    std::vector<std::uint8_t> member;   // dense membership mask

    bool contains(std::size_t flat) const { return member[flat] != 0; }
    std::size_t count() const { return points.size(); }

    // Total |F_q^n| as a size.
    std::size_t ambient_size() const {
        std::size_t s = 1;
        for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(field->q());
        return s;
    }
};

using VarietyPtr = std::shared_ptr<const Variety>;

namespace detail {

inline std::size_t encode_point(const Field& f, const std::vector<std::uint16_t>& pt) {
    std::size_t idx = 0;
    for (auto c : pt) idx = idx * f.q() + c;
    return idx;
}

inline VarietyPtr finish_variety(std::unique_ptr<Variety> v) {
    std::sort(v->points.begin(), v->points.end());
    v->member.assign(v->ambient_size(), 0);
    for (auto i : v->points) v->member[i] = 1;
    return VarietyPtr(v.release());
}

}  // namespace detail

// F = {(a, a.a, b, a.b)}: coordinates x_1..x_{d-1} = a, x_d = a.a,
// x_{d+1}..x_{2d-1} = b, x_{2d} = a.b.
inline VarietyPtr flat_disk(const FieldPtr& f, int d) {
    if (d < 2) throw std::invalid_argument("flat_disk: d must be >= 2");
    auto v = std::make_unique<Variety>();
    v->kind = VarietyKind::FlatDisk;
    v->field = f;
    v->d = d;
    v->n = 2 * d;
    const long q = f->q();
    std::size_t block = 1;
    for (int i = 0; i < d - 1; ++i) block *= q;
    std::vector<std::uint16_t> a(d - 1), b(d - 1), pt(2 * d);
    v->points.reserve(block * block);
    for (std::size_t ai = 0; ai < block; ++ai) {
        std::size_t t = ai;
        for (int i = d - 2; i >= 0; --i) {
            a[i] = static_cast<std::uint16_t>(t % q);
            t /= q;
        }
        std::uint16_t aa = 0;
        for (int i = 0; i < d - 1; ++i) aa = f->add_idx(aa, f->mul_idx(a[i], a[i]));
        for (std::size_t bi = 0; bi < block; ++bi) {
            t = bi;
            for (int i = d - 2; i >= 0; --i) {
                b[i] = static_cast<std::uint16_t>(t % q);
                t /= q;
            }
            std::uint16_t ab = 0;
            for (int i = 0; i < d - 1; ++i) ab = f->add_idx(ab, f->mul_idx(a[i], b[i]));
            for (int i = 0; i < d - 1; ++i) pt[i] = a[i];
            pt[d - 1] = aa;
            for (int i = 0; i < d - 1; ++i) pt[d + i] = b[i];
            pt[2 * d - 1] = ab;
            v->points.push_back(static_cast<std::uint32_t>(detail::encode_point(*f, pt)));
        }
    }
    return detail::finish_variety(std::move(v));
}

inline VarietyPtr paraboloid(const FieldPtr& f, int d) {
    if (d < 2) throw std::invalid_argument("paraboloid: d must be >= 2");
    auto v = std::make_unique<Variety>();
    v->kind = VarietyKind::Paraboloid;
    v->field = f;
    v->d = d;
    v->n = d;
    const long q = f->q();
    std::size_t block = 1;
    for (int i = 0; i < d - 1; ++i) block *= q;
    std::vector<std::uint16_t> x(d - 1), pt(d);
    v->points.reserve(block);
    for (std::size_t xi = 0; xi < block; ++xi) {
        std::size_t t = xi;
        for (int i = d - 2; i >= 0; --i) {
            x[i] = static_cast<std::uint16_t>(t % q);
            t /= q;
        }
        std::uint16_t xx = 0;
        for (int i = 0; i < d - 1; ++i) xx = f->add_idx(xx, f->mul_idx(x[i], x[i]));
        for (int i = 0; i < d - 1; ++i) pt[i] = x[i];
        pt[d - 1] = xx;
        v->points.push_back(static_cast<std::uint32_t>(detail::encode_point(*f, pt)));
    }
    return detail::finish_variety(std::move(v));
}

// H = {0} x F_q^{d-1} x {0}, the a = 0 slice of the flat disk.
inline VarietyPtr subspace_h(const FieldPtr& f, int d) {
    if (d < 2) throw std::invalid_argument("subspace_h: d must be >= 2");
    auto v = std::make_unique<Variety>();
    v->kind = VarietyKind::SubspaceH;
    v->field = f;
    v->d = d;
    v->n = 2 * d;
    const long q = f->q();
    std::size_t block = 1;
    for (int i = 0; i < d - 1; ++i) block *= q;
    std::vector<std::uint16_t> pt(2 * d, 0);
    v->points.reserve(block);
    for (std::size_t bi = 0; bi < block; ++bi) {
        std::size_t t = bi;
        for (int i = d - 2; i >= 0; --i) {
            pt[d + i] = static_cast<std::uint16_t>(t % q);
            t /= q;
        }
        v->points.push_back(static_cast<std::uint32_t>(detail::encode_point(*f, pt)));
    }
    return detail::finish_variety(std::move(v));
}

// Class of a frequency point m in F_q^{2d}; coordinates are 0-based, so
// m_d is pt[d-1], the middle block is pt[d..2d-2] and m_{2d} is pt[2d-1].
inline int omega_classify(const std::vector<std::uint16_t>& pt, int d) {
    const bool md = pt[d - 1] != 0;
    const bool m2d = pt[2 * d - 1] != 0;
    bool middle = false;
    for (int i = d; i < 2 * d - 1; ++i)
        if (pt[i] != 0) {
            middle = true;
            break;
        }
    if (!md) {
        if (m2d) return 2;
        bool any = middle;
        for (int i = 0; i < d - 1 && !any; ++i) any = pt[i] != 0;
        return any ? 1 : 0;
    }
    if (m2d) return 5;
    return middle ? 3 : 4;
}

// |Omega_j| closed forms.
inline long omega_class_size(int j, long q, int d) {
    auto qp = [&](int e) {
        long r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    switch (j) {
        case 0: return 1;
        case 1: return qp(2 * d - 2) - 1;
        case 2: return qp(2 * d - 2) * (q - 1);
        case 3: return (q - 1) * (qp(d - 1) - 1) * qp(d - 1);
        case 4: return (q - 1) * qp(d - 1);
        case 5: return (q - 1) * (q - 1) * qp(2 * d - 2);
        default: throw std::invalid_argument("omega_class_size: j out of range");
    }
}

// Exhaustive classification of F_q^{2d}; construction fails if the counts
// disagree with the closed forms.
struct OmegaPartition {
    FieldPtr field;
    int d;
    std::vector<std::uint8_t> cls;  // flat index -> class
    std::vector<long> sizes;

    OmegaPartition(FieldPtr f, int dd) : field(std::move(f)), d(dd), sizes(6, 0) {
        const long q = field->q();
        std::size_t total = 1;
        for (int i = 0; i < 2 * d; ++i) total *= q;
        cls.resize(total);
        std::vector<std::uint16_t> pt(2 * d, 0);
        for (std::size_t idx = 0;; ++idx) {
            int j = omega_classify(pt, d);
            cls[idx] = static_cast<std::uint8_t>(j);
            ++sizes[j];
            int i = 2 * d - 1;
            while (i >= 0 && ++pt[i] == q) pt[i--] = 0;
            if (i < 0) break;
        }
        for (int j = 0; j < 6; ++j)
            if (sizes[j] != omega_class_size(j, q, d))
                throw std::logic_error("omega partition: class size mismatch");
    }
};

// d(sigma) is the probability measure on V; against dx it is the density
// (q^n / |V|) 1_V.
struct SurfaceMeasure {
    VarietyPtr variety;

    Rational weight() const {
        return pow_of(variety->field->q(), variety->n) / Rational(static_cast<long>(variety->count()));
    }

    template <class T>
    GridFunction<T> as_grid() const;
};

template <>
inline GridFunction<CycloValue> SurfaceMeasure::as_grid<CycloValue>() const {
    GridFunction<CycloValue> g(variety->field, variety->n, Measure::Normalized);
    CycloValue w = CycloValue::from_rational(variety->field->p(), weight());
    for (auto i : variety->points) g[i] = w;
    return g;
}

template <>
inline GridFunction<std::complex<double>> SurfaceMeasure::as_grid<std::complex<double>>() const {
    GridFunction<std::complex<double>> g(variety->field, variety->n, Measure::Normalized);
    double w = to_double(weight());
    for (auto i : variety->points) g[i] = w;
    return g;
}

inline SurfaceMeasure surface_measure(VarietyPtr v) { return SurfaceMeasure{std::move(v)}; }

}  // namespace fflab
