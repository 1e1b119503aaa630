#pragma once

// Functions on the grid F_q^n, stored flat. A point (x_1, ..., x_n) of
// element indices maps to flat index x_1 q^{n-1} + ... + x_n, so iteration
// order is lexicographic with the first coordinate most significant; every
// module indexes grids this way, which is what makes reports bit-stable.
//
// The measure tag records which integral the values are meant against:
//   Counting    dm, weight 1 per point      (frequency side)
//   Normalized  dx, weight q^{-n} per point (space side)
//   Surface     d(sigma), weight 1/|V| on a variety V, zero off V

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cyclo.hpp"
#include "field.hpp"
#include "rng.hpp"

namespace fflab {

struct Variety;

enum class Measure { Counting, Normalized, Surface };

inline const char* measure_name(Measure m) {
    switch (m) {
        case Measure::Counting: return "counting";
        case Measure::Normalized: return "normalized";
        default: return "surface";
    }
}

template <class T>
struct value_traits;

template <>
struct value_traits<CycloValue> {
    static CycloValue zero(const Field& f) { return CycloValue(f.p()); }
};

template <>
struct value_traits<std::complex<double>> {
    static std::complex<double> zero(const Field&) { return {0.0, 0.0}; }
};

template <class T>
class GridFunction {
  public:
    GridFunction(FieldPtr field, int n, Measure measure,
                 std::shared_ptr<const Variety> variety = nullptr)
        : field_(std::move(field)), n_(n), measure_(measure), variety_(std::move(variety)) {
        if (n_ < 1) throw std::invalid_argument("grid: dimension must be >= 1");
        size_ = 1;
        for (int i = 0; i < n_; ++i) {
            size_ *= static_cast<std::size_t>(field_->q());
            if (size_ > (std::size_t(1) << 31)) throw std::invalid_argument("grid: q^n too large");
        }
        if ((measure_ == Measure::Surface) != (variety_ != nullptr))
            throw std::invalid_argument("grid: surface measure and variety go together");
        values_.assign(size_, value_traits<T>::zero(*field_));
    }

    const FieldPtr& field() const { return field_; }
    int n() const { return n_; }
    long q() const { return field_->q(); }
    std::size_t size() const { return size_; }
    Measure measure() const { return measure_; }
    const std::shared_ptr<const Variety>& variety() const { return variety_; }
    void set_measure(Measure m, std::shared_ptr<const Variety> v = nullptr) {
        measure_ = m;
        variety_ = std::move(v);
        if ((measure_ == Measure::Surface) != (variety_ != nullptr))
            throw std::invalid_argument("grid: surface measure and variety go together");
    }

    std::vector<T>& values() { return values_; }
    const std::vector<T>& values() const { return values_; }
    T& operator[](std::size_t i) { return values_[i]; }
    const T& operator[](std::size_t i) const { return values_[i]; }

    std::size_t encode(const std::vector<std::uint16_t>& pt) const {
        std::size_t idx = 0;
        for (int i = 0; i < n_; ++i) idx = idx * field_->q() + pt[i];
        return idx;
    }
    std::vector<std::uint16_t> decode(std::size_t idx) const {
        std::vector<std::uint16_t> pt(n_);
        for (int i = n_ - 1; i >= 0; --i) {
            pt[i] = static_cast<std::uint16_t>(idx % field_->q());
            idx /= field_->q();
        }
        return pt;
    }

    bool compatible(const GridFunction& o) const {
        return n_ == o.n_ && field_->same_as(*o.field_);
    }

  private:
    FieldPtr field_;
    int n_;
    Measure measure_;
    std::shared_ptr<const Variety> variety_;
    std::size_t size_;
    std::vector<T> values_;
};

using CycloGrid = GridFunction<CycloValue>;
using ComplexGrid = GridFunction<std::complex<double>>;

inline ComplexGrid to_complex_grid(const CycloGrid& g) {
    ComplexGrid out(g.field(), g.n(), g.measure(), g.variety());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].to_complex();
    return out;
}

inline CycloGrid pointwise_mul(const CycloGrid& a, const CycloGrid& b) {
    if (!a.compatible(b)) throw std::invalid_argument("grid: incompatible operands");
    CycloGrid out(a.field(), a.n(), a.measure(), a.variety());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

inline ComplexGrid pointwise_mul(const ComplexGrid& a, const ComplexGrid& b) {
    if (!a.compatible(b)) throw std::invalid_argument("grid: incompatible operands");
    ComplexGrid out(a.field(), a.n(), a.measure(), a.variety());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

inline void scale(CycloGrid& g, const Rational& r) {
    for (auto& v : g.values()) v *= r;
}
inline void scale(ComplexGrid& g, std::complex<double> r) {
    for (auto& v : g.values()) v *= r;
}

inline bool grids_equal(const CycloGrid& a, const CycloGrid& b) {
    if (!a.compatible(b)) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

inline double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b) {
    if (!a.compatible(b)) throw std::invalid_argument("grid: incompatible operands");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Random test functions: small integer cyclotomic coefficients so that every
// downstream identity stays exactly representable.
inline CycloGrid random_cyclo_grid(const FieldPtr& f, int n, Measure mu, Rng& rng,
                                   std::shared_ptr<const Variety> variety = nullptr) {
    CycloGrid g(f, n, mu, std::move(variety));
    const int p = f->p();
    for (std::size_t i = 0; i < g.size(); ++i) {
        CycloValue v(p);
        for (int k = 0; k + 1 < p; ++k) v.add_monomial(k, Rational(rng.int_in(-3, 3)));
        g[i] = v;
    }
    return g;
}

inline ComplexGrid random_complex_grid(const FieldPtr& f, int n, Measure mu, Rng& rng,
                                       std::shared_ptr<const Variety> variety = nullptr) {
    ComplexGrid g(f, n, mu, std::move(variety));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = rng.complex_gaussian();
    return g;
}

}  // namespace fflab
