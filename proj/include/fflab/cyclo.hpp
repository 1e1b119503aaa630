#pragma once

// Exact values in the cyclotomic field Q[z], z = exp(2*pi*i/p), p an odd
// prime. A value is stored on the power basis 1, z, ..., z^{p-2}; the single
// relation z^{p-1} = -(1 + z + ... + z^{p-2}) reduces everything else, and
// because the basis is a Q-basis the reduced coefficient vector is unique.
// Conjugation sends z^k to z^{p-k}.
//
// Internally a value keeps integer numerators over one shared positive
// denominator. Transform pipelines touch integer-valued data almost
// exclusively, and plain mpz additions there run an order of magnitude
// faster than rational arithmetic with per-coefficient gcd reduction.
// The representation is not kept content-reduced; equality and the
// rational accessors normalize on demand.
//
// Character sums over F_q, q = p^ell, land here via the canonical additive
// character chi(c) = z^{trace(c)} and the quadratic character eta.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "rational.hpp"

namespace fflab {

class CycloValue {
  public:
    explicit CycloValue(int p = 3) : p_(p), n_(p - 1), d_(1) {
        if (p < 3) throw std::invalid_argument("cyclo: p must be an odd prime >= 3");
    }

    static CycloValue from_rational(int p, const Rational& r) {
        CycloValue v(p);
        v.n_[0] = r.get_num();
        v.d_ = r.get_den();
        return v;
    }

    static CycloValue one(int p) { return from_rational(p, Rational(1)); }

    // z^k, any integer k.
    static CycloValue root_power(int p, long k) {
        CycloValue v(p);
        v.add_monomial(k, Rational(1));
        return v;
    }

    // Reduce an arbitrary exponent->coefficient list to the canonical basis.
    static CycloValue from_exponent_coeffs(int p, const std::vector<std::pair<long, Rational>>& terms) {
        CycloValue v(p);
        for (const auto& [e, r] : terms) v.add_monomial(e, r);
        return v;
    }

    int p() const { return p_; }

    std::vector<Rational> coeffs() const {
        std::vector<Rational> out;
        out.reserve(n_.size());
        for (const auto& x : n_) {
            Rational r(x, d_);
            r.canonicalize();
            out.push_back(std::move(r));
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& x : n_)
            if (x != 0) return false;
        return true;
    }

    // Unique representation: rational values are exactly those supported on z^0.
    bool is_rational() const {
        for (std::size_t k = 1; k < n_.size(); ++k)
            if (n_[k] != 0) return false;
        return true;
    }

    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("cyclo: value is not rational");
        Rational r(n_[0], d_);
        r.canonicalize();
        return r;
    }

    // += z^e * v, the workhorse of the exact transforms.
    void add_rotated(const CycloValue& v, long e) {
        check_p(v);
        e %= p_;
        if (e < 0) e += p_;
        mpz_class s1, s2;
        common_den(v, s1, s2);
        for (int k = 0; k + 1 < p_; ++k) {
            if (v.n_[k] == 0) continue;
            mpz_class x = v.n_[k] * s2;
            long t = k + e;
            if (t >= p_) t -= p_;
            if (t <= p_ - 2) {
                n_[t] += x;
            } else {
                for (int s = 0; s + 1 < p_; ++s) n_[s] -= x;
            }
        }
    }

    void add_monomial(long e, const Rational& r) {
        if (r == 0) return;
        e %= p_;
        if (e < 0) e += p_;
        mpz_class s1, s2;
        common_den_mpz(r.get_den(), s1, s2);
        mpz_class x = r.get_num() * s2;
        if (e <= p_ - 2) {
            n_[e] += x;
        } else {
            for (int s = 0; s + 1 < p_; ++s) n_[s] -= x;
        }
    }

    CycloValue& operator+=(const CycloValue& o) {
        check_p(o);
        mpz_class s1, s2;
        common_den(o, s1, s2);
        for (int k = 0; k + 1 < p_; ++k) n_[k] += o.n_[k] * s2;
        return *this;
    }
    CycloValue& operator-=(const CycloValue& o) {
        check_p(o);
        mpz_class s1, s2;
        common_den(o, s1, s2);
        for (int k = 0; k + 1 < p_; ++k) n_[k] -= o.n_[k] * s2;
        return *this;
    }
    CycloValue& operator*=(const Rational& r) {
        for (auto& x : n_) x *= r.get_num();
        d_ *= r.get_den();
        return *this;
    }

    friend CycloValue operator+(CycloValue a, const CycloValue& b) { return a += b; }
    friend CycloValue operator-(CycloValue a, const CycloValue& b) { return a -= b; }
    friend CycloValue operator-(const CycloValue& a) {
        CycloValue r = a;
        for (auto& x : r.n_) x = -x;
        return r;
    }
    friend CycloValue operator*(const CycloValue& a, const Rational& r) {
        CycloValue v = a;
        v *= r;
        return v;
    }
    friend CycloValue operator*(const Rational& r, const CycloValue& a) { return a * r; }

    friend CycloValue operator*(const CycloValue& a, const CycloValue& b) {
        a.check_p(b);
        const int p = a.p_;
        std::vector<mpz_class> red(p);  // redundant accumulation on z^0..z^{p-1}
        for (int i = 0; i + 1 < p; ++i) {
            if (a.n_[i] == 0) continue;
            for (int j = 0; j + 1 < p; ++j) {
                if (b.n_[j] == 0) continue;
                int e = i + j;
                if (e >= p) e -= p;
                red[e] += a.n_[i] * b.n_[j];
            }
        }
        CycloValue v(p);
        for (int k = 0; k + 1 < p; ++k) v.n_[k] = red[k] - red[p - 1];
        v.d_ = a.d_ * b.d_;
        return v;
    }

    friend bool operator==(const CycloValue& a, const CycloValue& b) {
        if (a.p_ != b.p_) return false;
        if (a.d_ == b.d_) return a.n_ == b.n_;
        for (int k = 0; k + 1 < a.p_; ++k)
            if (a.n_[k] * b.d_ != b.n_[k] * a.d_) return false;
        return true;
    }
    friend bool operator!=(const CycloValue& a, const CycloValue& b) { return !(a == b); }

    CycloValue conj() const {
        CycloValue v(p_);
        std::vector<mpz_class> red(p_);
        red[0] = n_[0];
        for (int k = 1; k + 1 < p_; ++k) red[p_ - k] = n_[k];
        for (int k = 0; k + 1 < p_; ++k) v.n_[k] = red[k] - red[p_ - 1];
        v.d_ = d_;
        return v;
    }

    CycloValue modulus_squared() const { return *this * conj(); }

    // |v|^2 when it lies in Q; the identity suites rely on this being exact.
    Rational modulus_squared_rational() const { return modulus_squared().as_rational(); }

    CycloValue pow(unsigned e) const {
        CycloValue acc = one(p_), b = *this;
        while (e) {
            if (e & 1) acc = acc * b;
            if (e >>= 1) b = b * b;
        }
        return acc;
    }

    std::complex<double> to_complex() const {
        std::complex<double> s{0.0, 0.0};
        const double tau = 6.283185307179586476925287;
        const double dd = d_.get_d();
        for (int k = 0; k + 1 < p_; ++k) {
            if (n_[k] == 0) continue;
            double a = tau * k / p_;
            s += (n_[k].get_d() / dd) * std::complex<double>{std::cos(a), std::sin(a)};
        }
        return s;
    }

    std::string str() const {
        std::string out = "[";
        auto cs = coeffs();
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (k) out += ",";
            out += rational_str(cs[k]);
        }
        return out + "]";
    }

    // Raw access for the exact fast-transform path. The numerators sit over
    // one shared positive denominator; no content reduction is implied.
    const mpz_class& raw_num(int k) const { return n_[k]; }
    const mpz_class& raw_den() const { return d_; }
    static CycloValue from_raw(int p, std::vector<mpz_class> nums, mpz_class den) {
        CycloValue v(p);
        if (static_cast<int>(nums.size()) + 1 != p || den <= 0)
            throw std::invalid_argument("cyclo: malformed raw value");
        v.n_ = std::move(nums);
        v.d_ = std::move(den);
        return v;
    }

  private:
    void check_p(const CycloValue& o) const {
        if (p_ != o.p_) throw std::invalid_argument("cyclo: mixed root orders");
    }

    // Rescale self to the common denominator with od; s2 is the factor to
    // apply to the other operand's numerators.
    void common_den_mpz(const mpz_class& od, mpz_class& s1, mpz_class& s2) {
        if (d_ == od) {
            s2 = 1;
            return;
        }
        mpz_class g, l;
        mpz_gcd(g.get_mpz_t(), d_.get_mpz_t(), od.get_mpz_t());
        l = d_ / g * od;
        mpz_divexact(s1.get_mpz_t(), l.get_mpz_t(), d_.get_mpz_t());
        mpz_divexact(s2.get_mpz_t(), l.get_mpz_t(), od.get_mpz_t());
        if (s1 != 1)
            for (auto& x : n_) x *= s1;
        d_ = l;
    }
    void common_den(const CycloValue& o, mpz_class& s1, mpz_class& s2) {
        common_den_mpz(o.d_, s1, s2);
    }

    int p_;
    std::vector<mpz_class> n_;  // numerators on the basis 1, z, ..., z^{p-2}
    mpz_class d_;               // shared denominator, > 0
};

// Canonical additive character chi(c) = z^trace(c).
inline CycloValue chi(FieldElement a) { return CycloValue::root_power(a.fld->p(), trace(a)); }

// sum_t chi(a t) = q if a = 0, else 0; computed by direct summation.
inline CycloValue char_sum_orthogonality(const Field& f, FieldElement a) {
    CycloValue s(f.p());
    for (long t = 0; t < f.q(); ++t)
        s.add_monomial(f.trace_idx(f.mul_idx(a.idx, static_cast<std::uint16_t>(t))), Rational(1));
    return s;
}

struct GaussSum {
    FieldPtr field;
    CycloValue value;
};

// G = sum_{t != 0} eta(t) chi(t).
inline GaussSum gauss_sum(const FieldPtr& f) {
    CycloValue s(f->p());
    for (long t = 1; t < f->q(); ++t)
        s.add_monomial(f->trace_idx(static_cast<std::uint16_t>(t)),
                       Rational(f->eta_idx(static_cast<std::uint16_t>(t))));
    return {f, s};
}

// G^k computed by exact repeated multiplication.
inline CycloValue gauss_power(const GaussSum& g, unsigned k) { return g.value.pow(k); }

// sum_t chi(a t^2 + b t) by completing the square:
//   a != 0: eta(a) G chi(b^2 / (-4a));  a = 0: q delta_0(b).
inline CycloValue quad_sum(const GaussSum& g, FieldElement a, FieldElement b) {
    const Field& f = *g.field;
    if (is_zero(a)) {
        if (is_zero(b)) return CycloValue::from_rational(f.p(), Rational(f.q()));
        return CycloValue(f.p());
    }
    FieldElement shift = (b * b) / (f.from_int(-4) * a);
    CycloValue v = g.value * chi(shift);
    if (eta(a) < 0) v = -v;
    return v;
}

}  // namespace fflab
