#pragma once

// F_q for q = p^ell, p an odd prime, in the polynomial basis
// F_p[t]/(modulus). An element with coefficients (c_0, ..., c_{ell-1}),
// meaning c_0 + c_1 t + ..., is stored as the index sum c_i p^i, so
// enumeration by index is the fixed element order used everywhere
// (lexicographic on degree-descending coefficient vectors; the prime
// subfield occupies indices 0..p-1).
//
// All arithmetic is table-driven. Construction verifies the modulus is
// irreducible: a root check for degree 2 and 3, and in every case the
// inverse scan below fails on a zero divisor if the quotient is not a field.

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fflab {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct FieldElement {
    const Field* fld = nullptr;
    std::uint16_t idx = 0;
};

class Field : public std::enable_shared_from_this<Field> {
  public:
    static constexpr long kMaxQ = 4096;  // table memory guard

    static FieldPtr make(int p, int ell, std::vector<int> modulus = {});
    static FieldPtr make_q(long q);  // primes, or the built-in modulus table

    int p() const { return p_; }
    int ell() const { return ell_; }
    long q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    bool same_as(const Field& other) const {
        return p_ == other.p_ && ell_ == other.ell_ && modulus_ == other.modulus_;
    }

    // Raw index arithmetic; the hot paths in the transforms use these.
    std::uint16_t add_idx(std::uint16_t a, std::uint16_t b) const { return add_[size_t(a) * q_ + b]; }
    std::uint16_t mul_idx(std::uint16_t a, std::uint16_t b) const { return mul_[size_t(a) * q_ + b]; }
    std::uint16_t neg_idx(std::uint16_t a) const { return neg_[a]; }
    std::uint16_t inv_idx(std::uint16_t a) const {
        if (a == 0) throw std::invalid_argument("field: inverse of zero");
        return inv_[a];
    }
    int trace_idx(std::uint16_t a) const { return trace_[a]; }
    int eta_idx(std::uint16_t a) const {
        if (a == 0) throw std::invalid_argument("field: eta(0) is undefined");
        return eta_[a];
    }

    FieldElement element(long idx) const {
        if (idx < 0 || idx >= q_) throw std::invalid_argument("field: element index out of range");
        return {this, static_cast<std::uint16_t>(idx)};
    }
    FieldElement zero() const { return {this, 0}; }
    FieldElement one() const { return {this, 1}; }

    // Integer embedding through the prime subfield (handles negatives).
    FieldElement from_int(long n) const {
        long r = n % p_;
        if (r < 0) r += p_;
        return {this, static_cast<std::uint16_t>(r)};
    }

    FieldElement from_coeffs(const std::vector<int>& c) const {
        if (static_cast<int>(c.size()) > ell_) throw std::invalid_argument("field: too many coefficients");
        long idx = 0, pw = 1;
        for (size_t i = 0; i < c.size(); ++i) {
            int r = c[i] % p_;
            if (r < 0) r += p_;
            idx += r * pw;
            pw *= p_;
        }
        return {this, static_cast<std::uint16_t>(idx)};
    }

    std::vector<int> coeffs(FieldElement a) const {
        std::vector<int> c(ell_);
        long v = a.idx;
        for (int i = 0; i < ell_; ++i) {
            c[i] = static_cast<int>(v % p_);
            v /= p_;
        }
        return c;
    }

    std::vector<FieldElement> elements() const {
        std::vector<FieldElement> out;
        out.reserve(q_);
        for (long i = 0; i < q_; ++i) out.push_back({this, static_cast<std::uint16_t>(i)});
        return out;
    }

  private:
    Field(int p, int ell, std::vector<int> modulus);
    void check_compatible(const Field* other) const;

    int p_, ell_;
    long q_;
    std::vector<int> modulus_;          // monic, constant term first, size ell+1
    std::vector<std::uint16_t> add_, mul_, neg_, inv_;
    std::vector<std::uint8_t> trace_;   // residues mod p
    std::vector<std::int8_t> eta_;      // +1 / -1 on nonzero, 0 placeholder at 0

    friend struct FieldElement;
    friend bool same_field(const FieldElement&, const FieldElement&);
};

inline void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.fld == nullptr || b.fld == nullptr || !a.fld->same_as(*b.fld))
        throw std::invalid_argument("field: operands from different fields");
}

inline FieldElement operator+(FieldElement a, FieldElement b) {
    require_same_field(a, b);
    return {a.fld, a.fld->add_idx(a.idx, b.idx)};
}
inline FieldElement operator-(FieldElement a) { return {a.fld, a.fld->neg_idx(a.idx)}; }
inline FieldElement operator-(FieldElement a, FieldElement b) { return a + (-b); }
inline FieldElement operator*(FieldElement a, FieldElement b) {
    require_same_field(a, b);
    return {a.fld, a.fld->mul_idx(a.idx, b.idx)};
}
inline FieldElement inverse(FieldElement a) { return {a.fld, a.fld->inv_idx(a.idx)}; }
inline FieldElement operator/(FieldElement a, FieldElement b) { return a * inverse(b); }
inline bool operator==(FieldElement a, FieldElement b) {
    require_same_field(a, b);
    return a.idx == b.idx;
}
inline bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }
inline bool is_zero(FieldElement a) { return a.idx == 0; }

// Absolute trace down to F_p, as a residue in [0, p).
inline int trace(FieldElement a) { return a.fld->trace_idx(a.idx); }

// Quadratic character: +1 on nonzero squares, -1 otherwise; eta(0) throws.
inline int eta(FieldElement a) { return a.fld->eta_idx(a.idx); }

namespace detail {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

inline Field::Field(int p, int ell, std::vector<int> modulus) : p_(p), ell_(ell) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field: p must be prime (got " + std::to_string(p) + ")");
    if (p == 2) throw std::invalid_argument("field: p must be odd");
    if (ell < 1) throw std::invalid_argument("field: ell must be >= 1");
    q_ = 1;
    for (int i = 0; i < ell; ++i) {
        q_ *= p;
        if (q_ > kMaxQ) throw std::invalid_argument("field: q exceeds table limit " + std::to_string(kMaxQ));
    }

    if (ell == 1) {
        modulus_ = {0, 1};  // placeholder; unused for prime fields
    } else {
        if (static_cast<int>(modulus.size()) != ell + 1)
            throw std::invalid_argument("field: modulus degree must equal ell");
        modulus_.resize(ell + 1);
        for (int i = 0; i <= ell; ++i) {
            int r = modulus[i] % p;
            if (r < 0) r += p;
            modulus_[i] = r;
        }
        if (modulus_[ell] == 0) throw std::invalid_argument("field: modulus leading coefficient is zero mod p");
        if (modulus_[ell] != 1) {
            // scale to monic
            long lead = modulus_[ell], inv = 0;
            for (long x = 1; x < p; ++x)
                if (lead * x % p == 1) inv = x;
            for (int i = 0; i <= ell; ++i) modulus_[i] = static_cast<int>(modulus_[i] * inv % p);
        }
        if (ell <= 3) {
            // Degree 2 or 3 is reducible iff it has a root in F_p.
            for (long x = 0; x < p; ++x) {
                long v = 0, pw = 1;
                for (int i = 0; i <= ell; ++i) {
                    v = (v + modulus_[i] * pw) % p;
                    pw = pw * x % p;
                }
                if (v == 0)
                    throw std::invalid_argument("field: reducible modulus (root t=" + std::to_string(x) + ")");
            }
        }
    }

    const long q = q_;
    auto decode = [&](long idx, int* c) {
        for (int i = 0; i < ell_; ++i) {
            c[i] = static_cast<int>(idx % p_);
            idx /= p_;
        }
    };
    auto encode = [&](const int* c) {
        long idx = 0, pw = 1;
        for (int i = 0; i < ell_; ++i) {
            idx += c[i] * pw;
            pw *= p_;
        }
        return idx;
    };

    add_.resize(size_t(q) * q);
    neg_.resize(q);
    {
        std::vector<int> ca(ell_), cb(ell_), cc(ell_);
        for (long a = 0; a < q; ++a) {
            decode(a, ca.data());
            for (int i = 0; i < ell_; ++i) cc[i] = (p_ - ca[i]) % p_;
            neg_[a] = static_cast<std::uint16_t>(encode(cc.data()));
            for (long b = 0; b < q; ++b) {
                decode(b, cb.data());
                for (int i = 0; i < ell_; ++i) cc[i] = (ca[i] + cb[i]) % p_;
                add_[size_t(a) * q + b] = static_cast<std::uint16_t>(encode(cc.data()));
            }
        }
    }

    mul_.resize(size_t(q) * q);
    {
        std::vector<int> ca(ell_), cb(ell_), prod(2 * ell_ - 1);
        for (long a = 0; a < q; ++a) {
            decode(a, ca.data());
            for (long b = a; b < q; ++b) {
                decode(b, cb.data());
                std::fill(prod.begin(), prod.end(), 0);
                for (int i = 0; i < ell_; ++i)
                    for (int j = 0; j < ell_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
                for (int k = 2 * ell_ - 2; k >= ell_; --k) {
                    int c = prod[k];
                    if (c == 0) continue;
                    prod[k] = 0;
                    for (int j = 0; j < ell_; ++j)
                        prod[k - ell_ + j] = ((prod[k - ell_ + j] - c * modulus_[j]) % p_ + p_) % p_;
                }
                auto val = static_cast<std::uint16_t>(encode(prod.data()));
                mul_[size_t(a) * q + b] = val;
                mul_[size_t(b) * q + a] = val;
            }
        }
    }

    inv_.assign(q, 0);
    for (long a = 1; a < q; ++a) {
        std::uint16_t found = 0;
        for (long b = 1; b < q; ++b)
            if (mul_[size_t(a) * q + b] == 1) {
                found = static_cast<std::uint16_t>(b);
                break;
            }
        if (found == 0) throw std::invalid_argument("field: reducible modulus (zero divisor at index " + std::to_string(a) + ")");
        inv_[a] = found;
    }

    // trace(a) = a + a^p + ... + a^{p^(ell-1)}, always in the prime subfield
    trace_.resize(q);
    {
        auto pow_idx = [&](std::uint16_t base, long e) {
            std::uint16_t acc = 1, b = base;
            while (e) {
                if (e & 1) acc = mul_[size_t(acc) * q + b];
                b = mul_[size_t(b) * q + b];
                e >>= 1;
            }
            return acc;
        };
        for (long a = 0; a < q; ++a) {
            std::uint16_t term = static_cast<std::uint16_t>(a), sum = static_cast<std::uint16_t>(a);
            for (int i = 1; i < ell_; ++i) {
                term = pow_idx(term, p_);
                sum = add_[size_t(sum) * q + term];
            }
            if (sum >= static_cast<std::uint16_t>(p_))
                throw std::logic_error("field: trace left the prime subfield");
            trace_[a] = static_cast<std::uint8_t>(sum);
        }
    }

    eta_.assign(q, 0);
    for (long b = 1; b < q; ++b) eta_[mul_[size_t(b) * q + b]] = 1;
    for (long a = 1; a < q; ++a) eta_[a] = eta_[a] == 1 ? 1 : -1;
}

inline FieldPtr Field::make(int p, int ell, std::vector<int> modulus) {
    return FieldPtr(new Field(p, ell, std::move(modulus)));
}

inline FieldPtr Field::make_q(long q) {
    struct Entry {
        long q;
        int p, ell;
        std::vector<int> mod;
    };
    // Built-in moduli for the extension sizes the suites use.
    static const std::vector<Entry> table = {
        {9, 3, 2, {1, 0, 1}},      // t^2 + 1
        {25, 5, 2, {2, 0, 1}},     // t^2 + 2
        {27, 3, 3, {1, 2, 0, 1}},  // t^3 + 2t + 1
        {49, 7, 2, {1, 0, 1}},     // t^2 + 1
        {121, 11, 2, {1, 0, 1}},   // t^2 + 1
        {125, 5, 3, {3, 3, 0, 1}}, // t^3 + 3t + 3
        {169, 13, 2, {6, 0, 1}},   // t^2 + 6
    };
    if (detail::is_prime(q)) return make(static_cast<int>(q), 1);
    for (const auto& e : table)
        if (e.q == q) return make(e.p, e.ell, e.mod);
    throw std::invalid_argument("field: no built-in modulus for q=" + std::to_string(q) +
                                "; pass p, ell and a modulus explicitly");
}

}  // namespace fflab
