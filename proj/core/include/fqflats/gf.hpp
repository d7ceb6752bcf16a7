#pragma once

#include <cassert>
#include <vector>

#include "fqflats/errors.hpp"

namespace fqflats {

/// Arithmetic context for the finite field GF(q), q = p^e.
///
/// Elements are the integers 0..q-1, read as coefficient vectors in base p:
/// the element  a0 + a1*p + ... + a_{e-1}*p^{e-1}  stands for the residue
/// a0 + a1*x + ... + a_{e-1}*x^{e-1} modulo a fixed monic irreducible
/// polynomial of degree e over GF(p).  The modulus is the irreducible
/// polynomial whose non-leading coefficient vector has the smallest base-p
/// integer encoding, so a given q always produces the same field tables.
///
/// Odd characteristic is required by default; pass allow_even = true to
/// experiment with even q.  Extension degrees up to 4 are supported, with
/// irreducibility established by exhaustive root and quadratic-factor checks.
class Field {
public:
    explicit Field(int q, bool allow_even = false);

    int q() const noexcept { return q_; }
    int p() const noexcept { return p_; }
    int e() const noexcept { return e_; }

    /// Modulus coefficients c[0..e], constant term first, c[e] = 1.
    /// Empty for prime fields.
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    int add(int a, int b) const {
        assert(in_range(a) && in_range(b));
        if (e_ == 1) return (a + b) % p_;
        return add_ext(a, b);
    }

    int neg(int a) const {
        assert(in_range(a));
        if (e_ == 1) return a == 0 ? 0 : p_ - a;
        return neg_ext(a);
    }

    int sub(int a, int b) const { return add(a, neg(b)); }

    int mul(int a, int b) const {
        assert(in_range(a) && in_range(b));
        return mul_table_[static_cast<std::size_t>(a) * q_ + b];
    }

    /// Multiplicative inverse; a = 0 raises division_by_zero.
    int inv(int a) const {
        assert(in_range(a));
        if (a == 0) fail(errc::division_by_zero, "inverse of 0 in GF(" + std::to_string(q_) + ")");
        return inv_table_[a];
    }

    int pow(int a, long long n) const;

    bool in_range(int a) const noexcept { return a >= 0 && a < q_; }

    /// Two contexts are interchangeable iff they describe the same q.
    friend bool operator==(const Field& lhs, const Field& rhs) noexcept { return lhs.q_ == rhs.q_; }
    friend bool operator!=(const Field& lhs, const Field& rhs) noexcept { return lhs.q_ != rhs.q_; }

private:
    int add_ext(int a, int b) const;
    int neg_ext(int a) const;
    int mul_slow(int a, int b) const;

    int q_ = 0;
    int p_ = 0;
    int e_ = 0;
    std::vector<int> modulus_;
    std::vector<int> mul_table_;
    std::vector<int> inv_table_;
};

} // namespace fqflats
