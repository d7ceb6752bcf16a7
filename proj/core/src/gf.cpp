#include "fqflats/gf.hpp"

#include <algorithm>

namespace fqflats {
namespace {

// dense polynomials over GF(p), constant term first, no trailing zeros trimmed
using Poly = std::vector<int>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, int p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    const int e = static_cast<int>(modulus.size()) - 1;
    for (int i = static_cast<int>(prod.size()) - 1; i >= e; --i) {
        int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < e; ++j) {
            int t = prod[i - e + j] - c * modulus[j] % p;
            prod[i - e + j] = ((t % p) + p) % p;
        }
    }
    prod.resize(e);
    return prod;
}

int poly_eval(const Poly& f, int x, int p) {
    int acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
    return acc;
}

bool poly_divides(const Poly& divisor, Poly rem, int p) {
    const int dd = static_cast<int>(divisor.size()) - 1;
    for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
        int c = rem[i];
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) {
            int t = rem[i - dd + j] - c * divisor[j] % p;
            rem[i - dd + j] = ((t % p) + p) % p;
        }
    }
    return std::all_of(rem.begin(), rem.end(), [](int c) { return c == 0; });
}

bool has_root(const Poly& f, int p) {
    for (int x = 0; x < p; ++x)
        if (poly_eval(f, x, p) == 0) return true;
    return false;
}

bool is_irreducible(const Poly& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (has_root(f, p)) return false;
    if (deg <= 3) return true;
    // degree 4: a root-free reducible polynomial splits into two quadratics
    for (int c1 = 0; c1 < p; ++c1)
        for (int c0 = 0; c0 < p; ++c0) {
            Poly m = {c0, c1, 1};
            if (!has_root(m, p) && poly_divides(m, f, p)) return false;
        }
    return true;
}

Poly smallest_irreducible(int p, int e) {
    long long limit = 1;
    for (int i = 0; i < e; ++i) limit *= p;
    for (long long enc = 0; enc < limit; ++enc) {
        Poly f(e + 1, 0);
        f[e] = 1;
        long long rest = enc;
        for (int i = 0; i < e; ++i) {
            f[i] = static_cast<int>(rest % p);
            rest /= p;
        }
        if (is_irreducible(f, p)) return f;
    }
    fail(errc::internal_check_failed, "no irreducible polynomial found");
}

} // namespace

Field::Field(int q, bool allow_even) : q_(q) {
    if (q < 3) fail(errc::invalid_parameters, "field order must be at least 3, got " + std::to_string(q));
    int p = 0;
    for (int c = 2; c * c <= q; ++c)
        if (q % c == 0) {
            p = c;
            break;
        }
    if (p == 0) p = q;
    int e = 0;
    int m = q;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    if (m != 1)
        fail(errc::order_not_prime_power, std::to_string(q) + " is not a prime power");
    if (p == 2 && !allow_even)
        fail(errc::even_characteristic, "even field order " + std::to_string(q) + " requires the even-characteristic override");
    if (e > 4)
        fail(errc::invalid_parameters, "extension degree " + std::to_string(e) + " exceeds the supported maximum of 4");
    p_ = p;
    e_ = e;
    if (e_ > 1) modulus_ = smallest_irreducible(p_, e_);

    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (int a = 0; a < q_; ++a)
        for (int b = a; b < q_; ++b) {
            int v = mul_slow(a, b);
            mul_table_[static_cast<std::size_t>(a) * q_ + b] = v;
            mul_table_[static_cast<std::size_t>(b) * q_ + a] = v;
        }
    inv_table_.assign(q_, 0);
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul(a, b) == 1) {
                inv_table_[a] = b;
                break;
            }
    for (int a = 1; a < q_; ++a)
        if (inv_table_[a] == 0) fail(errc::internal_check_failed, "element without inverse");
}

int Field::add_ext(int a, int b) const {
    int r = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        r += (a % p_ + b % p_) % p_ * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

int Field::neg_ext(int a) const {
    int r = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        int d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

int Field::mul_slow(int a, int b) const {
    if (e_ == 1) return static_cast<int>(static_cast<long long>(a) * b % p_);
    Poly pa(e_), pb(e_);
    for (int i = 0; i < e_; ++i) {
        pa[i] = a % p_;
        a /= p_;
        pb[i] = b % p_;
        b /= p_;
    }
    Poly pr = poly_mul_mod(pa, pb, modulus_, p_);
    int r = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        r += pr[i] * mult;
        mult *= p_;
    }
    return r;
}

int Field::pow(int a, long long n) const {
    assert(in_range(a));
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    int acc = 1;
    while (n > 0) {
        if (n & 1) acc = mul(acc, a);
        a = mul(a, a);
        n >>= 1;
    }
    return acc;
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::order_not_prime_power: return "OrderNotPrimePower";
        case errc::even_characteristic: return "EvenCharacteristic";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::degenerate_span: return "DegenerateSpan";
        case errc::invalid_dimension: return "InvalidDimension";
        case errc::parameter_mismatch: return "ParameterMismatch";
        case errc::identical_flats: return "IdenticalFlats";
        case errc::invalid_parameters: return "InvalidParameters";
        case errc::too_large: return "TooLarge";
        case errc::bad_subset: return "BadSubset";
        case errc::not_symmetric: return "NotSymmetric";
        case errc::parse_error: return "ParseError";
        case errc::internal_check_failed: return "InternalCheckFailed";
    }
    return "UnknownError";
}

} // namespace fqflats
