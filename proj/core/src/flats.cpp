#include "fqflats/flats.hpp"

#include <algorithm>
#include <sstream>

namespace fqflats {
namespace {

void check_flat_params(int d, int k, int h) {
    if (k < 0 || h < k || d <= h)
        fail(errc::invalid_parameters,
             "need 0 <= k <= h < d, got k=" + std::to_string(k) + " h=" + std::to_string(h) +
                 " d=" + std::to_string(d));
}

void reduce_base_at_pivots(const Field& F, const FqMatrix& basis, const std::vector<int>& pivots,
                           std::vector<int>& base) {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const int f = base[pivots[i]];
        if (f == 0) continue;
        for (int c = 0; c < basis.cols; ++c)
            base[c] = F.sub(base[c], F.mul(f, basis.at(static_cast<int>(i), c)));
    }
}

// reduce x by the RREF rows; the residue is zero iff x lies in their span
bool reduces_to_zero(const Field& F, const FqMatrix& basis, const std::vector<int>& pivots,
                     std::vector<int> x) {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const int f = x[pivots[i]];
        if (f == 0) continue;
        for (int c = 0; c < basis.cols; ++c)
            x[c] = F.sub(x[c], F.mul(f, basis.at(static_cast<int>(i), c)));
    }
    return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

void check_same_space(const Flat& a, const Flat& b) {
    if (a.field().q() != b.field().q() || a.ambient_dim() != b.ambient_dim())
        fail(errc::parameter_mismatch, "flats from different ambient spaces");
}

} // namespace

std::size_t FlatHash::operator()(const Flat& f) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(f.dim()));
    for (int p : f.pivots()) mix(static_cast<std::uint64_t>(p) + 1);
    for (int v : f.basis().data) mix(static_cast<std::uint64_t>(v) + 0x9e37);
    for (int v : f.base()) mix(static_cast<std::uint64_t>(v) + 0x85eb);
    return static_cast<std::size_t>(h);
}

Flat flat_from_span(std::span<const FqVector> directions, const FqVector& base) {
    if (base.field == nullptr) fail(errc::invalid_parameters, "base point without field context");
    const Field& F = *base.field;
    const int d = base.dim();
    const int k = static_cast<int>(directions.size());
    if (d < 1) fail(errc::invalid_dimension, "ambient dimension must be positive");
    if (k >= d)
        fail(errc::invalid_dimension, "flat dimension " + std::to_string(k) +
                                          " must be below ambient dimension " + std::to_string(d));
    Flat flat(F, d, k);
    if (k > 0) {
        FqMatrix m(F, k, d);
        for (int i = 0; i < k; ++i) {
            const FqVector& v = directions[i];
            if (v.field == nullptr || *v.field != F)
                fail(errc::parameter_mismatch, "direction vector from a different field");
            if (v.dim() != d)
                fail(errc::dimension_mismatch, "direction vector of dimension " + std::to_string(v.dim()) +
                                                   " in ambient dimension " + std::to_string(d));
            for (int c = 0; c < d; ++c) m.at(i, c) = v.coords[c];
        }
        RrefResult r = rref(m);
        if (r.rank < k)
            fail(errc::degenerate_span, "direction vectors have rank " + std::to_string(r.rank) +
                                            ", expected " + std::to_string(k));
        flat.basis_ = std::move(r.mat);
        flat.pivots_ = std::move(r.pivots);
    }
    flat.base_ = base.coords;
    reduce_base_at_pivots(F, flat.basis_, flat.pivots_, flat.base_);
    return flat;
}

bool flat_eq(const Flat& u, const Flat& v) {
    check_same_space(u, v);
    if (u.dim() != v.dim())
        fail(errc::parameter_mismatch, "flats of different dimension");
    return u == v;
}

bool contains_point(const Flat& v, const FqVector& x) {
    if (x.field == nullptr || *x.field != v.field())
        fail(errc::parameter_mismatch, "point from a different field");
    if (x.dim() != v.ambient_dim())
        fail(errc::dimension_mismatch, "point of dimension " + std::to_string(x.dim()) +
                                           " in ambient dimension " + std::to_string(v.ambient_dim()));
    const Field& F = v.field();
    std::vector<int> diff(x.coords.size());
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = F.sub(x.coords[c], v.base()[c]);
    return reduces_to_zero(F, v.basis(), v.pivots(), std::move(diff));
}

bool flat_contains_flat(const Flat& outer, const Flat& inner) {
    check_same_space(outer, inner);
    if (inner.dim() > outer.dim())
        fail(errc::parameter_mismatch, "inner flat dimension exceeds outer flat dimension");
    const Field& F = outer.field();
    for (int i = 0; i < inner.dim(); ++i) {
        std::vector<int> row(inner.basis().row(i).begin(), inner.basis().row(i).end());
        if (!reduces_to_zero(F, outer.basis(), outer.pivots(), std::move(row))) return false;
    }
    std::vector<int> diff(inner.base().size());
    for (std::size_t c = 0; c < diff.size(); ++c)
        diff[c] = F.sub(inner.base()[c], outer.base()[c]);
    return reduces_to_zero(F, outer.basis(), outer.pivots(), std::move(diff));
}

void for_each_flat(const Field& F, int d, int k, const std::function<void(Flat&&)>& fn) {
    if (d < 1) fail(errc::invalid_dimension, "ambient dimension must be positive");
    if (k < 0 || k >= d)
        fail(errc::invalid_dimension, "flat dimension " + std::to_string(k) +
                                          " must lie in [0, " + std::to_string(d) + ")");
    const int q = F.q();
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;

    auto emit_for_pivots = [&]() {
        std::vector<char> is_piv(d, 0);
        for (int c : piv) is_piv[c] = 1;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i)
            for (int c = piv[i] + 1; c < d; ++c)
                if (!is_piv[c]) free_pos.emplace_back(i, c);
        std::vector<int> free_cols;
        for (int c = 0; c < d; ++c)
            if (!is_piv[c]) free_cols.push_back(c);

        std::vector<int> bvals(free_pos.size(), 0);
        for (;;) {
            Flat proto(F, d, k);
            proto.pivots_ = piv;
            for (int i = 0; i < k; ++i) proto.basis_.at(i, piv[i]) = 1;
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                proto.basis_.at(free_pos[t].first, free_pos[t].second) = bvals[t];

            std::vector<int> cvals(free_cols.size(), 0);
            for (;;) {
                Flat f = proto;
                f.base_.assign(d, 0);
                for (std::size_t t = 0; t < free_cols.size(); ++t) f.base_[free_cols[t]] = cvals[t];
                fn(std::move(f));
                int pos = static_cast<int>(cvals.size()) - 1;
                while (pos >= 0 && cvals[pos] == q - 1) cvals[pos--] = 0;
                if (pos < 0) break;
                ++cvals[pos];
            }
            int pos = static_cast<int>(bvals.size()) - 1;
            while (pos >= 0 && bvals[pos] == q - 1) bvals[pos--] = 0;
            if (pos < 0) break;
            ++bvals[pos];
        }
    };

    if (k == 0) {
        emit_for_pivots();
        return;
    }
    for (;;) {
        emit_for_pivots();
        int i = k - 1;
        while (i >= 0 && piv[i] == d - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

std::vector<Flat> enumerate_flats(const Field& f, int d, int k) {
    std::vector<Flat> out;
    out.reserve(static_cast<std::size_t>(
        std::min<BigInt>(flat_count(d, k, f.q()), BigInt(1) << 22).convert_to<long long>()));
    for_each_flat(f, d, k, [&out](Flat&& fl) { out.push_back(std::move(fl)); });
    return out;
}

std::vector<Flat> flats_within(const Flat& outer, int k) {
    if (k < 0 || k > outer.dim())
        fail(errc::invalid_dimension, "requested dimension " + std::to_string(k) +
                                          " outside [0, " + std::to_string(outer.dim()) + "]");
    const Field& F = outer.field();
    const int d = outer.ambient_dim();
    const int h = outer.dim();
    if (k == h) return {outer};

    // walk k-flats of the parameter space F_q^h and push them through the
    // affine parametrization u -> u * basis + base
    auto map_vec = [&](std::span<const int> u) {
        FqVector out{&F, std::vector<int>(d, 0)};
        for (int j = 0; j < h; ++j) {
            if (u[j] == 0) continue;
            for (int c = 0; c < d; ++c)
                out.coords[c] = F.add(out.coords[c], F.mul(u[j], outer.basis().at(j, c)));
        }
        return out;
    };

    std::vector<Flat> out;
    for_each_flat(F, h, k, [&](Flat&& inner) {
        std::vector<FqVector> dirs;
        dirs.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) dirs.push_back(map_vec(inner.basis().row(i)));
        FqVector base = map_vec(std::span<const int>(inner.base().data(), inner.base().size()));
        for (int c = 0; c < d; ++c) base.coords[c] = F.add(base.coords[c], outer.base()[c]);
        out.push_back(flat_from_span(dirs, base));
    });
    return out;
}

BigInt gaussian_binomial(int n, int k, int q) {
    if (q < 2) fail(errc::invalid_parameters, "q must be at least 2");
    if (k < 0 || k > n) fail(errc::invalid_parameters, "need 0 <= k <= n");
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= big_pow(q, n) - big_pow(q, i);
        den *= big_pow(q, k) - big_pow(q, i);
    }
    BigInt rem;
    BigInt quot;
    boost::multiprecision::divide_qr(num, den, quot, rem);
    if (rem != 0) fail(errc::internal_check_failed, "gaussian binomial not integral");
    return quot;
}

BigInt count_x(int h, int k, int q) {
    if (k < 0 || k > h) fail(errc::invalid_parameters, "need 0 <= k <= h");
    return big_pow(q, h - k) * gaussian_binomial(h, k, q);
}

BigInt count_y(int d, int h, int k, int q) {
    check_flat_params(d, k, h);
    BigInt num = 1, den = 1;
    for (int i = k; i < h; ++i) {
        num *= big_pow(q, d - i) - 1;
        den *= big_pow(q, h - i) - 1;
    }
    BigInt quot, rem;
    boost::multiprecision::divide_qr(num, den, quot, rem);
    if (rem != 0) fail(errc::internal_check_failed, "flat incidence count not integral");
    return quot;
}

BigInt flat_count(int d, int k, int q) {
    if (k < 0 || k >= d) fail(errc::invalid_parameters, "need 0 <= k < d");
    return big_pow(q, d - k) * gaussian_binomial(d, k, q);
}

CountTable make_count_table(int q, int d, int k, int h) {
    check_flat_params(d, k, h);
    CountTable t;
    t.q = q;
    t.d = d;
    t.k = k;
    t.h = h;
    t.n_kflats = flat_count(d, k, q);
    t.n_hflats = flat_count(d, h, q);
    t.x_hk = count_x(h, k, q);
    t.y_hk = count_y(d, h, k, q);
    t.edges = t.n_kflats * t.y_hk;
    t.double_count_ok = (t.edges == t.n_hflats * t.x_hk);
    return t;
}

std::string format_flat(const Flat& f) {
    std::ostringstream os;
    os << f.field().q() << ' ' << f.ambient_dim() << ' ' << f.dim() << " |";
    for (int i = 0; i < f.dim(); ++i) {
        if (i > 0) os << " ;";
        for (int c = 0; c < f.ambient_dim(); ++c) os << ' ' << f.basis().at(i, c);
    }
    os << " |";
    for (int c = 0; c < f.ambient_dim(); ++c) os << ' ' << f.base()[c];
    return os.str();
}

namespace {

std::vector<int> parse_ints(const std::string& s) {
    std::istringstream is(s);
    std::vector<int> out;
    int v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) fail(errc::parse_error, "malformed integer list: '" + s + "'");
    return out;
}

} // namespace

Flat parse_flat(const std::string& line, const Field& F) {
    std::vector<std::string> sections;
    std::size_t start = 0;
    for (;;) {
        std::size_t bar = line.find('|', start);
        if (bar == std::string::npos) {
            sections.push_back(line.substr(start));
            break;
        }
        sections.push_back(line.substr(start, bar - start));
        start = bar + 1;
    }
    if (sections.size() != 3)
        fail(errc::parse_error, "expected 3 pipe separated sections, got " +
                                    std::to_string(sections.size()));
    std::vector<int> head = parse_ints(sections[0]);
    if (head.size() != 3) fail(errc::parse_error, "header must be 'q d k'");
    const int q = head[0], d = head[1], k = head[2];
    if (q != F.q())
        fail(errc::parameter_mismatch, "line is over GF(" + std::to_string(q) +
                                           "), context is GF(" + std::to_string(F.q()) + ")");
    std::vector<FqVector> dirs;
    if (k > 0) {
        std::istringstream rows(sections[1]);
        std::string row;
        while (std::getline(rows, row, ';')) {
            std::vector<int> vals = parse_ints(row);
            if (static_cast<int>(vals.size()) != d)
                fail(errc::parse_error, "basis row arity mismatch");
            dirs.push_back(FqVector{&F, std::move(vals)});
        }
        if (static_cast<int>(dirs.size()) != k) fail(errc::parse_error, "basis row count mismatch");
    } else if (!parse_ints(sections[1]).empty()) {
        fail(errc::parse_error, "basis section must be empty for k = 0");
    }
    std::vector<int> base = parse_ints(sections[2]);
    if (static_cast<int>(base.size()) != d) fail(errc::parse_error, "base point arity mismatch");
    for (const auto& v : dirs)
        for (int c : v.coords)
            if (!F.in_range(c)) fail(errc::parse_error, "entry out of field range");
    for (int c : base)
        if (!F.in_range(c)) fail(errc::parse_error, "entry out of field range");
    return flat_from_span(dirs, FqVector{&F, std::move(base)});
}

} // namespace fqflats
