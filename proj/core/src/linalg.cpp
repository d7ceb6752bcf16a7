#include "fqflats/linalg.hpp"

namespace fqflats {
namespace {

FqMatrix stack(std::span<const FqVector> vectors, const FqVector* extra) {
    if (vectors.empty() && extra == nullptr)
        fail(errc::invalid_parameters, "no vectors given");
    const Field* f = vectors.empty() ? extra->field : vectors.front().field;
    if (f == nullptr) fail(errc::invalid_parameters, "vector without field context");
    const int d = vectors.empty() ? extra->dim() : vectors.front().dim();
    const int n = static_cast<int>(vectors.size()) + (extra != nullptr ? 1 : 0);
    FqMatrix m(*f, n, d);
    int r = 0;
    for (const auto& v : vectors) {
        if (v.field == nullptr || *v.field != *f)
            fail(errc::parameter_mismatch, "vectors from different fields");
        if (v.dim() != d)
            fail(errc::dimension_mismatch, "vector of dimension " + std::to_string(v.dim()) +
                                               " among vectors of dimension " + std::to_string(d));
        for (int c = 0; c < d; ++c) m.at(r, c) = v.coords[c];
        ++r;
    }
    if (extra != nullptr) {
        if (extra->field == nullptr || *extra->field != *f)
            fail(errc::parameter_mismatch, "vectors from different fields");
        if (extra->dim() != d)
            fail(errc::dimension_mismatch, "vector of dimension " + std::to_string(extra->dim()) +
                                               " among vectors of dimension " + std::to_string(d));
        for (int c = 0; c < d; ++c) m.at(r, c) = extra->coords[c];
    }
    return m;
}

} // namespace

RrefResult rref(const FqMatrix& m) {
    if (m.field == nullptr) fail(errc::invalid_parameters, "matrix without field context");
    const Field& F = *m.field;
    FqMatrix w = m;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int sel = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(sel, j), w.at(r, j));
        const int scale = F.inv(w.at(r, c));
        for (int j = 0; j < w.cols; ++j) w.at(r, j) = F.mul(scale, w.at(r, j));
        for (int i = 0; i < w.rows; ++i) {
            if (i == r) continue;
            const int f = w.at(i, c);
            if (f == 0) continue;
            for (int j = 0; j < w.cols; ++j)
                w.at(i, j) = F.sub(w.at(i, j), F.mul(f, w.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    RrefResult res;
    res.rank = r;
    res.pivots = std::move(pivots);
    res.mat = FqMatrix(F, r, w.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < w.cols; ++j) res.mat.at(i, j) = w.at(i, j);
    return res;
}

int rank_of(std::span<const FqVector> vectors) {
    if (vectors.empty()) return 0;
    return rref(stack(vectors, nullptr)).rank;
}

bool in_span(std::span<const FqVector> vectors, const FqVector& x) {
    if (x.field == nullptr) fail(errc::invalid_parameters, "vector without field context");
    if (vectors.empty()) {
        for (int c : x.coords)
            if (c != 0) return false;
        return true;
    }
    const int base_rank = rank_of(vectors);
    return rref(stack(vectors, &x)).rank == base_rank;
}

} // namespace fqflats
