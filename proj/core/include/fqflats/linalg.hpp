#pragma once

#include <span>
#include <vector>

#include "fqflats/gf.hpp"

namespace fqflats {

/// Coordinate vector over a field context.
struct FqVector {
    const Field* field = nullptr;
    std::vector<int> coords;

    int dim() const noexcept { return static_cast<int>(coords.size()); }
};

/// Dense row-major matrix over a field context.
struct FqMatrix {
    const Field* field = nullptr;
    int rows = 0;
    int cols = 0;
    std::vector<int> data;

    FqMatrix() = default;
    FqMatrix(const Field& f, int r, int c)
        : field(&f), rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

    int& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    int at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::span<const int> row(int r) const {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }

    friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

struct RrefResult {
    FqMatrix mat;            // reduced row echelon form, zero rows dropped
    int rank = 0;
    std::vector<int> pivots; // pivot column per nonzero row, strictly increasing
};

/// Reduced row echelon form with first-nonzero pivot selection.
RrefResult rref(const FqMatrix& m);

/// Row rank of a set of vectors; all vectors must share field and dimension.
int rank_of(std::span<const FqVector> vectors);

/// Membership of x in the linear span of the given vectors.
bool in_span(std::span<const FqVector> vectors, const FqVector& x);

} // namespace fqflats
