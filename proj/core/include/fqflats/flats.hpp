#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "fqflats/bigint.hpp"
#include "fqflats/linalg.hpp"

namespace fqflats {

/// Affine k-flat of F_q^d in canonical form.
///
/// The canonical representative of a coset  span(rows) + base  consists of
/// the RREF basis of the direction space together with the unique base point
/// whose coordinates vanish at every pivot column.  Two flats are equal as
/// point sets iff their canonical forms are componentwise identical, so flat
/// comparison and hashing reduce to plain tuple comparison.
class Flat {
public:
    const Field& field() const noexcept { return *field_; }
    int ambient_dim() const noexcept { return d_; }
    int dim() const noexcept { return k_; }
    const FqMatrix& basis() const noexcept { return basis_; }
    const std::vector<int>& pivots() const noexcept { return pivots_; }
    const std::vector<int>& base() const noexcept { return base_; }

    friend bool operator==(const Flat& a, const Flat& b) noexcept {
        return a.field_->q() == b.field_->q() && a.d_ == b.d_ && a.k_ == b.k_ &&
               a.pivots_ == b.pivots_ && a.basis_.data == b.basis_.data && a.base_ == b.base_;
    }
    friend bool operator!=(const Flat& a, const Flat& b) noexcept { return !(a == b); }

private:
    Flat(const Field& f, int d, int k) : field_(&f), d_(d), k_(k), basis_(f, k, d) {}

    const Field* field_;
    int d_;
    int k_;
    FqMatrix basis_;
    std::vector<int> pivots_;
    std::vector<int> base_;

    friend Flat flat_from_span(std::span<const FqVector> directions, const FqVector& base);
    friend void for_each_flat(const Field& f, int d, int k, const std::function<void(Flat&&)>& fn);
};

struct FlatHash {
    std::size_t operator()(const Flat& f) const noexcept;
};

/// Canonical flat spanned by the given direction vectors through base.
/// The directions must be linearly independent (degenerate_span otherwise)
/// and fewer than the ambient dimension (invalid_dimension otherwise).
Flat flat_from_span(std::span<const FqVector> directions, const FqVector& base);

/// Point-set equality of two flats with matching (field, d, k).
bool flat_eq(const Flat& u, const Flat& v);

/// Membership of a point in a flat.
bool contains_point(const Flat& v, const FqVector& x);

/// Whether the flat inner (dimension k) lies inside outer (dimension h >= k).
bool flat_contains_flat(const Flat& outer, const Flat& inner);

/// Visit every k-flat of F_q^d exactly once, ordered lexicographically by
/// (pivot columns, basis entries, base entries).
void for_each_flat(const Field& f, int d, int k, const std::function<void(Flat&&)>& fn);

/// All k-flats of F_q^d in enumeration order.
std::vector<Flat> enumerate_flats(const Field& f, int d, int k);

/// All k-flats contained in the given flat, canonical in the ambient space,
/// k <= outer.dim().
std::vector<Flat> flats_within(const Flat& outer, int k);

/// Gaussian binomial coefficient: number of k-dimensional subspaces of F_q^n.
BigInt gaussian_binomial(int n, int k, int q);

/// Number of k-flats contained in a fixed h-flat.
BigInt count_x(int h, int k, int q);

/// Number of h-flats of F_q^d containing a fixed k-flat.
BigInt count_y(int d, int h, int k, int q);

/// Total number of k-flats of F_q^d.
BigInt flat_count(int d, int k, int q);

/// Exact counting summary for the k-versus-h incidence structure in F_q^d.
struct CountTable {
    int q = 0, d = 0, k = 0, h = 0;
    BigInt n_kflats;
    BigInt n_hflats;
    BigInt x_hk;  // k-flats per h-flat
    BigInt y_hk;  // h-flats per k-flat
    BigInt edges; // n_kflats * y_hk
    bool double_count_ok = false;
};

CountTable make_count_table(int q, int d, int k, int h);

/// One-line text form: "q d k | basis row ; ... | base", sections pipe
/// separated, row entries space separated, empty basis section for k = 0.
std::string format_flat(const Flat& f);

/// Parse the one-line text form; the embedded q must match the context.
Flat parse_flat(const std::string& line, const Field& f);

} // namespace fqflats
