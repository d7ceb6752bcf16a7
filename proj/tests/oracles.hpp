#pragma once

#include <set>
#include <vector>

#include "fqflats/flats.hpp"
#include "fqflats/gf.hpp"

// Brute-force reference implementations. Everything here works on raw
// coordinate tuples and exhaustive enumeration, deliberately avoiding the
// library's echelon forms and canonical representations.
namespace oracle {

using PointSet = std::set<std::vector<int>>;

// All q^d coordinate tuples in lexicographic order.
std::vector<std::vector<int>> all_vectors(const fqflats::Field& f, int d);

// The set of points {base + sum c_i gens[i]} over all coefficient tuples.
// Generators may be dependent or zero; duplicates collapse in the set.
PointSet span_points(const fqflats::Field& f, const std::vector<std::vector<int>>& gens,
                     const std::vector<int>& base);

// Rank as log_q of the linear span size.
int rank(const fqflats::Field& f, const std::vector<std::vector<int>>& rows);

// Number of k-dimensional linear subspaces of F_q^d, counted by an
// ordered-basis census (k <= 2 stays cheap).
long long linear_subspace_count(const fqflats::Field& f, int d, int k);

// Point sets of every affine k-flat in F_q^d, found by sweeping all
// (generator tuple, base) pairs and deduplicating point sets.
std::set<PointSet> affine_flat_census(const fqflats::Field& f, int d, int k);

// The point set of a library flat, via its basis rows and base point.
PointSet flat_points(const fqflats::Flat& fl);

} // namespace oracle
