#pragma once

#include "fqflats/incidence.hpp"

namespace fqflats {

inline constexpr double kDefaultEigenTol = 1e-9;

/// Eigenvalues of a dense symmetric matrix (row-major, n x n), sorted in
/// descending order.  Symmetry is checked against tol * max|entry|.
std::vector<double> eigen_sym(const std::vector<double>& row_major, long long n,
                              double tol = kDefaultEigenTol);

/// Spectral summary of an incidence graph.  lambda1 and lambda3 come from a
/// dense eigensolve of the common-neighbor matrix of the smaller part, whose
/// nonzero spectrum matches the A-side matrix.  The bound field is the
/// closed-form ceiling sqrt(2k+1) * q^(((d-h)h + k(2h-d-k+1)) / 2).
struct SpectrumReport {
    int q = 0, d = 0, k = 0, h = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0; // always -lambda1 for a bipartite graph
    double lambda3 = 0.0;
    double bound = 0.0;
    double ratio = 0.0;    // lambda3 / bound
    double ab_check = 0.0; // |lambda1 - sqrt(deg_a * deg_b)|
    long long gram_dim = 0;
    bool side_a = true; // which part the solved matrix came from
    bool pass = false;  // lambda3 <= bound
};

SpectrumReport graph_spectrum(const IncidenceGraph& g, double tol = kDefaultEigenTol);

/// Edge-distribution audit for X within part A and Y within part B:
/// compares |e(X,Y) - deg_a |X||Y| / |B|| against lambda3 sqrt(|X||Y|) and
/// the refined form with the (1 - |X|/|A|)(1 - |Y|/|B|) factor.
struct MixingReport {
    long long x_size = 0;
    long long y_size = 0;
    long long edges = 0;
    double main_term = 0.0;
    double deviation = 0.0;
    double bound_basic = 0.0;
    double bound_refined = 0.0;
    bool pass_basic = false;
    bool pass_refined = false;
    bool pass = false; // refined
};

MixingReport mixing_audit(const IncidenceGraph& g, std::span<const int> x_set,
                          std::span<const int> y_set, const SpectrumReport& spectrum);
MixingReport mixing_audit(const IncidenceGraph& g, std::span<const int> x_set,
                          std::span<const int> y_set);

/// Product-size threshold above which the deviation bound forces at least
/// one incidence: (2k+1) * q^(d(k+h) + 2d + k - k^2 - h^2 - 2h).
BigInt guarantee_threshold(int d, int k, int h, int q);

/// Deviation-bound audit for arbitrary flat families.  The pass verdict
/// compares exact integers: (I q^m - |P||H|)^2 <= (2k+1) q^(2g+2m) |P||H|
/// with m = (d-h)(k+1) and 2g = (d-h)h + k(2h-d-k+1).  When a spectrum is
/// supplied, a second verdict uses the measured lambda3 instead.
struct IncidenceBoundReport {
    int q = 0, d = 0, k = 0, h = 0;
    long long p_size = 0;
    long long h_size = 0;
    long long incidences = 0;
    double main_term = 0.0;
    double deviation = 0.0;
    double bound = 0.0;
    bool hypothesis_ok = true; // h >= 2k+1
    BigInt threshold;
    bool above_threshold = false;
    bool nonempty_ok = true; // incidences > 0 whenever above_threshold
    bool pass = false;
    double bound_measured = 0.0;
    bool pass_measured = false;
    bool has_measured = false;
};

IncidenceBoundReport incidence_bound_check(std::span<const Flat> kflats,
                                           std::span<const Flat> hflats, int d, int k, int h,
                                           const Field& f,
                                           const SpectrumReport* spectrum = nullptr);

/// Same audit on index subsets of a built graph, with incidences counted
/// through the adjacency lists.
IncidenceBoundReport incidence_bound_check(const IncidenceGraph& g, std::span<const int> x_set,
                                           std::span<const int> y_set,
                                           const SpectrumReport* spectrum = nullptr);

} // namespace fqflats
