#pragma once

#include "fqflats/spectral.hpp"

namespace fqflats {

/// Vertices of the opposite part with at least t neighbors inside the given
/// subset, in index order.
std::vector<int> rich_objects(const IncidenceGraph& g, Side side_of_s, std::span<const int> s_set,
                              long long t);

enum class RichKind { lund_saraf, kplanes, hplanes };

/// Outcome of one richness audit.  Two density constants are tracked: the
/// exact-graph constant built from the measured eigenvalue ratio, and the
/// closed-form constant with its q-power denominator.  Each constant has its
/// own floor and verdict; a report whose hypothesis fails is marked not
/// applicable and carries no verdicts.
struct RichReport {
    RichKind kind = RichKind::lund_saraf;
    int q = 0, d = 0, k = 0, h = 0;
    long long t = 0;
    long long s_size = 0;
    long long threshold_exact = 0; // ceil(2(t-1) |part of S| / deg of the other part)
    BigInt threshold_paper;        // 2(t-1) q^((d-h)(k+1))
    bool hypothesis_met = false;
    bool applicable = false;
    long long r_count = 0;
    double mu_sq = 0.0;
    double c_exact = 0.0;
    double c_paper = 0.0;
    long long floor_exact = 0;
    long long floor_paper = 0;
    bool pass_exact = false;
    bool pass_paper = false;
};

/// Generic biregular richness bound for S inside part B, measured mu:
/// |S| >= 2(t-1)|B|/deg_a  forces  |R_t(S)| >= (t-1)/((t-1) + 2 deg_a mu^2) |A|.
RichReport lund_saraf_check(const IncidenceGraph& g, std::span<const int> s_in_b, long long t,
                            const SpectrumReport& spectrum);

/// Richness of k-flats against a family of h-flats; closed-form constant
/// (t-1)/((t-1) + 2 q^((d-h-1)(h-k)+k)) with floor against q^((d-k)(k+1)).
RichReport rich_kplanes_check(const IncidenceGraph& g, std::span<const int> hflats, long long t,
                              const SpectrumReport& spectrum);

/// Richness of h-flats against a family of k-flats; closed-form constant
/// (t-1)/((t-1) + 2 q^(k(h-k+1))) with floor against q^((d-h)(h+1)).
RichReport rich_hplanes_check(const IncidenceGraph& g, std::span<const int> kflats, long long t,
                              const SpectrumReport& spectrum);

} // namespace fqflats
