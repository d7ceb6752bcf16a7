#include "fqflats/richness.hpp"

#include <cmath>

namespace fqflats {
namespace {

// integer ceiling that snaps arguments within 1e-6 relative of an integer
long long guarded_ceil(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-6 * std::max(1.0, std::abs(x))) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(x));
}

std::vector<char> subset_mask(std::span<const int> subset, long long part_size) {
    std::vector<char> mask(static_cast<std::size_t>(part_size), 0);
    for (int v : subset) {
        if (v < 0 || v >= part_size)
            fail(errc::bad_subset, "index " + std::to_string(v) + " outside part of size " +
                                       std::to_string(part_size));
        if (mask[v]) fail(errc::bad_subset, "index " + std::to_string(v) + " repeated");
        mask[v] = 1;
    }
    return mask;
}

long long ceil_div(long long num, long long den) { return (num + den - 1) / den; }

RichReport rich_check(const IncidenceGraph& g, RichKind kind, std::span<const int> s_set,
                      long long t, const SpectrumReport& spectrum) {
    if (t < 2) fail(errc::invalid_parameters, "richness threshold t must be at least 2");
    const Side s_side = kind == RichKind::hplanes ? Side::A : Side::B;
    const Side r_side = s_side == Side::A ? Side::B : Side::A;

    RichReport rep;
    rep.kind = kind;
    rep.q = g.field().q();
    rep.d = g.d();
    rep.k = g.k();
    rep.h = g.h();
    rep.t = t;
    rep.s_size = static_cast<long long>(s_set.size());

    const long long deg_r = g.deg_of(r_side);
    rep.threshold_exact = ceil_div(2 * (t - 1) * g.size_of(s_side), deg_r);
    rep.threshold_paper =
        BigInt(2 * (t - 1)) * big_pow(rep.q, static_cast<long long>(rep.d - rep.h) * (rep.k + 1));
    rep.hypothesis_met = kind == RichKind::lund_saraf
                             ? rep.s_size >= rep.threshold_exact
                             : BigInt(rep.s_size) >= rep.threshold_paper;
    rep.applicable = rep.hypothesis_met;

    rep.r_count = static_cast<long long>(rich_objects(g, s_side, s_set, t).size());
    rep.mu_sq = (spectrum.lambda3 * spectrum.lambda3) / (spectrum.lambda1 * spectrum.lambda1);
    rep.c_exact = static_cast<double>(t - 1) /
                  (static_cast<double>(t - 1) + 2.0 * static_cast<double>(deg_r) * rep.mu_sq);

    long long paper_exp = 0;
    long long paper_floor_exp = 0;
    if (kind == RichKind::hplanes) {
        paper_exp = static_cast<long long>(rep.k) * (rep.h - rep.k + 1);
        paper_floor_exp = static_cast<long long>(rep.d - rep.h) * (rep.h + 1);
    } else {
        paper_exp = static_cast<long long>(rep.d - rep.h - 1) * (rep.h - rep.k) + rep.k;
        paper_floor_exp = static_cast<long long>(rep.d - rep.k) * (rep.k + 1);
    }
    rep.c_paper = static_cast<double>(t - 1) /
                  (static_cast<double>(t - 1) + 2.0 * big_pow(rep.q, paper_exp).convert_to<double>());

    rep.floor_exact =
        guarded_ceil(rep.c_exact * static_cast<double>(g.size_of(r_side)));
    rep.floor_paper =
        guarded_ceil(rep.c_paper * big_pow(rep.q, paper_floor_exp).convert_to<double>());
    if (rep.applicable) {
        rep.pass_exact = rep.r_count >= rep.floor_exact;
        rep.pass_paper = rep.r_count >= rep.floor_paper;
    }
    return rep;
}

} // namespace

std::vector<int> rich_objects(const IncidenceGraph& g, Side side_of_s, std::span<const int> s_set,
                              long long t) {
    if (t < 1) fail(errc::invalid_parameters, "richness threshold t must be at least 1");
    subset_mask(s_set, g.size_of(side_of_s));
    const Side other = side_of_s == Side::A ? Side::B : Side::A;
    std::vector<long long> counts(static_cast<std::size_t>(g.size_of(other)), 0);
    for (int s : s_set)
        for (int u : g.adj_of(side_of_s, s)) ++counts[u];
    std::vector<int> out;
    for (std::size_t u = 0; u < counts.size(); ++u)
        if (counts[u] >= t) out.push_back(static_cast<int>(u));
    return out;
}

RichReport lund_saraf_check(const IncidenceGraph& g, std::span<const int> s_in_b, long long t,
                            const SpectrumReport& spectrum) {
    return rich_check(g, RichKind::lund_saraf, s_in_b, t, spectrum);
}

RichReport rich_kplanes_check(const IncidenceGraph& g, std::span<const int> hflats, long long t,
                              const SpectrumReport& spectrum) {
    return rich_check(g, RichKind::kplanes, hflats, t, spectrum);
}

RichReport rich_hplanes_check(const IncidenceGraph& g, std::span<const int> kflats, long long t,
                              const SpectrumReport& spectrum) {
    return rich_check(g, RichKind::hplanes, kflats, t, spectrum);
}

} // namespace fqflats
