#include "fqflats/incidence.hpp"

#include <algorithm>
#include <map>

namespace fqflats {

int IncidenceGraph::index_of(Side s, const Flat& f) const {
    const auto& idx = s == Side::A ? index_a_ : index_b_;
    auto it = idx.find(f);
    return it == idx.end() ? -1 : it->second;
}

void IncidenceGraph::corrupt_one_edge_for_testing() {
    if (adj_a_.empty() || adj_a_[0].empty()) return;
    const int b = adj_a_[0].front();
    adj_a_[0].erase(adj_a_[0].begin());
    auto& back = adj_b_[b];
    back.erase(std::find(back.begin(), back.end(), 0));
}

IncidenceGraph build_graph(const Field& F, int d, int k, int h, const SizeBudget& budget) {
    if (k < 0 || h <= k || d <= h)
        fail(errc::invalid_parameters,
             "need 0 <= k < h < d, got k=" + std::to_string(k) + " h=" + std::to_string(h) +
                 " d=" + std::to_string(d));
    const int q = F.q();
    const BigInt na = flat_count(d, k, q);
    const BigInt nb = flat_count(d, h, q);
    if (na > budget.max_part || nb > budget.max_part)
        fail(errc::too_large, "part sizes " + na.str() + " x " + nb.str() +
                                  " exceed the per-part budget of " + std::to_string(budget.max_part));

    IncidenceGraph g;
    g.field_ = &F;
    g.d_ = d;
    g.k_ = k;
    g.h_ = h;
    g.budget_ = budget;
    g.deg_a_ = to_int64_checked(count_y(d, h, k, q));
    g.deg_b_ = to_int64_checked(count_x(h, k, q));
    g.part_a_ = enumerate_flats(F, d, k);
    g.part_b_ = enumerate_flats(F, d, h);
    g.index_a_.reserve(g.part_a_.size());
    for (std::size_t i = 0; i < g.part_a_.size(); ++i)
        g.index_a_.emplace(g.part_a_[i], static_cast<int>(i));
    g.index_b_.reserve(g.part_b_.size());
    for (std::size_t j = 0; j < g.part_b_.size(); ++j)
        g.index_b_.emplace(g.part_b_[j], static_cast<int>(j));

    g.adj_a_.assign(g.part_a_.size(), {});
    g.adj_b_.assign(g.part_b_.size(), {});
    for (auto& lst : g.adj_a_) lst.reserve(static_cast<std::size_t>(g.deg_a_));
    for (std::size_t j = 0; j < g.part_b_.size(); ++j) {
        std::vector<Flat> subs = flats_within(g.part_b_[j], k);
        auto& lst = g.adj_b_[j];
        lst.reserve(subs.size());
        for (const Flat& s : subs) {
            auto it = g.index_a_.find(s);
            if (it == g.index_a_.end())
                fail(errc::internal_check_failed, "contained flat missing from enumeration");
            lst.push_back(it->second);
            g.adj_a_[it->second].push_back(static_cast<int>(j));
        }
        std::sort(lst.begin(), lst.end());
        if (static_cast<long long>(lst.size()) != g.deg_b_ ||
            std::adjacent_find(lst.begin(), lst.end()) != lst.end())
            fail(errc::internal_check_failed, "h-flat degree mismatch at index " + std::to_string(j));
    }
    for (std::size_t i = 0; i < g.adj_a_.size(); ++i)
        if (static_cast<long long>(g.adj_a_[i].size()) != g.deg_a_)
            fail(errc::internal_check_failed, "k-flat degree mismatch at index " + std::to_string(i));
    return g;
}

long long count_incidences(std::span<const Flat> kflats, std::span<const Flat> hflats) {
    auto check_uniform = [](std::span<const Flat> family, const char* label) {
        for (const Flat& f : family)
            if (f.dim() != family.front().dim() || f.ambient_dim() != family.front().ambient_dim())
                fail(errc::parameter_mismatch, std::string("mixed dimensions in the ") + label + " family");
    };
    if (!kflats.empty()) check_uniform(kflats, "k-flat");
    if (!hflats.empty()) check_uniform(hflats, "h-flat");
    long long count = 0;
    for (const Flat& outer : hflats)
        for (const Flat& inner : kflats)
            if (flat_contains_flat(outer, inner)) ++count;
    return count;
}

int pair_rank(const Flat& v1, const Flat& v2) {
    if (v1.field().q() != v2.field().q() || v1.ambient_dim() != v2.ambient_dim() ||
        v1.dim() != v2.dim())
        fail(errc::parameter_mismatch, "flats from different families");
    if (v1 == v2) fail(errc::identical_flats, "pair rank needs two distinct flats");
    const Field& F = v1.field();
    const int d = v1.ambient_dim();
    const int k = v1.dim();
    FqMatrix m(F, 2 * k + 1, d);
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < d; ++c) {
            m.at(i, c) = v1.basis().at(i, c);
            m.at(k + i, c) = v2.basis().at(i, c);
        }
    for (int c = 0; c < d; ++c) m.at(2 * k, c) = F.sub(v2.base()[c], v1.base()[c]);
    return rref(m).rank;
}

BigInt common_neighbor_count(const Flat& v1, const Flat& v2, int h) {
    const int d = v1.ambient_dim();
    const int k = v1.dim();
    if (k >= h || h >= d)
        fail(errc::invalid_parameters, "need k < h < d");
    const int t = pair_rank(v1, v2);
    if (t > h) return 0;
    return gaussian_binomial(d - t, h - t, v1.field().q());
}

GramMatrix gram_of_side(const IncidenceGraph& g, Side s) {
    const long long n = g.size_of(s);
    GramMatrix m;
    m.n = n;
    m.data.assign(static_cast<std::size_t>(n) * n, 0);
    const Side other = s == Side::A ? Side::B : Side::A;
    const long long m_other = g.size_of(other);
    for (long long v = 0; v < m_other; ++v) {
        const auto& nb = g.adj_of(other, static_cast<int>(v));
        for (std::size_t x = 0; x < nb.size(); ++x)
            for (std::size_t y = 0; y < nb.size(); ++y)
                ++m.at(nb[x], nb[y]);
    }
    return m;
}

GramMatrix gram_matrix(const IncidenceGraph& g) {
    const long long n = g.size_a();
    if (n * n > g.budget().max_gram_entries)
        fail(errc::too_large, "gram matrix with " + std::to_string(n * n) +
                                  " entries exceeds the budget of " +
                                  std::to_string(g.budget().max_gram_entries));
    return gram_of_side(g, Side::A);
}

DecompositionReport verify_decomposition(const IncidenceGraph& g) {
    const long long n = g.size_a();
    if (n > g.budget().max_pair_scan_part)
        fail(errc::too_large, "all-pairs scan over " + std::to_string(n) +
                                  " flats exceeds the budget of " +
                                  std::to_string(g.budget().max_pair_scan_part));
    const int q = g.field().q();
    const int d = g.d(), k = g.k(), h = g.h();

    DecompositionReport rep;
    rep.q = q;
    rep.d = d;
    rep.k = k;
    rep.h = h;
    rep.n = n;
    rep.diag_expected = to_int64_checked(count_y(d, h, k, q));

    GramMatrix gram = gram_matrix(g);
    rep.diag_ok = true;
    for (long long i = 0; i < n; ++i)
        if (gram.at(i, i) != rep.diag_expected) rep.diag_ok = false;

    std::map<int, long long> expected;
    for (int t = k + 1; t <= 2 * k + 1; ++t)
        expected[t] = t > h ? 0 : to_int64_checked(gaussian_binomial(d - t, h - t, q));

    std::map<int, std::vector<long long>> class_counts;
    for (const auto& [t, unused] : expected) class_counts[t].assign(n, 0);

    rep.mismatched_entries = 0;
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j) {
            const int t = pair_rank(g.part_a()[i], g.part_a()[j]);
            auto it = expected.find(t);
            if (it == expected.end() || gram.at(i, j) != it->second ||
                gram.at(j, i) != it->second) {
                ++rep.mismatched_entries;
                continue;
            }
            ++class_counts[t][i];
            ++class_counts[t][j];
        }
    rep.entries_ok = rep.mismatched_entries == 0;

    std::vector<long long> totals(n, 0);
    for (auto& [t, counts] : class_counts) {
        PairClass cls;
        cls.t = t;
        cls.expected_entry = expected[t];
        cls.degree = counts.empty() ? 0 : counts[0];
        cls.regular = std::all_of(counts.begin(), counts.end(),
                                  [&cls](long long c) { return c == cls.degree; });
        cls.lead_exponent = static_cast<long long>(t - k) * (d - t + k + 1);
        double denom = 1.0;
        for (long long e = 0; e < cls.lead_exponent; ++e) denom *= q;
        cls.degree_ratio = static_cast<double>(cls.degree) / denom;
        cls.ratio_ok = cls.degree_ratio >= 0.5 && cls.degree_ratio <= 3.0;
        rep.classes.push_back(cls);
        for (long long i = 0; i < n; ++i) totals[i] += counts[i];
    }
    rep.partition_ok = std::all_of(totals.begin(), totals.end(),
                                   [n](long long t) { return t == n - 1; });
    return rep;
}

} // namespace fqflats
