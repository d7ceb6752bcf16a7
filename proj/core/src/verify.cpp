#include "fqflats/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>

#include "fqflats/errors.hpp"
#include "fqflats/flats.hpp"
#include "fqflats/gf.hpp"
#include "fqflats/linalg.hpp"
#include "fqflats/richness.hpp"
#include "fqflats/sampling.hpp"

namespace fqflats {
namespace {

enum class Status { pass, fail, skip, na };

const char* status_name(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
    case Status::na: return "not-applicable";
    }
    return "?";
}

void bump(VerifySummary& sum, Status st) {
    switch (st) {
    case Status::pass: ++sum.pass; break;
    case Status::fail: ++sum.fail; break;
    case Status::skip: ++sum.skipped; break;
    case Status::na: ++sum.not_applicable; break;
    }
}

void add_record(Json& records, VerifySummary& sum, const GridEntry& e, const char* check,
                Status st, Json detail) {
    Json r;
    r["params"] = params_json(e.q, e.d, e.k, e.h);
    r["check"] = check;
    r["status"] = status_name(st);
    r["detail"] = std::move(detail);
    records.push_back(std::move(r));
    bump(sum, st);
}

/// Runs one check body; a TooLarge escape becomes a skip record, any other
/// library error becomes a fail record. The body adds its own record on the
/// normal path.
template <typename F>
void guarded(Json& records, VerifySummary& sum, const GridEntry& e, const char* check, F&& body) {
    try {
        body();
    } catch (const error& err) {
        if (err.code() == errc::too_large) {
            add_record(records, sum, e, check, Status::skip, Json{{"reason", err.what()}});
        } else {
            add_record(records, sum, e, check, Status::fail,
                       Json{{"error", errc_name(err.code())}, {"what", err.what()}});
        }
    }
}

/// Per-check stream seeds mix the entry parameters and a check tag into the
/// base seed, so record order never affects the draws.
std::uint64_t derive_seed(std::uint64_t seed, const GridEntry& e, std::uint64_t tag) {
    std::uint64_t x = seed;
    x ^= 0x9e3779b97f4a7c15ULL *
         (static_cast<std::uint64_t>(e.q) * 1000000u + static_cast<std::uint64_t>(e.d) * 10000u +
          static_cast<std::uint64_t>(e.k) * 100u + static_cast<std::uint64_t>(e.h) + 1u);
    x ^= tag * 0xbf58476d1ce4e5b9ULL;
    return x;
}

std::vector<FqVector> basis_rows(const Flat& fl) {
    std::vector<FqVector> rows;
    rows.reserve(static_cast<std::size_t>(fl.dim()));
    for (int i = 0; i < fl.dim(); ++i) {
        auto r = fl.basis().row(i);
        rows.push_back(FqVector{&fl.field(), std::vector<int>(r.begin(), r.end())});
    }
    return rows;
}

FqVector coord_diff(const Field& f, const std::vector<int>& a, const std::vector<int>& b) {
    FqVector out{&f, a};
    for (std::size_t i = 0; i < out.coords.size(); ++i)
        out.coords[i] = f.sub(out.coords[i], b[i]);
    return out;
}

/// Equality by the span criterion: same direction span and base difference
/// inside it, evaluated through generic rank arithmetic rather than the
/// canonical-form comparison.
bool criterion_eq(const Flat& u, const Flat& v) {
    if (u.ambient_dim() != v.ambient_dim() || u.dim() != v.dim()) return false;
    const auto du = basis_rows(u);
    const auto dv = basis_rows(v);
    for (const auto& r : dv)
        if (!in_span(du, r)) return false;
    for (const auto& r : du)
        if (!in_span(dv, r)) return false;
    return in_span(du, coord_diff(u.field(), v.base(), u.base()));
}

/// Membership by the span criterion: x lies in the flat iff x - base is in
/// the direction span.
bool criterion_contains_point(const Flat& fl, const std::vector<int>& x) {
    return in_span(basis_rows(fl), coord_diff(fl.field(), x, fl.base()));
}

std::vector<std::vector<int>> flat_points(const Flat& fl) {
    const Field& f = fl.field();
    const int q = f.q();
    const int k = fl.dim();
    const int d = fl.ambient_dim();
    std::vector<std::vector<int>> pts;
    std::vector<int> coeff(static_cast<std::size_t>(k), 0);
    while (true) {
        std::vector<int> p = fl.base();
        for (int i = 0; i < k; ++i) {
            if (coeff[static_cast<std::size_t>(i)] == 0) continue;
            for (int c = 0; c < d; ++c)
                p[static_cast<std::size_t>(c)] =
                    f.add(p[static_cast<std::size_t>(c)],
                          f.mul(coeff[static_cast<std::size_t>(i)], fl.basis().at(i, c)));
        }
        pts.push_back(std::move(p));
        int pos = k - 1;
        while (pos >= 0 && coeff[static_cast<std::size_t>(pos)] == q - 1)
            coeff[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++coeff[static_cast<std::size_t>(pos)];
    }
    return pts;
}

/// Rebuilds the same flat from a randomized representation: an invertible
/// recombination of the basis rows and a shifted base point on the flat.
Flat rerepresent(const Flat& fl, SampleStream& rng) {
    const Field& f = fl.field();
    const int q = f.q();
    const int k = fl.dim();
    const int d = fl.ambient_dim();

    std::vector<FqVector> dirs;
    if (k > 0) {
        FqMatrix m(f, k, k);
        std::vector<FqVector> mrows;
        do {
            for (auto& x : m.data) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
            mrows.clear();
            for (int i = 0; i < k; ++i) {
                auto r = m.row(i);
                mrows.push_back(FqVector{&f, std::vector<int>(r.begin(), r.end())});
            }
        } while (rank_of(mrows) != k);

        for (int i = 0; i < k; ++i) {
            FqVector dir{&f, std::vector<int>(static_cast<std::size_t>(d), 0)};
            for (int j = 0; j < k; ++j)
                for (int c = 0; c < d; ++c)
                    dir.coords[static_cast<std::size_t>(c)] =
                        f.add(dir.coords[static_cast<std::size_t>(c)],
                              f.mul(m.at(i, j), fl.basis().at(j, c)));
            dirs.push_back(std::move(dir));
        }
    }

    FqVector base{&f, fl.base()};
    for (int j = 0; j < k; ++j) {
        const int c0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
        if (c0 == 0) continue;
        for (int c = 0; c < d; ++c)
            base.coords[static_cast<std::size_t>(c)] =
                f.add(base.coords[static_cast<std::size_t>(c)], f.mul(c0, fl.basis().at(j, c)));
    }
    return flat_from_span(dirs, base);
}

long long intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    long long n = 0;
    auto it = a.begin();
    for (int v : b) {
        it = std::lower_bound(it, a.end(), v);
        if (it == a.end()) break;
        if (*it == v) ++n;
    }
    return n;
}

} // namespace

std::vector<GridEntry> default_grid() {
    static constexpr int shapes[][3] = {{2, 0, 1}, {3, 0, 1}, {3, 0, 2}, {4, 0, 3}, {4, 1, 3}};
    std::vector<GridEntry> grid;
    for (int q : {3, 5, 9}) {
        for (const auto& s : shapes) {
            if (q == 9 && s[0] > 3) continue;
            grid.push_back(GridEntry{q, s[0], s[1], s[2]});
        }
    }
    return grid;
}

std::vector<GridEntry> parse_grid(const std::string& text) {
    std::vector<GridEntry> grid;
    std::istringstream entries(text);
    std::string chunk;
    while (std::getline(entries, chunk, ';')) {
        if (chunk.empty()) continue;
        GridEntry e;
        char c1 = 0, c2 = 0, c3 = 0;
        std::istringstream fields(chunk);
        if (!(fields >> e.q >> c1 >> e.d >> c2 >> e.k >> c3 >> e.h) || c1 != ',' || c2 != ',' ||
            c3 != ',') {
            fail(errc::parse_error, "grid entry must be q,d,k,h: '" + chunk + "'");
        }
        std::string rest;
        if (fields >> rest) fail(errc::parse_error, "trailing text in grid entry: '" + chunk + "'");
        grid.push_back(e);
    }
    if (grid.empty()) fail(errc::parse_error, "empty grid specification");
    return grid;
}

SizeBudget parse_budget(const std::string& text) {
    SizeBudget b;
    long long* slots[] = {&b.max_part, &b.max_gram_entries, &b.max_eigen_dim,
                          &b.max_pair_scan_part};
    std::istringstream in(text);
    std::string chunk;
    std::size_t i = 0;
    while (std::getline(in, chunk, ',')) {
        if (i >= 4) fail(errc::parse_error, "budget accepts at most four fields");
        if (!chunk.empty()) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(chunk, &used);
            } catch (const std::exception&) {
                fail(errc::parse_error, "bad budget field: '" + chunk + "'");
            }
            if (used != chunk.size() || v < 0)
                fail(errc::parse_error, "bad budget field: '" + chunk + "'");
            *slots[i] = v;
        }
        ++i;
    }
    return b;
}

SizeBudget budget_from_env() {
    const char* env = std::getenv("FQFLATS_BUDGET");
    if (env == nullptr || *env == '\0') return SizeBudget{};
    return parse_budget(env);
}

SampleCounts scaled_samples(long long n) {
    SampleCounts s;
    if (n <= 0) {
        s.mixing = s.deviation = s.rich_sets = s.relation_fuzz = 0;
        return s;
    }
    s.mixing = n;
    s.deviation = std::max<long long>(1, n / 5);
    s.rich_sets = std::max<long long>(1, n / 20);
    s.relation_fuzz = std::max<long long>(1, n / 2);
    return s;
}

namespace {

void check_count_formulas(Json& records, VerifySummary& sum, const GridEntry& e) {
    const CountTable t = make_count_table(e.q, e.d, e.k, e.h);
    const bool ok = t.double_count_ok && t.n_kflats > 0 && t.n_hflats > 0 && t.x_hk > 0 &&
                    t.y_hk > 0 && t.edges == t.n_kflats * t.y_hk;
    add_record(records, sum, e, "count-formulas", ok ? Status::pass : Status::fail, to_json(t));
}

void check_graph_structure(Json& records, VerifySummary& sum, const GridEntry& e,
                           const IncidenceGraph& g) {
    const CountTable t = make_count_table(e.q, e.d, e.k, e.h);
    bool sizes_ok = BigInt(g.size_a()) == t.n_kflats && BigInt(g.size_b()) == t.n_hflats;
    bool degrees_ok = true;
    bool cross_ok = true;
    long long edge_total = 0;
    for (long long a = 0; a < g.size_a(); ++a) {
        const auto& nb = g.adj_of(Side::A, static_cast<int>(a));
        edge_total += static_cast<long long>(nb.size());
        if (BigInt(static_cast<long long>(nb.size())) != t.y_hk) degrees_ok = false;
        for (int b : nb) {
            const auto& back = g.adj_of(Side::B, b);
            if (!std::binary_search(back.begin(), back.end(), static_cast<int>(a)))
                cross_ok = false;
        }
    }
    for (long long b = 0; b < g.size_b(); ++b) {
        const auto& nb = g.adj_of(Side::B, static_cast<int>(b));
        if (BigInt(static_cast<long long>(nb.size())) != t.x_hk) degrees_ok = false;
        if (!std::is_sorted(nb.begin(), nb.end())) cross_ok = false;
    }
    const bool edges_ok = BigInt(edge_total) == t.edges;
    const bool ok = sizes_ok && degrees_ok && cross_ok && edges_ok;
    Json detail{{"A_size", g.size_a()},   {"B_size", g.size_b()},   {"edges", edge_total},
                {"sizes_ok", sizes_ok},   {"degrees_ok", degrees_ok},
                {"cross_ok", cross_ok},   {"edges_ok", edges_ok}};
    add_record(records, sum, e, "graph-structure", ok ? Status::pass : Status::fail,
               std::move(detail));
}

void check_flat_relations(Json& records, VerifySummary& sum, const GridEntry& e,
                          const IncidenceGraph& g, long long samples, std::uint64_t seed) {
    if (samples <= 0) {
        add_record(records, sum, e, "flat-relations", Status::skip,
                   Json{{"reason", "no samples requested"}});
        return;
    }
    SampleStream rng(derive_seed(seed, e, 3));
    const auto& A = g.part_a();
    const auto& B = g.part_b();
    const long long na = g.size_a();
    const long long nb = g.size_b();
    long long failures = 0;

    for (long long s = 0; s < samples; ++s) {
        // Equality: a rebuilt representation must compare equal on both
        // routes; a distinct flat must compare unequal on both.
        const auto i = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(na)));
        const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(na)));
        const Flat alt = rerepresent(A[i], rng);
        if (!flat_eq(alt, A[i]) || !criterion_eq(alt, A[i])) ++failures;
        if (i != j && (flat_eq(A[i], A[j]) || criterion_eq(A[i], A[j]))) ++failures;

        // Containment along a sampled edge, and along a sampled non-edge.
        const auto a = static_cast<int>(rng.below(static_cast<std::uint64_t>(na)));
        const auto& nbrs = g.adj_of(Side::A, a);
        const int b_in = nbrs[static_cast<std::size_t>(
            rng.below(static_cast<std::uint64_t>(nbrs.size())))];
        bool point_route = true;
        for (const auto& p : flat_points(A[static_cast<std::size_t>(a)]))
            if (!criterion_contains_point(B[static_cast<std::size_t>(b_in)], p))
                point_route = false;
        if (!flat_contains_flat(B[static_cast<std::size_t>(b_in)],
                                A[static_cast<std::size_t>(a)]) ||
            !point_route)
            ++failures;

        int b_out = -1;
        for (int tries = 0; tries < 1000; ++tries) {
            const auto cand = static_cast<int>(rng.below(static_cast<std::uint64_t>(nb)));
            if (!std::binary_search(nbrs.begin(), nbrs.end(), cand)) {
                b_out = cand;
                break;
            }
        }
        if (b_out >= 0) {
            bool outside = false;
            for (const auto& p : flat_points(A[static_cast<std::size_t>(a)]))
                if (!criterion_contains_point(B[static_cast<std::size_t>(b_out)], p))
                    outside = true;
            if (flat_contains_flat(B[static_cast<std::size_t>(b_out)],
                                   A[static_cast<std::size_t>(a)]) ||
                !outside)
                ++failures;
        }

        // Pair rank range and the common-neighbor prediction against the
        // adjacency intersection.
        if (i != j) {
            const int t = pair_rank(A[i], A[j]);
            const int tmax = std::min(2 * e.k + 1, e.d);
            if (t < e.k + 1 || t > tmax || t != pair_rank(A[j], A[i])) ++failures;
            const BigInt predicted = common_neighbor_count(A[i], A[j], e.h);
            const long long actual = intersection_size(g.adj_of(Side::A, static_cast<int>(i)),
                                                       g.adj_of(Side::A, static_cast<int>(j)));
            if (predicted != actual) ++failures;
        }
    }
    add_record(records, sum, e, "flat-relations", failures == 0 ? Status::pass : Status::fail,
               Json{{"samples", samples}, {"failures", failures}});
}

void check_gram_classes(Json& records, VerifySummary& sum, const GridEntry& e,
                        const IncidenceGraph& g) {
    const DecompositionReport rep = verify_decomposition(g);
    add_record(records, sum, e, "gram-classes", rep.ok() ? Status::pass : Status::fail,
               to_json(rep));
}

void check_spectral_gap(Json& records, VerifySummary& sum, const GridEntry& e,
                        const SpectrumReport& sp, const IncidenceGraph& g) {
    const double ab = std::sqrt(static_cast<double>(g.deg_of(Side::A)) *
                                static_cast<double>(g.deg_of(Side::B)));
    const bool ab_ok = sp.ab_check <= 1e-6 * std::max(1.0, ab);
    Json detail = to_json(sp);
    detail["ab_check"] = sp.ab_check;
    detail["ab_ok"] = ab_ok;
    add_record(records, sum, e, "spectral-gap", sp.pass && ab_ok ? Status::pass : Status::fail,
               std::move(detail));
}

void check_mixing(Json& records, VerifySummary& sum, const GridEntry& e, const IncidenceGraph& g,
                  const SpectrumReport& sp, long long samples, std::uint64_t seed) {
    if (samples <= 0) {
        add_record(records, sum, e, "mixing", Status::skip,
                   Json{{"reason", "no samples requested"}});
        return;
    }
    SampleStream rng(derive_seed(seed, e, 5));
    long long failures = 0;
    for (long long s = 0; s < samples; ++s) {
        const long long xs = rng.between(1, g.size_a());
        const long long ys = rng.between(1, g.size_b());
        const auto x = rng.subset(g.size_a(), xs);
        const auto y = rng.subset(g.size_b(), ys);
        const MixingReport m = mixing_audit(g, x, y, sp);
        if (!m.pass_basic || !m.pass_refined) ++failures;
    }
    add_record(records, sum, e, "mixing", failures == 0 ? Status::pass : Status::fail,
               Json{{"samples", samples}, {"failures", failures}});
}

void check_deviation_bound(Json& records, VerifySummary& sum, const GridEntry& e,
                           const IncidenceGraph& g, long long samples, std::uint64_t seed) {
    if (samples <= 0) {
        add_record(records, sum, e, "deviation-bound", Status::skip,
                   Json{{"reason", "no samples requested"}});
        return;
    }
    if (e.h < 2 * e.k + 1) {
        add_record(records, sum, e, "deviation-bound", Status::na,
                   Json{{"reason", "requires h >= 2k+1"}});
        return;
    }
    SampleStream rng(derive_seed(seed, e, 6));
    long long failures = 0;
    long long above = 0;
    for (long long s = 0; s < samples; ++s) {
        const long long xs = rng.between(1, g.size_a());
        const long long ys = rng.between(1, g.size_b());
        const auto x = rng.subset(g.size_a(), xs);
        const auto y = rng.subset(g.size_b(), ys);
        const IncidenceBoundReport rep = incidence_bound_check(g, x, y);
        if (!rep.pass || !rep.nonempty_ok) ++failures;
        if (rep.above_threshold) ++above;
    }
    add_record(records, sum, e, "deviation-bound", failures == 0 ? Status::pass : Status::fail,
               Json{{"samples", samples}, {"failures", failures}, {"above_threshold", above}});
}

void check_richness(Json& records, VerifySummary& sum, const GridEntry& e,
                    const IncidenceGraph& g, const SpectrumReport& sp, long long sets,
                    std::uint64_t seed) {
    struct KindSpec {
        RichKind kind;
        Side s_side;
    };
    static constexpr KindSpec kinds[] = {{RichKind::lund_saraf, Side::B},
                                         {RichKind::kplanes, Side::B},
                                         {RichKind::hplanes, Side::A}};
    SampleStream rng(derive_seed(seed, e, 7));
    for (const auto& ks : kinds) {
        for (long long t : {2, 3}) {
            Json detail{{"kind", rich_kind_name(ks.kind)}, {"t", t}};
            if (sets <= 0) {
                detail["reason"] = "no samples requested";
                add_record(records, sum, e, "richness", Status::skip, std::move(detail));
                continue;
            }
            const long long part = g.size_of(ks.s_side);
            std::vector<int> probe(static_cast<std::size_t>(part));
            std::iota(probe.begin(), probe.end(), 0);
            const auto run = [&](std::span<const int> s_set) {
                switch (ks.kind) {
                case RichKind::lund_saraf: return lund_saraf_check(g, s_set, t, sp);
                case RichKind::kplanes: return rich_kplanes_check(g, s_set, t, sp);
                case RichKind::hplanes: return rich_hplanes_check(g, s_set, t, sp);
                }
                fail(errc::internal_check_failed, "unknown richness kind");
            };
            const RichReport full = run(probe);
            BigInt min_size = full.threshold_exact;
            if (full.threshold_paper > min_size) min_size = full.threshold_paper;
            detail["threshold_exact"] = full.threshold_exact;
            detail["threshold_paper"] = big_to_json(full.threshold_paper);
            if (min_size > part) {
                detail["reason"] = "thresholds exceed the part size";
                add_record(records, sum, e, "richness", Status::na, std::move(detail));
                continue;
            }
            const long long lo = min_size.convert_to<long long>();
            long long failures = 0;
            long long paper_pass = 0;
            for (long long s = 0; s < sets; ++s) {
                const long long size = rng.between(lo, part);
                const auto subset = rng.subset(part, size);
                const RichReport rep = run(subset);
                if (!rep.hypothesis_met || !rep.applicable || !rep.pass_exact) ++failures;
                if (rep.pass_paper) ++paper_pass;
            }
            detail["samples"] = sets;
            detail["failures"] = failures;
            detail["paper_pass_rate"] =
                static_cast<double>(paper_pass) / static_cast<double>(sets);
            add_record(records, sum, e, "richness", failures == 0 ? Status::pass : Status::fail,
                       std::move(detail));
        }
    }
}

} // namespace

Json run_verify(const VerifyOptions& opts, VerifySummary& summary) {
    summary = VerifySummary{};
    Json records = Json::array();
    bool injected = false;

    for (const GridEntry& e : opts.grid) {
        guarded(records, summary, e, "count-formulas",
                [&] { check_count_formulas(records, summary, e); });

        std::optional<Field> field;
        std::optional<IncidenceGraph> graph;
        std::string graph_reason;
        try {
            field.emplace(e.q);
            graph.emplace(build_graph(*field, e.d, e.k, e.h, opts.budget));
        } catch (const error& err) {
            graph.reset();
            graph_reason = err.what();
            const Status st = err.code() == errc::too_large ? Status::skip : Status::fail;
            add_record(records, summary, e, "graph-structure", st,
                       Json{{"reason", graph_reason}});
        }
        if (graph && opts.inject_fault && !injected) {
            graph->corrupt_one_edge_for_testing();
            injected = true;
        }

        if (graph) {
            guarded(records, summary, e, "graph-structure",
                    [&] { check_graph_structure(records, summary, e, *graph); });
            guarded(records, summary, e, "flat-relations", [&] {
                check_flat_relations(records, summary, e, *graph, opts.samples.relation_fuzz,
                                     opts.seed);
            });
            guarded(records, summary, e, "gram-classes",
                    [&] { check_gram_classes(records, summary, e, *graph); });

            std::optional<SpectrumReport> spectrum;
            guarded(records, summary, e, "spectral-gap", [&] {
                spectrum = graph_spectrum(*graph, opts.tol);
                check_spectral_gap(records, summary, e, *spectrum, *graph);
            });

            if (spectrum) {
                guarded(records, summary, e, "mixing", [&] {
                    check_mixing(records, summary, e, *graph, *spectrum, opts.samples.mixing,
                                 opts.seed);
                });
            } else {
                add_record(records, summary, e, "mixing", Status::skip,
                           Json{{"reason", "spectrum unavailable"}});
            }

            guarded(records, summary, e, "deviation-bound", [&] {
                check_deviation_bound(records, summary, e, *graph, opts.samples.deviation,
                                      opts.seed);
            });

            if (spectrum) {
                guarded(records, summary, e, "richness", [&] {
                    check_richness(records, summary, e, *graph, *spectrum,
                                   opts.samples.rich_sets, opts.seed);
                });
            } else {
                add_record(records, summary, e, "richness", Status::skip,
                           Json{{"reason", "spectrum unavailable"}});
            }
        } else {
            for (const char* name : {"flat-relations", "gram-classes", "spectral-gap", "mixing",
                                     "deviation-bound", "richness"}) {
                add_record(records, summary, e, name, Status::skip,
                           Json{{"reason", graph_reason.empty() ? "graph unavailable"
                                                                : graph_reason}});
            }
        }
    }

    Json report;
    report["seed"] = opts.seed;
    report["tol"] = opts.tol;
    report["samples"] = Json{{"mixing", opts.samples.mixing},
                             {"deviation", opts.samples.deviation},
                             {"rich_sets", opts.samples.rich_sets},
                             {"relation_fuzz", opts.samples.relation_fuzz}};
    report["budget"] = Json{{"max_part", opts.budget.max_part},
                            {"max_gram_entries", opts.budget.max_gram_entries},
                            {"max_eigen_dim", opts.budget.max_eigen_dim},
                            {"max_pair_scan_part", opts.budget.max_pair_scan_part}};
    report["inject_fault"] = opts.inject_fault;
    Json grid = Json::array();
    for (const auto& e : opts.grid) grid.push_back(params_json(e.q, e.d, e.k, e.h));
    report["grid"] = std::move(grid);
    report["records"] = std::move(records);
    report["summary"] = Json{{"pass", summary.pass},
                             {"fail", summary.fail},
                             {"skipped", summary.skipped},
                             {"not_applicable", summary.not_applicable},
                             {"ok", summary.ok()}};
    return report;
}

} // namespace fqflats
