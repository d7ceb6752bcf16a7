// Acceptance harness: one line per criterion, exit 0 only if all pass.
// Tolerances are pinned here, independent of library defaults.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "fqflats/richness.hpp"
#include "fqflats/sampling.hpp"
#include "fqflats/spectral.hpp"
#include "oracles.hpp"

using fqflats::BigInt;
using fqflats::Field;
using fqflats::Flat;
using fqflats::FqVector;
using fqflats::IncidenceGraph;
using fqflats::SampleStream;
using fqflats::Side;
using fqflats::SpectrumReport;

namespace {

constexpr double kSpectralSlack = 1e-7;  // relative slack for the eigenvalue ceiling
constexpr double kSharpnessTol = 1e-6;   // |lambda3 - sqrt(q)| tolerance

struct Entry {
    int q, d, k, h;
};

const std::vector<Entry> kGrid = {
    {3, 2, 0, 1}, {3, 3, 0, 1}, {3, 3, 0, 2}, {3, 4, 0, 3}, {3, 4, 1, 3},
    {5, 2, 0, 1}, {5, 3, 0, 1}, {5, 3, 0, 2}, {5, 4, 0, 3}, {5, 4, 1, 3},
    {9, 2, 0, 1}, {9, 3, 0, 1}, {9, 3, 0, 2},
};

std::map<int, Field> g_fields;
std::map<std::array<int, 4>, IncidenceGraph> g_graphs;
std::map<std::array<int, 4>, SpectrumReport> g_spectra;

const Field& field_of(int q) {
    auto it = g_fields.find(q);
    if (it == g_fields.end()) it = g_fields.emplace(q, Field(q)).first;
    return it->second;
}

const IncidenceGraph& graph_of(int q, int d, int k, int h) {
    const std::array<int, 4> key{q, d, k, h};
    auto it = g_graphs.find(key);
    if (it == g_graphs.end())
        it = g_graphs.emplace(key, fqflats::build_graph(field_of(q), d, k, h)).first;
    return it->second;
}

const SpectrumReport& spectrum_of(int q, int d, int k, int h) {
    const std::array<int, 4> key{q, d, k, h};
    auto it = g_spectra.find(key);
    if (it == g_spectra.end())
        it = g_spectra.emplace(key, fqflats::graph_spectrum(graph_of(q, d, k, h))).first;
    return it->second;
}

std::string entry_name(const Entry& e) {
    return "(" + std::to_string(e.q) + "," + std::to_string(e.d) + "," + std::to_string(e.k) +
           "," + std::to_string(e.h) + ")";
}

struct Criterion {
    std::string name;
    bool ok = true;
    double seconds = 0.0;
    std::vector<std::string> notes;

    void fail(const std::string& why) {
        ok = false;
        notes.push_back(why);
    }
};

// ---- 1. counting exactness --------------------------------------------------

void check_counting(Criterion& c) {
    for (const auto& e : kGrid) {
        const auto& g = graph_of(e.q, e.d, e.k, e.h);
        const BigInt na = fqflats::flat_count(e.d, e.k, e.q);
        const BigInt nb = fqflats::flat_count(e.d, e.h, e.q);
        const BigInt x = fqflats::count_x(e.h, e.k, e.q);
        const BigInt y = fqflats::count_y(e.d, e.h, e.k, e.q);
        if (BigInt(g.size_a()) != na || BigInt(g.size_b()) != nb) {
            c.fail(entry_name(e) + ": enumerated part sizes disagree with the closed forms");
            continue;
        }
        bool degrees_ok = BigInt(g.deg_a()) == y && BigInt(g.deg_b()) == x;
        for (int i = 0; degrees_ok && i < g.size_a(); ++i)
            degrees_ok = static_cast<long long>(g.adj_a(i).size()) == g.deg_a();
        for (int j = 0; degrees_ok && j < g.size_b(); ++j)
            degrees_ok = static_cast<long long>(g.adj_b(j).size()) == g.deg_b();
        if (!degrees_ok) {
            c.fail(entry_name(e) + ": vertex degrees disagree with x/y");
            continue;
        }
        const auto table = fqflats::make_count_table(e.q, e.d, e.k, e.h);
        if (!table.double_count_ok || na * y != nb * x || na * y != BigInt(g.edge_count()))
            c.fail(entry_name(e) + ": double-count identity broken");
    }
    c.notes.push_back(std::to_string(kGrid.size()) + " parameter sets checked exactly");
}

// ---- 2. gram decomposition --------------------------------------------------

void check_decomposition(Criterion& c) {
    const Entry picks[] = {{3, 2, 0, 1}, {3, 3, 0, 2}, {3, 4, 1, 3}};
    for (const auto& e : picks) {
        const auto rep = fqflats::verify_decomposition(graph_of(e.q, e.d, e.k, e.h));
        if (!rep.ok() || rep.mismatched_entries != 0) {
            c.fail(entry_name(e) + ": decomposition mismatches: " +
                   std::to_string(rep.mismatched_entries));
            continue;
        }
        for (const auto& cls : rep.classes) {
            const BigInt want = fqflats::gaussian_binomial(e.d - cls.t, e.h - cls.t, e.q);
            if (BigInt(cls.expected_entry) != want)
                c.fail(entry_name(e) + ": class t=" + std::to_string(cls.t) +
                       " constant is not the subspace count");
        }
        c.notes.push_back(entry_name(e) + ": all " + std::to_string(rep.n) +
                          "^2 pairs exact across " + std::to_string(rep.classes.size()) +
                          " rank class" + (rep.classes.size() == 1 ? "" : "es"));
    }
}

// ---- 3. spectral ceiling and sharpness --------------------------------------

void check_spectrum(Criterion& c) {
    const Entry picks[] = {{3, 2, 0, 1}, {3, 3, 0, 2}, {3, 4, 1, 3}};
    for (const auto& e : picks) {
        const auto& sp = spectrum_of(e.q, e.d, e.k, e.h);
        const long long gap2 =
            static_cast<long long>(e.d - e.h) * e.h +
            static_cast<long long>(e.k) * (2 * e.h - e.d - e.k + 1);
        const double ceiling = std::sqrt(static_cast<double>(2 * e.k + 1)) *
                               std::pow(static_cast<double>(e.q), static_cast<double>(gap2) / 2.0);
        if (sp.lambda3 > ceiling * (1.0 + kSpectralSlack))
            c.fail(entry_name(e) + ": lambda3 " + std::to_string(sp.lambda3) +
                   " exceeds ceiling " + std::to_string(ceiling));
        else
            c.notes.push_back(entry_name(e) + ": lambda3=" + std::to_string(sp.lambda3) +
                              " <= " + std::to_string(ceiling));
    }
    for (int q : {3, 5, 7, 9}) {
        const auto sp = fqflats::graph_spectrum(fqflats::build_graph(field_of(q), 2, 0, 1));
        if (std::abs(sp.lambda3 - std::sqrt(static_cast<double>(q))) > kSharpnessTol)
            c.fail("(q=" + std::to_string(q) + ",2,0,1): lambda3 is not sqrt(q) to 1e-6");
    }
    c.notes.push_back("lambda3 = sqrt(q) within 1e-6 for q in {3,5,7,9} at (d,k,h)=(2,0,1)");
}

// ---- 4. mixing bound ---------------------------------------------------------

void check_mixing(Criterion& c) {
    long long violations = 0;
    long long total = 0;
    for (std::size_t idx = 0; idx < kGrid.size(); ++idx) {
        const auto& e = kGrid[idx];
        const auto& g = graph_of(e.q, e.d, e.k, e.h);
        const auto& sp = spectrum_of(e.q, e.d, e.k, e.h);
        SampleStream rng(42 + static_cast<std::uint64_t>(idx));
        for (int s = 0; s < 1000; ++s) {
            const auto xs = rng.subset(g.size_a(), rng.between(1, g.size_a()));
            const auto ys = rng.subset(g.size_b(), rng.between(1, g.size_b()));
            const auto rep = fqflats::mixing_audit(g, xs, ys, sp);
            ++total;
            if (!rep.pass_refined) ++violations;
        }
    }
    if (violations != 0) c.fail(std::to_string(violations) + " refined-bound violations");
    c.notes.push_back(std::to_string(total) + " sampled (X,Y) pairs, " +
                      std::to_string(violations) + " violations");
}

// ---- 5. deviation bound and nonemptiness ------------------------------------

void check_deviation(Criterion& c) {
    for (int q : {3, 5, 9}) {
        if (fqflats::guarantee_threshold(2, 0, 1, q) != fqflats::big_pow(q, 3)) {
            c.fail("threshold exponent at (2,0,1) is not 3 for q=" + std::to_string(q));
            return;
        }
    }
    c.notes.push_back("product threshold at (d,k,h)=(2,0,1) is exactly q^3");

    long long bound_violations = 0;
    long long empty_above_threshold = 0;
    long long above = 0;
    long long total = 0;
    for (std::size_t idx = 0; idx < kGrid.size(); ++idx) {
        const auto& e = kGrid[idx];
        if (e.h < 2 * e.k + 1) continue;
        const auto& g = graph_of(e.q, e.d, e.k, e.h);
        SampleStream rng(142 + static_cast<std::uint64_t>(idx));
        for (int s = 0; s < 200; ++s) {
            const auto xs = rng.subset(g.size_a(), rng.between(1, g.size_a()));
            const auto ys = rng.subset(g.size_b(), rng.between(1, g.size_b()));
            const auto rep = fqflats::incidence_bound_check(g, xs, ys);
            ++total;
            if (!rep.pass) ++bound_violations;
            if (rep.above_threshold) {
                ++above;
                if (rep.incidences == 0) ++empty_above_threshold;
            }
        }
    }
    if (bound_violations != 0)
        c.fail(std::to_string(bound_violations) + " deviation-bound violations");
    if (empty_above_threshold != 0)
        c.fail(std::to_string(empty_above_threshold) + " empty intersections above the threshold");
    c.notes.push_back(std::to_string(total) + " sampled (P,H) pairs, " + std::to_string(above) +
                      " above the guarantee threshold, all nonempty");
}

// ---- 6. richness floors ------------------------------------------------------

void check_richness(Criterion& c) {
    using CheckFn = fqflats::RichReport (*)(const IncidenceGraph&, std::span<const int>, long long,
                                            const SpectrumReport&);
    const struct {
        const char* name;
        CheckFn fn;
        Side s_side;
    } kinds[] = {
        {"lund-saraf", fqflats::lund_saraf_check, Side::B},
        {"rich-kplanes", fqflats::rich_kplanes_check, Side::B},
        {"rich-hplanes", fqflats::rich_hplanes_check, Side::A},
    };

    for (const auto& kind : kinds) {
        long long exact_fail = 0;
        long long paper_pass = 0;
        long long total = 0;
        for (std::size_t idx = 0; idx < kGrid.size(); ++idx) {
            const auto& e = kGrid[idx];
            const auto& g = graph_of(e.q, e.d, e.k, e.h);
            const auto& sp = spectrum_of(e.q, e.d, e.k, e.h);
            const long long part = g.size_of(kind.s_side);
            for (long long t = 2; t <= 3; ++t) {
                // probe the thresholds with the full part, then sample at or
                // above the larger one so every hypothesis is met
                std::vector<int> full(static_cast<std::size_t>(part));
                std::iota(full.begin(), full.end(), 0);
                const auto probe = kind.fn(g, full, t, sp);
                long long lo = probe.threshold_exact;
                if (probe.threshold_paper > BigInt(lo))
                    lo = probe.threshold_paper.convert_to<long long>();
                if (lo > part) {
                    c.notes.push_back(std::string("not applicable: ") + kind.name + " t=" +
                                      std::to_string(t) + " at " + entry_name(e) +
                                      ", needs " + std::to_string(lo) + " of " +
                                      std::to_string(part));
                    continue;
                }
                SampleStream rng(242 + 10 * static_cast<std::uint64_t>(idx) +
                                 static_cast<std::uint64_t>(t));
                for (int s = 0; s < 50; ++s) {
                    const auto set = rng.subset(part, rng.between(lo, part));
                    const auto rep = kind.fn(g, set, t, sp);
                    ++total;
                    if (!rep.hypothesis_met || !rep.applicable || !rep.pass_exact) ++exact_fail;
                    if (rep.pass_paper) ++paper_pass;
                }
            }
        }
        if (exact_fail != 0)
            c.fail(std::string(kind.name) + ": " + std::to_string(exact_fail) + "/" +
                   std::to_string(total) + " sets below the exact floor");
        std::ostringstream rate;
        rate.precision(1);
        rate << std::fixed << kind.name << ": exact floor " << (total - exact_fail) << "/" << total
             << ", closed-form floor rate "
             << (total > 0 ? 100.0 * static_cast<double>(paper_pass) / static_cast<double>(total)
                           : 0.0)
             << "%";
        c.notes.push_back(rate.str());
    }
}

// ---- 7. oracle equivalence ---------------------------------------------------

// Rebuilds a flat from a scrambled generating set: scaled directions and a
// shifted base point.
Flat rerepresented(const Flat& fl, SampleStream& rng) {
    const Field& f = fl.field();
    std::vector<FqVector> dirs;
    std::vector<int> base = fl.base();
    for (int i = 0; i < fl.dim(); ++i) {
        const auto row = fl.basis().row(i);
        const int scale = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(f.q() - 1)));
        std::vector<int> scaled(row.size());
        const int shift = static_cast<int>(rng.below(static_cast<std::uint64_t>(f.q())));
        for (std::size_t j = 0; j < row.size(); ++j) {
            scaled[j] = f.mul(scale, row[j]);
            base[j] = f.add(base[j], f.mul(shift, row[j]));
        }
        dirs.push_back(FqVector{&f, std::move(scaled)});
    }
    return fqflats::flat_from_span(dirs, FqVector{&f, std::move(base)});
}

void check_oracles(Criterion& c) {
    long long instances = 0;
    for (std::size_t idx = 0; idx < kGrid.size(); ++idx) {
        const auto& e = kGrid[idx];
        const Field& f = field_of(e.q);
        const auto& g = graph_of(e.q, e.d, e.k, e.h);
        SampleStream rng(342 + static_cast<std::uint64_t>(idx));
        long long bad = 0;
        for (int s = 0; s < 500; ++s) {
            const int i1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.size_a())));
            const int i2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.size_a())));
            const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.size_b())));
            const Flat& a1 = g.part_a()[static_cast<std::size_t>(i1)];
            const Flat& a2 = g.part_a()[static_cast<std::size_t>(i2)];
            const Flat& b = g.part_b()[static_cast<std::size_t>(j)];
            const auto p1 = oracle::flat_points(a1);
            const auto p2 = oracle::flat_points(a2);

            // equality against point sets, including a scrambled re-representation
            if (fqflats::flat_eq(a1, a2) != (p1 == p2)) ++bad;
            if (!fqflats::flat_eq(a1, rerepresented(a1, rng))) ++bad;

            // containment against point sets
            const auto pb = oracle::flat_points(b);
            const bool subset = std::includes(pb.begin(), pb.end(), p1.begin(), p1.end());
            if (fqflats::flat_contains_flat(b, a1) != subset) ++bad;

            if (i1 != i2) {
                // the pair rank is the log-size of the joint affine hull
                std::vector<std::vector<int>> gens;
                for (int r = 0; r < a1.dim(); ++r) {
                    const auto row = a1.basis().row(r);
                    gens.emplace_back(row.begin(), row.end());
                }
                for (int r = 0; r < a2.dim(); ++r) {
                    const auto row = a2.basis().row(r);
                    gens.emplace_back(row.begin(), row.end());
                }
                std::vector<int> diff(static_cast<std::size_t>(e.d));
                for (int t = 0; t < e.d; ++t)
                    diff[static_cast<std::size_t>(t)] =
                        f.sub(a2.base()[static_cast<std::size_t>(t)],
                              a1.base()[static_cast<std::size_t>(t)]);
                gens.push_back(diff);
                const auto hull = oracle::span_points(f, gens, a1.base());
                long long want = 1;
                const int t_rank = fqflats::pair_rank(a1, a2);
                for (int p = 0; p < t_rank; ++p) want *= e.q;
                if (static_cast<long long>(hull.size()) != want) ++bad;

                // predicted common neighbors against the adjacency lists
                const auto& r1 = g.adj_a(i1);
                const auto& r2 = g.adj_a(i2);
                std::vector<int> both;
                std::set_intersection(r1.begin(), r1.end(), r2.begin(), r2.end(),
                                      std::back_inserter(both));
                if (fqflats::common_neighbor_count(a1, a2, e.h) !=
                    BigInt(static_cast<long long>(both.size())))
                    ++bad;
            }
            ++instances;
        }
        if (bad != 0) c.fail(entry_name(e) + ": " + std::to_string(bad) + " oracle disagreements");
    }
    c.notes.push_back(std::to_string(instances) +
                      " random instances checked against point-set and adjacency oracles");
}

// ---- 8. verify determinism ----------------------------------------------------

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FQFLATS_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_determinism(Criterion& c) {
    const std::string a = "/tmp/fqflats_acceptance_a.json";
    const std::string b = "/tmp/fqflats_acceptance_b.json";
    const std::string args = "verify --seed 42 --samples 120 --out ";
    const int code_a = run_cli(args + a);
    const int code_b = run_cli(args + b);
    const auto text_a = slurp(a);
    const auto text_b = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    if (text_a.empty()) {
        c.fail("verify produced no report");
        return;
    }
    if (code_a != code_b) c.fail("exit codes differ between identical runs");
    if (text_a != text_b) c.fail("reports differ between identical runs");
    c.notes.push_back("two default-grid verify runs: " + std::to_string(text_a.size()) +
                      " bytes, byte-identical");
}

// ---- harness -------------------------------------------------------------------

template <typename Fn>
Criterion run_criterion(const std::string& name, double time_limit, Fn&& fn) {
    Criterion c;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        fn(c);
    } catch (const std::exception& ex) {
        c.fail(std::string("unexpected exception: ") + ex.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0 && c.seconds > time_limit)
        c.fail("exceeded the time limit of " + std::to_string(time_limit) + " s");
    return c;
}

} // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(run_criterion("counting exactness", 30.0, check_counting));
    results.push_back(run_criterion("gram decomposition", 120.0, check_decomposition));
    results.push_back(run_criterion("spectral ceiling and sharpness", 180.0, check_spectrum));
    results.push_back(run_criterion("mixing bound", 60.0, check_mixing));
    results.push_back(run_criterion("deviation bound and nonemptiness", 0.0, check_deviation));
    results.push_back(run_criterion("richness floors", 60.0, check_richness));
    results.push_back(run_criterion("oracle equivalence", 0.0, check_oracles));
    results.push_back(run_criterion("verify determinism", 0.0, check_determinism));

    int passed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& c = results[i];
        if (c.ok) ++passed;
        std::printf("[%zu] %-34s %s  (%.1fs)\n", i + 1, c.name.c_str(), c.ok ? "PASS" : "FAIL",
                    c.seconds);
        for (const auto& note : c.notes) std::printf("      - %s\n", note.c_str());
    }
    std::printf("acceptance: %d/%zu criteria passed\n", passed, results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
