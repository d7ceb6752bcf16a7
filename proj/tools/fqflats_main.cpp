#include <charconv>
#include <fstream>
#include <iostream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqflats/errors.hpp"
#include "fqflats/flats.hpp"
#include "fqflats/gf.hpp"
#include "fqflats/incidence.hpp"
#include "fqflats/json_io.hpp"
#include "fqflats/richness.hpp"
#include "fqflats/sampling.hpp"
#include "fqflats/spectral.hpp"
#include "fqflats/verify.hpp"

namespace {

using fqflats::Json;

// Shortest round-trip decimal rendering, so CSV output is byte-stable.
std::string dtos(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string btos(bool v) { return v ? "true" : "false"; }

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

struct ParamSet {
    int q = 0, d = 0, k = 0, h = 0;
};

void add_params(CLI::App* cmd, ParamSet& p, bool with_h = true) {
    // --h is taken by the outer dimension, so the short help alias must go
    cmd->set_help_flag("--help", "print this help message");
    cmd->add_option("--q", p.q, "field order (prime power, odd)")->required();
    cmd->add_option("--d", p.d, "ambient dimension")->required();
    cmd->add_option("--k", p.k, "inner flat dimension")->required();
    if (with_h) cmd->add_option("--h", p.h, "outer flat dimension")->required();
}

int run_count(const ParamSet& p, const std::string& out, const std::string& format) {
    const fqflats::Field f(p.q); // rejects orders the rest of the lab cannot use
    const fqflats::CountTable t = fqflats::make_count_table(f.q(), p.d, p.k, p.h);
    if (format == "csv") {
        std::ostringstream csv;
        csv << "q,d,k,h,n_kflats,n_hflats,x_per_hflat,y_per_kflat,edges,double_count_ok\n";
        csv << t.q << ',' << t.d << ',' << t.k << ',' << t.h << ',' << t.n_kflats.str() << ','
            << t.n_hflats.str() << ',' << t.x_hk.str() << ',' << t.y_hk.str() << ','
            << t.edges.str() << ',' << btos(t.double_count_ok) << '\n';
        emit(out, csv.str());
    } else {
        emit(out, json_text(fqflats::to_json(t)));
    }
    return t.double_count_ok ? 0 : 1;
}

int run_enumerate(const ParamSet& p, long long limit, const std::string& out) {
    const fqflats::Field f(p.q);
    std::ostringstream lines;
    long long n = 0;
    fqflats::for_each_flat(f, p.d, p.k, [&](fqflats::Flat&& fl) {
        if (limit > 0 && n >= limit) return;
        lines << fqflats::format_flat(fl) << '\n';
        ++n;
    });
    emit(out, lines.str());
    return 0;
}

int run_spectrum(const ParamSet& p, double tol, const std::string& out,
                 const std::string& format) {
    const fqflats::Field f(p.q);
    const auto g = fqflats::build_graph(f, p.d, p.k, p.h, fqflats::budget_from_env());
    const fqflats::SpectrumReport rep = fqflats::graph_spectrum(g, tol);
    if (format == "csv") {
        std::ostringstream csv;
        csv << "q,d,k,h,lambda1,lambda3,bound,ratio,pass\n";
        csv << rep.q << ',' << rep.d << ',' << rep.k << ',' << rep.h << ','
            << dtos(rep.lambda1) << ',' << dtos(rep.lambda3) << ',' << dtos(rep.bound) << ','
            << dtos(rep.ratio) << ',' << btos(rep.pass) << '\n';
        emit(out, csv.str());
    } else {
        emit(out, json_text(fqflats::to_json(rep)));
    }
    return rep.pass ? 0 : 1;
}

int run_mixing(const ParamSet& p, long long samples, std::uint64_t seed, double tol,
               const std::string& out, const std::string& format) {
    const fqflats::Field f(p.q);
    const auto g = fqflats::build_graph(f, p.d, p.k, p.h, fqflats::budget_from_env());
    const fqflats::SpectrumReport sp = fqflats::graph_spectrum(g, tol);
    fqflats::SampleStream rng(seed);
    bool all_pass = true;
    Json arr = Json::array();
    std::ostringstream csv;
    if (format == "csv")
        csv << "X_size,Y_size,e,main,deviation,bound_basic,bound_refined,pass\n";
    for (long long s = 0; s < samples; ++s) {
        const long long xs = rng.between(1, g.size_a());
        const long long ys = rng.between(1, g.size_b());
        const auto x = rng.subset(g.size_a(), xs);
        const auto y = rng.subset(g.size_b(), ys);
        const fqflats::MixingReport m = fqflats::mixing_audit(g, x, y, sp);
        all_pass = all_pass && m.pass_basic && m.pass_refined;
        if (format == "csv") {
            csv << m.x_size << ',' << m.y_size << ',' << m.edges << ',' << dtos(m.main_term)
                << ',' << dtos(m.deviation) << ',' << dtos(m.bound_basic) << ','
                << dtos(m.bound_refined) << ',' << btos(m.pass) << '\n';
        } else {
            arr.push_back(fqflats::to_json(m));
        }
    }
    if (format == "csv") {
        emit(out, csv.str());
    } else {
        Json doc;
        doc["params"] = fqflats::params_json(p.q, p.d, p.k, p.h);
        doc["seed"] = seed;
        doc["samples"] = samples;
        doc["audits"] = std::move(arr);
        doc["all_pass"] = all_pass;
        emit(out, json_text(doc));
    }
    return all_pass ? 0 : 1;
}

fqflats::RichKind kind_from_name(const std::string& name) {
    if (name == "lund-saraf") return fqflats::RichKind::lund_saraf;
    if (name == "rich-kplanes") return fqflats::RichKind::kplanes;
    return fqflats::RichKind::hplanes;
}

int run_rich(const ParamSet& p, long long t, long long samples, long long fixed_size,
             std::uint64_t seed, double tol, const std::string& kind_name,
             const std::string& out, const std::string& format) {
    const fqflats::Field f(p.q);
    const auto g = fqflats::build_graph(f, p.d, p.k, p.h, fqflats::budget_from_env());
    const fqflats::SpectrumReport sp = fqflats::graph_spectrum(g, tol);
    fqflats::SampleStream rng(seed);

    std::vector<std::string> kinds;
    if (kind_name == "all") {
        kinds = {"lund-saraf", "rich-kplanes", "rich-hplanes"};
    } else {
        kinds = {kind_name};
    }

    bool any_fail = false;
    Json arr = Json::array();
    std::ostringstream csv;
    if (format == "csv")
        csv << "kind,t,S_size,hypothesis_met,applicable,R_count,c_exact,c_paper,floor_exact,"
               "floor_paper,pass_exact,pass_paper\n";

    for (const auto& kn : kinds) {
        const fqflats::RichKind kind = kind_from_name(kn);
        const fqflats::Side s_side =
            kind == fqflats::RichKind::hplanes ? fqflats::Side::A : fqflats::Side::B;
        const long long part = g.size_of(s_side);

        const auto run_one = [&](std::span<const int> s) {
            switch (kind) {
            case fqflats::RichKind::lund_saraf: return fqflats::lund_saraf_check(g, s, t, sp);
            case fqflats::RichKind::kplanes: return fqflats::rich_kplanes_check(g, s, t, sp);
            case fqflats::RichKind::hplanes: return fqflats::rich_hplanes_check(g, s, t, sp);
            }
            fqflats::fail(fqflats::errc::invalid_parameters, "unknown richness kind");
        };

        // Probe with the full part to learn both thresholds, then sample
        // set sizes that satisfy every hypothesis.
        std::vector<int> probe(static_cast<std::size_t>(part));
        std::iota(probe.begin(), probe.end(), 0);
        const fqflats::RichReport full = run_one(probe);
        fqflats::BigInt min_size = full.threshold_exact;
        if (full.threshold_paper > min_size) min_size = full.threshold_paper;

        for (long long s = 0; s < samples; ++s) {
            long long size = 0;
            if (fixed_size > 0) {
                if (fixed_size > part)
                    fqflats::fail(fqflats::errc::bad_subset,
                                  "requested set size exceeds the part size");
                size = fixed_size;
            } else if (min_size > part) {
                size = part; // hypothesis unreachable; report stays not-applicable
            } else {
                size = rng.between(min_size.convert_to<long long>(), part);
            }
            const auto subset = rng.subset(part, size);
            const fqflats::RichReport rep = run_one(subset);
            if (rep.applicable && !rep.pass_exact) any_fail = true;
            if (format == "csv") {
                csv << kn << ',' << rep.t << ',' << rep.s_size << ',' << btos(rep.hypothesis_met)
                    << ',' << btos(rep.applicable) << ',' << rep.r_count << ','
                    << dtos(rep.c_exact) << ',' << dtos(rep.c_paper) << ',' << rep.floor_exact
                    << ',' << rep.floor_paper << ',' << btos(rep.pass_exact) << ','
                    << btos(rep.pass_paper) << '\n';
            } else {
                arr.push_back(fqflats::to_json(rep));
            }
        }
    }

    if (format == "csv") {
        emit(out, csv.str());
    } else {
        Json doc;
        doc["params"] = fqflats::params_json(p.q, p.d, p.k, p.h);
        doc["t"] = t;
        doc["seed"] = seed;
        doc["samples"] = samples;
        doc["reports"] = std::move(arr);
        doc["all_pass"] = !any_fail;
        emit(out, json_text(doc));
    }
    return any_fail ? 1 : 0;
}

int run_graph(const ParamSet& p, bool gram, const std::string& out, const std::string& format) {
    const fqflats::Field f(p.q);
    const auto g = fqflats::build_graph(f, p.d, p.k, p.h, fqflats::budget_from_env());
    if (gram) {
        const fqflats::GramMatrix m = fqflats::gram_matrix(g);
        if (format == "csv") {
            std::ostringstream csv;
            for (long long r = 0; r < m.n; ++r) {
                for (long long c = 0; c < m.n; ++c) {
                    if (c) csv << ',';
                    csv << m.at(r, c);
                }
                csv << '\n';
            }
            emit(out, csv.str());
        } else {
            Json rows = Json::array();
            for (long long r = 0; r < m.n; ++r) {
                Json row = Json::array();
                for (long long c = 0; c < m.n; ++c) row.push_back(m.at(r, c));
                rows.push_back(std::move(row));
            }
            Json doc;
            doc["params"] = fqflats::params_json(p.q, p.d, p.k, p.h);
            doc["n"] = m.n;
            doc["rows"] = std::move(rows);
            emit(out, json_text(doc));
        }
        return 0;
    }
    if (format == "csv") {
        std::ostringstream csv;
        csv << "a_index,b_index\n";
        for (long long a = 0; a < g.size_a(); ++a)
            for (int b : g.adj_of(fqflats::Side::A, static_cast<int>(a)))
                csv << a << ',' << b << '\n';
        emit(out, csv.str());
    } else {
        Json edges = Json::array();
        for (long long a = 0; a < g.size_a(); ++a)
            for (int b : g.adj_of(fqflats::Side::A, static_cast<int>(a)))
                edges.push_back(Json::array({a, b}));
        Json doc;
        doc["params"] = fqflats::params_json(p.q, p.d, p.k, p.h);
        doc["A_size"] = g.size_a();
        doc["B_size"] = g.size_b();
        doc["edges"] = std::move(edges);
        emit(out, json_text(doc));
    }
    return 0;
}

int run_verify_cmd(const std::string& grid_text, std::uint64_t seed, long long samples,
                   double tol, bool inject, const std::string& out) {
    fqflats::VerifyOptions opts;
    if (!grid_text.empty()) opts.grid = fqflats::parse_grid(grid_text);
    opts.seed = seed;
    opts.samples = fqflats::scaled_samples(samples);
    opts.tol = tol;
    opts.budget = fqflats::budget_from_env();
    opts.inject_fault = inject;

    fqflats::VerifySummary summary;
    const Json report = fqflats::run_verify(opts, summary);
    emit(out, json_text(report));
    std::cerr << "verify: pass=" << summary.pass << " fail=" << summary.fail
              << " skipped=" << summary.skipped << " not-applicable=" << summary.not_applicable
              << "\n";
    return summary.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"incidence laboratory for flats over finite fields"};
    app.require_subcommand(1);

    ParamSet p;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 42;
    double tol = fqflats::kDefaultEigenTol;

    auto* count_cmd = app.add_subcommand("count", "counting identities for one parameter set");
    add_params(count_cmd, p);
    count_cmd->add_option("--out", out, "output file (default stdout)");
    count_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* enum_cmd = app.add_subcommand("enumerate", "list flats in canonical order");
    add_params(enum_cmd, p, /*with_h=*/false);
    long long limit = 0;
    enum_cmd->add_option("--limit", limit, "stop after this many lines (0 = all)");
    enum_cmd->add_option("--out", out, "output file (default stdout)");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "adjacency spectrum and the gap bound");
    add_params(spectrum_cmd, p);
    spectrum_cmd->add_option("--tol", tol, "symmetry/eigenvalue tolerance");
    spectrum_cmd->add_option("--out", out, "output file (default stdout)");
    spectrum_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* mixing_cmd = app.add_subcommand("mixing", "sampled edge-distribution audits");
    add_params(mixing_cmd, p);
    long long mixing_samples = 1000;
    mixing_cmd->add_option("--samples", mixing_samples, "number of sampled (X, Y) pairs");
    mixing_cmd->add_option("--seed", seed, "sampling seed");
    mixing_cmd->add_option("--tol", tol, "eigenvalue tolerance");
    mixing_cmd->add_option("--out", out, "output file (default stdout)");
    mixing_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* rich_cmd = app.add_subcommand("rich", "richness floors for sampled sets");
    add_params(rich_cmd, p);
    long long rich_t = 2;
    long long rich_samples = 50;
    long long rich_size = 0;
    std::string rich_kind = "all";
    rich_cmd->add_option("--t", rich_t, "richness threshold (at least 2)");
    rich_cmd->add_option("--samples", rich_samples, "number of sampled sets per kind");
    rich_cmd->add_option("--size", rich_size, "fixed set size (0 = sample sizes)");
    rich_cmd->add_option("--seed", seed, "sampling seed");
    rich_cmd->add_option("--tol", tol, "eigenvalue tolerance");
    rich_cmd->add_option("--kind", rich_kind, "lund-saraf, rich-kplanes, rich-hplanes, or all")
        ->check(CLI::IsMember({"all", "lund-saraf", "rich-kplanes", "rich-hplanes"}));
    rich_cmd->add_option("--out", out, "output file (default stdout)");
    rich_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* graph_cmd = app.add_subcommand("graph", "adjacency or Gram matrix export");
    add_params(graph_cmd, p);
    bool want_gram = false;
    graph_cmd->add_flag("--gram", want_gram, "emit the dense Gram matrix instead of edges");
    graph_cmd->add_option("--out", out, "output file (default stdout)");
    graph_cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* verify_cmd = app.add_subcommand("verify", "run every check over a parameter grid");
    std::string grid_text;
    long long verify_samples = 1000;
    bool inject = false;
    verify_cmd->add_option("--grid", grid_text, "grid as q,d,k,h;q,d,k,h;... (default grid if omitted)");
    verify_cmd->add_option("--seed", seed, "sampling seed");
    verify_cmd->add_option("--samples", verify_samples, "mixing samples; other checks scale down");
    verify_cmd->add_option("--tol", tol, "eigenvalue tolerance");
    verify_cmd->add_option("--out", out, "output file (default stdout)");
    verify_cmd->add_flag("--inject-fault", inject, "corrupt one edge to prove checks can fail")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (count_cmd->parsed()) return run_count(p, out, format);
        if (enum_cmd->parsed()) return run_enumerate(p, limit, out);
        if (spectrum_cmd->parsed()) return run_spectrum(p, tol, out, format);
        if (mixing_cmd->parsed()) return run_mixing(p, mixing_samples, seed, tol, out, format);
        if (rich_cmd->parsed())
            return run_rich(p, rich_t, rich_samples, rich_size, seed, tol, rich_kind, out,
                            format);
        if (graph_cmd->parsed()) return run_graph(p, want_gram, out, format);
        if (verify_cmd->parsed())
            return run_verify_cmd(grid_text, seed, verify_samples, tol, inject, out);
    } catch (const fqflats::error& e) {
        std::cerr << "error [" << fqflats::errc_name(e.code()) << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
