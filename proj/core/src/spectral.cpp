#include "fqflats/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fqflats {
namespace {

constexpr double kRelGuard = 1e-7;

bool approx_le(double x, double y) {
    return x <= y + kRelGuard * std::max(1.0, std::abs(y));
}

// marks set membership and rejects out-of-range or repeated indices
std::vector<char> subset_mask(std::span<const int> subset, long long part_size,
                              const char* label) {
    std::vector<char> mask(static_cast<std::size_t>(part_size), 0);
    for (int v : subset) {
        if (v < 0 || v >= part_size)
            fail(errc::bad_subset, std::string(label) + " index " + std::to_string(v) +
                                       " outside part of size " + std::to_string(part_size));
        if (mask[v]) fail(errc::bad_subset, std::string(label) + " index " + std::to_string(v) + " repeated");
        mask[v] = 1;
    }
    return mask;
}

long long cross_edges(const IncidenceGraph& g, std::span<const int> x_set,
                      const std::vector<char>& y_mask) {
    long long e = 0;
    for (int i : x_set)
        for (int j : g.adj_a(i))
            if (y_mask[j]) ++e;
    return e;
}

long long half_gap_exponent(int d, int k, int h) {
    return static_cast<long long>(d - h) * h + static_cast<long long>(k) * (2 * h - d - k + 1);
}

IncidenceBoundReport bound_report_from_counts(int q, int d, int k, int h, long long p_size,
                                              long long h_size, long long incidences,
                                              const SpectrumReport* spectrum) {
    IncidenceBoundReport rep;
    rep.q = q;
    rep.d = d;
    rep.k = k;
    rep.h = h;
    rep.p_size = p_size;
    rep.h_size = h_size;
    rep.incidences = incidences;
    rep.hypothesis_ok = h >= 2 * k + 1;

    const long long m = static_cast<long long>(d - h) * (k + 1);
    const long long gap2 = half_gap_exponent(d, k, h);
    const BigInt qm = big_pow(q, m);
    const BigInt product = BigInt(p_size) * h_size;
    const BigInt dev_num = abs(BigInt(incidences) * qm - product);
    const BigInt rhs = BigInt(2 * k + 1) * big_pow(q, gap2 + 2 * m) * product;
    rep.pass = dev_num * dev_num <= rhs;

    rep.main_term = product.convert_to<double>() / qm.convert_to<double>();
    rep.deviation = dev_num.convert_to<double>() / qm.convert_to<double>();
    rep.bound = std::sqrt(static_cast<double>(2 * k + 1)) *
                std::pow(static_cast<double>(q), static_cast<double>(gap2) / 2.0) *
                std::sqrt(product.convert_to<double>());

    if (rep.hypothesis_ok) {
        rep.threshold = guarantee_threshold(d, k, h, q);
        rep.above_threshold = product > rep.threshold;
        rep.nonempty_ok = !rep.above_threshold || incidences > 0;
    }

    if (spectrum != nullptr) {
        rep.has_measured = true;
        rep.bound_measured = spectrum->lambda3 * std::sqrt(product.convert_to<double>());
        rep.pass_measured = approx_le(rep.deviation, rep.bound_measured);
    }
    return rep;
}

} // namespace

std::vector<double> eigen_sym(const std::vector<double>& row_major, long long n, double tol) {
    if (n < 0 || static_cast<long long>(row_major.size()) != n * n)
        fail(errc::invalid_parameters, "matrix data does not match its dimension");
    if (n == 0) return {};
    double scale = 0.0;
    for (double v : row_major) scale = std::max(scale, std::abs(v));
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (std::abs(row_major[i * n + j] - row_major[j * n + i]) >
                tol * std::max(1.0, scale))
                fail(errc::not_symmetric, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                              ") differs from its transpose");
    Eigen::MatrixXd m(n, n);
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) m(i, j) = row_major[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(errc::internal_check_failed, "eigensolve did not converge");
    std::vector<double> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return vals;
}

SpectrumReport graph_spectrum(const IncidenceGraph& g, double tol) {
    SpectrumReport rep;
    rep.q = g.field().q();
    rep.d = g.d();
    rep.k = g.k();
    rep.h = g.h();
    rep.side_a = g.size_a() <= g.size_b();
    const Side side = rep.side_a ? Side::A : Side::B;
    rep.gram_dim = g.size_of(side);
    if (rep.gram_dim > g.budget().max_eigen_dim)
        fail(errc::too_large, "eigensolve dimension " + std::to_string(rep.gram_dim) +
                                  " exceeds the budget of " + std::to_string(g.budget().max_eigen_dim));
    GramMatrix gram = gram_of_side(g, side);
    std::vector<double> dense(gram.data.begin(), gram.data.end());
    std::vector<double> vals = eigen_sym(dense, gram.n, tol);
    const double top = vals.empty() ? 0.0 : std::max(vals[0], 0.0);
    const double second = vals.size() > 1 ? std::max(vals[1], 0.0) : 0.0;
    rep.lambda1 = std::sqrt(top);
    rep.lambda2 = -rep.lambda1;
    rep.lambda3 = std::sqrt(second);
    rep.bound = std::sqrt(static_cast<double>(2 * g.k() + 1)) *
                std::pow(static_cast<double>(rep.q),
                         static_cast<double>(half_gap_exponent(g.d(), g.k(), g.h())) / 2.0);
    rep.ratio = rep.lambda3 / rep.bound;
    rep.ab_check =
        std::abs(rep.lambda1 - std::sqrt(static_cast<double>(g.deg_a()) * g.deg_b()));
    rep.pass = approx_le(rep.lambda3, rep.bound);
    return rep;
}

MixingReport mixing_audit(const IncidenceGraph& g, std::span<const int> x_set,
                          std::span<const int> y_set, const SpectrumReport& spectrum) {
    auto y_mask = subset_mask(y_set, g.size_b(), "Y");
    subset_mask(x_set, g.size_a(), "X");
    MixingReport rep;
    rep.x_size = static_cast<long long>(x_set.size());
    rep.y_size = static_cast<long long>(y_set.size());
    rep.edges = cross_edges(g, x_set, y_mask);

    const long long na = g.size_a(), nb = g.size_b();
    // deviation as the exact rational |e nb - a |X||Y|| / nb
    const long long main_num = g.deg_a() * rep.x_size * rep.y_size;
    rep.main_term = static_cast<double>(main_num) / static_cast<double>(nb);
    rep.deviation =
        static_cast<double>(std::abs(rep.edges * nb - main_num)) / static_cast<double>(nb);

    const double sz = std::sqrt(static_cast<double>(rep.x_size) * rep.y_size);
    rep.bound_basic = spectrum.lambda3 * sz;
    rep.bound_refined =
        spectrum.lambda3 * sz *
        std::sqrt((1.0 - static_cast<double>(rep.x_size) / static_cast<double>(na)) *
                  (1.0 - static_cast<double>(rep.y_size) / static_cast<double>(nb)));
    rep.pass_basic = approx_le(rep.deviation, rep.bound_basic);
    rep.pass_refined = approx_le(rep.deviation, rep.bound_refined);
    rep.pass = rep.pass_refined;
    return rep;
}

MixingReport mixing_audit(const IncidenceGraph& g, std::span<const int> x_set,
                          std::span<const int> y_set) {
    return mixing_audit(g, x_set, y_set, graph_spectrum(g));
}

BigInt guarantee_threshold(int d, int k, int h, int q) {
    if (k < 0 || h <= k || d <= h || h < 2 * k + 1)
        fail(errc::invalid_parameters, "need 0 <= k < h < d and h >= 2k+1");
    const long long exp = static_cast<long long>(d) * (k + h) + 2 * d + k -
                          static_cast<long long>(k) * k - static_cast<long long>(h) * h - 2 * h;
    return BigInt(2 * k + 1) * big_pow(q, exp);
}

IncidenceBoundReport incidence_bound_check(std::span<const Flat> kflats,
                                           std::span<const Flat> hflats, int d, int k, int h,
                                           const Field& f, const SpectrumReport* spectrum) {
    if (k < 0 || h <= k || d <= h)
        fail(errc::invalid_parameters, "need 0 <= k < h < d");
    for (const Flat& fl : kflats)
        if (fl.dim() != k || fl.ambient_dim() != d || fl.field() != f)
            fail(errc::parameter_mismatch, "k-flat family does not match the parameters");
    for (const Flat& fl : hflats)
        if (fl.dim() != h || fl.ambient_dim() != d || fl.field() != f)
            fail(errc::parameter_mismatch, "h-flat family does not match the parameters");
    const long long inc = count_incidences(kflats, hflats);
    return bound_report_from_counts(f.q(), d, k, h, static_cast<long long>(kflats.size()),
                                    static_cast<long long>(hflats.size()), inc, spectrum);
}

IncidenceBoundReport incidence_bound_check(const IncidenceGraph& g, std::span<const int> x_set,
                                           std::span<const int> y_set,
                                           const SpectrumReport* spectrum) {
    auto y_mask = subset_mask(y_set, g.size_b(), "Y");
    subset_mask(x_set, g.size_a(), "X");
    const long long inc = cross_edges(g, x_set, y_mask);
    return bound_report_from_counts(g.field().q(), g.d(), g.k(), g.h(),
                                    static_cast<long long>(x_set.size()),
                                    static_cast<long long>(y_set.size()), inc, spectrum);
}

} // namespace fqflats
