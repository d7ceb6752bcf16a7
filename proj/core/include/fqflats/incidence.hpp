#pragma once

#include <unordered_map>

#include "fqflats/flats.hpp"

namespace fqflats {

/// Resource limits for dense graph work.  The gram entry budget bounds the
/// |A| x |A| common-neighbor matrix; the eigen dimension bounds dense
/// eigensolves; the pair scan budget bounds all-pairs classification.
struct SizeBudget {
    long long max_part = 20'000;
    long long max_gram_entries = 400'000'000;
    long long max_eigen_dim = 4'000;
    long long max_pair_scan_part = 2'000;
};

enum class Side { A, B };

/// Bipartite containment graph between all k-flats (part A) and all h-flats
/// (part B) of F_q^d, with adjacency stored on both sides in index order.
class IncidenceGraph {
public:
    const Field& field() const noexcept { return *field_; }
    int d() const noexcept { return d_; }
    int k() const noexcept { return k_; }
    int h() const noexcept { return h_; }

    const std::vector<Flat>& part_a() const noexcept { return part_a_; }
    const std::vector<Flat>& part_b() const noexcept { return part_b_; }
    long long size_a() const noexcept { return static_cast<long long>(part_a_.size()); }
    long long size_b() const noexcept { return static_cast<long long>(part_b_.size()); }
    long long size_of(Side s) const noexcept { return s == Side::A ? size_a() : size_b(); }

    const std::vector<int>& adj_a(int i) const { return adj_a_[i]; }
    const std::vector<int>& adj_b(int j) const { return adj_b_[j]; }
    const std::vector<int>& adj_of(Side s, int i) const { return s == Side::A ? adj_a_[i] : adj_b_[i]; }

    long long deg_a() const noexcept { return deg_a_; }
    long long deg_b() const noexcept { return deg_b_; }
    long long deg_of(Side s) const noexcept { return s == Side::A ? deg_a_ : deg_b_; }
    long long edge_count() const noexcept { return static_cast<long long>(part_a_.size()) * deg_a_; }

    /// Index of a flat within its part, -1 when absent.
    int index_of(Side s, const Flat& f) const;

    const SizeBudget& budget() const noexcept { return budget_; }

    /// Deletes one edge.  Exists so negative-control tests can confirm that
    /// the structural checks detect a corrupted graph.
    void corrupt_one_edge_for_testing();

private:
    const Field* field_ = nullptr;
    int d_ = 0, k_ = 0, h_ = 0;
    long long deg_a_ = 0, deg_b_ = 0;
    std::vector<Flat> part_a_, part_b_;
    std::vector<std::vector<int>> adj_a_, adj_b_;
    std::unordered_map<Flat, int, FlatHash> index_a_, index_b_;
    SizeBudget budget_;

    friend IncidenceGraph build_graph(const Field& f, int d, int k, int h, const SizeBudget& budget);
};

IncidenceGraph build_graph(const Field& f, int d, int k, int h, const SizeBudget& budget = {});

/// Containment incidences between arbitrary flat families, counted directly.
long long count_incidences(std::span<const Flat> kflats, std::span<const Flat> hflats);

/// Rank of the stacked matrix [basis(v1); basis(v2); base(v2) - base(v1)]
/// for two distinct k-flats; lies in k+1 .. 2k+1.
int pair_rank(const Flat& v1, const Flat& v2);

/// Number of h-flats containing both of two distinct k-flats, from the pair
/// rank alone.
BigInt common_neighbor_count(const Flat& v1, const Flat& v2, int h);

/// Dense symmetric common-neighbor matrix of one part: entry (i, j) counts
/// the opposite-part vertices adjacent to both i and j.
struct GramMatrix {
    long long n = 0;
    std::vector<long long> data;

    long long at(long long i, long long j) const { return data[i * n + j]; }
    long long& at(long long i, long long j) { return data[i * n + j]; }
};

GramMatrix gram_of_side(const IncidenceGraph& g, Side s);

/// A-side Gram matrix, gated by the gram entry budget.
GramMatrix gram_matrix(const IncidenceGraph& g);

/// Per-class summary from the all-pairs classification of part A.
struct PairClass {
    int t = 0;                    // stacked rank of the class
    long long expected_entry = 0; // predicted common-neighbor count
    long long degree = 0;         // neighbors per vertex in the class graph
    bool regular = false;
    long long lead_exponent = 0;  // (t - k)(d - t + k + 1)
    double degree_ratio = 0.0;    // degree / q^lead_exponent
    bool ratio_ok = false;        // degree_ratio within [0.5, 3]
};

struct DecompositionReport {
    int q = 0, d = 0, k = 0, h = 0;
    long long n = 0;
    long long diag_expected = 0;
    bool diag_ok = false;
    long long mismatched_entries = 0;
    bool entries_ok = false;
    bool partition_ok = false; // class degrees sum to n - 1
    std::vector<PairClass> classes;

    bool ok() const { return diag_ok && entries_ok && partition_ok; }
};

/// Checks that every Gram entry is determined by the pair rank class and
/// matches the predicted constant, and summarizes the class graphs.
DecompositionReport verify_decomposition(const IncidenceGraph& g);

} // namespace fqflats
