#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "biblionet/network.hpp"
#include "biblionet/record.hpp"

namespace biblionet {

/// Association strength of a pair: 2 m c_ij / (c_i c_j), where c_ij is the
/// edge weight, c_i the total link strength of node i and m the total
/// network weight. 0 for non-adjacent pairs.
double link_strength(const Network& net, int i, int j);

/// Replaces every stored weight c_ij by its association strength. m and the
/// node strengths are frozen from the input network. The result carries a
/// "normalized" attribute; normalizing twice is an error (the transform is
/// not idempotent and is only meaningful on raw counts).
Network normalize_association(const Network& net);

bool is_normalized(const Network& net);

/// deg(v) / (n - 1); deg counts incident edges, not weights.
double degree_centrality(const Network& net, int v);

/// (r - 1) / sum of hop distances over the r vertices reachable from v
/// (v included in r). Isolated nodes score 0.
double closeness_centrality(const Network& net, int v);

/// (N - 1) * p: expected co-occurrences of a word with occurrence
/// probability p in a list of N items.
double expected_cooccurrence(long long list_length, double probability);

struct RankedNeighbor {
    std::string label;
    double weight = 0.0;
};

/// Neighbors of `focus` by edge weight descending, ties alphabetical,
/// truncated to k. This is the shape of the ranked link strength tables.
std::vector<RankedNeighbor> top_link_strength(const Network& net, std::string_view focus, int k);

struct SourceSummaryRow {
    std::string source_title;
    long long document_count = 0;
    long long citation_count = 0;
    bool more_cited_than_documents = false;
};

/// Documents and accumulated citations per source, most documents first
/// (ties alphabetical).
std::vector<SourceSummaryRow> source_summary(const Corpus& corpus);

struct MetricRow {
    std::string label;
    int link_count = 0;
    double total_link_strength = 0.0;
    double degree_centrality = 0.0;
    double closeness_centrality = 0.0;
};

/// Per-node metric table plus the network scalars n and m. Centralities are
/// 0 on networks with fewer than 2 nodes.
struct MetricReport {
    std::vector<MetricRow> rows;  // node id order
    int node_count = 0;
    double total_weight = 0.0;

    static MetricReport compute(const Network& net);

    void write_csv(std::ostream& out) const;

    /// Ranked two-column table (label, total link strength), top `limit`.
    void write_table(std::ostream& out, int limit = 10) const;
};

}  // namespace biblionet
