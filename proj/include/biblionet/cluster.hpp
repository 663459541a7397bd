#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "biblionet/network.hpp"

namespace biblionet {

/// Node -> cluster assignment. Cluster ids are canonical: numbered from 0
/// by ascending smallest member node id.
struct Clustering {
    std::vector<int> assignment;
    double resolution = 1.0;
    double quality = 0.0;  // objective recomputed on the final assignment
    std::uint64_t seed = 0;
    int iterations_run = 0;  // node passes of the winning restart

    int cluster_count() const;
};

/// V = sum over same-cluster pairs i < j of (s_ij - resolution); s_ij is 0
/// for non-edges. Works on whatever weights the network carries; feed it
/// association-strength normalized weights for paper-style maps.
double cluster_objective(const Network& net, const std::vector<int>& assignment, double resolution);

/// Deterministic local moving with restarts. Starts from singletons, moves
/// nodes to the neighboring cluster (or a fresh singleton) with the best
/// objective gain, ties toward the lowest cluster id, until a full pass
/// makes no improving move. Best of `restarts` seeded runs wins; clusters
/// below min_cluster_size are then merged into the neighbor cluster with
/// the largest connecting weight. `move_deltas`, when given, collects the
/// objective gain of every accepted move across all restarts.
Clustering cluster_network(const Network& net, double resolution, std::uint64_t seed = 42,
                           int restarts = 32, int min_cluster_size = 1,
                           std::vector<double>* move_deltas = nullptr);

/// "label,cluster" rows in node id order.
void write_clustering_csv(const Network& net, const Clustering& clustering, std::ostream& out);

/// Pajek partition file: "*Vertices n" then one 1-based cluster id per line.
void write_pajek_clu(const Clustering& clustering, std::ostream& out);

/// GML export with a `cluster` attribute on every node block; otherwise
/// identical to the plain GML writer and readable by the same parser.
void write_gml_clustered(const Network& net, const Clustering& clustering, std::ostream& out);

}  // namespace biblionet
