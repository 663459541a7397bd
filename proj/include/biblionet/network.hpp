#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace biblionet {

enum class NodeKind { country, source, keyword, document, reference };

std::string_view to_string(NodeKind kind);

struct NodeInfo {
    std::string label;
    NodeKind kind = NodeKind::document;
    std::map<std::string, std::string> attributes;
};

struct Edge {
    int i = 0;  // i < j always
    int j = 0;
    double weight = 0.0;
};

struct NodeStrength {
    int node_id = 0;
    int link_count = 0;              // incident edges (c_i as a count)
    double total_link_strength = 0;  // sum of incident weights
};

/// Weighted undirected graph with labeled nodes. Storage keeps i < j only;
/// the weight accessor symmetrizes. No self-loops, no zero weights.
class Network {
public:
    Network() = default;

    /// Registers a new node; duplicate labels return the existing id.
    int ensure_node(std::string_view label, NodeKind kind = NodeKind::document);

    std::optional<int> find_node(std::string_view label) const;

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const NodeInfo& node(int id) const;
    NodeInfo& node(int id);
    const std::vector<NodeInfo>& nodes() const { return nodes_; }

    /// Adds w to the weight at (i, j). Throws SelfLoop when i == j,
    /// UnknownNode on unregistered ids, BadWeight when w <= 0.
    void add_edge(int i, int j, double w);

    /// Symmetric read; 0 for absent pairs.
    double weight(int i, int j) const;

    std::size_t edge_count() const { return weights_.size(); }

    /// m = sum of stored weights over i < j.
    double total_weight() const;

    NodeStrength node_strength(int v) const;

    /// Stored pairs in (i, j) lexicographic order.
    std::vector<Edge> edges() const;

    /// Neighbor lists (sorted by neighbor id) for traversal-heavy callers.
    std::vector<std::vector<std::pair<int, double>>> adjacency() const;

    std::map<std::string, std::string>& attributes() { return attributes_; }
    const std::map<std::string, std::string>& attributes() const { return attributes_; }

    /// Structural comparison: same labeled node set, same weight for every
    /// labeled pair. Node numbering, kinds and attributes are in-memory
    /// detail and do not count.
    bool operator==(const Network& other) const;

private:
    static std::uint64_t pack(int i, int j);
    void check_node(int id) const;

    std::vector<NodeInfo> nodes_;
    std::unordered_map<std::string, int> label_index_;
    std::unordered_map<std::uint64_t, double> weights_;
    std::map<std::string, std::string> attributes_;
};

}  // namespace biblionet
