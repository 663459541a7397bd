#include "biblionet/network.hpp"

#include <algorithm>
#include <cmath>

#include "biblionet/errors.hpp"

namespace biblionet {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::country: return "country";
        case NodeKind::source: return "source";
        case NodeKind::keyword: return "keyword";
        case NodeKind::document: return "document";
        case NodeKind::reference: return "reference";
    }
    return "document";
}

std::uint64_t Network::pack(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
}

void Network::check_node(int id) const {
    if (id < 0 || id >= node_count()) throw UnknownNode(id);
}

int Network::ensure_node(std::string_view label, NodeKind kind) {
    auto it = label_index_.find(std::string(label));
    if (it != label_index_.end()) return it->second;
    int id = node_count();
    nodes_.push_back(NodeInfo{std::string(label), kind, {}});
    label_index_.emplace(nodes_.back().label, id);
    return id;
}

std::optional<int> Network::find_node(std::string_view label) const {
    auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

const NodeInfo& Network::node(int id) const {
    check_node(id);
    return nodes_[static_cast<std::size_t>(id)];
}

NodeInfo& Network::node(int id) {
    check_node(id);
    return nodes_[static_cast<std::size_t>(id)];
}

void Network::add_edge(int i, int j, double w) {
    check_node(i);
    check_node(j);
    if (i == j) throw SelfLoop(i);
    if (!(w > 0) || !std::isfinite(w)) throw BadWeight(w);
    if (i > j) std::swap(i, j);
    weights_[pack(i, j)] += w;
}

double Network::weight(int i, int j) const {
    check_node(i);
    check_node(j);
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    auto it = weights_.find(pack(i, j));
    return it == weights_.end() ? 0.0 : it->second;
}

std::vector<Edge> Network::edges() const {
    std::vector<Edge> out;
    out.reserve(weights_.size());
    for (const auto& [key, w] : weights_)
        out.push_back(Edge{static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFu), w});
    std::sort(out.begin(), out.end(),
              [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    return out;
}

double Network::total_weight() const {
    // summed in deterministic order so repeated runs agree bit for bit
    double m = 0.0;
    for (const Edge& e : edges()) m += e.weight;
    return m;
}

NodeStrength Network::node_strength(int v) const {
    check_node(v);
    NodeStrength s;
    s.node_id = v;
    for (const Edge& e : edges()) {
        if (e.i == v || e.j == v) {
            ++s.link_count;
            s.total_link_strength += e.weight;
        }
    }
    return s;
}

std::vector<std::vector<std::pair<int, double>>> Network::adjacency() const {
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(node_count()));
    for (const Edge& e : edges()) {
        adj[static_cast<std::size_t>(e.i)].emplace_back(e.j, e.weight);
        adj[static_cast<std::size_t>(e.j)].emplace_back(e.i, e.weight);
    }
    return adj;
}

bool Network::operator==(const Network& other) const {
    // labels are unique per network, so equal counts plus full label lookup
    // make the node sets equal; edges compare through labels because node
    // numbering is a storage detail (edge lists do not carry an order)
    if (node_count() != other.node_count() || weights_.size() != other.weights_.size()) return false;
    for (const NodeInfo& info : nodes_) {
        if (!other.find_node(info.label)) return false;
    }
    for (const auto& [key, w] : weights_) {
        const auto& a = nodes_[static_cast<std::size_t>(key >> 32)].label;
        const auto& b = nodes_[static_cast<std::size_t>(key & 0xFFFFFFFFu)].label;
        const auto oi = other.find_node(a);
        const auto oj = other.find_node(b);
        if (other.weight(*oi, *oj) != w) return false;
    }
    return true;
}

}  // namespace biblionet
