#pragma once

// Shared fixture builders and independent oracles for the test suites.
// Oracles here must stay brute force: they are the reference the library
// is checked against, not wrappers around it.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "biblionet/netio.hpp"
#include "biblionet/network.hpp"
#include "biblionet/record.hpp"

namespace testutil {

/// Deterministic PRNG for fixtures (splitmix64, independent of any library RNG).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    double unit() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

inline biblionet::PublicationRecord make_record(std::string id) {
    biblionet::PublicationRecord rec;
    rec.record_id = std::move(id);
    return rec;
}

/// Random graph with exactly-representable weights (k/4, k in [4, 4000)),
/// so 6-significant-digit serialization round-trips losslessly.
inline biblionet::Network random_network(Rng& rng, int nodes, double edge_probability,
                                         bool isolated_allowed = true) {
    biblionet::Network net;
    for (int v = 0; v < nodes; ++v) net.ensure_node("n" + std::to_string(v));
    for (int i = 0; i < nodes; ++i) {
        for (int j = i + 1; j < nodes; ++j) {
            if (rng.unit() < edge_probability)
                net.add_edge(i, j, static_cast<double>(4 + rng.below(3996)) / 4.0);
        }
    }
    if (!isolated_allowed) {
        // give every degree-0 node one edge so edge-list formats can carry it
        auto strength_of = [&](int v) { return net.node_strength(v).link_count; };
        for (int v = 0; v < nodes && nodes > 1; ++v) {
            if (strength_of(v) == 0) {
                int other = v == 0 ? 1 : 0;
                net.add_edge(v, other, static_cast<double>(4 + rng.below(3996)) / 4.0);
            }
        }
    }
    return net;
}

/// Handshake oracle: sum of per-node strengths must be twice the total weight.
inline double strength_sum(const biblionet::Network& net) {
    double sum = 0.0;
    for (int v = 0; v < net.node_count(); ++v) sum += net.node_strength(v).total_link_strength;
    return sum;
}

/// Brute-force association strength straight from the formula, using only
/// the raw weight accessor.
inline double association_oracle(const biblionet::Network& net, int i, int j) {
    const int n = net.node_count();
    double m = 0.0;
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double w = net.weight(a, b);
            m += w;
            c[static_cast<std::size_t>(a)] += w;
            c[static_cast<std::size_t>(b)] += w;
        }
    }
    const double w = net.weight(i, j);
    if (w == 0.0) return 0.0;
    return 2.0 * m * w / (c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)]);
}

/// BFS closeness oracle on an explicit adjacency matrix.
inline double closeness_oracle(const biblionet::Network& net, int v) {
    const int n = net.node_count();
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<int> frontier{v};
    dist[static_cast<std::size_t>(v)] = 0;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier) {
            for (int w = 0; w < n; ++w) {
                if (net.weight(u, w) > 0.0 && dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    long long sum = 0;
    long long reachable = 0;
    for (int d : dist) {
        if (d >= 0) {
            ++reachable;
            sum += d;
        }
    }
    return (reachable <= 1 || sum == 0) ? 0.0 : static_cast<double>(reachable - 1) / static_cast<double>(sum);
}

/// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    while (true) {
        out.push_back(a);
        int i = n - 1;
        for (; i > 0; --i) {
            int max_prefix = 0;
            for (int k = 0; k < i; ++k) max_prefix = std::max(max_prefix, a[static_cast<std::size_t>(k)]);
            if (a[static_cast<std::size_t>(i)] <= max_prefix) break;
        }
        if (i == 0) break;
        ++a[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) a[static_cast<std::size_t>(k)] = 0;
    }
    return out;
}

/// Objective recomputed pairwise, intentionally not the edge-sum shortcut
/// the library uses.
inline double objective_oracle(const biblionet::Network& net, const std::vector<int>& assignment,
                               double gamma) {
    double v = 0.0;
    for (int i = 0; i < net.node_count(); ++i) {
        for (int j = i + 1; j < net.node_count(); ++j) {
            if (assignment[static_cast<std::size_t>(i)] == assignment[static_cast<std::size_t>(j)])
                v += net.weight(i, j) - gamma;
        }
    }
    return v;
}

inline std::string serialize_network(const biblionet::Network& net, biblionet::NetFormat format) {
    std::ostringstream out;
    biblionet::write_network(net, format, out);
    return out.str();
}

inline biblionet::Network parse_network(const std::string& text, biblionet::NetFormat format) {
    std::istringstream in(text);
    return biblionet::read_network(in, format);
}

}  // namespace testutil
