#include "biblionet/cluster.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "biblionet/errors.hpp"
#include "biblionet/netio.hpp"

namespace biblionet {

namespace {

/// splitmix64: tiny, seedable, identical output everywhere.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

void shuffle_order(std::vector<int>& order, SplitMix64& rng) {
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next() % i]);
}

using Adjacency = std::vector<std::vector<std::pair<int, double>>>;

struct RunResult {
    std::vector<int> assignment;
    int passes = 0;
};

RunResult local_moving(const Adjacency& adj, double gamma, std::uint64_t run_seed,
                       bool random_start, std::vector<double>* move_deltas) {
    const int n = static_cast<int>(adj.size());
    RunResult result;
    result.assignment.resize(static_cast<std::size_t>(n));
    std::vector<int> size(static_cast<std::size_t>(n), 0);
    SplitMix64 rng(run_seed);
    if (random_start && n > 1) {
        // a coarse random partition lets later restarts escape basins the
        // singleton start funnels into
        const int k = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
        for (int v = 0; v < n; ++v) {
            const int c = static_cast<int>(rng.next() % static_cast<std::uint64_t>(k));
            result.assignment[static_cast<std::size_t>(v)] = c;
            ++size[static_cast<std::size_t>(c)];
        }
    } else {
        for (int v = 0; v < n; ++v) {
            result.assignment[static_cast<std::size_t>(v)] = v;
            size[static_cast<std::size_t>(v)] = 1;
        }
    }
    std::set<int> free_ids;
    for (int c = 0; c < n; ++c) {
        if (size[static_cast<std::size_t>(c)] == 0) free_ids.insert(c);
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;

    auto move_passes = [&]() {
        bool improved = true;
        while (improved) {
            improved = false;
            ++result.passes;
            shuffle_order(order, rng);
            for (int v : order) {
                const int current = result.assignment[static_cast<std::size_t>(v)];
                std::map<int, double> conn;  // cluster id -> weight from v, id order
                for (const auto& [u, w] : adj[static_cast<std::size_t>(v)])
                    conn[result.assignment[static_cast<std::size_t>(u)]] += w;

                const double conn_current = conn.count(current) ? conn.at(current) : 0.0;
                // v's contribution while sitting in its cluster
                const double leave = conn_current -
                                     gamma * static_cast<double>(
                                                 size[static_cast<std::size_t>(current)] - 1);

                double best_delta = 0.0;  // staying put is the baseline
                int best_cluster = current;
                auto consider = [&](int candidate, double joined_weight, int candidate_size) {
                    const double delta = (joined_weight - gamma * candidate_size) - leave;
                    if (delta > best_delta ||
                        (delta == best_delta && best_cluster != current &&
                         candidate < best_cluster)) {
                        best_delta = delta;
                        best_cluster = candidate;
                    }
                };
                for (const auto& [cluster, w] : conn) {
                    if (cluster != current)
                        consider(cluster, w, size[static_cast<std::size_t>(cluster)]);
                }
                // a fresh singleton is always on the table when v is not alone
                if (size[static_cast<std::size_t>(current)] > 1 && !free_ids.empty())
                    consider(*free_ids.begin(), 0.0, 0);

                if (best_cluster != current && best_delta > 0.0) {
                    if (move_deltas) move_deltas->push_back(best_delta);
                    if (--size[static_cast<std::size_t>(current)] == 0) free_ids.insert(current);
                    if (size[static_cast<std::size_t>(best_cluster)] == 0)
                        free_ids.erase(best_cluster);
                    ++size[static_cast<std::size_t>(best_cluster)];
                    result.assignment[static_cast<std::size_t>(v)] = best_cluster;
                    improved = true;
                }
            }
        }
    };

    // single-node moves cannot join two mutually stable clusters, so after
    // the moves settle try the best pairwise cluster merge and, if one
    // improves the objective, move again
    auto try_merge = [&]() -> bool {
        std::map<std::pair<int, int>, double> between;  // (a < b) -> connecting weight
        for (int v = 0; v < n; ++v) {
            const int cv = result.assignment[static_cast<std::size_t>(v)];
            for (const auto& [u, w] : adj[static_cast<std::size_t>(v)]) {
                if (u <= v) continue;  // each edge once
                const int cu = result.assignment[static_cast<std::size_t>(u)];
                if (cu != cv) between[{std::min(cv, cu), std::max(cv, cu)}] += w;
            }
        }
        double best_delta = 0.0;
        std::pair<int, int> best{-1, -1};
        for (const auto& [pair, w] : between) {
            const double delta = w - gamma * static_cast<double>(size[static_cast<std::size_t>(
                                                 pair.first)]) *
                                         static_cast<double>(size[static_cast<std::size_t>(
                                             pair.second)]);
            if (delta > best_delta) {  // map order breaks ties toward low ids
                best_delta = delta;
                best = pair;
            }
        }
        if (best.first < 0) return false;
        if (move_deltas) move_deltas->push_back(best_delta);
        for (int v = 0; v < n; ++v) {
            if (result.assignment[static_cast<std::size_t>(v)] == best.second)
                result.assignment[static_cast<std::size_t>(v)] = best.first;
        }
        size[static_cast<std::size_t>(best.first)] += size[static_cast<std::size_t>(best.second)];
        size[static_cast<std::size_t>(best.second)] = 0;
        free_ids.insert(best.second);
        return true;
    };

    do {
        move_passes();
    } while (try_merge());
    return result;
}

void merge_small_clusters(const Adjacency& adj, std::vector<int>& assignment, int min_cluster_size) {
    if (min_cluster_size <= 1) return;
    std::set<int> unmergeable;
    while (true) {
        std::map<int, int> sizes;
        for (int c : assignment) ++sizes[c];

        int smallest = -1;
        for (const auto& [cluster, size] : sizes) {
            if (size >= min_cluster_size || unmergeable.count(cluster)) continue;
            if (smallest < 0 || sizes[smallest] > size ||
                (sizes[smallest] == size && cluster < smallest))
                smallest = cluster;
        }
        if (smallest < 0) break;

        std::map<int, double> conn;  // neighbor cluster -> connecting weight
        for (std::size_t v = 0; v < assignment.size(); ++v) {
            if (assignment[v] != smallest) continue;
            for (const auto& [u, w] : adj[v]) {
                if (assignment[static_cast<std::size_t>(u)] != smallest)
                    conn[assignment[static_cast<std::size_t>(u)]] += w;
            }
        }
        if (conn.empty()) {
            unmergeable.insert(smallest);
            continue;
        }
        int target = -1;
        double best = -1.0;
        for (const auto& [cluster, w] : conn) {
            if (w > best) {
                best = w;
                target = cluster;
            }
        }
        for (int& c : assignment) {
            if (c == smallest) c = target;
        }
    }
}

void canonicalize(std::vector<int>& assignment) {
    std::map<int, int> relabel;  // old id -> canonical id, by first (= smallest) member
    for (int c : assignment) {
        if (!relabel.count(c)) {
            int next = static_cast<int>(relabel.size());
            relabel[c] = next;
        }
    }
    for (int& c : assignment) c = relabel[c];
}

}  // namespace

int Clustering::cluster_count() const {
    int highest = -1;
    for (int c : assignment) highest = std::max(highest, c);
    return highest + 1;
}

double cluster_objective(const Network& net, const std::vector<int>& assignment, double resolution) {
    const int n = net.node_count();
    if (static_cast<int>(assignment.size()) != n)
        throw PartialAssignment("assignment covers " + std::to_string(assignment.size()) +
                                " of " + std::to_string(n) + " nodes");
    std::map<int, long long> sizes;
    for (int c : assignment) {
        if (c < 0) throw PartialAssignment("negative cluster id");
        ++sizes[c];
    }
    double v = 0.0;
    for (const Edge& e : net.edges()) {
        if (assignment[static_cast<std::size_t>(e.i)] == assignment[static_cast<std::size_t>(e.j)])
            v += e.weight;
    }
    long long same_cluster_pairs = 0;
    for (const auto& [cluster, size] : sizes) same_cluster_pairs += size * (size - 1) / 2;
    return v - resolution * static_cast<double>(same_cluster_pairs);
}

Clustering cluster_network(const Network& net, double resolution, std::uint64_t seed, int restarts,
                           int min_cluster_size, std::vector<double>* move_deltas) {
    if (!(resolution > 0.0)) throw BadResolution(resolution);
    if (restarts < 1) throw Error("restarts must be >= 1");
    if (min_cluster_size < 1) throw Error("min_cluster_size must be >= 1");

    const Adjacency adj = net.adjacency();
    Clustering best;
    best.resolution = resolution;
    best.seed = seed;

    SplitMix64 seeder(seed);
    bool have_best = false;
    double best_quality = 0.0;
    RunResult best_run;
    for (int r = 0; r < restarts; ++r) {
        const std::uint64_t run_seed = seeder.next();
        RunResult run = local_moving(adj, resolution, run_seed, r > 0, move_deltas);
        const double quality = cluster_objective(net, run.assignment, resolution);
        if (!have_best || quality > best_quality) {
            have_best = true;
            best_quality = quality;
            best_run = std::move(run);
        }
    }

    merge_small_clusters(adj, best_run.assignment, min_cluster_size);
    canonicalize(best_run.assignment);
    best.assignment = std::move(best_run.assignment);
    best.iterations_run = best_run.passes;
    best.quality = cluster_objective(net, best.assignment, resolution);
    return best;
}

void write_clustering_csv(const Network& net, const Clustering& clustering, std::ostream& out) {
    if (static_cast<int>(clustering.assignment.size()) != net.node_count())
        throw PartialAssignment("clustering does not match network");
    out << "label,cluster\n";
    for (int v = 0; v < net.node_count(); ++v) {
        std::string label = net.node(v).label;
        if (label.find_first_of(",\"\r\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : label) {
                if (c == '"') quoted.push_back('"');
                quoted.push_back(c);
            }
            quoted.push_back('"');
            label = quoted;
        }
        out << label << ',' << clustering.assignment[static_cast<std::size_t>(v)] << '\n';
    }
    if (!out) throw SinkFailure("clustering stream write error");
}

void write_pajek_clu(const Clustering& clustering, std::ostream& out) {
    out << "*Vertices " << clustering.assignment.size() << '\n';
    for (int c : clustering.assignment) out << (c + 1) << '\n';
    if (!out) throw SinkFailure("partition stream write error");
}

void write_gml_clustered(const Network& net, const Clustering& clustering, std::ostream& out) {
    if (static_cast<int>(clustering.assignment.size()) != net.node_count())
        throw PartialAssignment("clustering does not match network");
    out << "graph [\n  directed 0\n";
    for (int id = 0; id < net.node_count(); ++id) {
        const std::string& label = net.node(id).label;
        if (label.find('"') != std::string::npos)
            throw SinkFailure("label contains a quote: \"" + label + "\"");
        out << "  node [\n    id " << id << "\n    label \"" << label << "\"\n    cluster "
            << clustering.assignment[static_cast<std::size_t>(id)] << "\n  ]\n";
    }
    for (const Edge& e : net.edges()) {
        out << "  edge [\n    source " << e.i << "\n    target " << e.j << "\n    weight "
            << format_weight(e.weight) << "\n  ]\n";
    }
    out << "]\n";
    if (!out) throw SinkFailure("network stream write error");
}

}  // namespace biblionet
