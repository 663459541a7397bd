#include "biblionet/metrics.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

#include "biblionet/errors.hpp"
#include "biblionet/netio.hpp"

namespace biblionet {

namespace {

constexpr const char* kNormalizedAttr = "normalized";

std::vector<double> strengths(const Network& net) {
    std::vector<double> c(static_cast<std::size_t>(net.node_count()), 0.0);
    for (const Edge& e : net.edges()) {
        c[static_cast<std::size_t>(e.i)] += e.weight;
        c[static_cast<std::size_t>(e.j)] += e.weight;
    }
    return c;
}

}  // namespace

double link_strength(const Network& net, int i, int j) {
    const double c_ij = net.weight(i, j);  // validates both ids
    if (c_ij == 0.0) return 0.0;
    const NodeStrength si = net.node_strength(i);
    const NodeStrength sj = net.node_strength(j);
    if (si.total_link_strength <= 0.0) throw IsolatedNode(i);
    if (sj.total_link_strength <= 0.0) throw IsolatedNode(j);
    return 2.0 * net.total_weight() * c_ij / (si.total_link_strength * sj.total_link_strength);
}

bool is_normalized(const Network& net) {
    auto it = net.attributes().find(kNormalizedAttr);
    return it != net.attributes().end() && it->second == "true";
}

Network normalize_association(const Network& net) {
    if (is_normalized(net)) throw AlreadyNormalized();
    Network out;
    for (const NodeInfo& info : net.nodes()) {
        int id = out.ensure_node(info.label, info.kind);
        out.node(id).attributes = info.attributes;
    }
    // c_i and m are frozen from the input network
    const std::vector<double> c = strengths(net);
    const double m = net.total_weight();
    for (const Edge& e : net.edges()) {
        const double denom = c[static_cast<std::size_t>(e.i)] * c[static_cast<std::size_t>(e.j)];
        out.add_edge(e.i, e.j, 2.0 * m * e.weight / denom);
    }
    out.attributes() = net.attributes();
    out.attributes()[kNormalizedAttr] = "true";
    return out;
}

double degree_centrality(const Network& net, int v) {
    if (net.node_count() < 2) throw DegenerateGraph();
    return static_cast<double>(net.node_strength(v).link_count) /
           static_cast<double>(net.node_count() - 1);
}

namespace {

/// Hop distances from v; -1 marks unreachable.
std::vector<int> bfs_distances(const std::vector<std::vector<std::pair<int, double>>>& adj, int v) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(v)] = 0;
    queue.push_back(v);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto& [w, weight] : adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

double closeness_from_distances(const std::vector<int>& dist) {
    long long sum = 0;
    long long reachable = 0;
    for (int d : dist) {
        if (d >= 0) {
            ++reachable;
            sum += d;
        }
    }
    if (reachable <= 1 || sum == 0) return 0.0;
    return static_cast<double>(reachable - 1) / static_cast<double>(sum);
}

}  // namespace

double closeness_centrality(const Network& net, int v) {
    if (net.node_count() < 2) throw DegenerateGraph();
    net.node(v);  // validate id
    return closeness_from_distances(bfs_distances(net.adjacency(), v));
}

double expected_cooccurrence(long long list_length, double probability) {
    if (probability < 0.0 || probability > 1.0) throw BadProbability(probability);
    if (list_length < 1) throw Error("list length must be >= 1");
    return static_cast<double>(list_length - 1) * probability;
}

std::vector<RankedNeighbor> top_link_strength(const Network& net, std::string_view focus, int k) {
    auto id = net.find_node(focus);
    if (!id) throw UnknownNode(std::string(focus));
    std::vector<RankedNeighbor> ranked;
    for (const Edge& e : net.edges()) {
        if (e.i == *id)
            ranked.push_back({net.node(e.j).label, e.weight});
        else if (e.j == *id)
            ranked.push_back({net.node(e.i).label, e.weight});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedNeighbor& a, const RankedNeighbor& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.label < b.label;
    });
    if (k >= 0 && ranked.size() > static_cast<std::size_t>(k))
        ranked.resize(static_cast<std::size_t>(k));
    return ranked;
}

std::vector<SourceSummaryRow> source_summary(const Corpus& corpus) {
    if (corpus.empty()) throw EmptyCorpus();
    std::map<std::string, SourceSummaryRow> by_source;
    for (const auto& [id, rec] : corpus.records) {
        if (rec.source_title.empty()) continue;
        SourceSummaryRow& row = by_source[rec.source_title];
        row.source_title = rec.source_title;
        row.document_count += 1;
        row.citation_count += rec.cited_by;
    }
    std::vector<SourceSummaryRow> rows;
    rows.reserve(by_source.size());
    for (auto& [title, row] : by_source) {
        row.more_cited_than_documents = row.citation_count > row.document_count;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const SourceSummaryRow& a, const SourceSummaryRow& b) {
        if (a.document_count != b.document_count) return a.document_count > b.document_count;
        return a.source_title < b.source_title;
    });
    return rows;
}

MetricReport MetricReport::compute(const Network& net) {
    MetricReport report;
    report.node_count = net.node_count();
    report.total_weight = net.total_weight();
    const auto adj = net.adjacency();
    const bool degenerate = net.node_count() < 2;
    for (int v = 0; v < net.node_count(); ++v) {
        MetricRow row;
        row.label = net.node(v).label;
        for (const auto& [u, w] : adj[static_cast<std::size_t>(v)]) {
            ++row.link_count;
            row.total_link_strength += w;
        }
        if (!degenerate) {
            row.degree_centrality =
                static_cast<double>(row.link_count) / static_cast<double>(net.node_count() - 1);
            row.closeness_centrality = closeness_from_distances(bfs_distances(adj, v));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

void MetricReport::write_csv(std::ostream& out) const {
    out << "label,links,total_link_strength,degree_centrality,closeness_centrality\n";
    for (const MetricRow& row : rows) {
        std::string label = row.label;
        if (label.find_first_of(",\"\r\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : label) {
                if (c == '"') quoted.push_back('"');
                quoted.push_back(c);
            }
            quoted.push_back('"');
            label = quoted;
        }
        out << label << ',' << row.link_count << ',' << format_weight(row.total_link_strength) << ','
            << format_weight(row.degree_centrality) << ',' << format_weight(row.closeness_centrality)
            << '\n';
    }
}

void MetricReport::write_table(std::ostream& out, int limit) const {
    std::vector<const MetricRow*> ranked;
    ranked.reserve(rows.size());
    for (const MetricRow& row : rows) ranked.push_back(&row);
    std::sort(ranked.begin(), ranked.end(), [](const MetricRow* a, const MetricRow* b) {
        if (a->total_link_strength != b->total_link_strength)
            return a->total_link_strength > b->total_link_strength;
        return a->label < b->label;
    });
    if (limit >= 0 && ranked.size() > static_cast<std::size_t>(limit))
        ranked.resize(static_cast<std::size_t>(limit));
    std::size_t width = std::string("Label").size();
    for (const MetricRow* row : ranked) width = std::max(width, row->label.size());
    out << "Label";
    out << std::string(width - 5 + 2, ' ') << "Link Strength\n";
    for (const MetricRow* row : ranked) {
        out << row->label << std::string(width - row->label.size() + 2, ' ')
            << format_weight(row->total_link_strength) << '\n';
    }
}

}  // namespace biblionet
