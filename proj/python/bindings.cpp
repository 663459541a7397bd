// Python bindings for the biblionet core. File IO stays on the Python side;
// everything here works on strings and in-memory objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "biblionet/builders.hpp"
#include "biblionet/cluster.hpp"
#include "biblionet/errors.hpp"
#include "biblionet/ingest.hpp"
#include "biblionet/metrics.hpp"
#include "biblionet/netio.hpp"
#include "biblionet/network.hpp"
#include "biblionet/quartile.hpp"

namespace py = pybind11;
using namespace biblionet;

namespace {

NetFormat format_arg(const std::string& name) {
    auto format = net_format_from_string(name);
    if (!format) throw py::value_error("unknown network format: " + name);
    return *format;
}

NetworkKind kind_arg(const std::string& name) {
    auto kind = network_kind_from_string(name);
    if (!kind) throw py::value_error("unknown network kind: " + name);
    return *kind;
}

Unit unit_arg(const std::string& name) {
    auto unit = unit_from_string(name);
    if (!unit) throw py::value_error("unknown unit: " + name);
    return *unit;
}

}  // namespace

PYBIND11_MODULE(_biblionet, m) {
    m.doc() = "bibliometric network toolkit (C++ core)";

    py::register_exception<Error>(m, "BiblionetError");

    py::class_<PublicationRecord>(m, "PublicationRecord")
        .def(py::init<>())
        .def_readwrite("record_id", &PublicationRecord::record_id)
        .def_readwrite("authors", &PublicationRecord::authors)
        .def_readwrite("author_ids", &PublicationRecord::author_ids)
        .def_readwrite("title", &PublicationRecord::title)
        .def_readwrite("year", &PublicationRecord::year)
        .def_readwrite("source_title", &PublicationRecord::source_title)
        .def_readwrite("cited_by", &PublicationRecord::cited_by)
        .def_readwrite("affiliations", &PublicationRecord::affiliations)
        .def_readwrite("author_affiliation_pairs", &PublicationRecord::author_affiliation_pairs)
        .def_readwrite("author_keywords", &PublicationRecord::author_keywords)
        .def_readwrite("index_keywords", &PublicationRecord::index_keywords)
        .def_readwrite("references", &PublicationRecord::references)
        .def_readwrite("document_type", &PublicationRecord::document_type)
        .def_readwrite("extra", &PublicationRecord::extra)
        .def("__eq__", [](const PublicationRecord& a, const PublicationRecord& b) { return a == b; })
        .def("__repr__", [](const PublicationRecord& rec) {
            return "<PublicationRecord " + rec.record_id + ">";
        });

    py::class_<Corpus>(m, "Corpus")
        .def(py::init<>())
        .def_readwrite("tag", &Corpus::tag)
        .def_readwrite("provenance", &Corpus::provenance)
        .def("__len__", &Corpus::size)
        .def("record_ids",
             [](const Corpus& corpus) {
                 std::vector<std::string> ids;
                 for (const auto& [id, rec] : corpus.records) ids.push_back(id);
                 return ids;
             })
        .def("record",
             [](const Corpus& corpus, const std::string& id) {
                 auto it = corpus.records.find(id);
                 if (it == corpus.records.end()) throw py::key_error(id);
                 return it->second;
             })
        .def("records", [](const Corpus& corpus) {
            std::vector<PublicationRecord> out;
            for (const auto& [id, rec] : corpus.records) out.push_back(rec);
            return out;
        });

    m.def(
        "parse_scopus_csv",
        [](const std::string& text, bool strict) {
            std::istringstream in(text);
            return parse_scopus_csv(in, {}, strict ? ParseMode::strict : ParseMode::lenient);
        },
        py::arg("text"), py::arg("strict") = false,
        "Parse a Scopus-style CSV export given as text.");

    m.def(
        "merge_corpora",
        [](const std::vector<std::vector<PublicationRecord>>& parts, const std::string& tag,
           const std::vector<std::string>& provenance) {
            return merge_corpora(parts, tag, provenance);
        },
        py::arg("parts"), py::arg("tag"), py::arg("provenance") = std::vector<std::string>{});

    m.def("write_corpus", [](const Corpus& corpus) {
        std::ostringstream out;
        write_corpus(corpus, out);
        return out.str();
    });
    m.def("read_corpus", [](const std::string& text) {
        std::istringstream in(text);
        return read_corpus(in);
    });

    py::class_<CountryAliasTable>(m, "CountryAliasTable")
        .def_static("defaults", &CountryAliasTable::defaults)
        .def_static("load_csv",
                    [](const std::string& text) {
                        std::istringstream in(text);
                        return CountryAliasTable::load_csv(in);
                    })
        .def("add", &CountryAliasTable::add)
        .def("match", &CountryAliasTable::match)
        .def("canonicals", [](const CountryAliasTable& table) {
            return std::vector<std::string>(table.canonicals().begin(), table.canonicals().end());
        });

    m.def(
        "extract_countries",
        [](const PublicationRecord& rec, const CountryAliasTable& aliases) {
            auto countries = extract_countries(rec, aliases);
            return std::vector<std::string>(countries.begin(), countries.end());
        },
        py::arg("record"), py::arg("aliases"));
    m.def("normalize_keywords", &normalize_keywords, py::arg("record"),
          py::arg("include_index") = false);
    m.def("reference_keys", &reference_keys, py::arg("record"));

    py::class_<NodeStrength>(m, "NodeStrength")
        .def_readonly("node_id", &NodeStrength::node_id)
        .def_readonly("link_count", &NodeStrength::link_count)
        .def_readonly("total_link_strength", &NodeStrength::total_link_strength);

    py::class_<Network>(m, "Network")
        .def(py::init<>())
        .def("ensure_node",
             [](Network& net, const std::string& label) { return net.ensure_node(label); })
        .def("find_node",
             [](const Network& net, const std::string& label) { return net.find_node(label); })
        .def("add_edge", &Network::add_edge)
        .def("weight", &Network::weight)
        .def("node_count", &Network::node_count)
        .def("edge_count", &Network::edge_count)
        .def("total_weight", &Network::total_weight)
        .def("node_strength", &Network::node_strength)
        .def("label", [](const Network& net, int id) { return net.node(id).label; })
        .def("labels",
             [](const Network& net) {
                 std::vector<std::string> out;
                 for (const NodeInfo& info : net.nodes()) out.push_back(info.label);
                 return out;
             })
        .def("node_attributes", [](const Network& net, int id) { return net.node(id).attributes; })
        .def("edges",
             [](const Network& net) {
                 std::vector<std::tuple<int, int, double>> out;
                 for (const Edge& e : net.edges()) out.emplace_back(e.i, e.j, e.weight);
                 return out;
             })
        .def("__eq__", [](const Network& a, const Network& b) { return a == b; })
        .def("__repr__", [](const Network& net) {
            return "<Network nodes=" + std::to_string(net.node_count()) +
                   " edges=" + std::to_string(net.edge_count()) + ">";
        });

    m.def(
        "write_network",
        [](const Network& net, const std::string& format) {
            std::ostringstream out;
            write_network(net, format_arg(format), out);
            return out.str();
        },
        py::arg("network"), py::arg("format") = "edge-tsv");
    m.def(
        "read_network",
        [](const std::string& text, const std::string& format) {
            std::istringstream in(text);
            return read_network(in, format_arg(format));
        },
        py::arg("text"), py::arg("format") = "edge-tsv");

    py::class_<BuildSpec>(m, "BuildSpec")
        .def(py::init([](const std::string& kind) { return BuildSpec::make(kind_arg(kind)); }),
             py::arg("kind"))
        .def_property(
            "kind", [](const BuildSpec& spec) { return std::string(to_string(spec.kind)); },
            [](BuildSpec& spec, const std::string& kind) { spec.kind = kind_arg(kind); })
        .def_property(
            "unit", [](const BuildSpec& spec) { return std::string(to_string(spec.unit)); },
            [](BuildSpec& spec, const std::string& unit) { spec.unit = unit_arg(unit); })
        .def_readwrite("min_documents", &BuildSpec::min_documents)
        .def_readwrite("min_occurrences", &BuildSpec::min_occurrences)
        .def_readwrite("include_index_keywords", &BuildSpec::include_index_keywords)
        .def_readwrite("workers", &BuildSpec::workers);

    m.def(
        "build_network",
        [](const Corpus& corpus, const BuildSpec& spec, const CountryAliasTable* aliases) {
            return aliases ? build_network(corpus, spec, *aliases)
                           : build_network(corpus, spec, CountryAliasTable::defaults());
        },
        py::arg("corpus"), py::arg("spec"), py::arg("aliases") = nullptr);

    m.def("link_strength", &link_strength, py::arg("network"), py::arg("i"), py::arg("j"));
    m.def("normalize_association", &normalize_association);
    m.def("is_normalized", &is_normalized);
    m.def("degree_centrality", &degree_centrality);
    m.def("closeness_centrality", &closeness_centrality);
    m.def("expected_cooccurrence", &expected_cooccurrence, py::arg("list_length"),
          py::arg("probability"));
    m.def(
        "top_link_strength",
        [](const Network& net, const std::string& focus, int k) {
            std::vector<std::pair<std::string, double>> out;
            for (const auto& row : top_link_strength(net, focus, k))
                out.emplace_back(row.label, row.weight);
            return out;
        },
        py::arg("network"), py::arg("focus"), py::arg("k") = 10);
    m.def("source_summary", [](const Corpus& corpus) {
        std::vector<std::tuple<std::string, long long, long long, bool>> out;
        for (const auto& row : source_summary(corpus))
            out.emplace_back(row.source_title, row.document_count, row.citation_count,
                             row.more_cited_than_documents);
        return out;
    });

    py::class_<MetricReport>(m, "MetricReport")
        .def_static("compute", &MetricReport::compute)
        .def_readonly("node_count", &MetricReport::node_count)
        .def_readonly("total_weight", &MetricReport::total_weight)
        .def("rows",
             [](const MetricReport& report) {
                 std::vector<std::tuple<std::string, int, double, double, double>> out;
                 for (const MetricRow& row : report.rows)
                     out.emplace_back(row.label, row.link_count, row.total_link_strength,
                                      row.degree_centrality, row.closeness_centrality);
                 return out;
             })
        .def("to_csv", [](const MetricReport& report) {
            std::ostringstream out;
            report.write_csv(out);
            return out.str();
        });

    py::class_<Clustering>(m, "Clustering")
        .def_readonly("assignment", &Clustering::assignment)
        .def_readonly("resolution", &Clustering::resolution)
        .def_readonly("quality", &Clustering::quality)
        .def_readonly("seed", &Clustering::seed)
        .def_readonly("iterations_run", &Clustering::iterations_run)
        .def("cluster_count", &Clustering::cluster_count);

    m.def("cluster_objective", &cluster_objective, py::arg("network"), py::arg("assignment"),
          py::arg("resolution"));
    m.def(
        "cluster_network",
        [](const Network& net, double resolution, std::uint64_t seed, int restarts,
           int min_cluster_size) {
            return cluster_network(net, resolution, seed, restarts, min_cluster_size);
        },
        py::arg("network"), py::arg("resolution") = 1.0, py::arg("seed") = 42,
        py::arg("restarts") = 32, py::arg("min_cluster_size") = 1);
    m.def("clustering_csv", [](const Network& net, const Clustering& clustering) {
        std::ostringstream out;
        write_clustering_csv(net, clustering, out);
        return out.str();
    });
    m.def("clustering_clu", [](const Clustering& clustering) {
        std::ostringstream out;
        write_pajek_clu(clustering, out);
        return out.str();
    });
    m.def("clustering_gml", [](const Network& net, const Clustering& clustering) {
        std::ostringstream out;
        write_gml_clustered(net, clustering, out);
        return out.str();
    });

    py::class_<QuartileTable>(m, "QuartileTable")
        .def(py::init<>())
        .def_static("load_csv",
                    [](const std::string& text) {
                        std::istringstream in(text);
                        return QuartileTable::load_csv(in);
                    })
        .def(
            "add",
            [](QuartileTable& table, const std::string& title, const std::string& quartile,
               std::optional<int> year) {
                auto q = quartile_from_string(quartile);
                if (!q) throw py::value_error("not a quartile: " + quartile);
                table.add(title, *q, year);
            },
            py::arg("source_title"), py::arg("quartile"), py::arg("year") = std::nullopt)
        .def(
            "lookup",
            [](const QuartileTable& table, const std::string& title,
               std::optional<int> year) -> std::optional<std::string> {
                auto q = table.lookup(title, year);
                if (!q) return std::nullopt;
                return std::string(to_string(*q));
            },
            py::arg("source_title"), py::arg("year") = std::nullopt)
        .def("__len__", &QuartileTable::size);

    py::class_<QuartileReport>(m, "QuartileReport")
        .def_property_readonly("counts",
                               [](const QuartileReport& r) {
                                   return std::vector<long long>(r.counts.begin(), r.counts.end());
                               })
        .def_property_readonly("percents",
                               [](const QuartileReport& r) {
                                   return std::vector<double>(r.percents.begin(), r.percents.end());
                               })
        .def_readonly("unmatched", &QuartileReport::unmatched)
        .def_readonly("unmatched_percent", &QuartileReport::unmatched_percent)
        .def_readonly("total", &QuartileReport::total)
        .def("matched", &QuartileReport::matched)
        .def("to_csv",
             [](const QuartileReport& r) {
                 std::ostringstream out;
                 r.write_csv(out);
                 return out.str();
             })
        .def("to_table", [](const QuartileReport& r) {
            std::ostringstream out;
            r.write_table(out);
            return out.str();
        });

    m.def("quartile_distribution", &quartile_distribution, py::arg("corpus"), py::arg("table"));
}
