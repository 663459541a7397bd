// biblionet: bibliometric network toolkit over Scopus-style CSV exports.
//
// Commands compose through files only: ingest -> corpus file, network ->
// graph file, then metrics / cluster / quartiles / report consume those.
// Every file-producing run writes a <output>.manifest.json sidecar with all
// parameters and input content hashes, and reruns are byte-identical.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biblionet/builders.hpp"
#include "biblionet/cluster.hpp"
#include "biblionet/csv.hpp"
#include "biblionet/errors.hpp"
#include "biblionet/ingest.hpp"
#include "biblionet/manifest.hpp"
#include "biblionet/metrics.hpp"
#include "biblionet/netio.hpp"
#include "biblionet/quartile.hpp"
#include "biblionet/text.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// --config support: a flat key=value file where keys equal long flag names;
// command-line flags win over config values
void apply_config_file(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw biblionet::IoFailure("cannot open config file " + path);
    std::map<std::string, std::vector<std::string>> items;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = biblionet::text::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) + " is not key=value");
        std::string key = biblionet::text::trim(trimmed.substr(0, eq));
        std::string value = biblionet::text::trim(trimmed.substr(eq + 1));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                                  (value.front() == '\'' && value.back() == '\'')))
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + " has no key");
        items[key].push_back(value);
    }
    for (const auto& [key, values] : items) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr) throw UsageError("unknown config key \"" + key + "\"");
        if (opt->count() > 0) continue;  // explicit flag overrides config
        for (const std::string& value : values) opt->add_result(value);
        opt->run_callback();
    }
}

void require_given(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

biblionet::NetFormat resolve_format(const std::string& flag, const std::string& path) {
    if (flag.empty()) return biblionet::net_format_for_path(path);
    auto format = biblionet::net_format_from_string(flag);
    if (!format) throw UsageError("unknown format \"" + flag + "\"");
    return *format;
}

// BIBLIONET_THREADS caps the worker count; absent, requests pass through
int worker_cap() {
    if (const char* env = std::getenv("BIBLIONET_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    return 64;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw biblionet::IoFailure("cannot open " + path);
    return in;
}

biblionet::CountryAliasTable load_aliases(const std::string& path) {
    if (path.empty()) return biblionet::CountryAliasTable::defaults();
    std::ifstream in = open_input(path);
    return biblionet::CountryAliasTable::load_csv(in);
}

biblionet::Corpus load_corpus(const std::string& path) {
    std::ifstream in = open_input(path);
    return biblionet::read_corpus(in);
}

biblionet::NetFormat resolve_format(const std::string& flag, const std::string& path);

biblionet::Network load_network(const std::string& path, const std::string& format_flag) {
    std::ifstream in = open_input(path);
    return biblionet::read_network(in, resolve_format(format_flag, path));
}

void emit(const std::string& out_path, const std::string& content, biblionet::RunManifest manifest) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    biblionet::atomic_write_file(out_path, content);
    manifest.outputs.push_back(out_path);
    manifest.write_beside(out_path);
}

void add_input_hashes(biblionet::RunManifest& manifest, const std::vector<std::string>& paths) {
    for (const std::string& path : paths) manifest.inputs.emplace_back(path, biblionet::hash_file(path));
}

// --- ingest ---

struct IngestArgs {
    std::vector<std::string> inputs;
    std::string tag;
    std::string out;
    std::string config;
    bool strict = false;
    int year_from = 0;
    int year_to = 0;
};

int run_ingest(const IngestArgs& args) {
    if (args.inputs.empty()) throw UsageError("--in is required");
    require_given(args.tag, "--tag");
    std::vector<std::vector<biblionet::PublicationRecord>> parts;
    biblionet::ParseReport report;
    for (const std::string& path : args.inputs) {
        std::ifstream in = open_input(path);
        parts.push_back(biblionet::parse_scopus_csv(
            in, {}, args.strict ? biblionet::ParseMode::strict : biblionet::ParseMode::lenient,
            &report));
    }
    if (args.year_from > 0 || args.year_to > 0) {
        const int lo = args.year_from > 0 ? args.year_from : 0;
        const int hi = args.year_to > 0 ? args.year_to : 9999;
        for (auto& part : parts) {
            std::erase_if(part, [&](const biblionet::PublicationRecord& rec) {
                return !rec.year || *rec.year < lo || *rec.year > hi;
            });
        }
    }
    biblionet::Corpus corpus = biblionet::merge_corpora(parts, args.tag, args.inputs);

    for (const auto& issue : report.skipped)
        std::cerr << "skipped row at line " << issue.line << ": " << issue.what << "\n";

    std::ostringstream content;
    biblionet::write_corpus(corpus, content);

    biblionet::RunManifest manifest;
    manifest.command = "ingest";
    manifest.parameters["tag"] = args.tag;
    manifest.parameters["strict"] = args.strict ? "true" : "false";
    manifest.parameters["year-from"] = std::to_string(args.year_from);
    manifest.parameters["year-to"] = std::to_string(args.year_to);
    add_input_hashes(manifest, args.inputs);
    emit(args.out, content.str(), std::move(manifest));

    std::cerr << "ingested " << corpus.size() << " records from " << args.inputs.size()
              << " file(s), skipped " << report.skipped.size() << " row(s)\n";
    return kExitOk;
}

// --- network ---

struct NetworkArgs {
    std::string corpus;
    std::string kind;
    std::string unit;
    std::string out;
    std::string format;
    std::string aliases;
    std::string config;
    int min_docs = -1;  // -1: kind default
    int min_occurrences = -1;
    bool include_index_keywords = false;
    bool normalize = false;
    int workers = 1;
};

int run_network(const NetworkArgs& args) {
    require_given(args.corpus, "--corpus");
    require_given(args.kind, "--kind");
    auto kind = biblionet::network_kind_from_string(args.kind);
    if (!kind) throw UsageError("unknown network kind \"" + args.kind + "\"");
    biblionet::BuildSpec spec = biblionet::BuildSpec::make(*kind);
    if (!args.unit.empty()) {
        auto unit = biblionet::unit_from_string(args.unit);
        if (!unit) throw UsageError("unknown unit \"" + args.unit + "\"");
        spec.unit = *unit;
    }
    if (args.min_docs >= 0) spec.min_documents = args.min_docs;
    if (args.min_occurrences >= 0) spec.min_occurrences = args.min_occurrences;
    spec.include_index_keywords = args.include_index_keywords;
    spec.workers = std::min(std::max(args.workers, 1), worker_cap());
    spec.validate();

    const biblionet::Corpus corpus = load_corpus(args.corpus);
    const biblionet::CountryAliasTable aliases = load_aliases(args.aliases);
    biblionet::BuildDiagnostics diag;
    biblionet::Network net = biblionet::build_network(corpus, spec, aliases, &diag);
    if (args.normalize) net = biblionet::normalize_association(net);

    const biblionet::NetFormat format = resolve_format(args.format, args.out);
    std::ostringstream content;
    biblionet::write_network(net, format, content);

    biblionet::RunManifest manifest;
    manifest.command = "network";
    manifest.parameters["kind"] = std::string(biblionet::to_string(spec.kind));
    manifest.parameters["unit"] = std::string(biblionet::to_string(spec.unit));
    manifest.parameters["min-docs"] = std::to_string(spec.min_documents);
    manifest.parameters["min-occurrences"] = std::to_string(spec.min_occurrences);
    manifest.parameters["include-index-keywords"] = spec.include_index_keywords ? "true" : "false";
    manifest.parameters["normalize"] = args.normalize ? "true" : "false";
    manifest.parameters["format"] = std::string(biblionet::to_string(format));
    std::vector<std::string> inputs{args.corpus};
    if (!args.aliases.empty()) inputs.push_back(args.aliases);
    add_input_hashes(manifest, inputs);
    emit(args.out, content.str(), std::move(manifest));

    std::cerr << "built " << biblionet::to_string(spec.kind) << ": " << net.node_count()
              << " nodes, " << net.edge_count() << " edges";
    if (diag.matched_references + diag.unmatched_references > 0)
        std::cerr << "; matched references " << diag.matched_references << "/"
                  << (diag.matched_references + diag.unmatched_references);
    if (diag.unmatched_affiliations.count > 0)
        std::cerr << "; unmatched affiliations " << diag.unmatched_affiliations.count;
    std::cerr << "\n";
    return kExitOk;
}

// --- metrics ---

struct MetricsArgs {
    std::string net;
    std::string corpus;
    std::string format;
    std::string out;
    std::string config;
    int table = 0;  // > 0: ranked text table with this many rows
};

int run_metrics(const MetricsArgs& args) {
    if (args.net.empty() == args.corpus.empty())
        throw UsageError("metrics needs exactly one of --net or --corpus");
    std::ostringstream content;
    biblionet::RunManifest manifest;
    manifest.command = "metrics";
    if (!args.net.empty()) {
        const biblionet::Network net = load_network(args.net, args.format);
        const biblionet::MetricReport report = biblionet::MetricReport::compute(net);
        if (args.table > 0)
            report.write_table(content, args.table);
        else
            report.write_csv(content);
        add_input_hashes(manifest, {args.net});
    } else {
        const biblionet::Corpus corpus = load_corpus(args.corpus);
        content << "source,documents,citations,more_cited_than_documents\n";
        for (const auto& row : biblionet::source_summary(corpus)) {
            content << biblionet::csv::escape(row.source_title) << ',' << row.document_count << ','
                    << row.citation_count << ',' << (row.more_cited_than_documents ? 1 : 0) << '\n';
        }
        add_input_hashes(manifest, {args.corpus});
    }
    emit(args.out, content.str(), std::move(manifest));
    return kExitOk;
}

// --- cluster ---

struct ClusterArgs {
    std::string net;
    std::string format;
    std::string out;
    std::string clu;
    std::string gml;
    std::string config;
    bool normalize = false;
    double resolution = 1.0;
    std::uint64_t seed = 42;
    int restarts = 32;
    int min_cluster_size = 1;
};

int run_cluster(const ClusterArgs& args) {
    require_given(args.net, "--net");
    biblionet::Network net = load_network(args.net, args.format);
    if (args.normalize) net = biblionet::normalize_association(net);
    if (!biblionet::is_normalized(net))
        std::cerr << "warning: clustering raw counts; pass --normalize for "
                     "association-strength weights\n";
    const biblionet::Clustering clustering = biblionet::cluster_network(
        net, args.resolution, args.seed, args.restarts, args.min_cluster_size);

    biblionet::RunManifest manifest;
    manifest.command = "cluster";
    manifest.parameters["normalize"] = args.normalize ? "true" : "false";
    manifest.parameters["resolution"] = biblionet::format_weight(args.resolution);
    manifest.parameters["seed"] = std::to_string(args.seed);
    manifest.parameters["restarts"] = std::to_string(args.restarts);
    manifest.parameters["min-cluster-size"] = std::to_string(args.min_cluster_size);
    add_input_hashes(manifest, {args.net});

    std::ostringstream content;
    biblionet::write_clustering_csv(net, clustering, content);
    if (!args.clu.empty()) {
        std::ostringstream clu;
        biblionet::write_pajek_clu(clustering, clu);
        biblionet::atomic_write_file(args.clu, clu.str());
        manifest.outputs.push_back(args.clu);
    }
    if (!args.gml.empty()) {
        std::ostringstream gml;
        biblionet::write_gml_clustered(net, clustering, gml);
        biblionet::atomic_write_file(args.gml, gml.str());
        manifest.outputs.push_back(args.gml);
    }
    emit(args.out, content.str(), std::move(manifest));

    std::cerr << "clusters " << clustering.cluster_count() << ", resolution "
              << biblionet::format_weight(clustering.resolution) << ", quality "
              << biblionet::format_weight(clustering.quality) << ", passes "
              << clustering.iterations_run << "\n";
    return kExitOk;
}

// --- quartiles ---

struct QuartilesArgs {
    std::string corpus;
    std::string table;
    std::string out;
    std::string config;
    bool text = false;
};

int run_quartiles(const QuartilesArgs& args) {
    require_given(args.corpus, "--corpus");
    require_given(args.table, "--table");
    const biblionet::Corpus corpus = load_corpus(args.corpus);
    std::ifstream table_in = open_input(args.table);
    const biblionet::QuartileTable table = biblionet::QuartileTable::load_csv(table_in);
    const biblionet::QuartileReport report = biblionet::quartile_distribution(corpus, table);

    std::ostringstream content;
    if (args.text || args.out.empty())
        report.write_table(content);
    else
        report.write_csv(content);

    biblionet::RunManifest manifest;
    manifest.command = "quartiles";
    manifest.parameters["text"] = args.text ? "true" : "false";
    add_input_hashes(manifest, {args.corpus, args.table});
    emit(args.out, content.str(), std::move(manifest));
    return kExitOk;
}

// --- report ---

struct ReportArgs {
    std::string net;
    std::string format;
    std::string focus;
    std::string out;
    std::string config;
    int top = 10;
};

int run_report(const ReportArgs& args) {
    require_given(args.net, "--net");
    require_given(args.focus, "--focus");
    const biblionet::Network net = load_network(args.net, args.format);
    const auto ranked = biblionet::top_link_strength(net, args.focus, args.top);

    std::size_t width = std::string("Label").size();
    for (const auto& row : ranked) width = std::max(width, row.label.size());
    std::ostringstream content;
    content << "Label" << std::string(width - 5 + 2, ' ') << "Link Strength\n";
    for (const auto& row : ranked) {
        content << row.label << std::string(width - row.label.size() + 2, ' ')
                << biblionet::format_weight(row.weight) << '\n';
    }

    biblionet::RunManifest manifest;
    manifest.command = "report";
    manifest.parameters["focus"] = args.focus;
    manifest.parameters["top"] = std::to_string(args.top);
    add_input_hashes(manifest, {args.net});
    emit(args.out, content.str(), std::move(manifest));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bibliometric network toolkit for Scopus-style exports"};
    app.require_subcommand(1);

    const char* config_help = "Key-value config file; keys equal long flag names, flags override";

    IngestArgs ingest;
    CLI::App* ingest_cmd = app.add_subcommand("ingest", "Parse and merge CSV exports into a corpus");
    ingest_cmd->add_option("--in", ingest.inputs, "Input CSV file (repeatable)");
    ingest_cmd->add_option("--tag", ingest.tag, "Corpus tag, e.g. the country of study");
    ingest_cmd->add_option("--out", ingest.out, "Corpus output file");
    ingest_cmd->add_flag("--strict", ingest.strict, "Fail on the first malformed row");
    ingest_cmd->add_option("--year-from", ingest.year_from, "Keep records from this year on");
    ingest_cmd->add_option("--year-to", ingest.year_to, "Keep records up to this year");
    ingest_cmd->add_option("--config", ingest.config, config_help);

    NetworkArgs network;
    CLI::App* network_cmd = app.add_subcommand("network", "Build a network from a corpus");
    network_cmd->add_option("--corpus", network.corpus, "Corpus file");
    network_cmd->add_option("--kind", network.kind,
                            "coauthorship-country | citation-country | source-citation | "
                            "coupling | cocitation | keyword-cooccurrence");
    network_cmd->add_option("--unit", network.unit, "Node granularity override");
    network_cmd->add_option("--out", network.out, "Network output file");
    network_cmd->add_option("--format", network.format, "edge-tsv | pajek | gml");
    network_cmd->add_option("--aliases", network.aliases, "Country alias table CSV");
    network_cmd->add_option("--min-docs", network.min_docs, "Documents per node threshold");
    network_cmd->add_option("--min-occurrences", network.min_occurrences,
                            "Occurrences per keyword/reference threshold");
    network_cmd->add_flag("--include-index-keywords", network.include_index_keywords,
                          "Use index keywords too, not only author keywords");
    network_cmd->add_flag("--normalize", network.normalize,
                          "Replace weights by association strength");
    network_cmd->add_option("--workers", network.workers, "Worker threads (BIBLIONET_THREADS caps)");
    network_cmd->add_option("--config", network.config, config_help);

    MetricsArgs metrics;
    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "Per-node metric table or per-source summary");
    metrics_cmd->add_option("--net", metrics.net, "Network file");
    metrics_cmd->add_option("--corpus", metrics.corpus, "Corpus file (source summary)");
    metrics_cmd->add_option("--format", metrics.format, "Network file format");
    metrics_cmd->add_option("--out", metrics.out, "Output CSV");
    metrics_cmd->add_option("--table", metrics.table,
                            "Ranked link-strength text table with this many rows instead of CSV");
    metrics_cmd->add_option("--config", metrics.config, config_help);

    ClusterArgs cluster;
    CLI::App* cluster_cmd = app.add_subcommand("cluster", "Cluster a network");
    cluster_cmd->add_option("--net", cluster.net, "Network file");
    cluster_cmd->add_option("--format", cluster.format, "Network file format");
    cluster_cmd->add_flag("--normalize", cluster.normalize,
                          "Normalize weights before clustering");
    cluster_cmd->add_option("--resolution", cluster.resolution, "Resolution parameter > 0");
    cluster_cmd->add_option("--seed", cluster.seed, "Random seed");
    cluster_cmd->add_option("--restarts", cluster.restarts, "Independent runs, best kept");
    cluster_cmd->add_option("--min-cluster-size", cluster.min_cluster_size,
                            "Merge clusters below this size");
    cluster_cmd->add_option("--out", cluster.out, "Clustering CSV output");
    cluster_cmd->add_option("--clu", cluster.clu, "Pajek partition output");
    cluster_cmd->add_option("--gml", cluster.gml, "GML output with a cluster attribute per node");
    cluster_cmd->add_option("--config", cluster.config, config_help);

    QuartilesArgs quartiles;
    CLI::App* quartiles_cmd = app.add_subcommand("quartiles", "SJR quartile distribution");
    quartiles_cmd->add_option("--corpus", quartiles.corpus, "Corpus file");
    quartiles_cmd->add_option("--table", quartiles.table, "Quartile table CSV");
    quartiles_cmd->add_option("--out", quartiles.out, "Report output");
    quartiles_cmd->add_flag("--text", quartiles.text, "Aligned text table instead of CSV");
    quartiles_cmd->add_option("--config", quartiles.config, config_help);

    ReportArgs report;
    CLI::App* report_cmd = app.add_subcommand("report", "Ranked link strength table for a node");
    report_cmd->add_option("--net", report.net, "Network file");
    report_cmd->add_option("--focus", report.focus, "Node label to rank around");
    report_cmd->add_option("--top", report.top, "Rows to keep");
    report_cmd->add_option("--format", report.format, "Network file format");
    report_cmd->add_option("--out", report.out, "Write the table here instead of stdout");
    report_cmd->add_option("--config", report.config, config_help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (ingest_cmd->parsed()) {
            apply_config_file(ingest_cmd, ingest.config);
            return run_ingest(ingest);
        }
        if (network_cmd->parsed()) {
            apply_config_file(network_cmd, network.config);
            return run_network(network);
        }
        if (metrics_cmd->parsed()) {
            apply_config_file(metrics_cmd, metrics.config);
            return run_metrics(metrics);
        }
        if (cluster_cmd->parsed()) {
            apply_config_file(cluster_cmd, cluster.config);
            return run_cluster(cluster);
        }
        if (quartiles_cmd->parsed()) {
            apply_config_file(quartiles_cmd, quartiles.config);
            return run_quartiles(quartiles);
        }
        if (report_cmd->parsed()) {
            apply_config_file(report_cmd, report.config);
            return run_report(report);
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const biblionet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
