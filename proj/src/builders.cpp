#include "biblionet/builders.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <thread>
#include <unordered_map>

#include "biblionet/errors.hpp"
#include "biblionet/text.hpp"

namespace biblionet {

std::optional<NetworkKind> network_kind_from_string(std::string_view name) {
    if (name == "coauthorship-country") return NetworkKind::coauthorship_country;
    if (name == "citation-country") return NetworkKind::citation_country;
    if (name == "source-citation") return NetworkKind::source_citation;
    if (name == "coupling") return NetworkKind::coupling;
    if (name == "cocitation") return NetworkKind::cocitation;
    if (name == "keyword-cooccurrence") return NetworkKind::keyword_cooccurrence;
    return std::nullopt;
}

std::string_view to_string(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::coauthorship_country: return "coauthorship-country";
        case NetworkKind::citation_country: return "citation-country";
        case NetworkKind::source_citation: return "source-citation";
        case NetworkKind::coupling: return "coupling";
        case NetworkKind::cocitation: return "cocitation";
        case NetworkKind::keyword_cooccurrence: return "keyword-cooccurrence";
    }
    return "coauthorship-country";
}

std::optional<Unit> unit_from_string(std::string_view name) {
    if (name == "country") return Unit::country;
    if (name == "source") return Unit::source;
    if (name == "document") return Unit::document;
    if (name == "keyword") return Unit::keyword;
    if (name == "reference") return Unit::reference;
    return std::nullopt;
}

std::string_view to_string(Unit unit) {
    switch (unit) {
        case Unit::country: return "country";
        case Unit::source: return "source";
        case Unit::document: return "document";
        case Unit::keyword: return "keyword";
        case Unit::reference: return "reference";
    }
    return "country";
}

BuildSpec BuildSpec::make(NetworkKind kind) {
    BuildSpec spec;
    spec.kind = kind;
    switch (kind) {
        case NetworkKind::coauthorship_country:
        case NetworkKind::citation_country: spec.unit = Unit::country; break;
        case NetworkKind::source_citation:
            spec.unit = Unit::source;
            spec.min_documents = 20;  // the benchmark threshold
            break;
        case NetworkKind::coupling: spec.unit = Unit::document; break;
        case NetworkKind::cocitation: spec.unit = Unit::reference; break;
        case NetworkKind::keyword_cooccurrence: spec.unit = Unit::keyword; break;
    }
    return spec;
}

void BuildSpec::validate() const {
    if (min_documents < 1) throw BadSpec("min_documents must be >= 1");
    if (min_occurrences < 1) throw BadSpec("min_occurrences must be >= 1");
    if (workers < 1) throw BadSpec("workers must be >= 1");
    auto legal = [&]() -> bool {
        switch (kind) {
            case NetworkKind::coauthorship_country:
            case NetworkKind::citation_country: return unit == Unit::country;
            case NetworkKind::source_citation: return unit == Unit::source;
            case NetworkKind::coupling: return unit == Unit::document || unit == Unit::country;
            case NetworkKind::cocitation: return unit == Unit::reference;
            case NetworkKind::keyword_cooccurrence: return unit == Unit::keyword;
        }
        return false;
    };
    if (!legal())
        throw BadSpec(std::string("unit \"") + std::string(to_string(unit)) +
                      "\" is illegal for kind \"" + std::string(to_string(kind)) + "\"");
    if (kind == NetworkKind::coupling && unit == Unit::document && min_documents != 1)
        throw BadSpec("min_documents applies to coupling at country unit only");
}

namespace {

using EdgeAcc = std::unordered_map<std::uint64_t, double>;

std::uint64_t pair_key(int i, int j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
}

struct Partial {
    EdgeAcc acc;
    std::size_t matched = 0;
    std::size_t unmatched = 0;
};

/// Runs per_item over [0, items) split across workers; partial edge maps are
/// merged by weight addition, so the result is partition-independent.
template <typename Fn>
Partial run_partitioned(std::size_t items, int workers, Fn&& per_item) {
    workers = std::clamp(workers, 1, 64);
    if (workers == 1 || items < static_cast<std::size_t>(workers) * 2) {
        Partial all;
        for (std::size_t i = 0; i < items; ++i) per_item(i, all);
        return all;
    }
    std::vector<Partial> parts(static_cast<std::size_t>(workers));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    const std::size_t chunk = (items + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(items, lo + chunk);
        threads.emplace_back([&, lo, hi, w]() {
            Partial& mine = parts[static_cast<std::size_t>(w)];
            for (std::size_t i = lo; i < hi; ++i) per_item(i, mine);
        });
        if (lo >= hi) break;
    }
    for (auto& t : threads) t.join();
    Partial all;
    for (const Partial& p : parts) {
        for (const auto& [key, w] : p.acc) all.acc[key] += w;
        all.matched += p.matched;
        all.unmatched += p.unmatched;
    }
    return all;
}

std::vector<const PublicationRecord*> record_view(const Corpus& corpus) {
    if (corpus.records.empty()) throw EmptyCorpus();
    std::vector<const PublicationRecord*> view;
    view.reserve(corpus.records.size());
    for (const auto& [id, rec] : corpus.records) view.push_back(&rec);
    return view;
}

/// Country-id sets per record plus the node table for qualified countries.
struct CountryLayout {
    std::vector<std::vector<int>> record_countries;  // qualified country ids, sorted
    std::vector<std::string> labels;                 // node id -> label
};

CountryLayout country_layout(const std::vector<const PublicationRecord*>& records,
                             const CountryAliasTable& aliases, int min_documents,
                             BuildDiagnostics* diag) {
    std::vector<std::set<std::string>> raw(records.size());
    std::map<std::string, int> document_counts;
    UnmatchedAffiliations unmatched;
    for (std::size_t r = 0; r < records.size(); ++r) {
        raw[r] = extract_countries(*records[r], aliases, diag ? &unmatched : nullptr);
        for (const std::string& c : raw[r]) ++document_counts[c];
    }
    if (diag) diag->unmatched_affiliations = std::move(unmatched);

    CountryLayout layout;
    std::map<std::string, int> ids;
    for (const auto& [country, count] : document_counts) {
        if (count >= min_documents) {
            ids.emplace(country, static_cast<int>(layout.labels.size()));
            layout.labels.push_back(country);
        }
    }
    layout.record_countries.resize(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        for (const std::string& c : raw[r]) {
            auto it = ids.find(c);
            if (it != ids.end()) layout.record_countries[r].push_back(it->second);
        }
        std::sort(layout.record_countries[r].begin(), layout.record_countries[r].end());
    }
    return layout;
}

Network assemble(const std::vector<std::string>& labels, NodeKind kind, const EdgeAcc& acc) {
    Network net;
    for (const std::string& label : labels) net.ensure_node(label, kind);
    std::vector<std::pair<std::uint64_t, double>> sorted(acc.begin(), acc.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [key, w] : sorted)
        net.add_edge(static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFu), w);
    return net;
}

/// Title-key index for in-corpus citation matching: a reference matches a
/// record when their normalized keys are equal.
std::unordered_map<std::string, std::vector<std::size_t>> title_index(
    const std::vector<const PublicationRecord*>& records) {
    std::unordered_map<std::string, std::vector<std::size_t>> index;
    for (std::size_t r = 0; r < records.size(); ++r) {
        std::string key = text::normalize_reference_key(records[r]->title);
        if (!key.empty()) index[key].push_back(r);
    }
    return index;
}

/// Records cited by record r (deduplicated, r itself excluded), with
/// matched/unmatched reference tallies.
std::vector<std::size_t> matched_targets(
    const std::vector<const PublicationRecord*>& records, std::size_t r,
    const std::unordered_map<std::string, std::vector<std::size_t>>& index, Partial& state) {
    std::set<std::size_t> targets;
    for (const std::string& key : reference_keys(*records[r])) {
        auto it = index.find(key);
        bool hit = false;
        if (it != index.end()) {
            for (std::size_t s : it->second) {
                if (s != r) {
                    targets.insert(s);
                    hit = true;
                }
            }
        }
        hit ? ++state.matched : ++state.unmatched;
    }
    return {targets.begin(), targets.end()};
}

/// Distinct unordered pairs {a, b}, a != b, drawn from citing x citedid sets;
/// each gains `w`.
void add_cross_pairs(const std::vector<int>& citing, const std::vector<int>& cited, double w,
                     EdgeAcc& acc) {
    std::set<std::uint64_t> keys;
    for (int a : citing) {
        for (int b : cited) {
            if (a != b) keys.insert(pair_key(a, b));
        }
    }
    for (std::uint64_t key : keys) acc[key] += w;
}

void check_kind(const BuildSpec& spec, NetworkKind expected) {
    spec.validate();
    if (spec.kind != expected)
        throw BadSpec(std::string("expected kind \"") + std::string(to_string(expected)) +
                      "\", got \"" + std::string(to_string(spec.kind)) + "\"");
}

}  // namespace

Network build_coauthorship(const Corpus& corpus, const BuildSpec& spec,
                           const CountryAliasTable& aliases, BuildDiagnostics* diag) {
    check_kind(spec, NetworkKind::coauthorship_country);
    const auto records = record_view(corpus);
    const CountryLayout layout = country_layout(records, aliases, spec.min_documents, diag);

    Partial result = run_partitioned(records.size(), spec.workers, [&](std::size_t r, Partial& state) {
        const std::vector<int>& countries = layout.record_countries[r];
        for (std::size_t a = 0; a < countries.size(); ++a) {
            for (std::size_t b = a + 1; b < countries.size(); ++b)
                state.acc[pair_key(countries[a], countries[b])] += 1.0;
        }
    });
    return assemble(layout.labels, NodeKind::country, result.acc);
}

Network build_citation_country(const Corpus& corpus, const BuildSpec& spec,
                               const CountryAliasTable& aliases, BuildDiagnostics* diag) {
    check_kind(spec, NetworkKind::citation_country);
    const auto records = record_view(corpus);
    const CountryLayout layout = country_layout(records, aliases, spec.min_documents, diag);
    const auto index = title_index(records);

    Partial result = run_partitioned(records.size(), spec.workers, [&](std::size_t r, Partial& state) {
        for (std::size_t s : matched_targets(records, r, index, state))
            add_cross_pairs(layout.record_countries[r], layout.record_countries[s], 1.0, state.acc);
    });
    if (diag) {
        diag->matched_references = result.matched;
        diag->unmatched_references = result.unmatched;
    }
    return assemble(layout.labels, NodeKind::country, result.acc);
}

Network build_source_citation(const Corpus& corpus, const BuildSpec& spec, BuildDiagnostics* diag) {
    check_kind(spec, NetworkKind::source_citation);
    const auto records = record_view(corpus);

    std::map<std::string, int> document_counts;
    for (const PublicationRecord* rec : records) {
        if (!rec->source_title.empty()) ++document_counts[rec->source_title];
    }
    std::vector<std::string> labels;
    std::map<std::string, int> ids;
    for (const auto& [source, count] : document_counts) {
        if (count >= spec.min_documents) {
            ids.emplace(source, static_cast<int>(labels.size()));
            labels.push_back(source);
        }
    }
    std::vector<int> record_source(records.size(), -1);  // -1: source not qualified
    for (std::size_t r = 0; r < records.size(); ++r) {
        auto it = ids.find(records[r]->source_title);
        if (it != ids.end()) record_source[r] = it->second;
    }

    const auto index = title_index(records);
    Partial result = run_partitioned(records.size(), spec.workers, [&](std::size_t r, Partial& state) {
        if (record_source[r] < 0) return;
        for (std::size_t s : matched_targets(records, r, index, state)) {
            if (record_source[s] >= 0 && record_source[s] != record_source[r])
                state.acc[pair_key(record_source[r], record_source[s])] += 1.0;
        }
    });
    if (diag) {
        diag->matched_references = result.matched;
        diag->unmatched_references = result.unmatched;
    }
    // isolated qualified sources stay as degree-0 nodes
    return assemble(labels, NodeKind::source, result.acc);
}

namespace {

/// Shared-reference counts per document pair via an inverted index over
/// reference keys; the count equals the shared-reference-set size.
EdgeAcc document_coupling(const std::vector<const PublicationRecord*>& records, int workers) {
    std::unordered_map<std::string, int> key_ids;
    std::vector<std::vector<std::size_t>> postings;
    for (std::size_t r = 0; r < records.size(); ++r) {
        for (const std::string& key : reference_keys(*records[r])) {
            auto [it, inserted] = key_ids.emplace(key, static_cast<int>(postings.size()));
            if (inserted) postings.emplace_back();
            postings[static_cast<std::size_t>(it->second)].push_back(r);
        }
    }
    Partial result = run_partitioned(postings.size(), workers, [&](std::size_t k, Partial& state) {
        const std::vector<std::size_t>& docs = postings[k];
        for (std::size_t a = 0; a < docs.size(); ++a) {
            for (std::size_t b = a + 1; b < docs.size(); ++b)
                state.acc[pair_key(static_cast<int>(docs[a]), static_cast<int>(docs[b]))] += 1.0;
        }
    });
    return std::move(result.acc);
}

}  // namespace

Network build_coupling(const Corpus& corpus, const BuildSpec& spec, const CountryAliasTable& aliases,
                       BuildDiagnostics* diag) {
    check_kind(spec, NetworkKind::coupling);
    const auto records = record_view(corpus);
    EdgeAcc doc_pairs = document_coupling(records, spec.workers);

    if (spec.unit == Unit::document) {
        std::vector<std::string> labels;
        labels.reserve(records.size());
        for (const PublicationRecord* rec : records) labels.push_back(rec->record_id);
        return assemble(labels, NodeKind::document, doc_pairs);
    }

    const CountryLayout layout = country_layout(records, aliases, spec.min_documents, diag);
    EdgeAcc acc;
    for (const auto& [key, shared] : doc_pairs) {
        const auto y = static_cast<std::size_t>(key >> 32);
        const auto z = static_cast<std::size_t>(key & 0xFFFFFFFFu);
        add_cross_pairs(layout.record_countries[y], layout.record_countries[z], shared, acc);
    }
    return assemble(layout.labels, NodeKind::country, acc);
}

Network build_cocitation(const Corpus& corpus, const BuildSpec& spec, BuildDiagnostics* diag) {
    (void)diag;
    check_kind(spec, NetworkKind::cocitation);
    const auto records = record_view(corpus);

    std::vector<std::vector<std::string>> keys(records.size());
    std::map<std::string, int> citation_counts;
    for (std::size_t r = 0; r < records.size(); ++r) {
        keys[r] = reference_keys(*records[r]);
        for (const std::string& key : keys[r]) ++citation_counts[key];
    }
    std::vector<std::string> labels;
    std::map<std::string, int> ids;
    for (const auto& [key, count] : citation_counts) {
        if (count >= spec.min_occurrences) {
            ids.emplace(key, static_cast<int>(labels.size()));
            labels.push_back(key);
        }
    }
    std::vector<std::vector<int>> qualified(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        for (const std::string& key : keys[r]) {
            auto it = ids.find(key);
            if (it != ids.end()) qualified[r].push_back(it->second);
        }
        std::sort(qualified[r].begin(), qualified[r].end());
    }

    Partial result = run_partitioned(records.size(), spec.workers, [&](std::size_t r, Partial& state) {
        const std::vector<int>& refs = qualified[r];
        for (std::size_t a = 0; a < refs.size(); ++a) {
            for (std::size_t b = a + 1; b < refs.size(); ++b)
                state.acc[pair_key(refs[a], refs[b])] += 1.0;
        }
    });
    Network net = assemble(labels, NodeKind::reference, result.acc);
    for (const auto& [key, id] : ids)
        net.node(id).attributes["citations"] = std::to_string(citation_counts.at(key));
    return net;
}

Network build_keyword_cooccurrence(const Corpus& corpus, const BuildSpec& spec,
                                   BuildDiagnostics* diag) {
    (void)diag;
    check_kind(spec, NetworkKind::keyword_cooccurrence);
    const auto records = record_view(corpus);

    std::vector<std::vector<std::string>> keywords(records.size());
    std::map<std::string, int> occurrence_counts;
    for (std::size_t r = 0; r < records.size(); ++r) {
        keywords[r] = normalize_keywords(*records[r], spec.include_index_keywords);
        for (const std::string& kw : keywords[r]) ++occurrence_counts[kw];
    }
    std::vector<std::string> labels;
    std::map<std::string, int> ids;
    for (const auto& [kw, count] : occurrence_counts) {
        if (count >= spec.min_occurrences) {
            ids.emplace(kw, static_cast<int>(labels.size()));
            labels.push_back(kw);
        }
    }
    std::vector<std::vector<int>> qualified(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        for (const std::string& kw : keywords[r]) {
            auto it = ids.find(kw);
            if (it != ids.end()) qualified[r].push_back(it->second);
        }
        std::sort(qualified[r].begin(), qualified[r].end());
    }

    Partial result = run_partitioned(records.size(), spec.workers, [&](std::size_t r, Partial& state) {
        const std::vector<int>& kws = qualified[r];
        for (std::size_t a = 0; a < kws.size(); ++a) {
            for (std::size_t b = a + 1; b < kws.size(); ++b)
                state.acc[pair_key(kws[a], kws[b])] += 1.0;
        }
    });
    Network net = assemble(labels, NodeKind::keyword, result.acc);
    for (const auto& [kw, id] : ids)
        net.node(id).attributes["occurrences"] = std::to_string(occurrence_counts.at(kw));
    return net;
}

Network build_network(const Corpus& corpus, const BuildSpec& spec, const CountryAliasTable& aliases,
                      BuildDiagnostics* diag) {
    switch (spec.kind) {
        case NetworkKind::coauthorship_country: return build_coauthorship(corpus, spec, aliases, diag);
        case NetworkKind::citation_country: return build_citation_country(corpus, spec, aliases, diag);
        case NetworkKind::source_citation: return build_source_citation(corpus, spec, diag);
        case NetworkKind::coupling: return build_coupling(corpus, spec, aliases, diag);
        case NetworkKind::cocitation: return build_cocitation(corpus, spec, diag);
        case NetworkKind::keyword_cooccurrence: return build_keyword_cooccurrence(corpus, spec, diag);
    }
    throw BadSpec("unknown network kind");
}

}  // namespace biblionet
