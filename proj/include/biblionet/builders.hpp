#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "biblionet/ingest.hpp"
#include "biblionet/network.hpp"
#include "biblionet/record.hpp"

namespace biblionet {

enum class NetworkKind {
    coauthorship_country,
    citation_country,
    source_citation,
    coupling,
    cocitation,
    keyword_cooccurrence,
};

std::optional<NetworkKind> network_kind_from_string(std::string_view name);
std::string_view to_string(NetworkKind kind);

enum class Unit { country, source, document, keyword, reference };

std::optional<Unit> unit_from_string(std::string_view name);
std::string_view to_string(Unit unit);

/// What to build and at which granularity. Defaults come from the kind;
/// source-citation starts at min_documents = 20, everything else at 1.
struct BuildSpec {
    NetworkKind kind = NetworkKind::coauthorship_country;
    Unit unit = Unit::country;
    int min_documents = 1;
    int min_occurrences = 1;
    bool include_index_keywords = false;
    int workers = 1;

    static BuildSpec make(NetworkKind kind);

    /// Throws BadSpec when the unit is illegal for the kind or a threshold
    /// is below 1.
    void validate() const;
};

/// Match quality and extraction counters accumulated during a build.
struct BuildDiagnostics {
    std::size_t matched_references = 0;
    std::size_t unmatched_references = 0;
    UnmatchedAffiliations unmatched_affiliations;
};

Network build_coauthorship(const Corpus& corpus, const BuildSpec& spec,
                           const CountryAliasTable& aliases, BuildDiagnostics* diag = nullptr);

Network build_citation_country(const Corpus& corpus, const BuildSpec& spec,
                               const CountryAliasTable& aliases, BuildDiagnostics* diag = nullptr);

Network build_source_citation(const Corpus& corpus, const BuildSpec& spec,
                              BuildDiagnostics* diag = nullptr);

Network build_coupling(const Corpus& corpus, const BuildSpec& spec, const CountryAliasTable& aliases,
                       BuildDiagnostics* diag = nullptr);

Network build_cocitation(const Corpus& corpus, const BuildSpec& spec,
                         BuildDiagnostics* diag = nullptr);

Network build_keyword_cooccurrence(const Corpus& corpus, const BuildSpec& spec,
                                   BuildDiagnostics* diag = nullptr);

/// Dispatch on spec.kind.
Network build_network(const Corpus& corpus, const BuildSpec& spec, const CountryAliasTable& aliases,
                      BuildDiagnostics* diag = nullptr);

}  // namespace biblionet
