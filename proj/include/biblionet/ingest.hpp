#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biblionet/record.hpp"

namespace biblionet {

/// Logical field -> CSV header name. Defaults match the standard Scopus
/// export. Map a field to "" to mark the column as absent; every non-empty
/// mapping is required and missing headers raise MissingColumn.
struct ScopusSchema {
    std::string record_id = "EID";
    std::string authors = "Authors";
    std::string author_ids = "Author(s) ID";
    std::string title = "Title";
    std::string year = "Year";
    std::string source_title = "Source title";
    std::string cited_by = "Cited by";
    std::string affiliations = "Affiliations";
    std::string author_affiliations = "Authors with affiliations";
    std::string author_keywords = "Author Keywords";
    std::string index_keywords = "Index Keywords";
    std::string references = "References";
    std::string document_type = "Document Type";
};

enum class ParseMode { lenient, strict };

struct RowIssue {
    std::size_t line = 0;
    std::string what;
};

/// Filled by parse_scopus_csv in lenient mode: skipped rows with reasons.
struct ParseReport {
    std::size_t rows_seen = 0;
    std::vector<RowIssue> skipped;
};

/// Parses one CSV export. Duplicated EIDs survive here; dedup happens at
/// merge_corpora. Lenient mode skips malformed/bad-year rows and records
/// them in `report`; strict mode throws on the first one.
std::vector<PublicationRecord> parse_scopus_csv(std::istream& in, const ScopusSchema& schema = {},
                                                ParseMode mode = ParseMode::lenient,
                                                ParseReport* report = nullptr);

/// Union of already-parsed chunks keyed by record_id. On a duplicate id the
/// record with the larger cited_by wins (later exports are assumed fresher);
/// equal counts keep the first occurrence.
Corpus merge_corpora(const std::vector<std::vector<PublicationRecord>>& parts, std::string tag,
                     std::vector<std::string> provenance = {});

/// Alias -> canonical country name lookup. Matching is case-insensitive
/// after whitespace normalization; each canonical maps to itself.
class CountryAliasTable {
public:
    /// Built-in table covering common Scopus affiliation spellings.
    static CountryAliasTable defaults();

    /// Two-column CSV (alias, canonical); an optional "alias,canonical"
    /// header line is skipped.
    static CountryAliasTable load_csv(std::istream& in);

    void add(std::string_view alias, std::string_view canonical);

    std::optional<std::string> match(std::string_view raw_token) const;

    const std::set<std::string>& canonicals() const { return canonicals_; }
    std::size_t size() const { return alias_to_canonical_.size(); }

private:
    std::map<std::string, std::string> alias_to_canonical_;  // normalized alias -> canonical
    std::set<std::string> canonicals_;
};

/// Affiliation tokens that did not resolve to a country, kept for reporting.
struct UnmatchedAffiliations {
    std::size_t count = 0;
    std::map<std::string, std::size_t> tokens;
};

/// Countries of a record: the last comma-separated token of each affiliation
/// string, resolved through the alias table. Unmatched tokens are counted,
/// never dropped silently.
std::set<std::string> extract_countries(const PublicationRecord& record, const CountryAliasTable& aliases,
                                        UnmatchedAffiliations* unmatched = nullptr);

/// Canonical keyword list: lower-cased, whitespace-collapsed, deduplicated,
/// first-occurrence order. Index keywords join in only on request.
std::vector<std::string> normalize_keywords(const PublicationRecord& record, bool include_index = false);

/// Normalized reference keys (see text::normalize_reference_key); duplicates
/// within the record collapse to one, first-occurrence order.
std::vector<std::string> reference_keys(const PublicationRecord& record);

/// Corpus file: one JSON object per line, UTF-8. The first line carries the
/// corpus tag and provenance, every following line is one record.
void write_corpus(const Corpus& corpus, std::ostream& out);
Corpus read_corpus(std::istream& in);

}  // namespace biblionet
