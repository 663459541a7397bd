#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace biblionet {

/// One parsed Scopus-style row. Multi-valued cells are already split on ";".
/// Columns the pipeline does not interpret are preserved in `extra`.
struct PublicationRecord {
    std::string record_id;  // EID; non-empty, unique within a corpus
    std::vector<std::string> authors;
    std::vector<std::string> author_ids;
    std::string title;
    std::optional<int> year;  // in [1900, 2100] when present
    std::string source_title;
    long long cited_by = 0;
    std::vector<std::string> affiliations;
    std::vector<std::pair<std::string, std::string>> author_affiliation_pairs;
    std::vector<std::string> author_keywords;
    std::vector<std::string> index_keywords;
    std::vector<std::string> references;
    std::string document_type;
    std::map<std::string, std::string> extra;

    bool operator==(const PublicationRecord&) const = default;
};

/// Deduplicated record set for one country of study. Keyed storage keeps
/// iteration deterministic (record_id order).
struct Corpus {
    std::string tag;
    std::map<std::string, PublicationRecord> records;
    std::vector<std::string> provenance;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }

    bool operator==(const Corpus&) const = default;
};

}  // namespace biblionet
