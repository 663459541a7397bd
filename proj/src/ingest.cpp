#include "biblionet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "biblionet/csv.hpp"
#include "biblionet/errors.hpp"
#include "biblionet/text.hpp"

namespace biblionet {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kYearMin = 1900;
constexpr int kYearMax = 2100;

struct ColumnMap {
    int record_id = -1;
    int authors = -1;
    int author_ids = -1;
    int title = -1;
    int year = -1;
    int source_title = -1;
    int cited_by = -1;
    int affiliations = -1;
    int author_affiliations = -1;
    int author_keywords = -1;
    int index_keywords = -1;
    int references = -1;
    int document_type = -1;
    std::vector<int> extra_columns;  // header indices not claimed by the schema
};

int require_column(const std::vector<std::string>& header, const std::string& name) {
    if (name.empty()) return -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    throw MissingColumn(name);
}

ColumnMap resolve_columns(const std::vector<std::string>& header, const ScopusSchema& schema) {
    ColumnMap map;
    map.record_id = require_column(header, schema.record_id);
    map.authors = require_column(header, schema.authors);
    map.author_ids = require_column(header, schema.author_ids);
    map.title = require_column(header, schema.title);
    map.year = require_column(header, schema.year);
    map.source_title = require_column(header, schema.source_title);
    map.cited_by = require_column(header, schema.cited_by);
    map.affiliations = require_column(header, schema.affiliations);
    map.author_affiliations = require_column(header, schema.author_affiliations);
    map.author_keywords = require_column(header, schema.author_keywords);
    map.index_keywords = require_column(header, schema.index_keywords);
    map.references = require_column(header, schema.references);
    map.document_type = require_column(header, schema.document_type);

    std::set<int> claimed{map.record_id,      map.authors,        map.author_ids,
                          map.title,          map.year,           map.source_title,
                          map.cited_by,       map.affiliations,   map.author_affiliations,
                          map.author_keywords, map.index_keywords, map.references,
                          map.document_type};
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!claimed.count(static_cast<int>(i))) map.extra_columns.push_back(static_cast<int>(i));
    }
    return map;
}

const std::string& cell(const std::vector<std::string>& row, int idx) {
    static const std::string empty;
    return idx < 0 ? empty : row[static_cast<std::size_t>(idx)];
}

std::vector<std::pair<std::string, std::string>> split_author_affiliations(
    const std::string& raw, const std::vector<std::string>& authors) {
    std::vector<std::pair<std::string, std::string>> pairs;
    // prefer the longest author-name prefix; entries look like
    // "Khan A., Information Technology University, Lahore, Pakistan"
    std::vector<std::string> by_length = authors;
    std::sort(by_length.begin(), by_length.end(),
              [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    for (const std::string& entry : text::split_trimmed(raw, ';')) {
        std::string author;
        std::string affiliation;
        for (const std::string& candidate : by_length) {
            if (candidate.empty() || entry.size() <= candidate.size()) continue;
            if (entry.compare(0, candidate.size(), candidate) == 0 && entry[candidate.size()] == ',') {
                author = candidate;
                affiliation = text::trim(entry.substr(candidate.size() + 1));
                break;
            }
        }
        if (author.empty()) {
            std::size_t comma = entry.find(',');
            if (comma == std::string::npos) {
                author = entry;
            } else {
                author = text::trim(entry.substr(0, comma));
                affiliation = text::trim(entry.substr(comma + 1));
            }
        }
        pairs.emplace_back(std::move(author), std::move(affiliation));
    }
    return pairs;
}

bool parse_integer(const std::string& s, long long& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

std::vector<PublicationRecord> parse_scopus_csv(std::istream& in, const ScopusSchema& schema, ParseMode mode,
                                                ParseReport* report) {
    csv::Reader reader(in);
    std::vector<std::string> row;

    csv::Reader::Row status = reader.next(row);
    if (status == csv::Reader::Row::eof) throw MalformedRow(1, "empty input, no header row");
    if (status == csv::Reader::Row::malformed) throw MalformedRow(reader.line(), reader.error());
    const ColumnMap columns = resolve_columns(row, schema);
    const std::vector<std::string> header = row;
    const std::size_t width = header.size();

    std::vector<PublicationRecord> records;
    auto reject = [&](std::size_t line, const std::string& why) {
        if (mode == ParseMode::strict) throw MalformedRow(line, why);
        if (report) report->skipped.push_back({line, why});
    };

    while (true) {
        status = reader.next(row);
        if (status == csv::Reader::Row::eof) break;
        if (status == csv::Reader::Row::malformed) {
            reject(reader.line(), reader.error());
            continue;
        }
        if (report) ++report->rows_seen;
        if (row.size() == 1 && row[0].empty()) continue;  // blank line
        if (row.size() != width) {
            reject(reader.line(), "expected " + std::to_string(width) + " fields, got " +
                                      std::to_string(row.size()));
            continue;
        }

        PublicationRecord rec;
        rec.record_id = text::trim(cell(row, columns.record_id));
        if (rec.record_id.empty()) {
            reject(reader.line(), "empty record id");
            continue;
        }

        const std::string year_cell = text::trim(cell(row, columns.year));
        if (!year_cell.empty()) {
            long long y = 0;
            if (!parse_integer(year_cell, y)) {
                if (mode == ParseMode::strict) throw BadYear(reader.line(), year_cell);
                if (report) report->skipped.push_back({reader.line(), "bad year \"" + year_cell + "\""});
                continue;
            }
            if (y < kYearMin || y > kYearMax) {
                reject(reader.line(), "year " + std::to_string(y) + " outside [1900, 2100]");
                continue;
            }
            rec.year = static_cast<int>(y);
        }

        const std::string cited_cell = text::trim(cell(row, columns.cited_by));
        if (!cited_cell.empty()) {
            long long c = 0;
            if (!parse_integer(cited_cell, c) || c < 0) {
                reject(reader.line(), "bad cited-by count \"" + cited_cell + "\"");
                continue;
            }
            rec.cited_by = c;
        }

        rec.authors = text::split_trimmed(cell(row, columns.authors), ';');
        rec.author_ids = text::split_trimmed(cell(row, columns.author_ids), ';');
        rec.title = text::trim(cell(row, columns.title));
        rec.source_title = text::trim(cell(row, columns.source_title));
        rec.affiliations = text::split_trimmed(cell(row, columns.affiliations), ';');
        rec.author_affiliation_pairs =
            split_author_affiliations(cell(row, columns.author_affiliations), rec.authors);
        rec.author_keywords = text::split_trimmed(cell(row, columns.author_keywords), ';');
        rec.index_keywords = text::split_trimmed(cell(row, columns.index_keywords), ';');
        rec.references = text::split_trimmed(cell(row, columns.references), ';');
        rec.document_type = text::trim(cell(row, columns.document_type));
        for (int idx : columns.extra_columns) {
            const std::string& value = row[static_cast<std::size_t>(idx)];
            if (!value.empty()) rec.extra[header[static_cast<std::size_t>(idx)]] = value;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

Corpus merge_corpora(const std::vector<std::vector<PublicationRecord>>& parts, std::string tag,
                     std::vector<std::string> provenance) {
    Corpus corpus;
    corpus.tag = std::move(tag);
    corpus.provenance = std::move(provenance);
    for (const auto& part : parts) {
        for (const auto& rec : part) {
            auto it = corpus.records.find(rec.record_id);
            if (it == corpus.records.end()) {
                corpus.records.emplace(rec.record_id, rec);
            } else if (rec.cited_by > it->second.cited_by) {
                it->second = rec;
            }
        }
    }
    if (corpus.records.empty()) throw EmptyMerge();
    return corpus;
}

void CountryAliasTable::add(std::string_view alias, std::string_view canonical) {
    const std::string canon = text::collapse_whitespace(canonical);
    if (canon.empty()) throw ParseFailure(0, "empty canonical country name");
    auto insert = [&](const std::string& key) {
        if (key.empty()) return;
        auto [it, inserted] = alias_to_canonical_.emplace(key, canon);
        if (!inserted && it->second != canon)
            throw DuplicateEntry("alias \"" + key + "\" maps to both \"" + it->second + "\" and \"" +
                                 canon + "\"");
    };
    insert(text::normalize_keyword(alias));
    insert(text::normalize_keyword(canon));
    canonicals_.insert(canon);
}

std::optional<std::string> CountryAliasTable::match(std::string_view raw_token) const {
    auto it = alias_to_canonical_.find(text::normalize_keyword(raw_token));
    if (it == alias_to_canonical_.end()) return std::nullopt;
    return it->second;
}

CountryAliasTable CountryAliasTable::load_csv(std::istream& in) {
    CountryAliasTable table;
    csv::Reader reader(in);
    std::vector<std::string> row;
    bool first = true;
    while (true) {
        csv::Reader::Row status = reader.next(row);
        if (status == csv::Reader::Row::eof) break;
        if (status == csv::Reader::Row::malformed) throw ParseFailure(reader.line(), reader.error());
        if (row.size() == 1 && row[0].empty()) continue;
        if (first && row.size() >= 2 && text::normalize_keyword(row[0]) == "alias" &&
            text::normalize_keyword(row[1]) == "canonical") {
            first = false;
            continue;
        }
        first = false;
        if (row.size() < 2) throw ParseFailure(reader.line(), "alias table rows need (alias, canonical)");
        table.add(row[0], row[1]);
    }
    return table;
}

std::set<std::string> extract_countries(const PublicationRecord& record, const CountryAliasTable& aliases,
                                        UnmatchedAffiliations* unmatched) {
    std::set<std::string> out;
    for (const std::string& affiliation : record.affiliations) {
        // last non-empty comma-separated token carries the country in
        // Scopus affiliation strings
        const std::vector<std::string> tokens = text::split_trimmed(affiliation, ',');
        if (tokens.empty()) continue;
        const std::string& token = tokens.back();
        if (auto canon = aliases.match(token)) {
            out.insert(*canon);
        } else if (unmatched) {
            ++unmatched->count;
            ++unmatched->tokens[text::normalize_keyword(token)];
        }
    }
    return out;
}

std::vector<std::string> normalize_keywords(const PublicationRecord& record, bool include_index) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    auto take = [&](const std::vector<std::string>& raw) {
        for (const std::string& kw : raw) {
            std::string norm = text::normalize_keyword(kw);
            if (norm.empty()) continue;
            if (seen.insert(norm).second) out.push_back(std::move(norm));
        }
    };
    take(record.author_keywords);
    if (include_index) take(record.index_keywords);
    return out;
}

std::vector<std::string> reference_keys(const PublicationRecord& record) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const std::string& ref : record.references) {
        std::string key = text::normalize_reference_key(ref);
        if (key.empty()) continue;
        if (seen.insert(key).second) out.push_back(std::move(key));
    }
    return out;
}

namespace {

ordered_json record_to_json(const PublicationRecord& rec) {
    ordered_json j;
    j["record_id"] = rec.record_id;
    j["authors"] = rec.authors;
    j["author_ids"] = rec.author_ids;
    j["title"] = rec.title;
    if (rec.year)
        j["year"] = *rec.year;
    else
        j["year"] = nullptr;
    j["source_title"] = rec.source_title;
    j["cited_by"] = rec.cited_by;
    j["affiliations"] = rec.affiliations;
    ordered_json pairs = ordered_json::array();
    for (const auto& [author, affiliation] : rec.author_affiliation_pairs)
        pairs.push_back(ordered_json::array({author, affiliation}));
    j["author_affiliation_pairs"] = std::move(pairs);
    j["author_keywords"] = rec.author_keywords;
    j["index_keywords"] = rec.index_keywords;
    j["references"] = rec.references;
    j["document_type"] = rec.document_type;
    j["extra"] = rec.extra;
    return j;
}

PublicationRecord record_from_json(const ordered_json& j, std::size_t line) {
    PublicationRecord rec;
    try {
        rec.record_id = j.at("record_id").get<std::string>();
        rec.authors = j.at("authors").get<std::vector<std::string>>();
        rec.author_ids = j.at("author_ids").get<std::vector<std::string>>();
        rec.title = j.at("title").get<std::string>();
        if (!j.at("year").is_null()) rec.year = j.at("year").get<int>();
        rec.source_title = j.at("source_title").get<std::string>();
        rec.cited_by = j.at("cited_by").get<long long>();
        rec.affiliations = j.at("affiliations").get<std::vector<std::string>>();
        for (const auto& pair : j.at("author_affiliation_pairs"))
            rec.author_affiliation_pairs.emplace_back(pair.at(0).get<std::string>(),
                                                      pair.at(1).get<std::string>());
        rec.author_keywords = j.at("author_keywords").get<std::vector<std::string>>();
        rec.index_keywords = j.at("index_keywords").get<std::vector<std::string>>();
        rec.references = j.at("references").get<std::vector<std::string>>();
        rec.document_type = j.at("document_type").get<std::string>();
        rec.extra = j.at("extra").get<std::map<std::string, std::string>>();
    } catch (const ordered_json::exception& e) {
        throw ParseFailure(line, std::string("bad corpus record: ") + e.what());
    }
    if (rec.record_id.empty()) throw ParseFailure(line, "empty record_id");
    return rec;
}

}  // namespace

void write_corpus(const Corpus& corpus, std::ostream& out) {
    ordered_json head;
    head["tag"] = corpus.tag;
    head["provenance"] = corpus.provenance;
    out << head.dump() << '\n';
    for (const auto& [id, rec] : corpus.records) out << record_to_json(rec).dump() << '\n';
    if (!out) throw SinkFailure("corpus stream write error");
}

Corpus read_corpus(std::istream& in) {
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    bool have_head = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseFailure(line_no, "invalid JSON line");
        if (!have_head) {
            if (!j.contains("tag")) throw ParseFailure(line_no, "corpus file must start with a tag line");
            corpus.tag = j.at("tag").get<std::string>();
            if (j.contains("provenance"))
                corpus.provenance = j.at("provenance").get<std::vector<std::string>>();
            have_head = true;
            continue;
        }
        PublicationRecord rec = record_from_json(j, line_no);
        corpus.records.insert_or_assign(rec.record_id, std::move(rec));
    }
    if (!have_head) throw ParseFailure(line_no, "empty corpus file");
    return corpus;
}

namespace {

struct AliasSeed {
    const char* canonical;
    const char* alias;
};

}  // namespace

CountryAliasTable CountryAliasTable::defaults() {
    static const char* kCanonicals[] = {
        "Afghanistan", "Albania", "Algeria", "Argentina", "Armenia", "Australia", "Austria",
        "Azerbaijan", "Bahrain", "Bangladesh", "Belarus", "Belgium", "Bolivia",
        "Bosnia and Herzegovina", "Botswana", "Brazil", "Brunei", "Bulgaria", "Cambodia",
        "Cameroon", "Canada", "Chile", "China", "Colombia", "Costa Rica", "Croatia", "Cuba",
        "Cyprus", "Czech Republic", "Denmark", "Ecuador", "Egypt", "Estonia", "Ethiopia", "Fiji",
        "Finland", "France", "Georgia", "Germany", "Ghana", "Greece", "Hong Kong", "Hungary",
        "Iceland", "India", "Indonesia", "Iran", "Iraq", "Ireland", "Israel", "Italy", "Jamaica",
        "Japan", "Jordan", "Kazakhstan", "Kenya", "Kuwait", "Kyrgyzstan", "Laos", "Latvia",
        "Lebanon", "Libya", "Lithuania", "Luxembourg", "Macau", "Malawi", "Malaysia", "Maldives",
        "Malta", "Mexico", "Mongolia", "Morocco", "Mozambique", "Myanmar", "Namibia", "Nepal",
        "Netherlands", "New Zealand", "Nigeria", "North Korea", "Norway", "Oman", "Pakistan",
        "Palestine", "Panama", "Paraguay", "Peru", "Philippines", "Poland", "Portugal", "Qatar",
        "Romania", "Russia", "Rwanda", "Saudi Arabia", "Senegal", "Serbia", "Singapore",
        "Slovakia", "Slovenia", "Somalia", "South Africa", "South Korea", "Spain", "Sri Lanka",
        "Sudan", "Sweden", "Switzerland", "Syria", "Taiwan", "Tajikistan", "Tanzania", "Thailand",
        "Tunisia", "Turkey", "Turkmenistan", "UK", "USA", "Uganda", "Ukraine",
        "United Arab Emirates", "Uruguay", "Uzbekistan", "Venezuela", "Vietnam", "Yemen",
        "Zambia", "Zimbabwe",
    };
    static const AliasSeed kAliases[] = {
        {"USA", "United States"},
        {"USA", "United States of America"},
        {"USA", "U.S.A."},
        {"USA", "U.S."},
        {"USA", "US"},
        {"UK", "United Kingdom"},
        {"UK", "Great Britain"},
        {"UK", "England"},
        {"UK", "Scotland"},
        {"UK", "Wales"},
        {"UK", "Northern Ireland"},
        {"UK", "U.K."},
        {"Netherlands", "The Netherlands"},
        {"Netherlands", "Netherland"},
        {"Netherlands", "Holland"},
        {"Russia", "Russian Federation"},
        {"South Korea", "Republic of Korea"},
        {"South Korea", "Korea"},
        {"North Korea", "Democratic People's Republic of Korea"},
        {"Vietnam", "Viet Nam"},
        {"Czech Republic", "Czechia"},
        {"United Arab Emirates", "UAE"},
        {"Taiwan", "Taiwan ROC"},
        {"Hong Kong", "Hong Kong SAR"},
        {"Syria", "Syrian Arab Republic"},
        {"Tanzania", "United Republic of Tanzania"},
        {"Venezuela", "Bolivarian Republic of Venezuela"},
        {"Brunei", "Brunei Darussalam"},
        {"Laos", "Lao PDR"},
        {"Laos", "Lao People's Democratic Republic"},
        {"Macau", "Macao"},
        {"Palestine", "Palestinian Territory"},
        {"Palestine", "State of Palestine"},
        {"Sri Lanka", "Srilanka"},
        {"Turkey", "Turkiye"},
        {"Turkey", "T\xc3\xbcrkiye"},
        {"Iran", "Islamic Republic of Iran"},
        {"Bolivia", "Plurinational State of Bolivia"},
        {"Moldova", "Republic of Moldova"},
    };
    CountryAliasTable table;
    for (const char* canon : kCanonicals) table.add(canon, canon);
    for (const AliasSeed& seed : kAliases) table.add(seed.alias, seed.canonical);
    return table;
}

}  // namespace biblionet
