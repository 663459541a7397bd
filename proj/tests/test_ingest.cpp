#include <doctest.h>

#include <set>
#include <sstream>

#include "biblionet/csv.hpp"
#include "biblionet/errors.hpp"
#include "biblionet/ingest.hpp"
#include "helpers.hpp"

using namespace biblionet;

namespace {

const char* kHeader =
    "Authors,Author(s) ID,Title,Year,Source title,Cited by,EID,Affiliations,"
    "Authors with affiliations,Author Keywords,Index Keywords,References,Document Type";

struct RowSpec {
    std::string eid;
    std::string authors;
    std::string title = "Some title";
    std::string year = "2014";
    std::string source = "Journal A";
    std::string cited = "0";
    std::string affiliations;
    std::string author_keywords;
    std::string index_keywords;
    std::string references;
};

std::string fixture_csv(const std::vector<RowSpec>& rows) {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const RowSpec& r : rows) {
        csv::write_row(out, {r.authors, "", r.title, r.year, r.source, r.cited, r.eid,
                             r.affiliations, "", r.author_keywords, r.index_keywords, r.references,
                             "Article"});
    }
    return out.str();
}

std::vector<PublicationRecord> parse(const std::string& text, ParseMode mode = ParseMode::lenient,
                                     ParseReport* report = nullptr) {
    std::istringstream in(text);
    return parse_scopus_csv(in, {}, mode, report);
}

}  // namespace

TEST_CASE("multi-valued cells split on the scopus delimiter") {
    auto records = parse(fixture_csv({{"e1", "Khan A.; Kumar B."}}));
    REQUIRE(records.size() == 1);
    CHECK(records[0].authors == std::vector<std::string>{"Khan A.", "Kumar B."});
}

TEST_CASE("empty cells yield empty lists, never absent fields") {
    auto records = parse(fixture_csv({{"e1", "Khan A."}}));
    REQUIRE(records.size() == 1);
    CHECK(records[0].author_keywords.empty());
    CHECK(records[0].references.empty());
    CHECK(records[0].affiliations.empty());
}

TEST_CASE("duplicate EIDs survive parsing; dedup happens at merge") {
    auto records = parse(fixture_csv({{"e1", "A"}, {"e2", "B"}, {"e1", "C"}, {"e3", "D"}, {"e2", "E"}}));
    CHECK(records.size() == 5);
}

TEST_CASE("unclaimed columns are preserved in extra") {
    std::string text = std::string(kHeader) + ",Volume\n" +
                       "A,,T,2014,J,0,e1,,,,,,Article,42\n";
    auto records = parse(text);
    REQUIRE(records.size() == 1);
    CHECK(records[0].extra.at("Volume") == "42");
}

TEST_CASE("missing schema column raises MissingColumn") {
    std::istringstream in("Authors,Year\nA,2014\n");
    CHECK_THROWS_AS(parse_scopus_csv(in), MissingColumn);
}

TEST_CASE("malformed rows: skipped and reported in lenient mode, fatal in strict") {
    std::string text = std::string(kHeader) + "\n" +
                       "A,,T,2014,J,0,e1,,,,,,Article\n" +
                       "B,,\"broken\"tail,2014,J,0,e2,,,,,,Article\n" +
                       "C,,T,2015,J,0,e3,,,,,,Article\n";
    ParseReport report;
    auto records = parse(text, ParseMode::lenient, &report);
    CHECK(records.size() == 2);
    REQUIRE(report.skipped.size() == 1);
    CHECK(report.skipped[0].line == 3);

    CHECK_THROWS_AS(parse(text, ParseMode::strict), MalformedRow);
}

TEST_CASE("non-numeric year raises BadYear in strict mode, skips in lenient") {
    std::string text = fixture_csv({{"e1", "A", "T", "20x4"}});
    CHECK_THROWS_AS(parse(text, ParseMode::strict), BadYear);
    ParseReport report;
    CHECK(parse(text, ParseMode::lenient, &report).empty());
    CHECK(report.skipped.size() == 1);
}

TEST_CASE("years outside [1900, 2100] are rejected at parse time") {
    ParseReport report;
    auto records = parse(fixture_csv({{"e1", "A", "T", "1899"},
                                      {"e2", "B", "T", "1900"},
                                      {"e3", "C", "T", "2100"},
                                      {"e4", "D", "T", "2101"}}),
                         ParseMode::lenient, &report);
    CHECK(records.size() == 2);
    CHECK(report.skipped.size() == 2);
}

TEST_CASE("empty year cell stays unset") {
    auto records = parse(fixture_csv({{"e1", "A", "T", ""}}));
    REQUIRE(records.size() == 1);
    CHECK(!records[0].year.has_value());
}

TEST_CASE("merge is a union keyed by record id") {
    std::vector<PublicationRecord> p1{testutil::make_record("A"), testutil::make_record("B")};
    std::vector<PublicationRecord> p2{testutil::make_record("B"), testutil::make_record("C")};
    Corpus corpus = merge_corpora({p1, p2}, "t");
    CHECK(corpus.size() == 3);
    CHECK(corpus.records.count("A") == 1);
    CHECK(corpus.records.count("B") == 1);
    CHECK(corpus.records.count("C") == 1);
}

TEST_CASE("duplicate record with the larger cited_by wins") {
    PublicationRecord b1 = testutil::make_record("B");
    b1.cited_by = 3;
    PublicationRecord b2 = testutil::make_record("B");
    b2.cited_by = 7;
    Corpus corpus = merge_corpora({{b1}, {b2}}, "t");
    CHECK(corpus.records.at("B").cited_by == 7);

    // and ordering does not matter
    Corpus reversed = merge_corpora({{b2}, {b1}}, "t");
    CHECK(reversed.records.at("B").cited_by == 7);
}

TEST_CASE("chunked merge matches a brute-force id union (5380 from 5500)") {
    std::vector<PublicationRecord> chunk_a, chunk_b, chunk_c;
    for (int i = 0; i < 2000; ++i) chunk_a.push_back(testutil::make_record("A" + std::to_string(i)));
    for (int i = 0; i < 60; ++i) chunk_b.push_back(testutil::make_record("A" + std::to_string(i)));
    for (int i = 0; i < 1940; ++i) chunk_b.push_back(testutil::make_record("B" + std::to_string(i)));
    for (int i = 0; i < 60; ++i) chunk_c.push_back(testutil::make_record("B" + std::to_string(i)));
    for (int i = 0; i < 1440; ++i) chunk_c.push_back(testutil::make_record("C" + std::to_string(i)));
    REQUIRE(chunk_a.size() == 2000);
    REQUIRE(chunk_b.size() == 2000);
    REQUIRE(chunk_c.size() == 1500);

    std::set<std::string> oracle;
    for (const auto* chunk : {&chunk_a, &chunk_b, &chunk_c})
        for (const auto& rec : *chunk) oracle.insert(rec.record_id);
    REQUIRE(oracle.size() == 5380);

    Corpus corpus = merge_corpora({chunk_a, chunk_b, chunk_c}, "t");
    CHECK(corpus.size() == oracle.size());
}

TEST_CASE("merging a corpus with itself is a no-op") {
    PublicationRecord a = testutil::make_record("A");
    a.cited_by = 5;
    PublicationRecord b = testutil::make_record("B");
    Corpus once = merge_corpora({{a, b}}, "t", {"f"});
    std::vector<PublicationRecord> records;
    for (const auto& [id, rec] : once.records) records.push_back(rec);
    Corpus twice = merge_corpora({records, records}, "t", {"f"});
    CHECK(once == twice);
}

TEST_CASE("merging nothing raises EmptyMerge") {
    CHECK_THROWS_AS(merge_corpora({{}, {}}, "t"), EmptyMerge);
}

TEST_CASE("country extraction takes the last affiliation token") {
    auto aliases = CountryAliasTable::defaults();
    PublicationRecord rec = testutil::make_record("e");
    rec.affiliations = {"Information Technology University, Lahore, Pakistan"};
    CHECK(extract_countries(rec, aliases) == std::set<std::string>{"Pakistan"});
}

TEST_CASE("country extraction resolves aliases from a loaded table") {
    std::istringstream table_csv("alias,canonical\nUnited States,USA\nIndia,India\nUSA,USA\n");
    auto aliases = CountryAliasTable::load_csv(table_csv);
    PublicationRecord rec = testutil::make_record("e");
    rec.affiliations = {"X Univ, Delhi, India", "Y Univ, Boston, United States"};
    CHECK(extract_countries(rec, aliases) == std::set<std::string>{"India", "USA"});
}

TEST_CASE("unmatched affiliations are counted, not dropped silently") {
    auto aliases = CountryAliasTable::defaults();
    PublicationRecord rec = testutil::make_record("e");
    rec.affiliations = {"Somewhere, Atlantis"};
    UnmatchedAffiliations unmatched;
    CHECK(extract_countries(rec, aliases, &unmatched).empty());
    CHECK(unmatched.count == 1);
    CHECK(unmatched.tokens.at("atlantis") == 1);
}

TEST_CASE("extraction output is always a subset of the table canonicals") {
    auto aliases = CountryAliasTable::defaults();
    testutil::Rng rng(7);
    const std::vector<std::string> tails{"Pakistan", "india", " USA ", "Atlantis", "UNITED STATES",
                                         "Republic of Korea", "Narnia", "UK", "Netherland"};
    for (int trial = 0; trial < 50; ++trial) {
        PublicationRecord rec = testutil::make_record("e");
        const std::size_t k = 1 + rng.below(4);
        for (std::size_t i = 0; i < k; ++i)
            rec.affiliations.push_back("Dept, City, " + tails[rng.below(tails.size())]);
        for (const std::string& country : extract_countries(rec, aliases))
            CHECK(aliases.canonicals().count(country) == 1);
    }
}

TEST_CASE("alias matching is case-insensitive after whitespace normalization") {
    auto aliases = CountryAliasTable::defaults();
    CHECK(aliases.match("  united   STATES ") == std::string("USA"));
    CHECK(aliases.match("pakistan") == std::string("Pakistan"));
    CHECK(!aliases.match("nowhere"));
}

TEST_CASE("keyword normalization folds case and spacing, dedups in order") {
    PublicationRecord rec = testutil::make_record("e");
    rec.author_keywords = {"Economic Growth", " economic  growth ", "Poverty"};
    CHECK(normalize_keywords(rec) == std::vector<std::string>{"economic growth", "poverty"});

    rec.author_keywords.clear();
    CHECK(normalize_keywords(rec).empty());
}

TEST_CASE("index keywords join only on request") {
    PublicationRecord rec = testutil::make_record("e");
    rec.author_keywords = {"Poverty"};
    rec.index_keywords = {"Economics", "poverty"};
    CHECK(normalize_keywords(rec) == std::vector<std::string>{"poverty"});
    CHECK(normalize_keywords(rec, true) == std::vector<std::string>{"poverty", "economics"});
}

TEST_CASE("keyword normalization is idempotent") {
    PublicationRecord rec = testutil::make_record("e");
    rec.author_keywords = {"Economic Growth", "POVERTY  reduction", " Gender "};
    PublicationRecord again = testutil::make_record("e");
    again.author_keywords = normalize_keywords(rec);
    CHECK(normalize_keywords(again) == normalize_keywords(rec));
}

TEST_CASE("hand-normalized vocabulary fixture: 10 records, 31 raw, 24 distinct") {
    const std::vector<std::vector<std::string>> keyword_lists{
        {"Economic Growth", " economic  growth ", "Poverty"},
        {"Gender", "Education"},
        {"TERRORISM", "terrorism", "Libraries"},
        {"Human Development", "Foreign Direct Investment"},
        {"Job Satisfaction", "job  satisfaction", "Co Integration"},
        {"Remote Sensing", "Climate Change", "Culture"},
        {"Sustainability", "Agriculture", "Gender"},
        {"Forensic Science", "FORENSIC SCIENCE", "Health"},
        {"Poverty", "Rural Areas", "Immunization"},
        {"Higher Education", "Primary Education", "Teaching", " teaching", "Infant Mortality",
         "Urban Health"},
    };
    std::size_t raw = 0;
    std::set<std::string> vocabulary;
    for (std::size_t i = 0; i < keyword_lists.size(); ++i) {
        PublicationRecord rec = testutil::make_record("e" + std::to_string(i));
        rec.author_keywords = keyword_lists[i];
        raw += rec.author_keywords.size();
        for (const std::string& kw : normalize_keywords(rec)) vocabulary.insert(kw);
    }
    CHECK(raw == 31);
    CHECK(vocabulary.size() == 24);
}

TEST_CASE("reference keys fold byte-level differences") {
    PublicationRecord rec = testutil::make_record("e");
    rec.references = {"Khan A.,  Poverty dynamics", "KHAN A., POVERTY  DYNAMICS"};
    CHECK(reference_keys(rec).size() == 1);

    rec.references.clear();
    CHECK(reference_keys(rec).empty());
}

TEST_CASE("records sharing three normalized keys intersect in exactly three") {
    PublicationRecord y = testutil::make_record("y");
    y.references = {"Shared Alpha, 2001", "shared  BETA, 2002", "Shared Gamma, 2003",
                    "Only In Y, 2004"};
    PublicationRecord z = testutil::make_record("z");
    z.references = {"SHARED ALPHA, 2001", "Shared Beta, 2002", "SHARED GAMMA, 2003",
                    "Only In Z, 2005", "Another Z Only, 2006"};
    // independent set-intersection oracle
    auto ky = reference_keys(y);
    auto kz = reference_keys(z);
    std::set<std::string> sy(ky.begin(), ky.end()), sz(kz.begin(), kz.end());
    std::size_t shared = 0;
    for (const std::string& key : sy) shared += sz.count(key);
    CHECK(shared == 3);
}

TEST_CASE("corpus file round-trips parse -> serialize -> re-parse") {
    std::string text = fixture_csv({
        {"e1", "Khan A.; Kumar B.", "Poverty dynamics", "2014", "J Dev", "12",
         "ITU, Lahore, Pakistan; DU, Delhi, India", "Poverty; Growth", "Econ",
         "Ref one; Ref two"},
        {"e2", "Ali B.", "Education reform", "2015", "J Dev", "3", "QAU, Islamabad, Pakistan",
         "Education", "", "Poverty dynamics"},
    });
    auto records = parse(text);
    Corpus corpus = merge_corpora({records}, "Pakistan", {"fixture.csv"});

    std::ostringstream serialized;
    write_corpus(corpus, serialized);
    std::istringstream back(serialized.str());
    Corpus reread = read_corpus(back);
    CHECK(reread == corpus);

    // and serialization is byte-stable
    std::ostringstream again;
    write_corpus(reread, again);
    CHECK(again.str() == serialized.str());
}

TEST_CASE("quoted multi-line fields survive the csv layer") {
    std::string text = std::string(kHeader) + "\n" +
                       "\"Khan A.\",,\"Title with, comma\",2014,\"Journal \"\"Q\"\"\",5,e1,,,,,,Article\n";
    auto records = parse(text);
    REQUIRE(records.size() == 1);
    CHECK(records[0].title == "Title with, comma");
    CHECK(records[0].source_title == "Journal \"Q\"");
}
