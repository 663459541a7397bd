#include "biblionet/quartile.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "biblionet/csv.hpp"
#include "biblionet/errors.hpp"
#include "biblionet/text.hpp"

namespace biblionet {

std::optional<Quartile> quartile_from_string(std::string_view s) {
    std::string norm = text::normalize_keyword(s);
    if (norm == "q1") return Quartile::q1;
    if (norm == "q2") return Quartile::q2;
    if (norm == "q3") return Quartile::q3;
    if (norm == "q4") return Quartile::q4;
    return std::nullopt;
}

std::string_view to_string(Quartile q) {
    switch (q) {
        case Quartile::q1: return "Q1";
        case Quartile::q2: return "Q2";
        case Quartile::q3: return "Q3";
        case Quartile::q4: return "Q4";
    }
    return "Q1";
}

void QuartileTable::add(std::string_view source_title, Quartile q, std::optional<int> year) {
    std::string key = text::normalize_source_title(source_title);
    if (key.empty()) throw BadQuartile("empty source title");
    if (year) {
        if (!year_entries_.emplace(std::make_pair(key, *year), q).second)
            throw DuplicateEntry(key + " (" + std::to_string(*year) + ")");
    } else {
        if (!static_entries_.emplace(key, q).second) throw DuplicateEntry(key);
    }
}

std::optional<Quartile> QuartileTable::lookup(std::string_view source_title,
                                              std::optional<int> year) const {
    const std::string key = text::normalize_source_title(source_title);
    if (year) {
        auto it = year_entries_.find(std::make_pair(key, *year));
        if (it != year_entries_.end()) return it->second;
    }
    auto it = static_entries_.find(key);
    if (it == static_entries_.end()) return std::nullopt;
    return it->second;
}

QuartileTable QuartileTable::load_csv(std::istream& in) {
    QuartileTable table;
    csv::Reader reader(in);
    std::vector<std::string> row;
    bool first = true;
    while (true) {
        csv::Reader::Row status = reader.next(row);
        if (status == csv::Reader::Row::eof) break;
        if (status == csv::Reader::Row::malformed) throw ParseFailure(reader.line(), reader.error());
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() < 2) throw ParseFailure(reader.line(), "expected (source_title, quartile[, year])");
        auto q = quartile_from_string(row[1]);
        if (!q) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw BadQuartile(row[1]);
        }
        first = false;
        std::optional<int> year;
        if (row.size() >= 3 && !text::trim(row[2]).empty()) {
            const std::string cell = text::trim(row[2]);
            int y = 0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), y);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw ParseFailure(reader.line(), "bad year \"" + cell + "\"");
            year = y;
        }
        table.add(row[0], *q, year);
    }
    return table;
}

double round_percent(double value) { return std::floor(value * 100.0 + 0.5) / 100.0; }

QuartileReport quartile_distribution(const Corpus& corpus, const QuartileTable& table) {
    if (corpus.empty()) throw EmptyCorpus();
    QuartileReport report;
    for (const auto& [id, rec] : corpus.records) {
        ++report.total;
        auto q = table.lookup(rec.source_title, rec.year);
        if (q)
            ++report.counts[static_cast<std::size_t>(*q)];
        else
            ++report.unmatched;
    }
    const long long matched = report.matched();
    for (std::size_t i = 0; i < 4; ++i) {
        report.percents[i] =
            matched > 0
                ? round_percent(100.0 * static_cast<double>(report.counts[i]) /
                                static_cast<double>(matched))
                : 0.0;
    }
    report.unmatched_percent = round_percent(100.0 * static_cast<double>(report.unmatched) /
                                             static_cast<double>(report.total));
    return report;
}

namespace {

std::string percent_string(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", p);
    return buf;
}

}  // namespace

void QuartileReport::write_csv(std::ostream& out) const {
    out << "quartile,count,percent\n";
    for (std::size_t i = 0; i < 4; ++i)
        out << to_string(static_cast<Quartile>(i)) << ',' << counts[i] << ','
            << percent_string(percents[i]) << '\n';
    out << "unmatched," << unmatched << ',' << percent_string(unmatched_percent) << '\n';
    if (!out) throw SinkFailure("quartile report stream write error");
}

void QuartileReport::write_table(std::ostream& out) const {
    out << "Quartile    Count   Percent\n";
    char line[96];
    for (std::size_t i = 0; i < 4; ++i) {
        std::snprintf(line, sizeof line, "%-9s %7lld %8s%%\n",
                      std::string(to_string(static_cast<Quartile>(i))).c_str(), counts[i],
                      percent_string(percents[i]).c_str());
        out << line;
    }
    std::snprintf(line, sizeof line, "%-9s %7lld %8s%%\n", "Unmatched", unmatched,
                  percent_string(unmatched_percent).c_str());
    out << line;
    std::snprintf(line, sizeof line, "%-9s %7lld\n", "Total", total);
    out << line;
    if (!out) throw SinkFailure("quartile report stream write error");
}

}  // namespace biblionet
