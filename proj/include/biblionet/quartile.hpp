#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "biblionet/record.hpp"

namespace biblionet {

enum class Quartile { q1, q2, q3, q4 };

std::optional<Quartile> quartile_from_string(std::string_view s);
std::string_view to_string(Quartile q);

/// Normalized source title -> SJR quartile, with optional per-year
/// overrides that shadow the static entry.
class QuartileTable {
public:
    /// CSV columns (source_title, quartile[, year]); an optional header row
    /// is skipped. Duplicate (title, year) rows raise DuplicateEntry.
    static QuartileTable load_csv(std::istream& in);

    void add(std::string_view source_title, Quartile q, std::optional<int> year = std::nullopt);

    std::optional<Quartile> lookup(std::string_view source_title,
                                   std::optional<int> year = std::nullopt) const;

    std::size_t size() const { return static_entries_.size() + year_entries_.size(); }

private:
    std::map<std::string, Quartile> static_entries_;
    std::map<std::pair<std::string, int>, Quartile> year_entries_;
};

/// Counts and percentages per quartile. Percentages are over matched
/// records only; unmatched records are tallied separately (their share is
/// reported against the full total).
struct QuartileReport {
    std::array<long long, 4> counts{};   // Q1..Q4
    std::array<double, 4> percents{};    // of matched, 2 decimals, half-up
    long long unmatched = 0;
    double unmatched_percent = 0.0;      // of total
    long long total = 0;

    long long matched() const { return total - unmatched; }

    void write_csv(std::ostream& out) const;
    void write_table(std::ostream& out) const;
};

QuartileReport quartile_distribution(const Corpus& corpus, const QuartileTable& table);

/// 2-decimal half-up rounding used for every percentage in the report.
double round_percent(double value);

}  // namespace biblionet
