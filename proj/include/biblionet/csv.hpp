#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace biblionet::csv {

/// Streaming RFC-4180 reader. Quoted fields may contain commas, doubled
/// quotes, and line breaks. Rows with broken quoting are reported (not
/// thrown) so callers can choose lenient or strict handling.
class Reader {
public:
    enum class Row { ok, malformed, eof };

    explicit Reader(std::istream& in) : in_(in) {}

    /// Reads one record into `fields`. On `malformed` the offending input is
    /// skipped up to the next physical line and `error()` describes why.
    Row next(std::vector<std::string>& fields);

    /// 1-based line where the most recent record started.
    std::size_t line() const { return row_line_; }

    const std::string& error() const { return error_; }

private:
    std::istream& in_;
    std::size_t current_line_ = 1;
    std::size_t row_line_ = 1;
    std::string error_;
};

/// Reads the whole stream; throws ParseFailure on any malformed row.
std::vector<std::vector<std::string>> read_all(std::istream& in);

std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace biblionet::csv
