#include "biblionet/csv.hpp"

#include <istream>
#include <ostream>

#include "biblionet/errors.hpp"

namespace biblionet::csv {

Reader::Row Reader::next(std::vector<std::string>& fields) {
    fields.clear();
    error_.clear();

    int c = in_.get();
    // skip a trailing newline-only tail cleanly
    if (c == std::istream::traits_type::eof()) return Row::eof;

    row_line_ = current_line_;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;

    auto fail = [&](const std::string& why) {
        error_ = why;
        // resynchronize at the next physical line
        while (c != std::istream::traits_type::eof() && c != '\n') c = in_.get();
        if (c == '\n') ++current_line_;
        return Row::malformed;
    };

    while (true) {
        if (c == std::istream::traits_type::eof()) {
            if (in_quotes) return fail("unterminated quoted field");
            fields.push_back(std::move(field));
            return Row::ok;
        }
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                int peek = in_.peek();
                if (peek == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++current_line_;
                field.push_back(ch);
            }
        } else if (ch == '"') {
            if (field.empty() && !field_was_quoted) {
                in_quotes = true;
                field_was_quoted = true;
            } else {
                return fail("stray quote inside field");
            }
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (ch == '\r') {
            int peek = in_.peek();
            if (peek == '\n') in_.get();
            ++current_line_;
            fields.push_back(std::move(field));
            return Row::ok;
        } else if (ch == '\n') {
            ++current_line_;
            fields.push_back(std::move(field));
            return Row::ok;
        } else {
            if (field_was_quoted) return fail("text after closing quote");
            field.push_back(ch);
        }
        c = in_.get();
    }
}

std::vector<std::vector<std::string>> read_all(std::istream& in) {
    Reader reader(in);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> fields;
    while (true) {
        Reader::Row r = reader.next(fields);
        if (r == Reader::Row::eof) break;
        if (r == Reader::Row::malformed) throw ParseFailure(reader.line(), reader.error());
        rows.push_back(fields);
    }
    return rows;
}

std::string escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << escape(fields[i]);
    }
    out.put('\n');
}

}  // namespace biblionet::csv
