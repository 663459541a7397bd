#include "biblionet/netio.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "biblionet/errors.hpp"
#include "biblionet/text.hpp"

namespace biblionet {

std::optional<NetFormat> net_format_from_string(std::string_view name) {
    if (name == "edge-tsv") return NetFormat::edge_tsv;
    if (name == "pajek") return NetFormat::pajek;
    if (name == "gml") return NetFormat::gml;
    return std::nullopt;
}

std::string_view to_string(NetFormat format) {
    switch (format) {
        case NetFormat::edge_tsv: return "edge-tsv";
        case NetFormat::pajek: return "pajek";
        case NetFormat::gml: return "gml";
    }
    return "edge-tsv";
}

NetFormat net_format_for_path(std::string_view path) {
    auto dot = path.rfind('.');
    if (dot != std::string_view::npos) {
        std::string_view ext = path.substr(dot);
        if (ext == ".net" || ext == ".paj") return NetFormat::pajek;
        if (ext == ".gml") return NetFormat::gml;
    }
    return NetFormat::edge_tsv;
}

std::string format_weight(double w) {
    char buf[40];
    if (std::isfinite(w) && w == std::floor(w) && std::fabs(w) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", w);
    } else {
        std::snprintf(buf, sizeof buf, "%.6g", w);
    }
    return buf;
}

namespace {

void check_label(const std::string& label, bool quoted_format) {
    if (label.find_first_of("\t\r\n") != std::string::npos)
        throw SinkFailure("label contains control characters: \"" + label + "\"");
    if (quoted_format && label.find('"') != std::string::npos)
        throw SinkFailure("label contains a quote: \"" + label + "\"");
}

void write_edge_tsv(const Network& net, std::ostream& out) {
    out << "source\ttarget\tweight\n";
    for (const Edge& e : net.edges()) {
        const std::string& a = net.node(e.i).label;
        const std::string& b = net.node(e.j).label;
        check_label(a, false);
        check_label(b, false);
        out << a << '\t' << b << '\t' << format_weight(e.weight) << '\n';
    }
}

void write_pajek(const Network& net, std::ostream& out) {
    out << "*Vertices " << net.node_count() << '\n';
    for (int id = 0; id < net.node_count(); ++id) {
        const std::string& label = net.node(id).label;
        check_label(label, true);
        out << (id + 1) << " \"" << label << "\"\n";
    }
    out << "*Edges\n";
    for (const Edge& e : net.edges())
        out << (e.i + 1) << ' ' << (e.j + 1) << ' ' << format_weight(e.weight) << '\n';
}

void write_gml(const Network& net, std::ostream& out) {
    out << "graph [\n  directed 0\n";
    for (int id = 0; id < net.node_count(); ++id) {
        const std::string& label = net.node(id).label;
        check_label(label, true);
        out << "  node [\n    id " << id << "\n    label \"" << label << "\"\n  ]\n";
    }
    for (const Edge& e : net.edges()) {
        out << "  edge [\n    source " << e.i << "\n    target " << e.j << "\n    weight "
            << format_weight(e.weight) << "\n  ]\n";
    }
    out << "]\n";
}

double parse_weight(const std::string& token, std::size_t line) {
    try {
        std::size_t used = 0;
        double w = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return w;
    } catch (const std::exception&) {
        throw ParseFailure(line, "bad weight \"" + token + "\"");
    }
}

long parse_int(const std::string& token, std::size_t line, const char* what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseFailure(line, std::string("bad ") + what + " \"" + token + "\"");
    return v;
}

Network read_edge_tsv(std::istream& in) {
    Network net;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseFailure(1, "missing edge-tsv header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "source\ttarget\tweight")
        throw ParseFailure(1, "edge-tsv header must be \"source\\ttarget\\tweight\"");
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw ParseFailure(line_no, "expected source\\ttarget\\tweight");
        std::string a = line.substr(0, t1);
        std::string b = line.substr(t1 + 1, t2 - t1 - 1);
        double w = parse_weight(line.substr(t2 + 1), line_no);
        try {
            int i = net.ensure_node(a);
            int j = net.ensure_node(b);
            net.add_edge(i, j, w);
        } catch (const Error& e) {
            throw ParseFailure(line_no, e.what());
        }
    }
    return net;
}

bool istarts_with(const std::string& s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    }
    return true;
}

Network read_pajek(std::istream& in) {
    Network net;
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!text::trim(line).empty()) return true;
        }
        return false;
    };

    if (!next_line() || !istarts_with(text::trim(line), "*vertices"))
        throw ParseFailure(line_no ? line_no : 1, "expected *Vertices header");
    {
        std::istringstream hs(text::trim(line));
        std::string star;
        long n = -1;
        hs >> star >> n;
        if (n < 0) throw ParseFailure(line_no, "bad vertex count");
        std::vector<std::string> labels(static_cast<std::size_t>(n));
        for (long k = 0; k < n; ++k) labels[static_cast<std::size_t>(k)] = std::to_string(k + 1);

        bool saw_edges = false;
        while (next_line()) {
            std::string trimmed = text::trim(line);
            if (trimmed[0] == '*') {
                if (istarts_with(trimmed, "*edges")) {
                    saw_edges = true;
                    break;
                }
                throw ParseFailure(line_no, "unsupported pajek section: " + trimmed);
            }
            std::istringstream vs(trimmed);
            long idx = 0;
            if (!(vs >> idx) || idx < 1 || idx > n) throw ParseFailure(line_no, "bad vertex index");
            std::size_t q1 = trimmed.find('"');
            if (q1 != std::string::npos) {
                std::size_t q2 = trimmed.rfind('"');
                if (q2 == q1) throw ParseFailure(line_no, "unterminated label");
                labels[static_cast<std::size_t>(idx - 1)] = trimmed.substr(q1 + 1, q2 - q1 - 1);
            } else {
                std::string word;
                if (vs >> word) labels[static_cast<std::size_t>(idx - 1)] = word;
            }
        }
        if (!saw_edges) throw ParseFailure(line_no, "missing *Edges section");

        for (const std::string& label : labels) net.ensure_node(label);
        while (next_line()) {
            std::string trimmed = text::trim(line);
            if (trimmed[0] == '*') throw ParseFailure(line_no, "unexpected section: " + trimmed);
            std::istringstream es(trimmed);
            std::string si, sj, sw;
            es >> si >> sj;
            if (si.empty() || sj.empty()) throw ParseFailure(line_no, "expected edge \"i j w\"");
            long i = parse_int(si, line_no, "vertex index");
            long j = parse_int(sj, line_no, "vertex index");
            if (i < 1 || i > n || j < 1 || j > n) throw ParseFailure(line_no, "edge index out of range");
            double w = 1.0;
            if (es >> sw) w = parse_weight(sw, line_no);
            try {
                net.add_edge(static_cast<int>(i - 1), static_cast<int>(j - 1), w);
            } catch (const Error& e) {
                throw ParseFailure(line_no, e.what());
            }
        }
    }
    return net;
}

// minimal GML tokenizer: identifiers, numbers, quoted strings, brackets
struct GmlToken {
    enum class Type { key, number, string, open, close, eof } type = Type::eof;
    std::string value;
    std::size_t line = 0;
};

class GmlLexer {
public:
    explicit GmlLexer(std::istream& in) : in_(in) {}

    GmlToken next() {
        int c = in_.get();
        while (c != EOF && std::isspace(c)) {
            if (c == '\n') ++line_;
            c = in_.get();
        }
        GmlToken t;
        t.line = line_;
        if (c == EOF) {
            t.type = GmlToken::Type::eof;
        } else if (c == '[') {
            t.type = GmlToken::Type::open;
        } else if (c == ']') {
            t.type = GmlToken::Type::close;
        } else if (c == '"') {
            t.type = GmlToken::Type::string;
            while ((c = in_.get()) != EOF && c != '"') {
                if (c == '\n') ++line_;
                t.value.push_back(static_cast<char>(c));
            }
            if (c == EOF) throw ParseFailure(t.line, "unterminated string");
        } else if (std::isalpha(c) || c == '_') {
            t.type = GmlToken::Type::key;
            t.value.push_back(static_cast<char>(c));
            while ((c = in_.peek()) != EOF && (std::isalnum(c) || c == '_'))
                t.value.push_back(static_cast<char>(in_.get()));
        } else if (std::isdigit(c) || c == '-' || c == '+' || c == '.') {
            t.type = GmlToken::Type::number;
            t.value.push_back(static_cast<char>(c));
            while ((c = in_.peek()) != EOF &&
                   (std::isdigit(c) || c == '.' || c == 'e' || c == 'E' || c == '-' || c == '+'))
                t.value.push_back(static_cast<char>(in_.get()));
        } else {
            throw ParseFailure(line_, std::string("unexpected character '") +
                                          static_cast<char>(c) + "'");
        }
        return t;
    }

private:
    std::istream& in_;
    std::size_t line_ = 1;
};

void gml_skip_value(GmlLexer& lex, const GmlToken& value) {
    if (value.type == GmlToken::Type::open) {
        int depth = 1;
        while (depth > 0) {
            GmlToken t = lex.next();
            if (t.type == GmlToken::Type::eof) throw ParseFailure(t.line, "unbalanced brackets");
            if (t.type == GmlToken::Type::open) ++depth;
            if (t.type == GmlToken::Type::close) --depth;
        }
    }
    // scalar values need no skipping
}

Network read_gml(std::istream& in) {
    GmlLexer lex(in);
    GmlToken t = lex.next();
    if (t.type != GmlToken::Type::key || t.value != "graph")
        throw ParseFailure(t.line, "expected top-level graph block");
    t = lex.next();
    if (t.type != GmlToken::Type::open) throw ParseFailure(t.line, "expected [ after graph");

    Network net;
    std::map<long, int> id_map;  // GML node id -> dense id
    struct PendingEdge {
        long source;
        long target;
        double weight;
        std::size_t line;
    };
    std::vector<PendingEdge> pending;

    while (true) {
        t = lex.next();
        if (t.type == GmlToken::Type::close) break;
        if (t.type != GmlToken::Type::key) throw ParseFailure(t.line, "expected key inside graph");
        if (t.value == "node") {
            GmlToken open = lex.next();
            if (open.type != GmlToken::Type::open) throw ParseFailure(open.line, "expected [ after node");
            std::optional<long> gml_id;
            std::optional<std::string> label;
            while (true) {
                GmlToken k = lex.next();
                if (k.type == GmlToken::Type::close) break;
                if (k.type != GmlToken::Type::key) throw ParseFailure(k.line, "expected node attribute");
                GmlToken v = lex.next();
                if (k.value == "id" && v.type == GmlToken::Type::number) {
                    gml_id = parse_int(v.value, v.line, "node id");
                } else if (k.value == "label" && v.type == GmlToken::Type::string) {
                    label = v.value;
                } else {
                    gml_skip_value(lex, v);
                }
            }
            if (!gml_id) throw ParseFailure(open.line, "node without id");
            if (id_map.count(*gml_id)) throw ParseFailure(open.line, "duplicate node id");
            int dense = net.ensure_node(label ? *label : std::to_string(*gml_id));
            id_map[*gml_id] = dense;
        } else if (t.value == "edge") {
            GmlToken open = lex.next();
            if (open.type != GmlToken::Type::open) throw ParseFailure(open.line, "expected [ after edge");
            PendingEdge e{0, 0, 1.0, open.line};
            bool have_source = false, have_target = false;
            while (true) {
                GmlToken k = lex.next();
                if (k.type == GmlToken::Type::close) break;
                if (k.type != GmlToken::Type::key) throw ParseFailure(k.line, "expected edge attribute");
                GmlToken v = lex.next();
                if (k.value == "source" && v.type == GmlToken::Type::number) {
                    e.source = parse_int(v.value, v.line, "edge source");
                    have_source = true;
                } else if (k.value == "target" && v.type == GmlToken::Type::number) {
                    e.target = parse_int(v.value, v.line, "edge target");
                    have_target = true;
                } else if ((k.value == "weight" || k.value == "value") &&
                           v.type == GmlToken::Type::number) {
                    e.weight = parse_weight(v.value, v.line);
                } else {
                    gml_skip_value(lex, v);
                }
            }
            if (!have_source || !have_target)
                throw ParseFailure(open.line, "edge without source/target");
            pending.push_back(e);
        } else if (t.value == "directed") {
            GmlToken v = lex.next();
            if (v.type == GmlToken::Type::number && v.value != "0")
                throw ParseFailure(v.line, "directed graphs are not supported");
        } else {
            gml_skip_value(lex, lex.next());
        }
    }

    for (const PendingEdge& e : pending) {
        auto si = id_map.find(e.source);
        auto ti = id_map.find(e.target);
        if (si == id_map.end() || ti == id_map.end())
            throw ParseFailure(e.line, "edge references unknown node id");
        try {
            net.add_edge(si->second, ti->second, e.weight);
        } catch (const Error& err) {
            throw ParseFailure(e.line, err.what());
        }
    }
    return net;
}

}  // namespace

void write_network(const Network& net, NetFormat format, std::ostream& out) {
    switch (format) {
        case NetFormat::edge_tsv: write_edge_tsv(net, out); break;
        case NetFormat::pajek: write_pajek(net, out); break;
        case NetFormat::gml: write_gml(net, out); break;
    }
    if (!out) throw SinkFailure("network stream write error");
}

Network read_network(std::istream& in, NetFormat format) {
    switch (format) {
        case NetFormat::edge_tsv: return read_edge_tsv(in);
        case NetFormat::pajek: return read_pajek(in);
        case NetFormat::gml: return read_gml(in);
    }
    throw ParseFailure(0, "unknown format");
}

}  // namespace biblionet
