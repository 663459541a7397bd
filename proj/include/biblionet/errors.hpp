#pragma once

#include <stdexcept>
#include <string>

namespace biblionet {

/// Base class for every error the library raises on bad data or bad calls.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- ingest ---

class MissingColumn : public Error {
public:
    explicit MissingColumn(const std::string& name)
        : Error("missing required column: " + name), column(name) {}
    std::string column;
};

class MalformedRow : public Error {
public:
    MalformedRow(std::size_t line, const std::string& detail)
        : Error("malformed row at line " + std::to_string(line) + ": " + detail), line(line) {}
    std::size_t line;
};

class BadYear : public Error {
public:
    BadYear(std::size_t line, const std::string& cell)
        : Error("bad year at line " + std::to_string(line) + ": \"" + cell + "\""), line(line) {}
    std::size_t line;
};

class EmptyMerge : public Error {
public:
    EmptyMerge() : Error("merge produced no records") {}
};

// --- netcore ---

class SelfLoop : public Error {
public:
    explicit SelfLoop(int node) : Error("self loop on node " + std::to_string(node)) {}
};

class UnknownNode : public Error {
public:
    explicit UnknownNode(const std::string& which) : Error("unknown node: " + which) {}
    explicit UnknownNode(int id) : Error("unknown node id: " + std::to_string(id)) {}
};

class BadWeight : public Error {
public:
    explicit BadWeight(double w) : Error("edge weight must be > 0, got " + std::to_string(w)) {}
};

class SinkFailure : public Error {
public:
    explicit SinkFailure(const std::string& detail) : Error("write failed: " + detail) {}
};

class ParseFailure : public Error {
public:
    ParseFailure(std::size_t line, const std::string& detail)
        : Error("parse failure at line " + std::to_string(line) + ": " + detail), line(line) {}
    std::size_t line;
};

// --- builders ---

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("corpus has no records") {}
};

class BadSpec : public Error {
public:
    explicit BadSpec(const std::string& detail) : Error("bad build spec: " + detail) {}
};

// --- metrics ---

class IsolatedNode : public Error {
public:
    explicit IsolatedNode(int node)
        : Error("node " + std::to_string(node) + " has zero total link strength") {}
};

class DegenerateGraph : public Error {
public:
    DegenerateGraph() : Error("centrality needs at least 2 nodes") {}
};

class BadProbability : public Error {
public:
    explicit BadProbability(double p)
        : Error("probability outside [0, 1]: " + std::to_string(p)) {}
};

class AlreadyNormalized : public Error {
public:
    AlreadyNormalized() : Error("network weights are already association-strength normalized") {}
};

// --- cluster ---

class PartialAssignment : public Error {
public:
    explicit PartialAssignment(const std::string& detail)
        : Error("partial cluster assignment: " + detail) {}
};

class BadResolution : public Error {
public:
    explicit BadResolution(double g)
        : Error("resolution must be > 0, got " + std::to_string(g)) {}
};

// --- quartile ---

class DuplicateEntry : public Error {
public:
    explicit DuplicateEntry(const std::string& key) : Error("duplicate table entry: " + key) {}
};

class BadQuartile : public Error {
public:
    explicit BadQuartile(const std::string& value) : Error("not a quartile: \"" + value + "\"") {}
};

// --- IO plumbing ---

class IoFailure : public Error {
public:
    explicit IoFailure(const std::string& detail) : Error(detail) {}
};

}  // namespace biblionet
