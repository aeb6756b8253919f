#pragma once

// Argument documents: JSON (or the equivalent YAML) holding settings, the
// argument graph and named input scenarios.
//
//   {"version": "1",
//    "settings": {...},
//    "nodes": [{"id", "kind", "statement"?, "opinion"?, "pattern"?}],
//    "edges": [{"source", "target", "kind", "conditionals"?}],
//    "scenarios": {"name": {"nodeId": <opinion source>}}}
//
// An opinion source is {b, d, u, a?}, {evidence: {r, s, W?, a?}} or
// {qualitative: level}.

#include <filesystem>
#include <string>
#include <vector>

#include "argconf/argument.hpp"

namespace argconf {

inline constexpr const char* kDocumentVersion = "1";

struct Scenario {
    std::string name;
    std::map<std::string, OpinionSource> assignments;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Document {
    std::string version = kDocumentVersion;
    Settings settings;
    ArgumentGraph graph;
    std::vector<Scenario> scenarios;  ///< declaration order

    const Scenario* find_scenario(const std::string& name) const;

    friend bool operator==(const Document&, const Document&) = default;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& detail)
        : Error("SYNTAX_ERROR", "syntax error at line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + detail),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& detail)
        : Error("SCHEMA_ERROR", "schema error at " + (path.empty() ? "<document>" : path) + ": " +
                                    detail),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class ValidationFailed : public Error {
public:
    explicit ValidationFailed(ValidationReport report);

    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("IO_ERROR", msg) {}
};

/// Parses JSON (text starting with '{') or YAML. Throws SyntaxError,
/// SchemaError or ValidationFailed.
Document parse_document(const std::string& text);

/// Parses without running structural validation. Used by `validate`, which
/// wants the report rather than an exception.
Document parse_document_unchecked(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

/// Canonical JSON: fixed key order, defaults omitted, numbers rendered with
/// at most 12 significant digits.
std::string serialize_document(const Document& d);

/// Formats a number with at most 12 significant digits.
std::string format_number(double v);

}  // namespace argconf
