#pragma once

// Typed model of an assurance argument (GSN-style goals, strategies,
// solutions and contextual elements), its structural validation, and the
// resolution of every support fan-in to an aggregation pattern plus a
// single deduction site.
//
// Edges are stored parent -> supporter, the way the diagram is drawn.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "argconf/settings.hpp"

namespace argconf {

enum class NodeKind { goal, strategy, solution, assumption, context, justification };
enum class EdgeKind { supported_by, in_context_of };

std::string to_string(NodeKind kind);
std::string to_string(EdgeKind kind);
std::optional<NodeKind> parse_node_kind(const std::string& token);
std::optional<EdgeKind> parse_edge_kind(const std::string& token);

struct ArgNode {
    std::string id;
    NodeKind kind = NodeKind::goal;
    std::string statement;
    std::optional<OpinionSource> input;
    std::optional<Pattern> pattern;

    friend bool operator==(const ArgNode&, const ArgNode&) = default;
};

/// Conditionals attached to an edge. On a supportedBy edge `pos` is
/// required. On an inContextOf edge `pos` may be omitted, in which case the
/// framed element's own opinion is used when the context is marginalized.
struct EdgeConditionals {
    std::optional<Opinion> pos;
    Opinion neg = Opinion::certain_false();
    std::optional<double> base_rate;

    ConditionalPair pair_with(const Opinion& fallback_pos) const {
        return {pos.value_or(fallback_pos), neg, base_rate};
    }

    friend bool operator==(const EdgeConditionals&, const EdgeConditionals&) = default;
};

struct ArgEdge {
    std::string source;
    std::string target;
    EdgeKind kind = EdgeKind::supported_by;
    std::optional<EdgeConditionals> conditionals;

    friend bool operator==(const ArgEdge&, const ArgEdge&) = default;
};

struct ArgumentGraph {
    std::vector<ArgNode> nodes;  ///< declaration order
    std::vector<ArgEdge> edges;  ///< declaration order
    std::string root;  ///< filled by `find_root` / document parsing

    const ArgNode* find(const std::string& id) const;
    ArgNode* find(const std::string& id);

    /// Indices into `edges` of outgoing edges of `kind`, declaration order.
    std::vector<std::size_t> out_edges(const std::string& id, EdgeKind kind) const;
    /// Supporter ids of `id`, declaration order.
    std::vector<std::string> supporters(const std::string& id) const;

    friend bool operator==(const ArgumentGraph&, const ArgumentGraph&) = default;
};

/// Constant-time node and adjacency lookups over a graph that is not
/// modified while the index lives.
class GraphIndex {
public:
    explicit GraphIndex(const ArgumentGraph& g);

    const ArgNode* find(const std::string& id) const;
    /// Same contents as `ArgumentGraph::out_edges`.
    const std::vector<std::size_t>& out_edges(const std::string& id, EdgeKind kind) const;

private:
    std::unordered_map<std::string, const ArgNode*> nodes_;
    std::unordered_map<std::string, std::vector<std::size_t>> supported_by_;
    std::unordered_map<std::string, std::vector<std::size_t>> in_context_of_;
};

struct Diagnostic {
    std::string code;
    std::string locus;  ///< node id or "source->target" for edges
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
    friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationReport {
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;

    bool ok() const noexcept { return errors.empty(); }
    bool has_error(const std::string& code) const;
    bool has_warning(const std::string& code) const;
};

/// Id of the unique goal without an incoming supportedBy edge, if any.
std::optional<std::string> find_root(const ArgumentGraph& g);

/// Structural checks. Diagnostics are sorted, so the report does not depend
/// on declaration order.
///
/// Error codes: CYCLE, NO_ROOT, MULTIPLE_ROOTS, ROOT_NOT_GOAL, DANGLING_EDGE,
/// DUPLICATE_ID, INVALID_ID, EDGE_KIND, INPUT_NOT_ALLOWED,
/// PATTERN_NOT_ALLOWED, PATTERN_ARITY, MISSING_PATTERN, MISSING_CONDITIONALS,
/// CONFLICTING_CONDITIONALS, MISPLACED_CONDITIONALS, INCOMPLETE_CONDITIONALS,
/// INVALID_OPINION, INVALID_PATTERN, UNKNOWN_LEVEL.
/// Warning codes: DEPENDENT_SUPPORT, IMPLICIT_PATTERN, UNREACHABLE,
/// INPUT_SHADOWED.
ValidationReport validate_argument(const ArgumentGraph& g, const Settings& settings);

class MissingPattern : public Error {
public:
    explicit MissingPattern(const std::string& node)
        : Error("MISSING_PATTERN", "fan-in at '" + node + "' has no pattern and implicit "
                                   "patterns are disabled"),
          node_(node) {}
    const std::string& node() const noexcept { return node_; }

private:
    std::string node_;
};

/// Returns a copy in which every fan-in node carries an explicit pattern and
/// every deduction site carries its conditional pair on the first supporter
/// edge of the deducing goal. Defaults come from `settings`; implicit
/// patterns are reported through `warnings` when non-null.
///
/// Precondition: validate_argument(g, settings).ok(). Idempotent.
ArgumentGraph resolve_patterns(const ArgumentGraph& g, const Settings& settings,
                               std::vector<Diagnostic>* warnings = nullptr);

/// Ids admitted in documents: [A-Za-z0-9_.-]+.
bool is_valid_id(const std::string& id);

}  // namespace argconf
