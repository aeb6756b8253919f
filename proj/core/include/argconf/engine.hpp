#pragma once

// Bottom-up evaluation of an argument document. Leaves take their opinion
// from (in order) an injection, the selected scenario, the node's own
// input, or the vacuous opinion. Every fan-in is folded by its pattern and
// then deduced into the parent goal with the site's conditionals.
// Assumptions attached through inContextOf are either tracked as a context
// set (conditional mode) or consumed by deduction (marginalize mode).

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "argconf/document.hpp"

namespace argconf {

enum class StepOp {
    input,
    default_vacuous,
    passthrough,  ///< strategy with a single supporter
    multiply,
    comultiply,
    fuse_cumulative,
    fuse_averaging,
    fuse_weighted,
    deduce,
    marginalize,
};

std::string to_string(StepOp op);

struct ProvenanceStep;

/// Either a reference to another node's result or a nested step.
struct ProvenanceOperand {
    std::string node;
    std::shared_ptr<const ProvenanceStep> step;
};

struct ProvenanceStep {
    StepOp op = StepOp::input;
    std::string node;  ///< node whose opinion this step produces; empty for intermediates
    std::vector<ProvenanceOperand> operands;
    Opinion result;

    std::string origin;  ///< input steps: "injected", "scenario <name>", "node"
    std::optional<Pattern> pattern;
    std::optional<double> gamma;
    std::optional<double> reset_base_rate;  ///< aggregate base rate replaced before deduction
    std::optional<ConditionalPair> conditionals;
    std::string conditionals_edge;
    std::optional<DeductionTrace> deduction;
};

struct NodeResult {
    std::string id;
    Opinion opinion;
    /// Opinion before context marginalization (the "G|A" claim), when any
    /// assumption was consumed at this node.
    std::optional<Opinion> conditional_opinion;
    std::set<std::string> context_set;
    std::set<std::string> consumed_contexts;
    std::shared_ptr<const ProvenanceStep> provenance;
    bool aggregate = false;  ///< produced by a pattern fold
};

struct Assessment {
    std::string scenario;  ///< empty when none was selected
    std::string root;
    std::map<std::string, NodeResult> results;
    /// Presentation order: goals breadth-first from the root, then strategies,
    /// solutions and assumptions.
    std::vector<std::string> order;
    std::vector<Diagnostic> warnings;
    Settings settings;

    const NodeResult& at(const std::string& id) const;
};

struct AssessOptions {
    std::optional<std::string> scenario;
    std::optional<ContextMode> context_mode;
    std::optional<AggregateBaseRate> aggregate_base_rate;
    std::optional<double> dogmatic_gamma;
    std::optional<double> prior_weight;
    /// Opinions forced onto leaves, overriding scenario and node inputs.
    std::map<std::string, Opinion> injections;
};

class UnknownScenario : public Error {
public:
    explicit UnknownScenario(const std::string& name)
        : Error("UNKNOWN_SCENARIO", "unknown scenario '" + name + "'") {}
};

class UnknownNode : public Error {
public:
    explicit UnknownNode(const std::string& id)
        : Error("UNKNOWN_NODE", "unknown node '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnresolvedConditionals : public Error {
public:
    explicit UnresolvedConditionals(const std::string& node)
        : Error("UNRESOLVED_CONDITIONALS", "no conditionals for the deduction at '" + node + "'") {}
};

class ContextReuse : public Error {
public:
    ContextReuse(const std::string& assumption, const std::string& node)
        : Error("CONTEXT_REUSE", "assumption '" + assumption + "' consumed again at '" + node +
                                     "'; it was already marginalized below"),
          assumption_(assumption) {}
    const std::string& assumption() const noexcept { return assumption_; }

private:
    std::string assumption_;
};

/// Numeric failure while evaluating a node; keeps the underlying code.
class AssessmentError : public Error {
public:
    AssessmentError(const std::string& node, const Error& cause)
        : Error(cause.code(), "at node '" + node + "': " + cause.what()), node_(node) {}
    const std::string& node() const noexcept { return node_; }

private:
    std::string node_;
};

/// Settings after applying the option overrides.
Settings effective_settings(const Document& d, const AssessOptions& options);

Assessment assess(const Document& d, const AssessOptions& options = {});

/// Depth-first rendering of a node's provenance tree; referenced nodes are
/// expanded in place.
std::string explain(const Assessment& a, const std::string& node);

}  // namespace argconf
