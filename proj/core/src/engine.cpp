#include "argconf/engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "argconf/display.hpp"

namespace argconf {

namespace {

using StepPtr = std::shared_ptr<const ProvenanceStep>;

StepOp fold_op(PatternKind kind) {
    switch (kind) {
    case PatternKind::conjunction:
        return StepOp::multiply;
    case PatternKind::disjunction:
        return StepOp::comultiply;
    case PatternKind::fusion_cumulative:
        return StepOp::fuse_cumulative;
    case PatternKind::fusion_averaging:
        return StepOp::fuse_averaging;
    case PatternKind::fusion_weighted:
        return StepOp::fuse_weighted;
    }
    return StepOp::multiply;
}

Opinion combine(PatternKind kind, const Opinion& x, const Opinion& y, double gamma) {
    switch (kind) {
    case PatternKind::conjunction:
        return multiply(x, y);
    case PatternKind::disjunction:
        return comultiply(x, y);
    case PatternKind::fusion_cumulative:
        return fuse(x, y, FusionMode::cumulative(gamma));
    case PatternKind::fusion_averaging:
        return fuse(x, y, FusionMode::averaging());
    case PatternKind::fusion_weighted:
        return fuse(x, y, FusionMode::weighted(gamma));
    }
    return x;
}

class Evaluator {
public:
    Evaluator(const ArgumentGraph& graph, const Settings& settings, const Scenario* scenario,
              const std::map<std::string, Opinion>& injections)
        : graph_(graph), index_(graph), settings_(settings), scenario_(scenario), injections_(injections) {}

    const NodeResult& evaluate(const std::string& id) {
        if (const auto it = results_.find(id); it != results_.end()) {
            return it->second;
        }
        const ArgNode* node = index_.find(id);
        if (!node) {
            throw UnknownNode(id);
        }
        NodeResult r;
        try {
            r = compute(*node);
        } catch (const AssessmentError&) {
            throw;
        } catch (const ContextReuse&) {
            throw;
        } catch (const UnresolvedConditionals&) {
            throw;
        } catch (const NumericError& e) {
            throw AssessmentError(id, e);
        }
        return results_.emplace(id, std::move(r)).first->second;
    }

    std::map<std::string, NodeResult> take_results() { return std::move(results_); }
    std::vector<Diagnostic> take_warnings() { return std::move(warnings_); }

private:
    NodeResult leaf(const ArgNode& node) {
        auto step = std::make_shared<ProvenanceStep>();
        step->node = node.id;
        step->op = StepOp::input;
        if (const auto it = injections_.find(node.id); it != injections_.end()) {
            step->result = validate_opinion(it->second);
            step->origin = "injected";
        } else if (const auto* src = scenario_source(node.id)) {
            step->result = resolve_source(*src, settings_);
            step->origin = "scenario " + scenario_->name;
        } else if (node.input) {
            step->result = resolve_source(*node.input, settings_);
            step->origin = "node";
        } else {
            step->result = Opinion::vacuous(settings_.default_base_rate);
            step->op = StepOp::default_vacuous;
        }
        NodeResult r;
        r.id = node.id;
        r.opinion = step->result;
        r.provenance = std::move(step);
        return r;
    }

    const OpinionSource* scenario_source(const std::string& id) const {
        if (!scenario_) return nullptr;
        const auto it = scenario_->assignments.find(id);
        return it == scenario_->assignments.end() ? nullptr : &it->second;
    }

    NodeResult compute(const ArgNode& node) {
        const auto& supporter_edges = index_.out_edges(node.id, EdgeKind::supported_by);
        NodeResult r;
        if (supporter_edges.empty()) {
            r = leaf(node);
        } else {
            if (injections_.count(node.id) || scenario_source(node.id)) {
                warnings_.push_back({"ASSIGNMENT_SHADOWED", node.id,
                                     "scenario or injected opinion ignored on a supported node"});
            }
            r = support(node, supporter_edges);
        }
        apply_contexts(node, r);
        return r;
    }

    NodeResult support(const ArgNode& node, const std::vector<std::size_t>& edge_ids) {
        NodeResult r;
        r.id = node.id;

        std::vector<const NodeResult*> children;
        for (const auto i : edge_ids) {
            const NodeResult& child = evaluate(graph_.edges[i].target);
            children.push_back(&child);
            r.context_set.insert(child.context_set.begin(), child.context_set.end());
            r.consumed_contexts.insert(child.consumed_contexts.begin(),
                                       child.consumed_contexts.end());
        }

        // Aggregate.
        Opinion agg;
        ProvenanceOperand agg_operand;
        bool aggregate = false;
        if (children.size() == 1) {
            agg = children.front()->opinion;
            agg_operand.node = children.front()->id;
            aggregate = children.front()->aggregate;
            // A strategy over a single supporter forwards it unchanged.
            if (node.kind == NodeKind::strategy) {
                auto step = std::make_shared<ProvenanceStep>();
                step->op = StepOp::passthrough;
                step->node = node.id;
                step->operands.push_back(agg_operand);
                step->result = agg;
                r.opinion = agg;
                r.aggregate = children.front()->aggregate;
                r.provenance = std::move(step);
                return r;
            }
        } else {
            const Pattern pattern = node.pattern.value_or(settings_.implicit_pattern);
            const double gamma = pattern.gamma.value_or(settings_.dogmatic_gamma);
            auto step = std::make_shared<ProvenanceStep>();
            step->op = fold_op(pattern.kind);
            step->pattern = pattern;
            if (pattern.kind == PatternKind::fusion_cumulative ||
                pattern.kind == PatternKind::fusion_weighted) {
                step->gamma = gamma;
            }
            agg = children.front()->opinion;
            step->operands.push_back({children.front()->id, nullptr});
            for (std::size_t i = 1; i < children.size(); ++i) {
                agg = combine(pattern.kind, agg, children[i]->opinion, gamma);
                step->operands.push_back({children[i]->id, nullptr});
            }
            step->result = agg;
            aggregate = true;
            if (node.kind == NodeKind::strategy) {
                step->node = node.id;
                r.opinion = agg;
                r.aggregate = true;
                r.provenance = std::move(step);
                return r;
            }
            agg_operand.step = std::move(step);
        }

        // Deduction into the goal.
        const ArgEdge& site = graph_.edges[edge_ids.front()];
        if (!site.conditionals || !site.conditionals->pos) {
            throw UnresolvedConditionals(node.id);
        }
        const ConditionalPair pair = site.conditionals->pair_with(*site.conditionals->pos);

        auto step = std::make_shared<ProvenanceStep>();
        step->op = StepOp::deduce;
        step->node = node.id;
        if (aggregate && settings_.aggregate_base_rate == AggregateBaseRate::default_reset) {
            agg.a = settings_.default_base_rate;
            step->reset_base_rate = settings_.default_base_rate;
        }
        const DeductionResult ded = deduce_traced(agg, pair, settings_.default_base_rate);
        step->operands.push_back(std::move(agg_operand));
        step->conditionals = pair;
        step->conditionals_edge = site.source + "->" + site.target;
        step->deduction = ded.trace;
        step->result = ded.opinion;

        r.opinion = ded.opinion;
        r.provenance = std::move(step);
        return r;
    }

    void apply_contexts(const ArgNode& node, NodeResult& r) {
        std::vector<std::string> assumptions;
        std::optional<std::size_t> conditioned_edge;
        for (const auto i : index_.out_edges(node.id, EdgeKind::in_context_of)) {
            const ArgEdge& e = graph_.edges[i];
            const ArgNode* target = index_.find(e.target);
            if (!target || target->kind != NodeKind::assumption) continue;
            if (std::find(assumptions.begin(), assumptions.end(), e.target) == assumptions.end()) {
                assumptions.push_back(e.target);
            }
            if (e.conditionals && !conditioned_edge) conditioned_edge = i;
        }
        if (assumptions.empty()) return;

        std::vector<const NodeResult*> contexts;
        for (const auto& id : assumptions) contexts.push_back(&evaluate(id));

        if (settings_.context_mode == ContextMode::conditional) {
            r.context_set.insert(assumptions.begin(), assumptions.end());
            return;
        }

        for (const auto& id : assumptions) {
            if (r.consumed_contexts.count(id)) throw ContextReuse(id, node.id);
        }

        // Several assumptions are conjoined into one antecedent.
        Opinion antecedent = contexts.front()->opinion;
        ProvenanceOperand antecedent_operand{contexts.front()->id, nullptr};
        if (contexts.size() > 1) {
            auto conj = std::make_shared<ProvenanceStep>();
            conj->op = StepOp::multiply;
            conj->operands.push_back({contexts.front()->id, nullptr});
            for (std::size_t i = 1; i < contexts.size(); ++i) {
                antecedent = multiply(antecedent, contexts[i]->opinion);
                conj->operands.push_back({contexts[i]->id, nullptr});
            }
            conj->result = antecedent;
            antecedent_operand = {"", std::move(conj)};
        }

        ConditionalPair pair{r.opinion, Opinion::certain_false(settings_.default_base_rate),
                             std::nullopt};
        std::string edge_locus = node.id + "->" + assumptions.front();
        if (conditioned_edge) {
            const ArgEdge& e = graph_.edges[*conditioned_edge];
            pair = e.conditionals->pair_with(r.opinion);
            edge_locus = e.source + "->" + e.target;
        }
        const DeductionResult ded = deduce_traced(antecedent, pair, settings_.default_base_rate);

        auto step = std::make_shared<ProvenanceStep>();
        step->op = StepOp::marginalize;
        step->node = node.id;
        step->operands.push_back(std::move(antecedent_operand));
        auto conditional = std::make_shared<ProvenanceStep>(*r.provenance);
        conditional->node = node.id + "|";
        for (std::size_t i = 0; i < assumptions.size(); ++i) {
            conditional->node += (i ? "," : "") + assumptions[i];
        }
        step->operands.push_back({"", std::move(conditional)});
        step->conditionals = pair;
        step->conditionals_edge = edge_locus;
        step->deduction = ded.trace;
        step->result = ded.opinion;

        r.conditional_opinion = r.opinion;
        r.opinion = ded.opinion;
        r.consumed_contexts.insert(assumptions.begin(), assumptions.end());
        r.provenance = std::move(step);
    }

    const ArgumentGraph& graph_;
    GraphIndex index_;
    const Settings& settings_;
    const Scenario* scenario_;
    const std::map<std::string, Opinion>& injections_;
    std::map<std::string, NodeResult> results_;
    std::vector<Diagnostic> warnings_;
};

std::vector<std::string> presentation_order(const ArgumentGraph& g,
                                            const std::map<std::string, NodeResult>& results) {
    const GraphIndex index(g);
    std::vector<std::string> bfs;
    std::set<std::string> seen{g.root};
    std::deque<std::string> queue{g.root};
    while (!queue.empty()) {
        const std::string id = queue.front();
        queue.pop_front();
        bfs.push_back(id);
        for (const auto kind : {EdgeKind::supported_by, EdgeKind::in_context_of}) {
            for (const auto i : index.out_edges(id, kind)) {
                const auto& t = g.edges[i].target;
                if (seen.insert(t).second) queue.push_back(t);
            }
        }
    }
    std::vector<std::string> order;
    for (const auto kind :
         {NodeKind::goal, NodeKind::strategy, NodeKind::solution, NodeKind::assumption}) {
        for (const auto& id : bfs) {
            const ArgNode* n = index.find(id);
            if (n && n->kind == kind && results.count(id)) order.push_back(id);
        }
    }
    return order;
}

}  // namespace

std::string to_string(StepOp op) {
    switch (op) {
    case StepOp::input:
        return "input";
    case StepOp::default_vacuous:
        return "default-vacuous";
    case StepOp::passthrough:
        return "passthrough";
    case StepOp::multiply:
        return "multiply";
    case StepOp::comultiply:
        return "comultiply";
    case StepOp::fuse_cumulative:
        return "fuse-cumulative";
    case StepOp::fuse_averaging:
        return "fuse-averaging";
    case StepOp::fuse_weighted:
        return "fuse-weighted";
    case StepOp::deduce:
        return "deduce";
    case StepOp::marginalize:
        return "marginalize";
    }
    return "unknown";
}

const NodeResult& Assessment::at(const std::string& id) const {
    const auto it = results.find(id);
    if (it == results.end()) throw UnknownNode(id);
    return it->second;
}

Settings effective_settings(const Document& d, const AssessOptions& options) {
    Settings s = d.settings;
    if (options.context_mode) s.context_mode = *options.context_mode;
    if (options.aggregate_base_rate) s.aggregate_base_rate = *options.aggregate_base_rate;
    if (options.dogmatic_gamma) s.dogmatic_gamma = *options.dogmatic_gamma;
    if (options.prior_weight) s.prior_weight = *options.prior_weight;
    check_settings(s);
    return s;
}

Assessment assess(const Document& d, const AssessOptions& options) {
    const Settings settings = effective_settings(d, options);

    const Scenario* scenario = nullptr;
    if (options.scenario) {
        scenario = d.find_scenario(*options.scenario);
        if (!scenario) throw UnknownScenario(*options.scenario);
        for (const auto& [id, _] : scenario->assignments) {
            if (!d.graph.find(id)) throw UnknownNode(id);
        }
    }
    for (const auto& [id, _] : options.injections) {
        if (!d.graph.find(id)) throw UnknownNode(id);
    }

    ValidationReport report = validate_argument(d.graph, settings);
    if (!report.ok()) throw ValidationFailed(std::move(report));

    const ArgumentGraph graph = resolve_patterns(d.graph, settings);

    Evaluator evaluator(graph, settings, scenario, options.injections);
    evaluator.evaluate(graph.root);

    Assessment a;
    a.scenario = scenario ? scenario->name : "";
    a.root = graph.root;
    a.settings = settings;
    a.results = evaluator.take_results();
    a.order = presentation_order(graph, a.results);
    a.warnings = report.warnings;
    for (auto& w : evaluator.take_warnings()) a.warnings.push_back(std::move(w));
    std::sort(a.warnings.begin(), a.warnings.end());
    a.warnings.erase(std::unique(a.warnings.begin(), a.warnings.end()), a.warnings.end());
    return a;
}

namespace {

void render(std::ostringstream& out, const Assessment& a, const ProvenanceStep& step,
            const std::string& label, int depth) {
    const int p = a.settings.display_precision;
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out << indent << (label.empty() ? "*" : label) << " = " << to_string(step.op) << " "
        << format_triple(step.result, p) << " a=" << format_fixed(step.result.a, 5);
    if (!step.origin.empty()) out << " [" << step.origin << "]";
    if (step.pattern) out << " pattern=" << to_string(step.pattern->kind);
    if (step.gamma) out << " gamma=" << format_fixed(*step.gamma, 5);
    if (step.reset_base_rate) out << " aggregate-base-rate-reset=" << format_fixed(*step.reset_base_rate, 5);
    if (step.deduction) {
        out << " a_y=" << format_fixed(step.deduction->consequent_base_rate, 5)
            << " u_apex=" << format_fixed(step.deduction->apex_uncertainty, 5)
            << " K=" << format_fixed(step.deduction->uncertainty_increase, 5);
    }
    out << "\n";
    if (step.conditionals) {
        out << indent << "  conditionals " << step.conditionals_edge << ": pos "
            << format_triple(step.conditionals->pos, p) << " neg "
            << format_triple(step.conditionals->neg, p) << "\n";
    }
    for (const auto& operand : step.operands) {
        if (operand.step) {
            render(out, a, *operand.step, operand.step->node, depth + 1);
        } else {
            const NodeResult& ref = a.at(operand.node);
            render(out, a, *ref.provenance, operand.node, depth + 1);
        }
    }
}

}  // namespace

std::string explain(const Assessment& a, const std::string& node) {
    const NodeResult& r = a.at(node);
    std::ostringstream out;
    render(out, a, *r.provenance, node, 0);
    return out.str();
}

}  // namespace argconf
