#include "argconf/argument.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

namespace argconf {

namespace {

constexpr std::array<std::pair<NodeKind, const char*>, 6> kNodeKindNames{{
    {NodeKind::goal, "goal"},
    {NodeKind::strategy, "strategy"},
    {NodeKind::solution, "solution"},
    {NodeKind::assumption, "assumption"},
    {NodeKind::context, "context"},
    {NodeKind::justification, "justification"},
}};

std::string edge_locus(const ArgEdge& e) { return e.source + "->" + e.target; }

bool accepts_input(NodeKind k) {
    return k == NodeKind::solution || k == NodeKind::goal || k == NodeKind::assumption;
}

bool accepts_pattern(NodeKind k) { return k == NodeKind::strategy || k == NodeKind::goal; }

bool can_support(NodeKind k) { return k == NodeKind::goal || k == NodeKind::strategy; }

bool is_supporter(NodeKind k) {
    return k == NodeKind::goal || k == NodeKind::strategy || k == NodeKind::solution;
}

bool is_contextual(NodeKind k) {
    return k == NodeKind::assumption || k == NodeKind::context || k == NodeKind::justification;
}

struct Reporter {
    ValidationReport report;

    void error(std::string code, std::string locus, std::string message) {
        report.errors.push_back({std::move(code), std::move(locus), std::move(message)});
    }
    void warning(std::string code, std::string locus, std::string message) {
        report.warnings.push_back({std::move(code), std::move(locus), std::move(message)});
    }

    ValidationReport finish() {
        for (auto* list : {&report.errors, &report.warnings}) {
            std::sort(list->begin(), list->end());
            list->erase(std::unique(list->begin(), list->end()), list->end());
        }
        return std::move(report);
    }
};

/// Adjacency of supportedBy edges between existing nodes, sorted targets.
using Adjacency = std::map<std::string, std::vector<std::string>>;

Adjacency support_adjacency(const ArgumentGraph& g, const std::set<std::string>& ids) {
    Adjacency adj;
    for (const auto& id : ids) {
        adj[id];
    }
    for (const auto& e : g.edges) {
        if (e.kind == EdgeKind::supported_by && ids.count(e.source) && ids.count(e.target)) {
            adj[e.source].push_back(e.target);
        }
    }
    for (auto& [_, targets] : adj) {
        std::sort(targets.begin(), targets.end());
    }
    return adj;
}

/// Nodes lying on or between supportedBy cycles: what remains after
/// repeatedly peeling sources and sinks.
std::set<std::string> cyclic_nodes(const Adjacency& adj) {
    std::map<std::string, int> indeg, outdeg;
    std::map<std::string, std::vector<std::string>> reverse;
    for (const auto& [s, targets] : adj) {
        indeg[s];
        outdeg[s] += static_cast<int>(targets.size());
        for (const auto& t : targets) {
            ++indeg[t];
            reverse[t].push_back(s);
        }
    }
    std::set<std::string> alive;
    for (const auto& [id, _] : adj) {
        alive.insert(id);
    }
    std::vector<std::string> queue;
    for (const auto& id : alive) {
        if (indeg[id] == 0 || outdeg[id] == 0) {
            queue.push_back(id);
        }
    }
    while (!queue.empty()) {
        const std::string id = queue.back();
        queue.pop_back();
        if (!alive.erase(id)) {
            continue;
        }
        for (const auto& t : adj.at(id)) {
            if (alive.count(t) && --indeg[t] == 0) {
                queue.push_back(t);
            }
        }
        for (const auto& s : reverse[id]) {
            if (alive.count(s) && --outdeg[s] == 0) {
                queue.push_back(s);
            }
        }
    }
    return alive;
}

void check_opinion(Reporter& rep, const Opinion& o, const std::string& locus,
                   const std::string& what) {
    if (!is_valid_opinion(o)) {
        rep.error("INVALID_OPINION", locus, what + " is not a valid opinion");
    }
}

}  // namespace

std::string to_string(NodeKind kind) {
    for (const auto& [k, name] : kNodeKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::string to_string(EdgeKind kind) {
    return kind == EdgeKind::supported_by ? "supportedBy" : "inContextOf";
}

std::optional<NodeKind> parse_node_kind(const std::string& token) {
    for (const auto& [k, name] : kNodeKindNames) {
        if (token == name) return k;
    }
    return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(const std::string& token) {
    if (token == "supportedBy") return EdgeKind::supported_by;
    if (token == "inContextOf") return EdgeKind::in_context_of;
    return std::nullopt;
}

bool is_valid_id(const std::string& id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '.' || c == '-';
    });
}

const ArgNode* ArgumentGraph::find(const std::string& id) const {
    const auto it = std::find_if(nodes.begin(), nodes.end(),
                                 [&](const ArgNode& n) { return n.id == id; });
    return it == nodes.end() ? nullptr : &*it;
}

ArgNode* ArgumentGraph::find(const std::string& id) {
    return const_cast<ArgNode*>(std::as_const(*this).find(id));
}

std::vector<std::size_t> ArgumentGraph::out_edges(const std::string& id, EdgeKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].source == id && edges[i].kind == kind) {
            out.push_back(i);
        }
    }
    return out;
}

GraphIndex::GraphIndex(const ArgumentGraph& g) {
    nodes_.reserve(g.nodes.size());
    for (const auto& n : g.nodes) nodes_.try_emplace(n.id, &n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const ArgEdge& e = g.edges[i];
        auto& lists = e.kind == EdgeKind::supported_by ? supported_by_ : in_context_of_;
        lists[e.source].push_back(i);
    }
}

const ArgNode* GraphIndex::find(const std::string& id) const {
    const auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : it->second;
}

const std::vector<std::size_t>& GraphIndex::out_edges(const std::string& id,
                                                      EdgeKind kind) const {
    static const std::vector<std::size_t> none;
    const auto& lists = kind == EdgeKind::supported_by ? supported_by_ : in_context_of_;
    const auto it = lists.find(id);
    return it == lists.end() ? none : it->second;
}

std::vector<std::string> ArgumentGraph::supporters(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto i : out_edges(id, EdgeKind::supported_by)) {
        out.push_back(edges[i].target);
    }
    return out;
}

bool ValidationReport::has_error(const std::string& code) const {
    return std::any_of(errors.begin(), errors.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

bool ValidationReport::has_warning(const std::string& code) const {
    return std::any_of(warnings.begin(), warnings.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

std::optional<std::string> find_root(const ArgumentGraph& g) {
    std::set<std::string> supported;
    for (const auto& e : g.edges) {
        if (e.kind == EdgeKind::supported_by) supported.insert(e.target);
    }
    std::optional<std::string> root;
    for (const auto& n : g.nodes) {
        if (is_supporter(n.kind) && !supported.count(n.id)) {
            if (root || n.kind != NodeKind::goal) return std::nullopt;
            root = n.id;
        }
    }
    return root;
}

ValidationReport validate_argument(const ArgumentGraph& g, const Settings& settings) {
    Reporter rep;

    std::map<std::string, const ArgNode*> by_id;
    for (const auto& n : g.nodes) {
        if (!is_valid_id(n.id)) {
            rep.error("INVALID_ID", n.id, "id must match [A-Za-z0-9_.-]+");
        }
        if (!by_id.emplace(n.id, &n).second) {
            rep.error("DUPLICATE_ID", n.id, "id declared more than once");
        }
        if (n.input) {
            if (!accepts_input(n.kind)) {
                rep.error("INPUT_NOT_ALLOWED", n.id,
                          "input opinions are not allowed on " + to_string(n.kind) + " nodes");
            }
            try {
                resolve_source(*n.input, settings);
            } catch (const UnknownLevel& e) {
                rep.error("UNKNOWN_LEVEL", n.id, e.what());
            } catch (const Error& e) {
                rep.error("INVALID_OPINION", n.id, e.what());
            }
        }
        if (n.pattern) {
            if (!accepts_pattern(n.kind)) {
                rep.error("PATTERN_NOT_ALLOWED", n.id,
                          "patterns are not allowed on " + to_string(n.kind) + " nodes");
            }
            if (n.pattern->gamma && !(*n.pattern->gamma >= 0.0 && *n.pattern->gamma <= 1.0)) {
                rep.error("INVALID_PATTERN", n.id, "pattern gamma outside [0, 1]");
            }
        }
    }

    std::set<std::string> ids;
    for (const auto& [id, _] : by_id) ids.insert(id);

    for (const auto& e : g.edges) {
        const std::string locus = edge_locus(e);
        const auto src = by_id.find(e.source);
        const auto dst = by_id.find(e.target);
        if (src == by_id.end() || dst == by_id.end()) {
            rep.error("DANGLING_EDGE", locus, "edge references an undeclared node");
            continue;
        }
        const NodeKind sk = src->second->kind;
        const NodeKind tk = dst->second->kind;
        if (e.kind == EdgeKind::supported_by) {
            if (!can_support(sk) || !is_supporter(tk)) {
                rep.error("EDGE_KIND", locus,
                          "supportedBy must lead from a goal or strategy to a goal, strategy "
                          "or solution");
            }
            if (e.conditionals) {
                if (sk == NodeKind::strategy) {
                    rep.error("MISPLACED_CONDITIONALS", locus,
                              "conditionals belong on the goal-side edge of a strategy");
                }
                if (!e.conditionals->pos) {
                    rep.error("INCOMPLETE_CONDITIONALS", locus,
                              "supportedBy conditionals need a positive conditional");
                }
            }
        } else {
            if (!can_support(sk) || !is_contextual(tk)) {
                rep.error("EDGE_KIND", locus,
                          "inContextOf must lead from a goal or strategy to an assumption, "
                          "context or justification");
            }
            if (e.conditionals && tk != NodeKind::assumption) {
                rep.error("MISPLACED_CONDITIONALS", locus,
                          "only assumptions are marginalized through conditionals");
            }
        }
        if (e.conditionals) {
            if (e.conditionals->pos) {
                check_opinion(rep, *e.conditionals->pos, locus, "positive conditional");
            }
            check_opinion(rep, e.conditionals->neg, locus, "negative conditional");
            if (e.conditionals->base_rate &&
                !(*e.conditionals->base_rate >= 0.0 && *e.conditionals->base_rate <= 1.0)) {
                rep.error("INVALID_OPINION", locus, "conditional base rate outside [0, 1]");
            }
        }
    }

    const Adjacency adj = support_adjacency(g, ids);
    const std::set<std::string> cyclic = cyclic_nodes(adj);
    if (!cyclic.empty()) {
        std::string members;
        for (const auto& id : cyclic) {
            members += (members.empty() ? "" : ",") + id;
        }
        rep.error("CYCLE", members, "supportedBy edges form a cycle");
    }

    std::set<std::string> supported;
    for (const auto& e : g.edges) {
        if (e.kind == EdgeKind::supported_by && ids.count(e.target)) supported.insert(e.target);
    }
    std::vector<std::string> tops;
    for (const auto& [id, node] : by_id) {
        if (is_supporter(node->kind) && !supported.count(id)) tops.push_back(id);
    }
    std::optional<std::string> root;
    if (tops.empty()) {
        rep.error("NO_ROOT", "", "no goal is free of incoming supportedBy edges");
    } else if (tops.size() > 1) {
        std::string list;
        for (const auto& id : tops) list += (list.empty() ? "" : ",") + id;
        rep.error("MULTIPLE_ROOTS", list, "argument must have exactly one top-level goal");
    } else if (by_id.at(tops.front())->kind != NodeKind::goal) {
        rep.error("ROOT_NOT_GOAL", tops.front(), "top-level element must be a goal");
    } else {
        root = tops.front();
    }

    // Fan-ins and deduction sites.
    const GraphIndex index(g);
    for (const auto& [id, node] : by_id) {
        if (!can_support(node->kind)) continue;
        const auto& edge_ids = index.out_edges(id, EdgeKind::supported_by);
        const std::size_t fan = edge_ids.size();
        if (node->pattern && fan < 2) {
            rep.error("PATTERN_ARITY", id, "pattern nodes need at least two supporters");
        }
        if (fan >= 2 && !node->pattern) {
            if (settings.allow_implicit_pattern) {
                rep.warning("IMPLICIT_PATTERN", id,
                            "no pattern given; applying " +
                                to_string(settings.implicit_pattern.kind));
            } else {
                rep.error("MISSING_PATTERN", id, "fan-in without a pattern");
            }
        }
        if (node->kind == NodeKind::goal && fan >= 1) {
            std::vector<EdgeConditionals> distinct;
            for (const auto i : edge_ids) {
                const auto& c = g.edges[i].conditionals;
                if (c && std::find(distinct.begin(), distinct.end(), *c) == distinct.end()) {
                    distinct.push_back(*c);
                }
            }
            if (distinct.size() > 1) {
                rep.error("CONFLICTING_CONDITIONALS", id,
                          "supporter edges of one deduction site carry different conditionals");
            } else if (distinct.empty() && !settings.default_conditionals) {
                const std::string locus = fan == 1 ? edge_locus(g.edges[edge_ids.front()]) : id;
                rep.error("MISSING_CONDITIONALS", locus,
                          "deduction site has no conditionals and no default is configured");
            }
        }
        if (node->input && fan >= 1) {
            rep.warning("INPUT_SHADOWED", id, "input opinion ignored on a supported node");
        }
    }

    if (root && cyclic.empty()) {
        // Count root-to-node supportedBy paths; topological order via DFS.
        std::vector<std::string> order;
        std::set<std::string> seen;
        auto visit = [&](auto&& self, const std::string& id) -> void {
            if (!seen.insert(id).second) return;
            for (const auto& t : adj.at(id)) self(self, t);
            order.push_back(id);
        };
        visit(visit, *root);
        std::reverse(order.begin(), order.end());
        std::map<std::string, double> paths;
        paths[*root] = 1.0;
        for (const auto& id : order) {
            for (const auto& t : adj.at(id)) paths[t] += paths[id];
        }
        for (const auto& [id, count] : paths) {
            if (count > 1.0) {
                rep.warning("DEPENDENT_SUPPORT", id,
                            "reachable through more than one support path; operators assume "
                            "independent evidence");
            }
        }

        std::set<std::string> reachable = seen;
        for (const auto& e : g.edges) {
            if (e.kind == EdgeKind::in_context_of && seen.count(e.source)) {
                reachable.insert(e.target);
            }
        }
        for (const auto& id : ids) {
            if (!reachable.count(id)) {
                rep.warning("UNREACHABLE", id, "not reachable from the top-level goal");
            }
        }
    }

    return rep.finish();
}

ArgumentGraph resolve_patterns(const ArgumentGraph& g, const Settings& settings,
                               std::vector<Diagnostic>* warnings) {
    ArgumentGraph out = g;
    if (out.root.empty()) {
        out.root = find_root(out).value_or("");
    }
    const GraphIndex index(g);
    for (auto& node : out.nodes) {
        if (!can_support(node.kind)) continue;
        const auto& edge_ids = index.out_edges(node.id, EdgeKind::supported_by);
        if (edge_ids.size() >= 2 && !node.pattern) {
            if (!settings.allow_implicit_pattern) {
                throw MissingPattern(node.id);
            }
            node.pattern = settings.implicit_pattern;
            if (warnings) {
                warnings->push_back({"IMPLICIT_PATTERN", node.id,
                                     "no pattern given; applying " +
                                         to_string(settings.implicit_pattern.kind)});
            }
        }
        if (node.kind != NodeKind::goal || edge_ids.empty()) continue;

        std::optional<EdgeConditionals> site;
        for (const auto i : edge_ids) {
            if (out.edges[i].conditionals) {
                site = out.edges[i].conditionals;
                break;
            }
        }
        if (!site && settings.default_conditionals) {
            const auto& dc = *settings.default_conditionals;
            site = EdgeConditionals{dc.pos, dc.neg, dc.consequent_base_rate};
        }
        for (const auto i : edge_ids) {
            out.edges[i].conditionals.reset();
        }
        out.edges[edge_ids.front()].conditionals = site;
    }
    return out;
}

}  // namespace argconf
