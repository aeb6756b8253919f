#include "argconf/document.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

namespace argconf {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Syntax layer: JSON or YAML text into a JSON value.

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    // `byte` is the 1-based offset of the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

Json yaml_scalar(const YAML::Node& node) {
    const std::string& s = node.Scalar();
    if (node.Tag() == "!") {
        return s;  // quoted
    }
    if (s == "~" || s == "null" || s == "Null" || s == "NULL") {
        return nullptr;
    }
    if (s == "true" || s == "True" || s == "TRUE") return true;
    if (s == "false" || s == "False" || s == "FALSE") return false;
    if (!s.empty()) {
        char* end = nullptr;
        const long long as_int = std::strtoll(s.c_str(), &end, 10);
        if (end && *end == '\0') {
            return as_int;
        }
        const double as_double = std::strtod(s.c_str(), &end);
        if (end && *end == '\0' && std::isfinite(as_double)) {
            return as_double;
        }
    }
    return s;
}

Json yaml_to_json(const YAML::Node& node) {
    switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
        return nullptr;
    case YAML::NodeType::Scalar:
        return yaml_scalar(node);
    case YAML::NodeType::Sequence: {
        Json arr = Json::array();
        for (const auto& item : node) arr.push_back(yaml_to_json(item));
        return arr;
    }
    case YAML::NodeType::Map: {
        Json obj = Json::object();
        for (const auto& kv : node) {
            const auto key = kv.first.Scalar();
            if (obj.contains(key)) {
                throw SyntaxError(kv.first.Mark().line + 1, kv.first.Mark().column + 1,
                                  "duplicate key '" + key + "'");
            }
            obj[key] = yaml_to_json(kv.second);
        }
        return obj;
    }
    }
    return nullptr;
}

Json parse_text(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return Json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            const auto [line, column] = line_column(text, e.byte);
            std::string detail = e.what();
            const auto pos = detail.find("syntax error");
            throw SyntaxError(line, column, pos == std::string::npos ? detail : detail.substr(pos));
        }
    }
    try {
        return yaml_to_json(YAML::Load(text));
    } catch (const YAML::Exception& e) {
        throw SyntaxError(e.mark.line + 1, e.mark.column + 1, e.msg);
    }
}

// ---------------------------------------------------------------------------
// Schema layer.

std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

const Json& expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    return j;
}

void reject_unknown(const Json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return key == k; });
        if (!known) throw SchemaError(join_path(path, key), "unknown field");
    }
}

const Json& require_field(const Json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) throw SchemaError(join_path(path, key), "required field missing");
    return obj.at(key);
}

double as_number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

double as_unit(const Json& j, const std::string& path) {
    const double v = as_number(j, path);
    if (!(v >= 0.0 && v <= 1.0)) throw SchemaError(path, "expected a value in [0, 1]");
    return v;
}

std::string as_id(const Json& j, const std::string& path) {
    const std::string id = as_string(j, path);
    if (!is_valid_id(id)) throw SchemaError(path, "id must match [A-Za-z0-9_.-]+");
    return id;
}

Opinion parse_opinion(const Json& j, const std::string& path, double default_a) {
    expect_object(j, path);
    reject_unknown(j, path, {"b", "d", "u", "a"});
    Opinion o;
    o.b = as_number(require_field(j, path, "b"), join_path(path, "b"));
    o.d = as_number(require_field(j, path, "d"), join_path(path, "d"));
    o.u = as_number(require_field(j, path, "u"), join_path(path, "u"));
    o.a = j.contains("a") ? as_number(j.at("a"), join_path(path, "a")) : default_a;
    try {
        return validate_opinion(o);
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
}

OpinionSource parse_source(const Json& j, const std::string& path, const Settings& s) {
    expect_object(j, path);
    if (j.contains("evidence")) {
        reject_unknown(j, path, {"evidence"});
        const std::string ep = join_path(path, "evidence");
        const Json& e = expect_object(j.at("evidence"), ep);
        reject_unknown(e, ep, {"r", "s", "W", "a"});
        EvidenceCount ec;
        ec.r = as_number(require_field(e, ep, "r"), join_path(ep, "r"));
        ec.s = as_number(require_field(e, ep, "s"), join_path(ep, "s"));
        ec.prior_weight = e.contains("W") ? as_number(e.at("W"), join_path(ep, "W"))
                                          : s.prior_weight;
        ec.a = e.contains("a") ? as_unit(e.at("a"), join_path(ep, "a")) : s.default_base_rate;
        if (!(ec.r >= 0.0) || !(ec.s >= 0.0)) {
            throw SchemaError(ep, "evidence counts must be non-negative");
        }
        if (!(ec.prior_weight > 0.0)) throw SchemaError(join_path(ep, "W"), "must be positive");
        return EvidenceSource{ec};
    }
    if (j.contains("qualitative")) {
        reject_unknown(j, path, {"qualitative"});
        const std::string qp = join_path(path, "qualitative");
        const std::string level = as_string(j.at("qualitative"), qp);
        if (!s.qualitative_scale.count(level)) {
            throw SchemaError(qp, "unknown qualitative level '" + level + "'");
        }
        return QualitativeSource{level};
    }
    return DirectSource{parse_opinion(j, path, s.default_base_rate)};
}

Pattern parse_pattern(const Json& j, const std::string& path) {
    Pattern p;
    std::string token;
    if (j.is_string()) {
        token = j.get<std::string>();
    } else {
        expect_object(j, path);
        reject_unknown(j, path, {"kind", "gamma"});
        token = as_string(require_field(j, path, "kind"), join_path(path, "kind"));
        if (j.contains("gamma")) p.gamma = as_unit(j.at("gamma"), join_path(path, "gamma"));
    }
    const auto kind = parse_pattern_kind(token);
    if (!kind) throw SchemaError(path, "unknown pattern '" + token + "'");
    p.kind = *kind;
    return p;
}

ConditionalPair parse_pair(const Json& j, const std::string& path, double default_a) {
    expect_object(j, path);
    reject_unknown(j, path, {"pos", "neg", "base_rate"});
    ConditionalPair c;
    c.pos = parse_opinion(require_field(j, path, "pos"), join_path(path, "pos"), default_a);
    c.neg = parse_opinion(require_field(j, path, "neg"), join_path(path, "neg"), default_a);
    if (j.contains("base_rate")) {
        c.consequent_base_rate = as_unit(j.at("base_rate"), join_path(path, "base_rate"));
    }
    return c;
}

EdgeConditionals parse_edge_conditionals(const Json& j, const std::string& path, EdgeKind kind,
                                         double default_a) {
    expect_object(j, path);
    reject_unknown(j, path, {"pos", "neg", "base_rate"});
    EdgeConditionals c;
    c.neg = Opinion::certain_false(default_a);
    if (j.contains("pos")) {
        c.pos = parse_opinion(j.at("pos"), join_path(path, "pos"), default_a);
    } else if (kind == EdgeKind::supported_by) {
        throw SchemaError(join_path(path, "pos"), "required field missing");
    }
    if (j.contains("neg")) {
        c.neg = parse_opinion(j.at("neg"), join_path(path, "neg"), default_a);
    } else if (kind == EdgeKind::supported_by) {
        throw SchemaError(join_path(path, "neg"), "required field missing");
    }
    if (j.contains("base_rate")) {
        c.base_rate = as_unit(j.at("base_rate"), join_path(path, "base_rate"));
    }
    return c;
}

Settings parse_settings(const Json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, path,
                   {"prior_weight", "default_base_rate", "context_mode", "aggregate_base_rate",
                    "implicit_pattern", "allow_implicit_pattern", "dogmatic_gamma",
                    "default_conditionals", "qualitative_scale", "display_precision"});
    Settings s;
    auto field = [&](const char* key) { return join_path(path, key); };
    if (j.contains("prior_weight")) {
        s.prior_weight = as_number(j.at("prior_weight"), field("prior_weight"));
        if (!(s.prior_weight > 0.0)) throw SchemaError(field("prior_weight"), "must be positive");
    }
    if (j.contains("default_base_rate")) {
        s.default_base_rate = as_unit(j.at("default_base_rate"), field("default_base_rate"));
    }
    if (j.contains("context_mode")) {
        const auto token = as_string(j.at("context_mode"), field("context_mode"));
        const auto mode = parse_context_mode(token);
        if (!mode) throw SchemaError(field("context_mode"), "unknown mode '" + token + "'");
        s.context_mode = *mode;
    }
    if (j.contains("aggregate_base_rate")) {
        const auto token = as_string(j.at("aggregate_base_rate"), field("aggregate_base_rate"));
        const auto policy = parse_aggregate_base_rate(token);
        if (!policy) {
            throw SchemaError(field("aggregate_base_rate"), "unknown policy '" + token + "'");
        }
        s.aggregate_base_rate = *policy;
    }
    if (j.contains("implicit_pattern")) {
        s.implicit_pattern = parse_pattern(j.at("implicit_pattern"), field("implicit_pattern"));
    }
    if (j.contains("allow_implicit_pattern")) {
        if (!j.at("allow_implicit_pattern").is_boolean()) {
            throw SchemaError(field("allow_implicit_pattern"), "expected a boolean");
        }
        s.allow_implicit_pattern = j.at("allow_implicit_pattern").get<bool>();
    }
    if (j.contains("dogmatic_gamma")) {
        s.dogmatic_gamma = as_unit(j.at("dogmatic_gamma"), field("dogmatic_gamma"));
    }
    if (j.contains("qualitative_scale")) {
        const std::string qp = field("qualitative_scale");
        for (const auto& [level, value] : expect_object(j.at("qualitative_scale"), qp).items()) {
            s.qualitative_scale[level] = parse_opinion(value, join_path(qp, level),
                                                       s.default_base_rate);
        }
    }
    if (j.contains("default_conditionals")) {
        s.default_conditionals = parse_pair(j.at("default_conditionals"),
                                            field("default_conditionals"), s.default_base_rate);
    }
    if (j.contains("display_precision")) {
        const Json& p = j.at("display_precision");
        if (!p.is_number_integer() || p.get<int>() < 0 || p.get<int>() > 12) {
            throw SchemaError(field("display_precision"), "expected an integer in [0, 12]");
        }
        s.display_precision = p.get<int>();
    }
    return s;
}

ArgNode parse_node(const Json& j, const std::string& path, const Settings& s) {
    expect_object(j, path);
    reject_unknown(j, path, {"id", "kind", "statement", "opinion", "pattern"});
    ArgNode n;
    n.id = as_id(require_field(j, path, "id"), join_path(path, "id"));
    const std::string kp = join_path(path, "kind");
    const std::string kind = as_string(require_field(j, path, "kind"), kp);
    const auto k = parse_node_kind(kind);
    if (!k) throw SchemaError(kp, "unknown node kind '" + kind + "'");
    n.kind = *k;
    if (j.contains("statement")) {
        n.statement = as_string(j.at("statement"), join_path(path, "statement"));
    }
    if (j.contains("opinion")) {
        n.input = parse_source(j.at("opinion"), join_path(path, "opinion"), s);
    }
    if (j.contains("pattern")) {
        n.pattern = parse_pattern(j.at("pattern"), join_path(path, "pattern"));
    }
    return n;
}

ArgEdge parse_edge(const Json& j, const std::string& path, const Settings& s) {
    expect_object(j, path);
    reject_unknown(j, path, {"source", "target", "kind", "conditionals"});
    ArgEdge e;
    e.source = as_id(require_field(j, path, "source"), join_path(path, "source"));
    e.target = as_id(require_field(j, path, "target"), join_path(path, "target"));
    const std::string kp = join_path(path, "kind");
    const std::string kind = as_string(require_field(j, path, "kind"), kp);
    const auto k = parse_edge_kind(kind);
    if (!k) throw SchemaError(kp, "unknown edge kind '" + kind + "'");
    e.kind = *k;
    if (j.contains("conditionals")) {
        e.conditionals = parse_edge_conditionals(j.at("conditionals"),
                                                 join_path(path, "conditionals"), e.kind,
                                                 s.default_base_rate);
    }
    return e;
}

Document parse_json_document(const Json& root) {
    expect_object(root, "");
    reject_unknown(root, "", {"version", "settings", "nodes", "edges", "scenarios"});

    Document d;
    const Json& version = require_field(root, "", "version");
    if (version.is_number_integer()) {
        d.version = std::to_string(version.get<long long>());
    } else {
        d.version = as_string(version, "version");
    }
    if (d.version != kDocumentVersion) {
        throw SchemaError("version", "unsupported version '" + d.version + "'");
    }

    if (root.contains("settings")) {
        d.settings = parse_settings(root.at("settings"), "settings");
    }

    const Json& nodes = require_field(root, "", "nodes");
    if (!nodes.is_array()) throw SchemaError("nodes", "expected an array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        d.graph.nodes.push_back(parse_node(nodes[i], index_path("nodes", i), d.settings));
    }

    if (root.contains("edges")) {
        const Json& edges = root.at("edges");
        if (!edges.is_array()) throw SchemaError("edges", "expected an array");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            d.graph.edges.push_back(parse_edge(edges[i], index_path("edges", i), d.settings));
        }
    }

    if (root.contains("scenarios")) {
        for (const auto& [name, assignments] : expect_object(root.at("scenarios"),
                                                             "scenarios").items()) {
            const std::string sp = join_path("scenarios", name);
            if (!is_valid_id(name)) throw SchemaError(sp, "scenario name must be a token");
            Scenario sc;
            sc.name = name;
            for (const auto& [node, source] : expect_object(assignments, sp).items()) {
                if (!is_valid_id(node)) throw SchemaError(join_path(sp, node), "invalid node id");
                sc.assignments.emplace(node, parse_source(source, join_path(sp, node), d.settings));
            }
            d.scenarios.push_back(std::move(sc));
        }
    }

    d.graph.root = find_root(d.graph).value_or("");
    return d;
}

// ---------------------------------------------------------------------------
// Serialization.

double round_sig(double v) { return std::stod(format_number(v)); }

Json opinion_json(const Opinion& o, double default_a) {
    Json j = Json::object();
    j["b"] = round_sig(o.b);
    j["d"] = round_sig(o.d);
    j["u"] = round_sig(o.u);
    if (o.a != default_a) j["a"] = round_sig(o.a);
    return j;
}

Json source_json(const OpinionSource& src, const Settings& s) {
    return std::visit(
        [&](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DirectSource>) {
                return opinion_json(v.opinion, s.default_base_rate);
            } else if constexpr (std::is_same_v<T, EvidenceSource>) {
                Json e = Json::object();
                e["r"] = round_sig(v.evidence.r);
                e["s"] = round_sig(v.evidence.s);
                if (v.evidence.prior_weight != s.prior_weight) {
                    e["W"] = round_sig(v.evidence.prior_weight);
                }
                if (v.evidence.a != s.default_base_rate) e["a"] = round_sig(v.evidence.a);
                Json j = Json::object();
                j["evidence"] = e;
                return j;
            } else {
                Json j = Json::object();
                j["qualitative"] = v.level;
                return j;
            }
        },
        src);
}

Json pattern_json(const Pattern& p) {
    if (!p.gamma) return to_string(p.kind);
    Json j = Json::object();
    j["kind"] = to_string(p.kind);
    j["gamma"] = round_sig(*p.gamma);
    return j;
}

Json settings_json(const Settings& s) {
    const Settings defaults;
    Json j = Json::object();
    if (s.prior_weight != defaults.prior_weight) j["prior_weight"] = round_sig(s.prior_weight);
    if (s.default_base_rate != defaults.default_base_rate) {
        j["default_base_rate"] = round_sig(s.default_base_rate);
    }
    if (s.context_mode != defaults.context_mode) j["context_mode"] = to_string(s.context_mode);
    if (s.aggregate_base_rate != defaults.aggregate_base_rate) {
        j["aggregate_base_rate"] = to_string(s.aggregate_base_rate);
    }
    if (!(s.implicit_pattern == defaults.implicit_pattern)) {
        j["implicit_pattern"] = pattern_json(s.implicit_pattern);
    }
    if (s.allow_implicit_pattern != defaults.allow_implicit_pattern) {
        j["allow_implicit_pattern"] = s.allow_implicit_pattern;
    }
    if (s.dogmatic_gamma != defaults.dogmatic_gamma) {
        j["dogmatic_gamma"] = round_sig(s.dogmatic_gamma);
    }
    if (s.default_conditionals) {
        Json c = Json::object();
        c["pos"] = opinion_json(s.default_conditionals->pos, s.default_base_rate);
        c["neg"] = opinion_json(s.default_conditionals->neg, s.default_base_rate);
        if (s.default_conditionals->consequent_base_rate) {
            c["base_rate"] = round_sig(*s.default_conditionals->consequent_base_rate);
        }
        j["default_conditionals"] = c;
    }
    Json scale = Json::object();
    for (const auto& [level, o] : s.qualitative_scale) {
        const auto it = defaults.qualitative_scale.find(level);
        if (it == defaults.qualitative_scale.end() || !(it->second == o)) {
            scale[level] = opinion_json(o, s.default_base_rate);
        }
    }
    if (!scale.empty()) j["qualitative_scale"] = scale;
    if (s.display_precision != defaults.display_precision) {
        j["display_precision"] = s.display_precision;
    }
    return j;
}

}  // namespace

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error("VALIDATION_FAILED",
            [&] {
                std::string msg = "argument validation failed";
                for (const auto& e : report.errors) {
                    msg += "; " + e.code + (e.locus.empty() ? "" : " at " + e.locus);
                }
                return msg;
            }()),
      report_(std::move(report)) {}

const Scenario* Document::find_scenario(const std::string& name) const {
    const auto it = std::find_if(scenarios.begin(), scenarios.end(),
                                 [&](const Scenario& s) { return s.name == name; });
    return it == scenarios.end() ? nullptr : &*it;
}

Document parse_document_unchecked(const std::string& text) {
    return parse_json_document(parse_text(text));
}

Document parse_document(const std::string& text) {
    Document d = parse_document_unchecked(text);
    ValidationReport report = validate_argument(d.graph, d.settings);
    if (!report.ok()) {
        throw ValidationFailed(std::move(report));
    }
    return d;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading '" + path.string() + "'");
    }
    return ss.str();
}

std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string serialize_document(const Document& d) {
    const Settings& s = d.settings;
    Json root = Json::object();
    root["version"] = d.version;
    const Json settings = settings_json(s);
    if (!settings.empty()) root["settings"] = settings;

    Json nodes = Json::array();
    for (const auto& n : d.graph.nodes) {
        Json j = Json::object();
        j["id"] = n.id;
        j["kind"] = to_string(n.kind);
        if (!n.statement.empty()) j["statement"] = n.statement;
        if (n.input) j["opinion"] = source_json(*n.input, s);
        if (n.pattern) j["pattern"] = pattern_json(*n.pattern);
        nodes.push_back(std::move(j));
    }
    root["nodes"] = std::move(nodes);

    Json edges = Json::array();
    for (const auto& e : d.graph.edges) {
        Json j = Json::object();
        j["source"] = e.source;
        j["target"] = e.target;
        j["kind"] = to_string(e.kind);
        if (e.conditionals) {
            Json c = Json::object();
            if (e.conditionals->pos) c["pos"] = opinion_json(*e.conditionals->pos, s.default_base_rate);
            c["neg"] = opinion_json(e.conditionals->neg, s.default_base_rate);
            if (e.conditionals->base_rate) c["base_rate"] = round_sig(*e.conditionals->base_rate);
            j["conditionals"] = std::move(c);
        }
        edges.push_back(std::move(j));
    }
    root["edges"] = std::move(edges);

    if (!d.scenarios.empty()) {
        Json scenarios = Json::object();
        for (const auto& sc : d.scenarios) {
            Json a = Json::object();
            for (const auto& [node, src] : sc.assignments) a[node] = source_json(src, s);
            scenarios[sc.name] = std::move(a);
        }
        root["scenarios"] = std::move(scenarios);
    }
    return root.dump(2) + "\n";
}

}  // namespace argconf
