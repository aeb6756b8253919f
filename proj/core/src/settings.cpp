#include "argconf/settings.hpp"

#include <array>
#include <sstream>
#include <utility>

namespace argconf {

namespace {

constexpr std::array<std::pair<PatternKind, const char*>, 5> kPatternNames{{
    {PatternKind::conjunction, "conjunction"},
    {PatternKind::disjunction, "disjunction"},
    {PatternKind::fusion_cumulative, "fusion-cumulative"},
    {PatternKind::fusion_averaging, "fusion-averaging"},
    {PatternKind::fusion_weighted, "fusion-weighted"},
}};

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) {
        throw InvalidArgument("settings." + field + " " + why);
    }
}

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

std::string to_string(PatternKind kind) {
    for (const auto& [k, name] : kPatternNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<PatternKind> parse_pattern_kind(const std::string& token) {
    for (const auto& [k, name] : kPatternNames) {
        if (token == name) {
            return k;
        }
    }
    return std::nullopt;
}

bool is_fusion(PatternKind kind) {
    return kind == PatternKind::fusion_cumulative || kind == PatternKind::fusion_averaging ||
           kind == PatternKind::fusion_weighted;
}

std::string to_string(ContextMode mode) {
    return mode == ContextMode::conditional ? "conditional" : "marginalize";
}

std::string to_string(AggregateBaseRate policy) {
    return policy == AggregateBaseRate::default_reset ? "default-reset" : "composed";
}

std::optional<ContextMode> parse_context_mode(const std::string& token) {
    if (token == "conditional") return ContextMode::conditional;
    if (token == "marginalize") return ContextMode::marginalize;
    return std::nullopt;
}

std::optional<AggregateBaseRate> parse_aggregate_base_rate(const std::string& token) {
    if (token == "default-reset") return AggregateBaseRate::default_reset;
    if (token == "composed") return AggregateBaseRate::composed;
    return std::nullopt;
}

std::map<std::string, Opinion> default_qualitative_scale() {
    return {
        {"very-high", {0.90, 0.02, 0.08, kDefaultBaseRate}},
        {"high", {0.80, 0.10, 0.10, kDefaultBaseRate}},
        {"medium", {0.60, 0.20, 0.20, kDefaultBaseRate}},
        {"low", {0.40, 0.40, 0.20, kDefaultBaseRate}},
        {"very-low", {0.20, 0.60, 0.20, kDefaultBaseRate}},
    };
}

void check_settings(const Settings& s) {
    require(s.prior_weight > 0.0, "prior_weight", "must be positive");
    require(unit(s.default_base_rate), "default_base_rate", "must lie in [0, 1]");
    require(unit(s.dogmatic_gamma), "dogmatic_gamma", "must lie in [0, 1]");
    if (s.implicit_pattern.gamma) {
        require(unit(*s.implicit_pattern.gamma), "implicit_pattern.gamma", "must lie in [0, 1]");
    }
    require(s.display_precision >= 0 && s.display_precision <= 12, "display_precision",
            "must lie in [0, 12]");
    if (s.default_conditionals) {
        require(is_valid_opinion(s.default_conditionals->pos), "default_conditionals.pos",
                "is not a valid opinion");
        require(is_valid_opinion(s.default_conditionals->neg), "default_conditionals.neg",
                "is not a valid opinion");
        if (s.default_conditionals->consequent_base_rate) {
            require(unit(*s.default_conditionals->consequent_base_rate),
                    "default_conditionals.base_rate", "must lie in [0, 1]");
        }
    }
    for (const auto& [level, o] : s.qualitative_scale) {
        require(is_valid_opinion(o), "qualitative_scale." + level, "is not a valid opinion");
    }
}

Opinion resolve_source(const OpinionSource& source, const Settings& settings) {
    return std::visit(
        [&](const auto& src) -> Opinion {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, DirectSource>) {
                return validate_opinion(src.opinion);
            } else if constexpr (std::is_same_v<T, EvidenceSource>) {
                return from_evidence(src.evidence);
            } else {
                const auto it = settings.qualitative_scale.find(src.level);
                if (it == settings.qualitative_scale.end()) {
                    throw UnknownLevel(src.level);
                }
                return validate_opinion(it->second);
            }
        },
        source);
}

}  // namespace argconf
