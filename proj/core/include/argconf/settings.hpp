#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "argconf/opinion.hpp"

namespace argconf {

enum class PatternKind { conjunction, disjunction, fusion_cumulative, fusion_averaging, fusion_weighted };

/// How a one-to-many support fan-in is aggregated before deduction.
struct Pattern {
    PatternKind kind = PatternKind::conjunction;
    /// Dogmatic-limit weight for fusion patterns; falls back to the
    /// document's dogmatic_gamma when absent.
    std::optional<double> gamma;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

std::string to_string(PatternKind kind);
std::optional<PatternKind> parse_pattern_kind(const std::string& token);
bool is_fusion(PatternKind kind);

enum class ContextMode { conditional, marginalize };
enum class AggregateBaseRate { default_reset, composed };

std::string to_string(ContextMode mode);
std::string to_string(AggregateBaseRate policy);
std::optional<ContextMode> parse_context_mode(const std::string& token);
std::optional<AggregateBaseRate> parse_aggregate_base_rate(const std::string& token);

/// Default mapping from qualitative confidence levels to opinions.
std::map<std::string, Opinion> default_qualitative_scale();

struct Settings {
    double prior_weight = 2.0;
    double default_base_rate = kDefaultBaseRate;
    ContextMode context_mode = ContextMode::marginalize;
    AggregateBaseRate aggregate_base_rate = AggregateBaseRate::default_reset;
    Pattern implicit_pattern{PatternKind::conjunction, std::nullopt};
    bool allow_implicit_pattern = true;
    double dogmatic_gamma = 0.5;
    std::optional<ConditionalPair> default_conditionals;
    std::map<std::string, Opinion> qualitative_scale = default_qualitative_scale();
    int display_precision = 2;

    friend bool operator==(const Settings&, const Settings&) = default;
};

/// Throws InvalidArgument naming the first out-of-range field.
void check_settings(const Settings& s);

/// Opinion given directly. `a` is always filled (defaults applied at parse).
struct DirectSource {
    Opinion opinion;
    friend bool operator==(const DirectSource&, const DirectSource&) = default;
};

struct EvidenceSource {
    EvidenceCount evidence;
    friend bool operator==(const EvidenceSource&, const EvidenceSource&) = default;
};

struct QualitativeSource {
    std::string level;
    friend bool operator==(const QualitativeSource&, const QualitativeSource&) = default;
};

using OpinionSource = std::variant<DirectSource, EvidenceSource, QualitativeSource>;

class UnknownLevel : public Error {
public:
    explicit UnknownLevel(const std::string& level)
        : Error("UNKNOWN_LEVEL", "unknown qualitative level '" + level + "'") {}
};

/// Resolves a source to an opinion under the document settings.
Opinion resolve_source(const OpinionSource& source, const Settings& settings);

}  // namespace argconf
