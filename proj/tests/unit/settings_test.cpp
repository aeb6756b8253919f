#include "doctest.h"

#include "argconf/settings.hpp"

using namespace argconf;

TEST_SUITE("settings") {

TEST_CASE("tokens round-trip") {
    for (const auto kind : {PatternKind::conjunction, PatternKind::disjunction,
                            PatternKind::fusion_cumulative, PatternKind::fusion_averaging,
                            PatternKind::fusion_weighted}) {
        CHECK(parse_pattern_kind(to_string(kind)) == kind);
    }
    CHECK(to_string(PatternKind::fusion_cumulative) == "fusion-cumulative");
    CHECK_FALSE(parse_pattern_kind("fusion").has_value());
    CHECK(is_fusion(PatternKind::fusion_weighted));
    CHECK_FALSE(is_fusion(PatternKind::disjunction));

    CHECK(parse_context_mode("conditional") == ContextMode::conditional);
    CHECK(to_string(ContextMode::marginalize) == "marginalize");
    CHECK_FALSE(parse_context_mode("marginalise").has_value());
    CHECK(parse_aggregate_base_rate("composed") == AggregateBaseRate::composed);
    CHECK(to_string(AggregateBaseRate::default_reset) == "default-reset");
}

TEST_CASE("defaults") {
    const Settings s;
    CHECK(s.prior_weight == 2.0);
    CHECK(s.default_base_rate == 0.5);
    CHECK(s.context_mode == ContextMode::marginalize);
    CHECK(s.aggregate_base_rate == AggregateBaseRate::default_reset);
    CHECK(s.implicit_pattern.kind == PatternKind::conjunction);
    CHECK(s.dogmatic_gamma == 0.5);
    CHECK(s.display_precision == 2);
    CHECK_FALSE(s.default_conditionals.has_value());
    CHECK(s.qualitative_scale.size() == 5);
    CHECK_NOTHROW(check_settings(s));
}

TEST_CASE("check_settings rejects out-of-range values") {
    Settings s;
    s.prior_weight = 0.0;
    CHECK_THROWS_AS(check_settings(s), InvalidArgument);
    s = {};
    s.default_base_rate = 1.2;
    CHECK_THROWS_AS(check_settings(s), InvalidArgument);
    s = {};
    s.display_precision = 13;
    CHECK_THROWS_AS(check_settings(s), InvalidArgument);
    s = {};
    s.qualitative_scale["odd"] = {0.5, 0.5, 0.5, 0.5};
    CHECK_THROWS_AS(check_settings(s), InvalidArgument);
}

TEST_CASE("opinion sources") {
    const Settings s;
    CHECK(resolve_source(DirectSource{{0.2, 0.3, 0.5, 0.4}}, s) == Opinion{0.2, 0.3, 0.5, 0.4});
    const Opinion e = resolve_source(EvidenceSource{{8, 0, 2, 0.5}}, s);
    CHECK(e.b == doctest::Approx(0.8));
    CHECK(e.u == doctest::Approx(0.2));
    CHECK(resolve_source(QualitativeSource{"high"}, s) == Opinion{0.8, 0.1, 0.1, 0.5});
    CHECK_THROWS_AS(resolve_source(QualitativeSource{"huge"}, s), UnknownLevel);
    CHECK_THROWS_AS(resolve_source(DirectSource{{0.9, 0.9, 0.0, 0.5}}, s), SimplexViolation);
}

}  // TEST_SUITE
