#pragma once

// Scenario comparison, what-if sweeps and plot-data exports built on top of
// `assess`.

#include <optional>
#include <string>
#include <vector>

#include "argconf/engine.hpp"

namespace argconf {

struct ScenarioTable {
    struct Row {
        std::string label;  ///< node id, or "G|A" for the pre-marginalization claim
        std::string node;
        bool conditional = false;
        std::vector<std::optional<Opinion>> cells;  ///< one per scenario
    };

    std::vector<std::string> scenarios;
    std::vector<Row> rows;
};

/// One assessment per scenario, in declaration order. Throws Error
/// "NO_SCENARIOS" when the document declares none.
ScenarioTable compare_scenarios(const Document& d, const AssessOptions& base = {});

enum class SweepMode { belief_tradeoff, uncertainty, evidence };

std::string to_string(SweepMode mode);
std::optional<SweepMode> parse_sweep_mode(const std::string& token);

struct SweepSpec {
    std::string target;
    SweepMode mode = SweepMode::belief_tradeoff;
    int steps = 11;
    double fixed_uncertainty = 0.0;  ///< belief-tradeoff: u held fixed
    double belief_share = 0.5;  ///< uncertainty mode: b / (b + d)
    double max_positive = 10.0;  ///< evidence mode: r at t = 1
    double negative = 0.0;  ///< evidence mode: fixed s
    std::vector<std::string> observed;  ///< defaults to the root
    AssessOptions base;  ///< scenario and setting overrides held fixed
};

struct SweepRow {
    double t = 0.0;
    Opinion injected;
    std::vector<std::pair<std::string, Opinion>> observed;
};

/// Opinion injected at parameter t for `spec` under `settings`.
Opinion sweep_opinion(const SweepSpec& spec, double t, const Settings& settings);

std::vector<SweepRow> sweep(const Document& d, const SweepSpec& spec);

struct CurveSample {
    double p = 0.0;
    double density = 0.0;
};

struct BetaCurve {
    std::string node;
    Opinion opinion;
    double projection = 0.0;
    /// Set for dogmatic opinions, which have no density; holds the location.
    std::optional<double> point_mass;
    std::optional<BetaShape> shape;
    std::vector<CurveSample> samples;
};

/// `samples` equally spaced points over [0, 1]; an endpoint where the
/// density is unbounded is left out.
BetaCurve export_beta_curve(const Assessment& a, const std::string& node, int samples);

struct TriangleRow {
    std::string node;
    Opinion opinion;
    double projection = 0.0;
};

/// Empty `nodes` selects every assessed node in presentation order.
std::vector<TriangleRow> export_triangle(const Assessment& a,
                                         const std::vector<std::string>& nodes = {});

/// Trapezoid rule over the curve samples.
double integrate_curve(const std::vector<CurveSample>& samples);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string beta_csv(const BetaCurve& curve);
std::string triangle_csv(const std::vector<TriangleRow>& rows);

}  // namespace argconf
