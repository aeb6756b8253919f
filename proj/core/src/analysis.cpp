#include "argconf/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace argconf {

ScenarioTable compare_scenarios(const Document& d, const AssessOptions& base) {
    if (d.scenarios.empty()) {
        throw Error("NO_SCENARIOS", "document declares no scenarios");
    }
    ScenarioTable table;
    std::vector<Assessment> runs;
    for (const auto& sc : d.scenarios) {
        AssessOptions options = base;
        options.scenario = sc.name;
        runs.push_back(assess(d, options));
        table.scenarios.push_back(sc.name);
    }

    // Rows follow the first run; the graph is shared, so every run assesses
    // the same nodes.
    for (const auto& id : runs.front().order) {
        ScenarioTable::Row row{id, id, false, {}};
        ScenarioTable::Row conditional_row{id, id, true, {}};
        bool any_conditional = false;
        for (const auto& run : runs) {
            const auto it = run.results.find(id);
            if (it == run.results.end()) {
                row.cells.emplace_back();
                conditional_row.cells.emplace_back();
                continue;
            }
            row.cells.emplace_back(it->second.opinion);
            conditional_row.cells.push_back(it->second.conditional_opinion);
            if (it->second.conditional_opinion) {
                any_conditional = true;
                std::string label = id + "|";
                bool first = true;
                for (const auto& c : it->second.consumed_contexts) {
                    if (!first) label += ",";
                    label += c;
                    first = false;
                }
                conditional_row.label = label;
            }
        }
        table.rows.push_back(std::move(row));
        if (any_conditional) table.rows.push_back(std::move(conditional_row));
    }
    return table;
}

std::string to_string(SweepMode mode) {
    switch (mode) {
    case SweepMode::belief_tradeoff:
        return "belief-tradeoff";
    case SweepMode::uncertainty:
        return "uncertainty";
    case SweepMode::evidence:
        return "evidence";
    }
    return "unknown";
}

std::optional<SweepMode> parse_sweep_mode(const std::string& token) {
    if (token == "belief-tradeoff") return SweepMode::belief_tradeoff;
    if (token == "uncertainty") return SweepMode::uncertainty;
    if (token == "evidence") return SweepMode::evidence;
    return std::nullopt;
}

Opinion sweep_opinion(const SweepSpec& spec, double t, const Settings& settings) {
    const double a = settings.default_base_rate;
    switch (spec.mode) {
    case SweepMode::belief_tradeoff: {
        const double committed = 1.0 - spec.fixed_uncertainty;
        return validate_opinion({t * committed, (1.0 - t) * committed, spec.fixed_uncertainty, a});
    }
    case SweepMode::uncertainty: {
        const double committed = 1.0 - t;
        return validate_opinion(
            {committed * spec.belief_share, committed * (1.0 - spec.belief_share), t, a});
    }
    case SweepMode::evidence:
        return from_evidence({t * spec.max_positive, spec.negative, settings.prior_weight, a});
    }
    throw InvalidArgument("unknown sweep mode");
}

namespace {

void check_spec(const Document& d, const SweepSpec& spec) {
    const ArgNode* target = d.graph.find(spec.target);
    if (!target) throw UnknownNode(spec.target);
    if (!d.graph.out_edges(spec.target, EdgeKind::supported_by).empty()) {
        throw InvalidArgument("sweep target '" + spec.target + "' is not a leaf");
    }
    if (spec.steps < 2) throw InvalidArgument("sweep needs at least two steps");
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(spec.fixed_uncertainty)) throw InvalidArgument("fixed uncertainty outside [0, 1]");
    if (!unit(spec.belief_share)) throw InvalidArgument("belief share outside [0, 1]");
    if (!(spec.max_positive >= 0.0) || !(spec.negative >= 0.0)) {
        throw InvalidArgument("evidence counts must be non-negative");
    }
    for (const auto& id : spec.observed) {
        if (!d.graph.find(id)) throw UnknownNode(id);
    }
}

}  // namespace

std::vector<SweepRow> sweep(const Document& d, const SweepSpec& spec) {
    check_spec(d, spec);
    const Settings settings = effective_settings(d, spec.base);

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(spec.steps - 1);
        SweepRow row;
        row.t = t;
        row.injected = sweep_opinion(spec, t, settings);

        AssessOptions options = spec.base;
        options.injections[spec.target] = row.injected;
        const Assessment a = assess(d, options);
        const std::vector<std::string> observed =
            spec.observed.empty() ? std::vector<std::string>{a.root} : spec.observed;
        for (const auto& id : observed) {
            row.observed.emplace_back(id, a.at(id).opinion);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

BetaCurve export_beta_curve(const Assessment& a, const std::string& node, int samples) {
    const NodeResult& r = a.at(node);
    BetaCurve curve;
    curve.node = node;
    curve.opinion = r.opinion;
    curve.projection = project(r.opinion);
    if (r.opinion.is_dogmatic()) {
        curve.point_mass = curve.projection;
        return curve;
    }
    if (samples < 2) throw InvalidArgument("beta export needs at least two samples");

    const BetaShape shape = to_beta(r.opinion, a.settings.prior_weight);
    curve.shape = shape;
    curve.samples.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(samples - 1);
        try {
            curve.samples.push_back({p, beta_pdf(shape, p)});
        } catch (const DivergentEndpoint&) {
            // density unbounded at this endpoint
        }
    }
    return curve;
}

std::vector<TriangleRow> export_triangle(const Assessment& a,
                                         const std::vector<std::string>& nodes) {
    const std::vector<std::string>& ids = nodes.empty() ? a.order : nodes;
    std::vector<TriangleRow> rows;
    for (const auto& id : ids) {
        const NodeResult& r = a.at(id);
        rows.push_back({id, r.opinion, project(r.opinion)});
    }
    return rows;
}

double integrate_curve(const std::vector<CurveSample>& samples) {
    double total = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        total += 0.5 * (samples[i].density + samples[i - 1].density) *
                 (samples[i].p - samples[i - 1].p);
    }
    return total;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "t,b_in,d_in,u_in,node,b,d,u,projection\n";
    for (const auto& row : rows) {
        for (const auto& [id, o] : row.observed) {
            out << format_number(row.t) << ',' << format_number(row.injected.b) << ','
                << format_number(row.injected.d) << ',' << format_number(row.injected.u) << ','
                << id << ',' << format_number(o.b) << ',' << format_number(o.d) << ','
                << format_number(o.u) << ',' << format_number(project(o)) << '\n';
        }
    }
    return out.str();
}

std::string beta_csv(const BetaCurve& curve) {
    std::ostringstream out;
    out << "p,density\n";
    if (curve.point_mass) {
        out << "# point-mass p=" << format_number(*curve.point_mass) << '\n';
    }
    for (const auto& s : curve.samples) {
        out << format_number(s.p) << ',' << format_number(s.density) << '\n';
    }
    return out.str();
}

std::string triangle_csv(const std::vector<TriangleRow>& rows) {
    std::ostringstream out;
    out << "node,b,d,u,projection\n";
    for (const auto& r : rows) {
        out << r.node << ',' << format_number(r.opinion.b) << ',' << format_number(r.opinion.d)
            << ',' << format_number(r.opinion.u) << ',' << format_number(r.projection) << '\n';
    }
    return out.str();
}

}  // namespace argconf
