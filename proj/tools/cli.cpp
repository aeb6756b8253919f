#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "argconf/analysis.hpp"
#include "argconf/display.hpp"

namespace argconf::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { table, json, csv };

const std::map<std::string, Format> kFormats{
    {"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};

struct Common {
    std::string file;
    Format format = Format::table;
    std::optional<int> precision;
    bool quiet = false;
};

struct AssessArgs {
    std::string scenario;
    std::string context_mode;
    std::string aggregate_base_rate;
    std::vector<std::string> nodes;
    std::string explain_node;
};

struct SweepArgs {
    std::string node;
    std::string mode;
    int steps = 11;
    double fix_u = 0.0;
    double belief_share = 0.5;
    double r_max = 10.0;
    double s = 0.0;
    std::vector<std::string> observe;
    std::string scenario;
};

struct BetaArgs {
    std::string node;
    int samples = 201;
    std::string scenario;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error("USAGE", msg) {}
};

Json opinion_json(const Opinion& o, int precision) {
    Json j = Json::object();
    j["b"] = o.b;
    j["d"] = o.d;
    j["u"] = o.u;
    j["a"] = o.a;
    j["projection"] = project(o);
    j["display"] = format_triple(o, precision);
    return j;
}

Json diagnostics_json(const std::vector<Diagnostic>& list) {
    Json arr = Json::array();
    for (const auto& d : list) {
        arr.push_back({{"code", d.code}, {"locus", d.locus}, {"message", d.message}});
    }
    return arr;
}

void print_warnings(const std::vector<Diagnostic>& warnings, const Common& c, std::ostream& err) {
    if (c.quiet) return;
    for (const auto& w : warnings) {
        err << "warning: " << w.code << (w.locus.empty() ? "" : " at " + w.locus) << ": "
            << w.message << "\n";
    }
}

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

Document load(const Common& c) { return parse_document(read_text_file(c.file)); }

AssessOptions make_options(const Document& d, const Common& c, const std::string& scenario,
                           const std::string& context_mode = {},
                           const std::string& aggregate = {}) {
    AssessOptions options;
    if (!scenario.empty()) options.scenario = scenario;
    if (!context_mode.empty()) {
        options.context_mode = parse_context_mode(context_mode);
        if (!options.context_mode) throw UsageError("unknown context mode '" + context_mode + "'");
    }
    if (!aggregate.empty()) {
        options.aggregate_base_rate = parse_aggregate_base_rate(aggregate);
        if (!options.aggregate_base_rate) {
            throw UsageError("unknown aggregate base-rate policy '" + aggregate + "'");
        }
    }
    (void)d;
    (void)c;
    return options;
}

int precision_of(const Common& c, const Settings& s) {
    return c.precision.value_or(s.display_precision);
}

// ---------------------------------------------------------------------------

int cmd_validate(const Common& c, std::ostream& out) {
    const Document d = parse_document_unchecked(read_text_file(c.file));
    const ValidationReport report = validate_argument(d.graph, d.settings);
    if (c.format == Format::json) {
        Json j = Json::object();
        j["ok"] = report.ok();
        j["root"] = d.graph.root;
        j["errors"] = diagnostics_json(report.errors);
        j["warnings"] = diagnostics_json(report.warnings);
        out << j.dump(2) << "\n";
    } else {
        for (const auto& e : report.errors) {
            out << "error " << e.code << (e.locus.empty() ? "" : " at " + e.locus) << ": "
                << e.message << "\n";
        }
        if (!c.quiet) {
            for (const auto& w : report.warnings) {
                out << "warning " << w.code << (w.locus.empty() ? "" : " at " + w.locus) << ": "
                    << w.message << "\n";
            }
        }
        out << (report.ok() ? "ok" : "invalid") << ": " << report.errors.size() << " error(s), "
            << report.warnings.size() << " warning(s)\n";
    }
    return report.ok() ? kOk : kValidationFailure;
}

int cmd_assess(const Common& c, const AssessArgs& args, std::ostream& out, std::ostream& err) {
    const Document d = load(c);
    const AssessOptions options =
        make_options(d, c, args.scenario, args.context_mode, args.aggregate_base_rate);
    Assessment a = assess(d, options);
    const int p = precision_of(c, a.settings);
    a.settings.display_precision = p;
    print_warnings(a.warnings, c, err);

    struct Line {
        std::string label;
        const NodeResult* result;
        Opinion opinion;
    };
    std::vector<Line> lines;
    for (const auto& id : a.order) {
        const NodeResult& r = a.results.at(id);
        lines.push_back({id, &r, r.opinion});
        if (r.conditional_opinion) {
            lines.push_back({id + "|" + join(r.consumed_contexts), &r, *r.conditional_opinion});
        }
    }
    if (!args.nodes.empty()) {
        std::vector<Line> selected;
        for (const auto& want : args.nodes) {
            const auto it = std::find_if(lines.begin(), lines.end(),
                                         [&](const Line& l) { return l.label == want; });
            if (it == lines.end()) throw UnknownNode(want);
            selected.push_back(*it);
        }
        lines = std::move(selected);
    }

    if (c.format == Format::json) {
        Json j = Json::object();
        j["scenario"] = a.scenario;
        j["root"] = a.root;
        j["context_mode"] = to_string(a.settings.context_mode);
        j["aggregate_base_rate"] = to_string(a.settings.aggregate_base_rate);
        Json nodes = Json::array();
        for (const auto& l : lines) {
            Json n = Json::object();
            n["id"] = l.label;
            n["opinion"] = opinion_json(l.opinion, p);
            n["context_set"] = l.result->context_set;
            n["consumed_contexts"] = l.result->consumed_contexts;
            nodes.push_back(std::move(n));
        }
        j["nodes"] = std::move(nodes);
        j["warnings"] = diagnostics_json(a.warnings);
        if (!args.explain_node.empty()) j["explain"] = explain(a, args.explain_node);
        out << j.dump(2) << "\n";
        return kOk;
    }
    if (c.format == Format::csv) {
        out << "node,b,d,u,a,projection,context_set\n";
        for (const auto& l : lines) {
            out << l.label << ',' << format_number(l.opinion.b) << ','
                << format_number(l.opinion.d) << ',' << format_number(l.opinion.u) << ','
                << format_number(l.opinion.a) << ',' << format_number(project(l.opinion)) << ','
                << join(l.result->context_set) << '\n';
        }
    } else {
        for (const auto& l : lines) {
            out << l.label << ": " << format_triple(l.opinion, p);
            if (!l.result->context_set.empty()) {
                out << " given " << join(l.result->context_set);
            }
            out << "\n";
        }
    }
    if (!args.explain_node.empty()) {
        out << "\n" << explain(a, args.explain_node);
    }
    return kOk;
}

int cmd_scenarios(const Common& c, std::ostream& out) {
    const Document d = load(c);
    const ScenarioTable table = compare_scenarios(d);
    const int p = precision_of(c, d.settings);

    if (c.format == Format::json) {
        Json j = Json::object();
        j["scenarios"] = table.scenarios;
        Json rows = Json::array();
        for (const auto& row : table.rows) {
            Json r = Json::object();
            r["label"] = row.label;
            r["node"] = row.node;
            r["conditional"] = row.conditional;
            Json cells = Json::object();
            for (std::size_t i = 0; i < table.scenarios.size(); ++i) {
                cells[table.scenarios[i]] =
                    row.cells[i] ? opinion_json(*row.cells[i], p) : Json(nullptr);
            }
            r["cells"] = std::move(cells);
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        out << j.dump(2) << "\n";
        return kOk;
    }
    if (c.format == Format::csv) {
        out << "row,scenario,b,d,u,projection\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < table.scenarios.size(); ++i) {
                if (!row.cells[i]) continue;
                const Opinion& o = *row.cells[i];
                out << row.label << ',' << table.scenarios[i] << ',' << format_number(o.b) << ','
                    << format_number(o.d) << ',' << format_number(o.u) << ','
                    << format_number(project(o)) << '\n';
            }
        }
        return kOk;
    }

    std::size_t label_width = 4;
    for (const auto& row : table.rows) label_width = std::max(label_width, row.label.size());
    std::vector<std::size_t> widths;
    for (const auto& name : table.scenarios) {
        widths.push_back(std::max(name.size(), format_triple(Opinion::vacuous(0.5), p).size()));
    }
    auto flush = [&](const std::ostringstream& line) {
        std::string s = line.str();
        s.erase(s.find_last_not_of(' ') + 1);
        out << s << "\n";
    };
    std::ostringstream header;
    header << std::left << std::setw(static_cast<int>(label_width)) << "Node";
    for (std::size_t i = 0; i < table.scenarios.size(); ++i) {
        header << "  " << std::setw(static_cast<int>(widths[i])) << table.scenarios[i];
    }
    flush(header);
    for (const auto& row : table.rows) {
        std::ostringstream line;
        line << std::left << std::setw(static_cast<int>(label_width)) << row.label;
        for (std::size_t i = 0; i < table.scenarios.size(); ++i) {
            line << "  " << std::setw(static_cast<int>(widths[i]))
                 << (row.cells[i] ? format_triple(*row.cells[i], p) : std::string("-"));
        }
        flush(line);
    }
    return kOk;
}

int cmd_sweep(const Common& c, const SweepArgs& args, std::ostream& out) {
    const Document d = load(c);
    SweepSpec spec;
    spec.target = args.node;
    const auto mode = parse_sweep_mode(args.mode);
    if (!mode) throw UsageError("unknown sweep mode '" + args.mode + "'");
    spec.mode = *mode;
    spec.steps = args.steps;
    spec.fixed_uncertainty = args.fix_u;
    spec.belief_share = args.belief_share;
    spec.max_positive = args.r_max;
    spec.negative = args.s;
    spec.observed = args.observe;
    spec.base = make_options(d, c, args.scenario);
    const auto rows = sweep(d, spec);

    if (c.format == Format::json) {
        const int p = precision_of(c, d.settings);
        Json arr = Json::array();
        for (const auto& row : rows) {
            Json r = Json::object();
            r["t"] = row.t;
            r["injected"] = opinion_json(row.injected, p);
            Json obs = Json::object();
            for (const auto& [id, o] : row.observed) obs[id] = opinion_json(o, p);
            r["observed"] = std::move(obs);
            arr.push_back(std::move(r));
        }
        Json j = Json::object();
        j["target"] = spec.target;
        j["mode"] = to_string(spec.mode);
        j["rows"] = std::move(arr);
        out << j.dump(2) << "\n";
    } else {
        out << sweep_csv(rows);
    }
    return kOk;
}

int cmd_beta(const Common& c, const BetaArgs& args, std::ostream& out) {
    const Document d = load(c);
    const Assessment a = assess(d, make_options(d, c, args.scenario));
    const BetaCurve curve = export_beta_curve(a, args.node, args.samples);
    if (c.format == Format::json) {
        Json j = Json::object();
        j["node"] = curve.node;
        j["opinion"] = opinion_json(curve.opinion, precision_of(c, a.settings));
        j["projection"] = curve.projection;
        if (curve.point_mass) {
            j["point_mass"] = *curve.point_mass;
        } else {
            j["alpha"] = curve.shape->alpha;
            j["beta"] = curve.shape->beta;
        }
        Json samples = Json::array();
        for (const auto& s : curve.samples) samples.push_back({s.p, s.density});
        j["samples"] = std::move(samples);
        out << j.dump(2) << "\n";
    } else {
        out << beta_csv(curve);
    }
    return kOk;
}

int cmd_triangle(const Common& c, const std::string& scenario,
                 const std::vector<std::string>& nodes, std::ostream& out) {
    const Document d = load(c);
    const Assessment a = assess(d, make_options(d, c, scenario));
    const auto rows = export_triangle(a, nodes);
    if (c.format == Format::json) {
        const int p = precision_of(c, a.settings);
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json j = opinion_json(r.opinion, p);
            j["node"] = r.node;
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << "\n";
    } else {
        out << triangle_csv(rows);
    }
    return kOk;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const ValidationFailed*>(&e)) return kValidationFailure;
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const SyntaxError*>(&e) ||
        dynamic_cast<const SchemaError*>(&e)) {
        return kInputError;
    }
    if (dynamic_cast<const UsageError*>(&e)) return kUsageError;
    return kAssessmentError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Confidence propagation for assurance arguments with subjective-logic opinions",
                 "argconf"};
    app.require_subcommand(1);

    Common common;
    int precision = -1;
    app.add_option("--precision", precision, "Display precision (decimals)")
        ->check(CLI::Range(0, 12));
    app.add_flag("--quiet", common.quiet, "Suppress warnings");

    auto add_common = [&](CLI::App* sub, Format default_format) {
        common.format = default_format;
        sub->add_option("file", common.file, "Argument document (JSON or YAML)")->required();
        sub->add_option("--format", common.format, "table, json or csv")
            ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    };

    auto* validate = app.add_subcommand("validate", "Check the argument structure");
    add_common(validate, Format::table);

    AssessArgs assess_args;
    auto* assess_cmd = app.add_subcommand("assess", "Propagate opinions and print node results");
    add_common(assess_cmd, Format::table);
    assess_cmd->add_option("--scenario", assess_args.scenario, "Scenario name");
    assess_cmd->add_option("--context-mode", assess_args.context_mode,
                           "conditional or marginalize")
        ->check(CLI::IsMember({"conditional", "marginalize"}));
    assess_cmd->add_option("--aggregate-base-rate", assess_args.aggregate_base_rate,
                           "default-reset or composed")
        ->check(CLI::IsMember({"default-reset", "composed"}));
    assess_cmd->add_option("--node", assess_args.nodes, "Only print these nodes");
    assess_cmd->add_option("--explain", assess_args.explain_node, "Print the provenance tree");

    auto* scenarios = app.add_subcommand("scenarios", "Compare every scenario side by side");
    add_common(scenarios, Format::table);

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "What-if sweep over one leaf opinion");
    add_common(sweep_cmd, Format::csv);
    sweep_cmd->add_option("--node", sweep_args.node, "Leaf to vary")->required();
    sweep_cmd->add_option("--mode", sweep_args.mode, "belief-tradeoff, uncertainty or evidence")
        ->required()
        ->check(CLI::IsMember({"belief-tradeoff", "uncertainty", "evidence"}));
    sweep_cmd->add_option("--steps", sweep_args.steps, "Number of points")->check(CLI::Range(2, 100000));
    sweep_cmd->add_option("--fix-u", sweep_args.fix_u, "Fixed uncertainty (belief-tradeoff)")
        ->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--belief-share", sweep_args.belief_share,
                          "b/(b+d) split (uncertainty mode)")
        ->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--r-max", sweep_args.r_max, "Positive evidence at t=1 (evidence mode)")
        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--s", sweep_args.s, "Fixed negative evidence (evidence mode)")
        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--observe", sweep_args.observe, "Observed nodes (default: root)");
    sweep_cmd->add_option("--scenario", sweep_args.scenario, "Scenario held fixed");

    BetaArgs beta_args;
    auto* beta = app.add_subcommand("beta", "Beta density of a node opinion");
    add_common(beta, Format::csv);
    beta->add_option("--node", beta_args.node, "Node")->required();
    beta->add_option("--samples", beta_args.samples, "Grid points over [0,1]")
        ->check(CLI::Range(2, 10000000));
    beta->add_option("--scenario", beta_args.scenario, "Scenario name");

    std::string triangle_scenario;
    std::vector<std::string> triangle_nodes;
    auto* triangle = app.add_subcommand("triangle", "Opinion-triangle coordinates");
    add_common(triangle, Format::csv);
    triangle->add_option("--scenario", triangle_scenario, "Scenario name");
    triangle->add_option("--node", triangle_nodes, "Nodes (default: all)");

    // Each subcommand has its own default format; remember which was chosen.
    std::map<CLI::App*, Format> defaults{{validate, Format::table}, {assess_cmd, Format::table},
                                         {scenarios, Format::table}, {sweep_cmd, Format::csv},
                                         {beta, Format::csv},        {triangle, Format::csv}};

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }
    if (precision >= 0) common.precision = precision;

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->count("--format") == 0) common.format = defaults.at(chosen);

    try {
        if (chosen == validate) return cmd_validate(common, out);
        if (chosen == assess_cmd) return cmd_assess(common, assess_args, out, err);
        if (chosen == scenarios) return cmd_scenarios(common, out);
        if (chosen == sweep_cmd) return cmd_sweep(common, sweep_args, out);
        if (chosen == beta) return cmd_beta(common, beta_args, out);
        if (chosen == triangle) return cmd_triangle(common, triangle_scenario, triangle_nodes, out);
    } catch (const ValidationFailed& e) {
        err << "error: " << e.code() << ": " << e.what() << "\n";
        for (const auto& d : e.report().errors) {
            err << "  " << d.code << (d.locus.empty() ? "" : " at " + d.locus) << ": "
                << d.message << "\n";
        }
        return kValidationFailure;
    } catch (const Error& e) {
        err << "error: " << e.code() << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kAssessmentError;
    }
    return kUsageError;
}

}  // namespace argconf::cli
