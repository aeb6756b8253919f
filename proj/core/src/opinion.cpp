#include "argconf/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace argconf {

namespace {

std::string describe(const Opinion& o) {
    std::ostringstream os;
    os.precision(17);
    os << "(b=" << o.b << ", d=" << o.d << ", u=" << o.u << ", a=" << o.a << ")";
    return os.str();
}

bool in_unit_range(double v, double tol) { return v >= -tol && v <= 1.0 + tol; }

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

void require_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << what << " must lie in [0, 1], got " << v;
        throw InvalidArgument(os.str());
    }
}

void require_prior_weight(double w) {
    if (!(w > 0.0) || !std::isfinite(w)) {
        std::ostringstream os;
        os << "prior weight must be positive, got " << w;
        throw InvalidArgument(os.str());
    }
}

double log_beta_function(double alpha, double beta) {
    return std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
}

}  // namespace

Opinion validate_opinion(const Opinion& o) {
    if (!in_unit_range(o.a, kSimplexTolerance)) {
        throw BaseRateRange("base rate outside [0, 1]: " + describe(o));
    }
    if (!in_unit_range(o.b, kSimplexTolerance) || !in_unit_range(o.d, kSimplexTolerance) ||
        !in_unit_range(o.u, kSimplexTolerance)) {
        throw SimplexViolation("opinion component outside [0, 1]: " + describe(o));
    }
    const double sum = o.b + o.d + o.u;
    if (!(std::abs(sum - 1.0) <= kSimplexTolerance)) {
        throw SimplexViolation("b + d + u != 1: " + describe(o));
    }

    Opinion out{clamp_unit(o.b), clamp_unit(o.d), clamp_unit(o.u), clamp_unit(o.a)};
    // Sums within a few ulps of 1 are left alone so validation is idempotent.
    const double clamped_sum = out.b + out.d + out.u;
    if (std::abs(clamped_sum - 1.0) > 8.0 * std::numeric_limits<double>::epsilon()) {
        out.b /= clamped_sum;
        out.d /= clamped_sum;
        out.u /= clamped_sum;
    }
    return out;
}

bool is_valid_opinion(const Opinion& o) noexcept {
    try {
        validate_opinion(o);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Opinion from_evidence(const EvidenceCount& e) {
    if (!(e.r >= 0.0) || !(e.s >= 0.0) || !std::isfinite(e.r) || !std::isfinite(e.s)) {
        throw InvalidArgument("evidence counts must be finite and non-negative");
    }
    require_prior_weight(e.prior_weight);
    require_unit(e.a, "base rate");

    const double total = e.r + e.s + e.prior_weight;
    return validate_opinion({e.r / total, e.s / total, e.prior_weight / total, e.a});
}

EvidenceCount to_evidence(const Opinion& o, double prior_weight) {
    require_prior_weight(prior_weight);
    const Opinion v = validate_opinion(o);
    if (v.u == 0.0) {
        throw DogmaticOpinion("dogmatic opinion corresponds to unbounded evidence: " +
                              describe(v));
    }
    return {prior_weight * v.b / v.u, prior_weight * v.d / v.u, prior_weight, v.a};
}

double project(const Opinion& o) noexcept { return o.b + o.a * o.u; }

BetaShape to_beta(const Opinion& o, double prior_weight) {
    const EvidenceCount e = to_evidence(o, prior_weight);
    return {e.r + e.a * prior_weight, e.s + (1.0 - e.a) * prior_weight};
}

double beta_pdf(const BetaShape& shape, double p) {
    if (!(shape.alpha > 0.0) || !(shape.beta > 0.0)) {
        throw InvalidArgument("Beta parameters must be positive");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("probability outside [0, 1]");
    }

    const double log_norm = log_beta_function(shape.alpha, shape.beta);
    // Endpoints: the factor with exponent zero is 1, positive exponents vanish.
    if (p == 0.0 || p == 1.0) {
        const double exponent = (p == 0.0 ? shape.alpha : shape.beta) - 1.0;
        if (exponent < 0.0) {
            throw DivergentEndpoint("Beta density is unbounded at the endpoint");
        }
        if (exponent > 0.0) {
            return 0.0;
        }
        return std::exp(-log_norm);
    }
    return std::exp((shape.alpha - 1.0) * std::log(p) + (shape.beta - 1.0) * std::log1p(-p) -
                    log_norm);
}

Opinion multiply(const Opinion& x_in, const Opinion& y_in) {
    const Opinion x = validate_opinion(x_in);
    const Opinion y = validate_opinion(y_in);
    const double k = 1.0 - x.a * y.a;
    if (k <= 0.0) {
        throw BaseRateDegenerate("multiplication undefined when both base rates are 1");
    }

    Opinion r;
    r.b = x.b * y.b + ((1.0 - x.a) * y.a * x.b * y.u + x.a * (1.0 - y.a) * x.u * y.b) / k;
    r.d = x.d + y.d - x.d * y.d;
    r.u = x.u * y.u + ((1.0 - y.a) * x.b * y.u + (1.0 - x.a) * x.u * y.b) / k;
    r.a = x.a * y.a;
    return validate_opinion(r);
}

Opinion comultiply(const Opinion& x_in, const Opinion& y_in) {
    const Opinion x = validate_opinion(x_in);
    const Opinion y = validate_opinion(y_in);
    const double k = x.a + y.a - x.a * y.a;
    if (k <= 0.0) {
        throw BaseRateDegenerate("co-multiplication undefined when both base rates are 0");
    }

    Opinion r;
    r.b = x.b + y.b - x.b * y.b;
    r.d = x.d * y.d + (x.a * (1.0 - y.a) * x.d * y.u + (1.0 - x.a) * y.a * x.u * y.d) / k;
    r.u = x.u * y.u + (y.a * x.d * y.u + x.a * x.u * y.d) / k;
    r.a = k;
    return validate_opinion(r);
}

namespace {

Opinion gamma_mix(const Opinion& x, const Opinion& y, double gamma) {
    const double g = gamma;
    return {g * x.b + (1.0 - g) * y.b, g * x.d + (1.0 - g) * y.d, 0.0, g * x.a + (1.0 - g) * y.a};
}

Opinion fuse_cumulative(const Opinion& x, const Opinion& y, double gamma) {
    if (x.u == 0.0 && y.u == 0.0) {
        Opinion r = gamma_mix(x, y, gamma);
        r.d = 1.0 - r.b;
        return r;
    }
    const double denom = x.u + y.u - x.u * y.u;
    Opinion r;
    r.b = (x.b * y.u + y.b * x.u) / denom;
    r.u = x.u * y.u / denom;
    r.d = 1.0 - r.b - r.u;
    const double a_denom = x.u + y.u - 2.0 * x.u * y.u;
    if (a_denom != 0.0) {
        r.a = (x.a * y.u + y.a * x.u - (x.a + y.a) * x.u * y.u) / a_denom;
    } else {
        r.a = (x.a + y.a) / 2.0;
    }
    return r;
}

Opinion fuse_averaging(const Opinion& x, const Opinion& y) {
    if (x.u == 0.0 && y.u == 0.0) {
        return {(x.b + y.b) / 2.0, (x.d + y.d) / 2.0, 0.0, (x.a + y.a) / 2.0};
    }
    const double denom = x.u + y.u;
    Opinion r;
    r.b = (x.b * y.u + y.b * x.u) / denom;
    r.u = 2.0 * x.u * y.u / denom;
    r.d = 1.0 - r.b - r.u;
    r.a = (x.a + y.a) / 2.0;
    return r;
}

Opinion fuse_weighted(const Opinion& x, const Opinion& y, double gamma) {
    if (x.u == 0.0 && y.u == 0.0) {
        Opinion r = gamma_mix(x, y, gamma);
        r.d = 1.0 - r.b;
        return r;
    }
    if (x.u == 1.0 && y.u == 1.0) {
        return Opinion::vacuous((x.a + y.a) / 2.0);
    }
    const double denom = x.u + y.u - 2.0 * x.u * y.u;
    Opinion r;
    r.b = (x.b * (1.0 - x.u) * y.u + y.b * (1.0 - y.u) * x.u) / denom;
    r.u = (2.0 - x.u - y.u) * x.u * y.u / denom;
    r.d = 1.0 - r.b - r.u;
    r.a = (x.a * (1.0 - x.u) + y.a * (1.0 - y.u)) / (2.0 - x.u - y.u);
    return r;
}

}  // namespace

Opinion fuse(const Opinion& x_in, const Opinion& y_in, const FusionMode& mode) {
    require_unit(mode.gamma, "fusion gamma");
    const Opinion x = validate_opinion(x_in);
    const Opinion y = validate_opinion(y_in);
    switch (mode.kind) {
    case FusionMode::Kind::cumulative:
        return validate_opinion(fuse_cumulative(x, y, mode.gamma));
    case FusionMode::Kind::averaging:
        return validate_opinion(fuse_averaging(x, y));
    case FusionMode::Kind::weighted:
        return validate_opinion(fuse_weighted(x, y, mode.gamma));
    }
    throw InvalidArgument("unknown fusion mode");
}

double marginal_base_rate(const ConditionalPair& c, double antecedent_base_rate) {
    require_unit(antecedent_base_rate, "antecedent base rate");
    if (c.consequent_base_rate) {
        require_unit(*c.consequent_base_rate, "consequent base rate");
        return *c.consequent_base_rate;
    }
    const double ax = antecedent_base_rate;
    const double denom = 1.0 - ax * c.pos.u - (1.0 - ax) * c.neg.u;
    if (denom <= 0.0) {
        throw DegenerateConditionals(
            "consequent base rate undefined: conditionals carry no committed mass "
            "at the antecedent base rate");
    }
    return clamp_unit((ax * c.pos.b + (1.0 - ax) * c.neg.b) / denom);
}

DeductionResult deduce_traced(const Opinion& x_in, const ConditionalPair& c_in,
                              double default_base_rate) {
    require_unit(default_base_rate, "default base rate");
    const Opinion x = validate_opinion(x_in);
    ConditionalPair c = c_in;
    c.pos = validate_opinion(c.pos);
    c.neg = validate_opinion(c.neg);

    DeductionTrace trace;
    if (c.pos.u == 1.0 && c.neg.u == 1.0) {
        const double ay = c.consequent_base_rate.value_or(default_base_rate);
        require_unit(ay, "consequent base rate");
        trace.consequent_base_rate = ay;
        trace.expected_pos = ay;
        trace.expected_neg = ay;
        trace.apex_uncertainty = 1.0;
        trace.vacuous_conditionals = true;
        return {Opinion::vacuous(ay), trace};
    }

    double ay = default_base_rate;
    try {
        ay = marginal_base_rate(c, x.a);
    } catch (const DegenerateConditionals&) {
        // Only reachable when x.a is 0 or 1 and the conditional on that side
        // is vacuous; every base rate is then consistent with the pair.
    }

    const double e_pos = c.pos.b + ay * c.pos.u;
    const double e_neg = c.neg.b + ay * c.neg.u;
    const double e_vac = x.a * e_pos + (1.0 - x.a) * e_neg;
    const double b_min = std::min(c.pos.b, c.neg.b);
    const double d_min = std::min(c.pos.d, c.neg.d);

    double u_apex = 1.0;
    if (ay > 0.0) {
        u_apex = std::min(u_apex, (e_vac - b_min) / ay);
    }
    if (ay < 1.0) {
        u_apex = std::min(u_apex, (1.0 - e_vac - d_min) / (1.0 - ay));
    }
    u_apex = clamp_unit(u_apex);
    const double b_apex = e_vac - ay * u_apex;
    const double d_apex = 1.0 - b_apex - u_apex;

    Opinion r;
    r.b = x.b * c.pos.b + x.d * c.neg.b + x.u * b_apex;
    r.d = x.b * c.pos.d + x.d * c.neg.d + x.u * d_apex;
    r.u = x.b * c.pos.u + x.d * c.neg.u + x.u * u_apex;
    r.a = ay;
    r = validate_opinion(r);

    trace.consequent_base_rate = ay;
    trace.expected_pos = e_pos;
    trace.expected_neg = e_neg;
    trace.apex_uncertainty = u_apex;
    trace.uncertainty_increase =
        r.u - (x.b * c.pos.u + x.d * c.neg.u + x.u * (x.a * c.pos.u + (1.0 - x.a) * c.neg.u));
    return {r, trace};
}

Opinion deduce(const Opinion& x, const ConditionalPair& c, double default_base_rate) {
    return deduce_traced(x, c, default_base_rate).opinion;
}

std::string to_string(FusionMode::Kind kind) {
    switch (kind) {
    case FusionMode::Kind::cumulative:
        return "cumulative";
    case FusionMode::Kind::averaging:
        return "averaging";
    case FusionMode::Kind::weighted:
        return "weighted";
    }
    return "unknown";
}

}  // namespace argconf
