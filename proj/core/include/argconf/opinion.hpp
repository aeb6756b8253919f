#pragma once

// Binomial subjective-logic opinions and the operator kernel used to
// propagate them: evidence and Beta bridges, multiplication,
// co-multiplication, the three fusion rules and conditional deduction.
//
// All functions are pure. Results are passed through `validate_opinion`
// before being returned, so floating-point drift never leaves the kernel.

#include <optional>
#include <string>

#include "argconf/errors.hpp"

namespace argconf {

/// Tolerance for the b + d + u = 1 constraint and the component ranges.
inline constexpr double kSimplexTolerance = 1e-9;

/// Base rate used when nothing else specifies one.
inline constexpr double kDefaultBaseRate = 0.5;

struct Opinion {
    double b = 0.0;  ///< belief
    double d = 0.0;  ///< disbelief
    double u = 1.0;  ///< uncertainty (uncommitted mass)
    double a = kDefaultBaseRate;  ///< base rate

    static constexpr Opinion vacuous(double base_rate = kDefaultBaseRate) {
        return {0.0, 0.0, 1.0, base_rate};
    }
    static constexpr Opinion certain_true(double base_rate = kDefaultBaseRate) {
        return {1.0, 0.0, 0.0, base_rate};
    }
    static constexpr Opinion certain_false(double base_rate = kDefaultBaseRate) {
        return {0.0, 1.0, 0.0, base_rate};
    }

    bool is_dogmatic() const noexcept { return u == 0.0; }
    bool is_vacuous() const noexcept { return u == 1.0; }

    friend bool operator==(const Opinion&, const Opinion&) = default;
};

struct EvidenceCount {
    double r = 0.0;  ///< positive evidence
    double s = 0.0;  ///< negative evidence
    double prior_weight = 2.0;  ///< non-informative prior weight W
    double a = kDefaultBaseRate;

    friend bool operator==(const EvidenceCount&, const EvidenceCount&) = default;
};

struct BetaShape {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Positive and negative conditionals annotating an inferential step.
/// Only the (b, d, u) parts of `pos`/`neg` take part in deduction; their
/// base rates are ignored.
struct ConditionalPair {
    Opinion pos;
    Opinion neg;
    std::optional<double> consequent_base_rate;

    friend bool operator==(const ConditionalPair&, const ConditionalPair&) = default;
};

struct FusionMode {
    enum class Kind { cumulative, averaging, weighted };

    Kind kind = Kind::cumulative;
    /// Weight of the first operand when both operands are dogmatic.
    double gamma = 0.5;

    static constexpr FusionMode cumulative(double gamma = 0.5) { return {Kind::cumulative, gamma}; }
    static constexpr FusionMode averaging() { return {Kind::averaging, 0.5}; }
    static constexpr FusionMode weighted(double gamma = 0.5) { return {Kind::weighted, gamma}; }
};

/// Intermediate quantities of one deduction, kept for provenance output.
struct DeductionTrace {
    double consequent_base_rate = kDefaultBaseRate;  ///< a_y
    double expected_pos = 0.0;  ///< projected positive conditional
    double expected_neg = 0.0;  ///< projected negative conditional
    double apex_uncertainty = 1.0;  ///< u of the vacuous-antecedent image
    /// Uncertainty gained over the plain barycentric mix of the conditionals.
    double uncertainty_increase = 0.0;
    bool vacuous_conditionals = false;
};

struct DeductionResult {
    Opinion opinion;
    DeductionTrace trace;
};

/// Clamps components within tolerance of [0, 1] and renormalizes small
/// simplex drift. Throws SimplexViolation or BaseRateRange otherwise.
Opinion validate_opinion(const Opinion& o);

/// True when `validate_opinion` would accept `o`.
bool is_valid_opinion(const Opinion& o) noexcept;

Opinion from_evidence(const EvidenceCount& e);

/// Inverse of `from_evidence`. Throws DogmaticOpinion when u == 0.
EvidenceCount to_evidence(const Opinion& o, double prior_weight);

/// Expected probability b + a u.
double project(const Opinion& o) noexcept;

/// Throws DogmaticOpinion when u == 0.
BetaShape to_beta(const Opinion& o, double prior_weight);

/// Beta density. At p = 0 or p = 1 the limit is returned when finite;
/// DivergentEndpoint is thrown when the density is unbounded there.
double beta_pdf(const BetaShape& shape, double p);

/// Binomial multiplication (AND). Throws BaseRateDegenerate when a_x a_y = 1.
Opinion multiply(const Opinion& x, const Opinion& y);

/// Binomial co-multiplication (OR). Throws BaseRateDegenerate when a_x = a_y = 0.
Opinion comultiply(const Opinion& x, const Opinion& y);

Opinion fuse(const Opinion& x, const Opinion& y, const FusionMode& mode);

/// Consequent base rate consistent with the conditionals: the explicit
/// override when present, otherwise the value that makes a vacuous
/// antecedent deduce to a vacuous consequent.
double marginal_base_rate(const ConditionalPair& c, double antecedent_base_rate);

/// Conditional deduction of a consequent from antecedent `x`.
///
/// The vacuous antecedent maps to the apex opinion: the most uncertain
/// consequent whose projection equals the base-rate mixture of the
/// projected conditionals and whose belief/disbelief are bounded below by
/// the smaller conditional belief/disbelief. A general antecedent is the
/// barycentric combination of pos, neg and the apex with weights b, d, u.
/// `default_base_rate` is used only when both conditionals are vacuous.
DeductionResult deduce_traced(const Opinion& x, const ConditionalPair& c,
                              double default_base_rate = kDefaultBaseRate);

Opinion deduce(const Opinion& x, const ConditionalPair& c,
               double default_base_rate = kDefaultBaseRate);

std::string to_string(FusionMode::Kind kind);

}  // namespace argconf
