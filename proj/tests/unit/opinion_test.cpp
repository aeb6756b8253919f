#include "doctest.h"

#include "argconf/opinion.hpp"
#include "oracle.hpp"

using namespace argconf;

namespace {

void check_opinion(const Opinion& got, const Opinion& want, double tol = 1e-9) {
    CHECK(std::abs(got.b - want.b) <= tol);
    CHECK(std::abs(got.d - want.d) <= tol);
    CHECK(std::abs(got.u - want.u) <= tol);
    CHECK(std::abs(got.a - want.a) <= tol);
}

const Opinion kPos{0.95, 0.0, 0.05, 0.5};
const Opinion kNeg{0.0, 1.0, 0.0, 0.5};

}  // namespace

TEST_SUITE("opinion") {

TEST_CASE("validate_opinion accepts, clamps and rejects") {
    check_opinion(validate_opinion({0.5, 0.5, 0.0, 0.5}), {0.5, 0.5, 0.0, 0.5}, 0.0);
    CHECK_THROWS_AS(validate_opinion({0.6, 0.6, 0.2, 0.5}), SimplexViolation);
    check_opinion(validate_opinion({0.8, 0.2, -1e-13, 0.5}), {0.8, 0.2, 0.0, 0.5}, 0.0);
    CHECK_THROWS_AS(validate_opinion({0.5, 0.5, 0.0, 1.5}), BaseRateRange);
    CHECK_THROWS_AS(validate_opinion({-0.1, 0.6, 0.5, 0.5}), SimplexViolation);
    CHECK(is_valid_opinion(Opinion::vacuous()));
    CHECK_FALSE(is_valid_opinion({0.3, 0.3, 0.3, 0.5}));
}

TEST_CASE("evidence mapping") {
    check_opinion(from_evidence({8, 0, 2, 0.5}), oracle::opinion_of({8, 0}, 2, 0.5));
    check_opinion(from_evidence({8, 0, 2, 0.5}), {0.8, 0.0, 0.2, 0.5});
    check_opinion(from_evidence({0, 0, 2, 0.5}), Opinion::vacuous());
    check_opinion(from_evidence({4, 2, 2, 0.5}), {0.5, 0.25, 0.25, 0.5});
    CHECK_THROWS_AS(from_evidence({-1, 0, 2, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(from_evidence({1, 0, 0, 0.5}), InvalidArgument);

    const EvidenceCount e = to_evidence({0.8, 0.0, 0.2, 0.5}, 2);
    CHECK(e.r == doctest::Approx(8.0));
    CHECK(e.s == doctest::Approx(0.0));
    const EvidenceCount v = to_evidence(Opinion::vacuous(), 2);
    CHECK(v.r == 0.0);
    CHECK(v.s == 0.0);
    CHECK_THROWS_AS(to_evidence(Opinion::certain_true(), 2), DogmaticOpinion);
}

TEST_CASE("projection") {
    CHECK(project(Opinion::vacuous()) == 0.5);
    CHECK(project({0.8, 0.0, 0.2, 0.5}) == doctest::Approx(0.9));
    CHECK(project({0.74, 0.05, 0.21, 0.41341}) == doctest::Approx(0.82682).epsilon(1e-5));
}

TEST_CASE("Beta correspondence") {
    const BetaShape s = to_beta({0.8, 0.0, 0.2, 0.5}, 2);
    CHECK(s.alpha == doctest::Approx(9.0));
    CHECK(s.beta == doctest::Approx(1.0));
    const BetaShape flat = to_beta(Opinion::vacuous(), 2);
    CHECK(flat.alpha == doctest::Approx(1.0));
    CHECK(flat.beta == doctest::Approx(1.0));
    const BetaShape mid = to_beta({0.5, 0.25, 0.25, 0.5}, 2);
    CHECK(mid.alpha == doctest::Approx(5.0));
    CHECK(mid.beta == doctest::Approx(3.0));
    CHECK_THROWS_AS(to_beta(Opinion::certain_false(), 2), DogmaticOpinion);
}

TEST_CASE("Beta density") {
    CHECK(beta_pdf({1, 1}, 0.3) == doctest::Approx(1.0));
    // Closed forms 6 p (1 - p) and 9 p^8.
    CHECK(beta_pdf({2, 2}, 0.5) == doctest::Approx(1.5));
    CHECK(beta_pdf({2, 2}, 0.2) == doctest::Approx(6 * 0.2 * 0.8));
    CHECK(beta_pdf({9, 1}, 1.0) == doctest::Approx(9.0));
    CHECK(beta_pdf({9, 1}, 0.5) == doctest::Approx(9 * std::pow(0.5, 8)));
    CHECK(beta_pdf({9, 1}, 0.0) == 0.0);
    CHECK_THROWS_AS(beta_pdf({0.5, 2}, 0.0), DivergentEndpoint);
    CHECK_THROWS_AS(beta_pdf({2, 0.5}, 1.0), DivergentEndpoint);
    CHECK_THROWS_AS(beta_pdf({2, 2}, 1.5), InvalidArgument);
}

TEST_CASE("multiplication") {
    check_opinion(multiply(Opinion::certain_false(), {0.3, 0.3, 0.4, 0.5}), {0, 1, 0, 0.25});
    check_opinion(multiply(Opinion::certain_true(), Opinion::certain_true()), {1, 0, 0, 0.25});
    const Opinion r = multiply({0.5, 0.25, 0.25, 0.5}, {0.5, 0.0, 0.5, 0.5});
    check_opinion(r, {0.375, 0.25, 0.375, 0.25});
    CHECK(project(r) == doctest::Approx(0.625 * 0.75));
    CHECK_THROWS_AS(multiply({0, 0, 1, 1}, {0, 0, 1, 1}), BaseRateDegenerate);
}

TEST_CASE("co-multiplication") {
    check_opinion(comultiply(Opinion::certain_true(), {0.2, 0.5, 0.3, 0.5}), {1, 0, 0, 0.75});
    check_opinion(comultiply(Opinion::certain_false(), Opinion::certain_false()), {0, 1, 0, 0.75});
    const Opinion x{0.76, 0.10, 0.14, 0.5};
    const Opinion y{0.57, 0.30, 0.13, 0.5};
    const Opinion r = comultiply(x, y);
    check_opinion(r, {0.8968, 0.0483, 0.0549, 0.75}, 5e-5);
    const double px = project(x), py = project(y);
    CHECK(project(r) == doctest::Approx(px + py - px * py));
    CHECK_THROWS_AS(comultiply({0, 0, 1, 0}, {0, 0, 1, 0}), BaseRateDegenerate);
}

TEST_CASE("cumulative fusion") {
    const Opinion x{0.8, 0.0, 0.2, 0.5};
    const Opinion y{0.0, 0.8, 0.2, 0.5};
    // (r=8, s=0) + (r=0, s=8) = (8, 8)
    check_opinion(fuse(x, y, FusionMode::cumulative()), oracle::opinion_of({8, 8}, 2, 0.5));
    check_opinion(fuse(x, y, FusionMode::cumulative()), {4.0 / 9, 4.0 / 9, 1.0 / 9, 0.5}, 1e-12);
    check_opinion(fuse(x, Opinion::vacuous(0.3), FusionMode::cumulative()), x);

    SUBCASE("dogmatic operands mix with gamma") {
        const Opinion t = Opinion::certain_true(0.4);
        const Opinion f = Opinion::certain_false(0.6);
        check_opinion(fuse(t, f, FusionMode::cumulative()), {0.5, 0.5, 0.0, 0.5});
        check_opinion(fuse(t, f, FusionMode::cumulative(0.8)), {0.8, 0.2, 0.0, 0.8 * 0.4 + 0.2 * 0.6});
    }
    SUBCASE("dogmatic operand dominates") {
        const Opinion t = Opinion::certain_true();
        check_opinion(fuse(t, {0.2, 0.5, 0.3, 0.5}, FusionMode::cumulative()), t);
    }
    CHECK_THROWS_AS(fuse(x, y, FusionMode::cumulative(1.5)), InvalidArgument);
}

TEST_CASE("averaging and weighted fusion") {
    const Opinion x{0.8, 0.0, 0.2, 0.5};
    check_opinion(fuse(x, x, FusionMode::averaging()), x);
    check_opinion(fuse(x, Opinion::vacuous(), FusionMode::weighted()), x);

    const Opinion y{0.2, 0.4, 0.4, 0.3};
    // b = (b_x u_y + b_y u_x) / (u_x + u_y), u = 2 u_x u_y / (u_x + u_y)
    check_opinion(fuse(x, y, FusionMode::averaging()),
                  {(0.8 * 0.4 + 0.2 * 0.2) / 0.6, 0.4 * 0.2 / 0.6, 2 * 0.2 * 0.4 / 0.6, 0.4}, 1e-12);
    const Opinion avg = fuse(x, y, FusionMode::averaging());
    CHECK(avg.d == doctest::Approx(1.0 - avg.b - avg.u));

    // Confidence weights 1 - u: 0.8 and 0.6.
    const double denom = 0.2 + 0.4 - 2 * 0.2 * 0.4;
    const Opinion w = fuse(x, y, FusionMode::weighted());
    CHECK(w.b == doctest::Approx((0.8 * 0.8 * 0.4 + 0.2 * 0.6 * 0.2) / denom));
    CHECK(w.u == doctest::Approx((2 - 0.6) * 0.2 * 0.4 / denom));
    CHECK(w.a == doctest::Approx((0.5 * 0.8 + 0.3 * 0.6) / 1.4));

    check_opinion(fuse(Opinion::vacuous(0.2), Opinion::vacuous(0.6), FusionMode::weighted()),
                  Opinion::vacuous(0.4));
    check_opinion(fuse(Opinion::certain_true(), Opinion::certain_false(), FusionMode::averaging()),
                  {0.5, 0.5, 0.0, 0.5});
}

TEST_CASE("marginal base rate") {
    const ConditionalPair c{kPos, kNeg, std::nullopt};
    CHECK(marginal_base_rate(c, 0.5) == doctest::Approx(oracle::fixpoint_base_rate(kPos, kNeg, 0.5)));
    CHECK(marginal_base_rate(c, 0.5) == doctest::Approx(0.48718).epsilon(1e-5));
    CHECK(marginal_base_rate({Opinion::certain_true(), kNeg, std::nullopt}, 0.5) == 0.5);
    CHECK(marginal_base_rate(c, 0.75) == doctest::Approx(0.74026).epsilon(1e-5));
    CHECK(marginal_base_rate({kPos, kNeg, 0.3}, 0.5) == 0.3);
    CHECK_THROWS_AS(marginal_base_rate({Opinion::vacuous(), Opinion::vacuous(), std::nullopt}, 0.5),
                    DegenerateConditionals);
}

TEST_CASE("deduction reproduces the worked examples") {
    const ConditionalPair c{kPos, kNeg, std::nullopt};
    const double ay = oracle::fixpoint_base_rate(kPos, kNeg, 0.5);

    const Opinion g4 = deduce({0.9, 0.0, 0.1, 0.5}, c);
    check_opinion(g4, {0.855, 0.0, 0.145, ay});

    check_opinion(deduce(Opinion::certain_true(), c), {0.95, 0.0, 0.05, ay});
    check_opinion(deduce(Opinion::vacuous(), c), Opinion::vacuous(ay));

    const Opinion g7 = deduce({0.6, 0.3, 0.1, 0.5}, c);
    CHECK(std::abs(g7.b - 0.57) <= 0.005);
    CHECK(std::abs(g7.d - 0.30) <= 0.005);
    CHECK(std::abs(g7.u - 0.13) <= 0.005);
}

TEST_CASE("deduction trace") {
    const ConditionalPair c{kPos, kNeg, std::nullopt};
    const DeductionResult r = deduce_traced({0.9, 0.0, 0.1, 0.5}, c);
    const double ay = oracle::fixpoint_base_rate(kPos, kNeg, 0.5);
    CHECK(r.trace.consequent_base_rate == doctest::Approx(ay));
    CHECK(r.trace.expected_pos == doctest::Approx(0.95 + ay * 0.05));
    CHECK(r.trace.expected_neg == doctest::Approx(0.0));
    CHECK(r.trace.apex_uncertainty == doctest::Approx(1.0));
    // u - (b_x u_pos + d_x u_neg + u_x (a_x u_pos + (1 - a_x) u_neg))
    CHECK(r.trace.uncertainty_increase == doctest::Approx(0.145 - (0.9 * 0.05 + 0.1 * 0.025)));
    CHECK_FALSE(r.trace.vacuous_conditionals);

    const DeductionResult v =
        deduce_traced({0.9, 0.0, 0.1, 0.5}, {Opinion::vacuous(), Opinion::vacuous(), std::nullopt}, 0.3);
    CHECK(v.trace.vacuous_conditionals);
    check_opinion(v.opinion, Opinion::vacuous(0.3));
}

TEST_CASE("deduction with an explicit consequent base rate") {
    const ConditionalPair c{{0.6, 0.1, 0.3, 0.5}, {0.1, 0.6, 0.3, 0.5}, 0.2};
    const Opinion x{0.3, 0.3, 0.4, 0.5};
    const Opinion r = deduce(x, c);
    CHECK(r.a == 0.2);
    const double e_pos = 0.6 + 0.2 * 0.3, e_neg = 0.1 + 0.2 * 0.3;
    CHECK(project(r) == doctest::Approx(project(x) * e_pos + (1 - project(x)) * e_neg));
    CHECK(oracle::on_simplex(r));
}

}  // TEST_SUITE
