#include "properties.hpp"

#include <functional>
#include <sstream>

#include "argconf/opinion.hpp"
#include "oracle.hpp"

namespace properties {

namespace {

using argconf::ConditionalPair;
using argconf::FusionMode;
using argconf::Opinion;

constexpr double kTol = 1e-9;

std::string show(const Opinion& o) {
    std::ostringstream s;
    s.precision(17);
    s << "(" << o.b << ", " << o.d << ", " << o.u << ", " << o.a << ")";
    return s.str();
}

class Recorder {
public:
    explicit Recorder(std::string name) { check_.name = std::move(name); }

    void record(double error, double tol, const std::function<std::string()>& describe) {
        ++check_.cases;
        if (!(error <= check_.worst)) check_.worst = error;
        if (!(error <= tol)) {
            if (check_.failures++ == 0) check_.first_failure = describe();
        }
    }

    void record(bool ok, const std::function<std::string()>& describe) {
        record(ok ? 0.0 : 1.0, 0.5, describe);
    }

    Check take() { return std::move(check_); }

private:
    Check check_;
};

FusionMode random_mode(oracle::Generator& g, int which) {
    switch (which % 3) {
    case 0:
        return FusionMode::cumulative(g.unit());
    case 1:
        return FusionMode::averaging();
    default:
        return FusionMode::weighted(g.unit());
    }
}

}  // namespace

std::vector<Check> operator_properties(std::uint64_t seed, std::size_t cases) {
    oracle::Generator g(seed);
    std::vector<Check> out;

    {
        Recorder rec("simplex closure");
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.any();
            const Opinion y = g.any();
            const ConditionalPair c{g.any(), g.any(), std::nullopt};
            const FusionMode mode = random_mode(g, static_cast<int>(i));
            const Opinion results[] = {argconf::multiply(x, y), argconf::comultiply(x, y),
                                       argconf::fuse(x, y, mode), argconf::deduce(x, c)};
            for (const auto& r : results) {
                rec.record(oracle::on_simplex(r, kTol),
                           [&] { return show(x) + " op " + show(y) + " -> " + show(r); });
            }
        }
        out.push_back(rec.take());
    }

    {
        Recorder mul("projection of multiply is the product");
        Recorder co("projection of comultiply is the probabilistic sum");
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.any();
            const Opinion y = g.any();
            const double px = oracle::expectation(x);
            const double py = oracle::expectation(y);
            const Opinion m = argconf::multiply(x, y);
            const Opinion c = argconf::comultiply(x, y);
            mul.record(std::abs(oracle::expectation(m) - px * py), kTol,
                       [&] { return show(x) + " x " + show(y) + " -> " + show(m); });
            co.record(std::abs(oracle::expectation(c) - (px + py - px * py)), kTol,
                      [&] { return show(x) + " + " + show(y) + " -> " + show(c); });
        }
        out.push_back(mul.take());
        out.push_back(co.take());
    }

    {
        Recorder rec("projection of deduction is the total-probability mixture");
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.any();
            Opinion pos = g.any();
            const Opinion neg = g.any();
            if (pos.u == 1.0 && neg.u == 1.0) pos = g.interior();
            const double ay = oracle::fixpoint_base_rate(pos, neg, x.a);
            const double e_pos = pos.b + ay * pos.u;
            const double e_neg = neg.b + ay * neg.u;
            const double px = oracle::expectation(x);
            const Opinion r = argconf::deduce(x, {pos, neg, std::nullopt});
            rec.record(std::abs(oracle::expectation(r) - (px * e_pos + (1.0 - px) * e_neg)), kTol,
                       [&] {
                           return show(x) + " | " + show(pos) + " / " + show(neg) + " -> " +
                                  show(r);
                       });
        }
        out.push_back(rec.take());
    }

    {
        Recorder add("cumulative fusion adds evidence");
        Recorder assoc("cumulative fusion is associative");
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.uncertain();
            const Opinion y = g.uncertain();
            const Opinion z = g.uncertain();
            const Opinion f = argconf::fuse(x, y, FusionMode::cumulative());
            const Opinion expected = oracle::cumulative_fusion(x, y);
            add.record(oracle::distance(f, expected), kTol,
                       [&] { return show(x) + " + " + show(y) + " -> " + show(f); });

            const Opinion left =
                argconf::fuse(f, z, FusionMode::cumulative());
            const Opinion right =
                argconf::fuse(x, argconf::fuse(y, z, FusionMode::cumulative()),
                              FusionMode::cumulative());
            assoc.record(oracle::distance(left, right), kTol,
                         [&] { return show(left) + " vs " + show(right); });
        }
        out.push_back(add.take());
        out.push_back(assoc.take());
    }

    {
        Recorder avg("averaging fusion is idempotent");
        Recorder wgt("weighted fusion is idempotent");
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.any();
            const Opinion a = argconf::fuse(x, x, FusionMode::averaging());
            const Opinion w = argconf::fuse(x, x, FusionMode::weighted(g.unit()));
            avg.record(oracle::distance(a, x), kTol, [&] { return show(x) + " -> " + show(a); });
            wgt.record(oracle::distance(w, x), kTol, [&] { return show(x) + " -> " + show(w); });
        }
        out.push_back(avg.take());
        out.push_back(wgt.take());
    }

    {
        Recorder rec("vacuous opinion is neutral for cumulative and weighted fusion");
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.any();
            const Opinion v = Opinion::vacuous(g.base_rate());
            for (const auto& mode : {FusionMode::cumulative(), FusionMode::weighted()}) {
                const Opinion r1 = argconf::fuse(x, v, mode);
                const Opinion r2 = argconf::fuse(v, x, mode);
                // Two vacuous operands average their base rates.
                const double err = x.is_vacuous()
                                       ? std::max(oracle::distance_bdu(r1, x),
                                                  oracle::distance_bdu(r2, x))
                                       : std::max(oracle::distance(r1, x),
                                                  oracle::distance(r2, x));
                rec.record(err, kTol, [&] { return show(x) + " -> " + show(r1); });
            }
        }
        out.push_back(rec.take());
    }

    {
        Recorder rec("cumulative fusion does not increase uncertainty");
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.any();
            const Opinion y = g.any();
            const Opinion r = argconf::fuse(x, y, FusionMode::cumulative());
            rec.record(std::max(0.0, r.u - std::min(x.u, y.u)), kTol,
                       [&] { return show(x) + " + " + show(y) + " -> " + show(r); });
        }
        out.push_back(rec.take());
    }

    {
        Recorder rec("deduction boundary cases");
        for (std::size_t i = 0; i < cases; ++i) {
            const double ax = g.base_rate();
            Opinion pos = g.any();
            const Opinion neg = g.any();
            if (pos.u == 1.0 && neg.u == 1.0) pos = g.interior();
            const ConditionalPair c{pos, neg, std::nullopt};

            const Opinion t = argconf::deduce(Opinion::certain_true(ax), c);
            rec.record(oracle::distance_bdu(t, pos), kTol,
                       [&] { return "true antecedent gives " + show(t) + " not " + show(pos); });
            const Opinion f = argconf::deduce(Opinion::certain_false(ax), c);
            rec.record(oracle::distance_bdu(f, neg), kTol,
                       [&] { return "false antecedent gives " + show(f) + " not " + show(neg); });

            const Opinion x = g.any();
            const Opinion same = argconf::deduce(x, {pos, pos, std::nullopt});
            rec.record(oracle::distance_bdu(same, pos), kTol, [&] {
                return "equal conditionals " + show(pos) + " give " + show(same);
            });

            const Opinion vac = argconf::deduce(x, {Opinion::vacuous(), Opinion::vacuous(),
                                                    std::nullopt});
            rec.record(oracle::distance_bdu(vac, Opinion::vacuous()), kTol,
                       [&] { return "vacuous conditionals give " + show(vac); });
        }
        out.push_back(rec.take());
    }

    {
        Recorder rec("Beta mean equals projection");
        const double weights[] = {1.0, 2.0, 10.0};
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.uncertain();
            const double w = weights[i % 3];
            const argconf::BetaShape s = argconf::to_beta(x, w);
            rec.record(std::abs(s.alpha / (s.alpha + s.beta) - oracle::expectation(x)), kTol,
                       [&] { return show(x); });
        }
        out.push_back(rec.take());
    }

    return out;
}

Check evidence_round_trip(std::uint64_t seed, std::size_t cases) {
    oracle::Generator g(seed);
    Recorder rec("evidence round trip");
    for (const double w : {1.0, 2.0, 10.0}) {
        for (std::size_t i = 0; i < cases; ++i) {
            const Opinion x = g.interior();
            const argconf::EvidenceCount e = argconf::to_evidence(x, w);
            const oracle::Evidence expected = oracle::evidence_of(x, w);
            const double scale = std::max(1.0, expected.r + expected.s);
            rec.record(std::max(std::abs(e.r - expected.r), std::abs(e.s - expected.s)) / scale,
                       kTol, [&] { return show(x) + " to evidence"; });

            const Opinion back = argconf::from_evidence(e);
            rec.record(oracle::distance(back, x), kTol,
                       [&] { return show(x) + " came back as " + show(back); });
        }
    }
    return rec.take();
}

}  // namespace properties
