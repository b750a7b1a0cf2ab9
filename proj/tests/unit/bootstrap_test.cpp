#include "doctest.h"

#include "regcert/bootstrap.hpp"
#include "regcert/checker.hpp"
#include "regcert/io.hpp"
#include "support/instances.hpp"

using namespace regcert;
using regcert::testing::make_spec;

namespace {

SystemSpec scalar_l1() { return make_spec(1, 3, SolutionKind::L1, RMatrix{{2}}); }

SystemSpec pair(int d, SolutionKind kind) { return make_spec(2, d, kind, RMatrix{{0, 2}, {3, 0}}); }

SystemSpec symmetric3(SolutionKind kind) {
    const Rational p(3, 5);
    return make_spec(3, 3, kind, RMatrix{{0, p, p}, {p, 0, p}, {p, p, 0}});
}

// Minimal-slack oracle: sigma from scratch, compared against the bound directly.
bool oracle_step(const SystemSpec& s, const State& st, std::size_t i, const Rational& new_s) {
    Rational lin(0);
    for (std::size_t j = 0; j < s.n; ++j) lin += s.P.at(i, j) * st[j];
    Rational sigma = lin > s.r[i] * st[i] ? lin : s.r[i] * st[i];
    if (s.has_h && s.theta->reciprocal() > sigma) sigma = s.theta->reciprocal();
    const CriticalExponent ce = critical_exponent(s.d, s.kind);
    return sigma <= Rational(1) && sigma - new_s < Rational(1) - ce.p_c.reciprocal();
}

}  // namespace

TEST_CASE("step rule examples") {
    const SystemSpec s = scalar_l1();
    const StepCheck a = step_valid(s, State{Rational(2, 5)}, 0, Rational(0));
    CHECK_FALSE(a.valid);
    CHECK(a.sigma == Rational(4, 5));

    const StepCheck b = step_valid(s, State{Rational(1, 4)}, 0, Rational(0));
    CHECK(b.valid);
    CHECK(b.sigma == Rational(1, 2));
    CHECK(b.margin == Rational(1, 6));

    // Staying put is valid whenever sigma < s_i + 1/p_c'.
    const StepCheck c = step_valid(s, State{Rational(2, 5)}, 0, Rational(2, 5));
    CHECK(c.valid);

    // sigma > 1 is never valid.
    const StepCheck d = step_valid(pair(3, SolutionKind::L1), State{Rational(1), Rational(1)}, 1, Rational(1));
    CHECK(d.sigma == Rational(3));
    CHECK_FALSE(d.valid);
}

TEST_CASE("step rule includes the self and forcing floors") {
    SystemSpec s = pair(3, SolutionKind::L1);
    s.r = RVector{Rational(5, 2), 0};
    CHECK(step_valid(s, State{Rational(1, 2), Rational(0)}, 0, Rational(0)).sigma == Rational(5, 4));
    s.r = RVector{0, 0};
    s.has_h = true;
    s.theta = ExtRational(Rational(4, 3));
    CHECK(step_valid(s, State{Rational(0), Rational(0)}, 0, Rational(0)).sigma == Rational(3, 4));
    s.theta = ExtRational::infinity();
    CHECK(step_valid(s, State{Rational(0), Rational(0)}, 0, Rational(0)).sigma == Rational(0));
}

TEST_CASE("step rule agrees with a direct evaluation") {
    testing::Rng rng(51);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
        SystemSpec s = testing::random_supercritical(n, SolutionKind::L1, k % 2, rng);
        State st(n);
        for (auto& x : st) x = testing::quarter(rng, 0, 4);
        const std::size_t i = static_cast<std::size_t>(k) % n;
        const Rational new_s = testing::quarter(rng, 0, 4);
        CHECK(step_valid(s, st, i, new_s).valid == oracle_step(s, st, i, new_s));
    }
}

TEST_CASE("waypoint examples") {
    const WaypointTable a = waypoints(pair(3, SolutionKind::L1), {0, 1});
    REQUIRE(a.slowness.size() == 1);
    CHECK(a.slowness[0] == RVector{Rational(0)});
    CHECK(a.exponents(1).front().is_infinite());
    CHECK(a.case_tag == WaypointCase::II);
    CHECK(a.case_rank == 1);

    // (1 - p_11) w = (p_12 + p_13)/5 - 4/5 with p_11 = 0.
    const WaypointTable b = waypoints(symmetric3(SolutionKind::H01), {0, 1, 2});
    CHECK(b.slowness[0] == RVector{Rational(-14, 25)});
    CHECK(b.exponents(1).front() == ExtRational(Rational(-25, 14)));
    CHECK(b.case_tag == WaypointCase::I);
    // (2/5) w = 3/25 - 4/5 at rank 2.
    CHECK(b.slowness[1] == RVector{Rational(-17, 10), Rational(-17, 10)});

    CHECK(waypoints(scalar_l1(), {0}).case_tag == WaypointCase::V);
    CHECK_THROWS(waypoints(scalar_l1(), {0, 1}));
}

TEST_CASE("certificate examples") {
    const BootstrapCertificate a = generate_certificate(scalar_l1());
    CHECK(a.steps.size() <= 6);
    CHECK(a.initial == State{Rational(1, 3) + Rational(1, 150)});
    for (const Step& st : a.steps) CHECK(st.margin.sign() > 0);
    CHECK(check_certificate(scalar_l1(), a).ok);

    const SystemSpec b = pair(2, SolutionKind::L1delta);
    CHECK(check_certificate(b, generate_certificate(b)).ok);
    CHECK_THROWS_AS(generate_certificate(pair(3, SolutionKind::L1delta)), NotSupercritical);

    for (SolutionKind kind : {SolutionKind::H01, SolutionKind::L1, SolutionKind::L1delta}) {
        const SystemSpec s = symmetric3(kind);
        const BootstrapCertificate c = generate_certificate(s);
        CHECK(check_certificate(s, c).ok);
        for (const Step& st : c.steps) CHECK(st.margin.sign() > 0);
    }
}

TEST_CASE("generator configuration errors") {
    GeneratorConfig cfg;
    cfg.epsilon = Rational(0);
    CHECK_THROWS_AS(generate_certificate(scalar_l1(), cfg), std::invalid_argument);
    cfg = {};
    cfg.initial_offset = Rational(1);
    CHECK_THROWS_AS(generate_certificate(scalar_l1(), cfg), std::invalid_argument);
    cfg = {};
    cfg.max_steps = 1;
    CHECK_THROWS_AS(generate_certificate(symmetric3(SolutionKind::L1delta), cfg), CertificateSearchExhausted);
}

TEST_CASE("certificates are deterministic and descend monotonically") {
    testing::Rng rng(52);
    for (int k = 0; k < 60; ++k) {
        const SystemSpec s = testing::random_supercritical(2 + static_cast<std::size_t>(k % 4),
                                                           static_cast<SolutionKind>(k % 3), k % 2, rng);
        const BootstrapCertificate a = generate_certificate(s), b = generate_certificate(s);
        CHECK(certificate_to_json(a).dump() == certificate_to_json(b).dump());
        State cur = a.initial;
        for (const Step& st : a.steps) {
            CHECK(st.pre_state == cur);
            State next = cur;
            next[st.component] = st.new_s;
            for (std::size_t i = 0; i < s.n; ++i) CHECK(next[i] <= cur[i]);
            cur = std::move(next);
        }
        CHECK(cur == State(s.n, Rational(0)));
        CHECK(a.final_state == cur);
    }
}

TEST_CASE("checker rejects mutations") {
    const SystemSpec s = pair(2, SolutionKind::L1delta);
    const BootstrapCertificate good = generate_certificate(s);
    REQUIRE(check_certificate(s, good).ok);
    const CriticalExponent ce = critical_exponent(s.d, s.kind);

    SUBCASE("margin") {
        BootstrapCertificate c = good;
        std::size_t idx = 0;
        while (idx < c.steps.size() && c.steps[idx].sigma < ce.p_c_conj_inv) ++idx;
        REQUIRE(idx < c.steps.size());
        c.steps[idx].new_s = c.steps[idx].sigma - ce.p_c_conj_inv;
        const CheckResult r = check_certificate(s, c);
        CHECK(r.reason == CheckFailure::MarginViolation);
        CHECK(r.step_index == idx);
    }
    SUBCASE("chaining") {
        BootstrapCertificate c = good;
        REQUIRE(c.steps.size() >= 2);
        c.steps.erase(c.steps.begin());
        const CheckResult r = check_certificate(s, c);
        CHECK(r.reason == CheckFailure::ChainBroken);
        CHECK(r.step_index == 0);
    }
    SUBCASE("final state") {
        BootstrapCertificate c = good;
        c.steps.pop_back();
        c.final_state = c.steps.back().pre_state;
        c.final_state[c.steps.back().component] = c.steps.back().new_s;
        CHECK(check_certificate(s, c).reason == CheckFailure::IncompleteFinalState);
    }
    SUBCASE("recorded final state") {
        BootstrapCertificate c = good;
        c.final_state[0] = Rational(1, 7);
        CHECK(check_certificate(s, c).reason == CheckFailure::IncompleteFinalState);
    }
    SUBCASE("initial state") {
        BootstrapCertificate c = good;
        c.initial[1] = ce.p_c.reciprocal();
        CHECK(check_certificate(s, c).reason == CheckFailure::InitialStateIllegal);
        c.initial[1] = Rational(3, 2);
        CHECK(check_certificate(s, c).reason == CheckFailure::InitialStateIllegal);
    }
    SUBCASE("digest and dimensions") {
        BootstrapCertificate c = good;
        c.spec_digest[0] = c.spec_digest[0] == 'a' ? 'b' : 'a';
        CHECK(check_certificate(s, c).reason == CheckFailure::SpecDigestMismatch);
        c = good;
        c.initial.pop_back();
        CHECK(check_certificate(s, c).reason == CheckFailure::DimensionMismatch);
    }
    SUBCASE("records") {
        BootstrapCertificate c = good;
        c.steps[0].sigma += Rational(1, 1000);
        CHECK(check_certificate(s, c).reason == CheckFailure::RecordMismatch);
        c = good;
        c.steps[0].component = 7;
        CHECK(check_certificate(s, c).reason == CheckFailure::ComponentOutOfRange);
        c = good;
        c.steps[0].new_s = c.steps[0].pre_state[c.steps[0].component];
        CHECK(check_certificate(s, c).reason == CheckFailure::NoProgress);
        c = good;
        c.steps[0].new_s = Rational(-1, 8);
        CHECK(check_certificate(s, c).reason == CheckFailure::SlownessOutOfRange);
    }
}

TEST_CASE("raising a step past its bound is rejected on random certificates") {
    testing::Rng rng(53);
    std::size_t tried = 0;
    for (int k = 0; k < 80; ++k) {
        const SystemSpec s = testing::random_supercritical(2 + static_cast<std::size_t>(k % 4),
                                                           static_cast<SolutionKind>(k % 3), k % 2, rng);
        BootstrapCertificate c = generate_certificate(s);
        const CriticalExponent ce = critical_exponent(s.d, s.kind);
        for (std::size_t idx = 0; idx < c.steps.size(); ++idx) {
            if (c.steps[idx].sigma - ce.p_c_conj_inv >= Rational(0)) {
                c.steps[idx].new_s = c.steps[idx].sigma - ce.p_c_conj_inv - Rational(1, 1024);
                if (c.steps[idx].new_s.sign() < 0) c.steps[idx].new_s = Rational(0);
                const CheckResult r = check_certificate(s, c);
                CHECK_FALSE(r.ok);
                ++tried;
                break;
            }
        }
    }
    CHECK(tried > 0);
}

TEST_CASE("Case V schedules converge to the exact waypoint") {
    testing::Rng rng(54);
    std::size_t case_v = 0, converged = 0;
    for (int k = 0; k < 400 && case_v < 40; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
        const SystemSpec s = testing::random_supercritical(n, static_cast<SolutionKind>(k % 3), false, rng);
        GeneratorTrace trace;
        const BootstrapCertificate cert = generate_certificate(s, {}, &trace);
        if (waypoints(s, trace.order).case_tag != WaypointCase::V) continue;
        ++case_v;
        const CriticalExponent ce = critical_exponent(s.d, s.kind);
        for (const PhaseTrace& ph : trace.phases) {
            // Independent solve of the block system at the recorded rest state.
            RMatrix A(ph.components.size(), ph.components.size());
            RVector b(ph.components.size());
            for (std::size_t a = 0; a < ph.components.size(); ++a) {
                const std::size_t i = ph.components[a];
                for (std::size_t c = 0; c < ph.components.size(); ++c) {
                    A.at(a, c) = Rational(i == ph.components[c] ? 1 : 0) - s.P.at(i, ph.components[c]);
                }
                b[a] = -ce.p_c_conj_inv;
                for (std::size_t c = 0; c < ph.rest.size(); ++c) b[a] += s.P.at(i, ph.rest[c]) * ph.rest_state[c];
            }
            CHECK(A * ph.waypoint == b);
            if (ph.components.size() != n - 1) continue;
            Rational gap(0);
            bool zero = false;
            for (std::size_t a = 0; a < ph.end.size(); ++a) {
                zero = zero || ph.end[a].is_zero();
                const Rational target = ph.waypoint[a].sign() > 0 ? ph.waypoint[a] : Rational(0);
                if (ph.end[a] - target > gap) gap = ph.end[a] - target;
            }
            if (!zero && ph.rounds < 64) {
                CHECK(gap <= ph.tolerance);
                ++converged;
            }
        }
        CHECK(check_certificate(s, cert).ok);
    }
    CHECK(case_v > 0);
    CHECK(converged > 0);
}
