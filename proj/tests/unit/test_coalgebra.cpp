#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "helpers.hpp"
#include "slzflow/coalgebra.hpp"

using namespace slz;
using slz::testing::random_cartesian_state;

namespace {

// Independent 50-digit transcription of the printed three-site realization,
// written directly from the displayed formulas (no shared code with the
// implementation, no removable-singularity handling; evaluation points keep
// every q_i away from zero).
using mp = boost::multiprecision::cpp_bin_float_50;

struct MpGenerators {
    mp jm, jp, j3;
};

MpGenerators generators_oracle(const std::array<double, 3>& q, const std::array<double, 3>& p,
                               double zd, const std::array<double, 3>& bd) {
    const mp z = zd;
    std::array<mp, 3> u, s;
    for (int i = 0; i < 3; ++i) {
        u[i] = z * mp(q[i]) * mp(q[i]);
        s[i] = sinh(u[i]);
    }
    auto ratio = [&](int i) { return s[i] / u[i]; };
    MpGenerators g;
    g.jm = mp(q[0]) * q[0] + mp(q[1]) * q[1] + mp(q[2]) * q[2];
    g.j3 = ratio(0) * q[0] * p[0] * exp(u[1]) * exp(u[2]) +
           ratio(1) * q[1] * p[1] * exp(-u[0]) * exp(u[2]) +
           ratio(2) * q[2] * p[2] * exp(-u[0]) * exp(-u[1]);
    g.jp = (ratio(0) * p[0] * p[0] + z * bd[0] / s[0]) * exp(u[1]) * exp(u[2]) +
           (ratio(1) * p[1] * p[1] + z * bd[1] / s[1]) * exp(-u[0]) * exp(u[2]) +
           (ratio(2) * p[2] * p[2] + z * bd[2] / s[2]) * exp(-u[0]) * exp(-u[1]);
    return g;
}

mp casimir_pair_oracle(const std::array<double, 3>& q, const std::array<double, 3>& p, double zd,
                       double bi, double bj, int i, int j) {
    const mp z = zd;
    const mp ui = z * mp(q[i]) * q[i], uj = z * mp(q[j]) * q[j];
    const mp lij = mp(q[i]) * p[j] - mp(q[j]) * p[i];
    return (sinh(ui) / ui * (sinh(uj) / uj) * lij * lij + mp(bi) * sinh(uj) / sinh(ui) +
            mp(bj) * sinh(ui) / sinh(uj)) *
               exp(-ui) * exp(uj);
}

} // namespace

TEST_CASE("generators: non-deformed limit") {
    SpaceSpec spec;
    spec.z = 0.0;
    PhasePointCartesian s{{1, 2, 3}, {1, 0, 0}};
    const DeformedGenerators g = realize_generators(s, spec, 3);
    CHECK(g.j_minus == doctest::Approx(14.0).epsilon(1e-15));
    CHECK(g.j_plus == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.j_three == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("generators: one-site with zero momentum") {
    SpaceSpec spec;
    spec.z = 1.0;
    PhasePointCartesian s{{1, 0, 0}, {0, 0, 0}};
    const DeformedGenerators g = realize_generators(s, spec, 1);
    CHECK(g.j_minus == 1.0);
    CHECK(g.j_plus == 0.0);
    CHECK(g.j_three == 0.0);
}

TEST_CASE("generators and Casimirs match the 50-digit transcription") {
    SpaceSpec spec;
    spec.z = 0.3;
    spec.b = {0.1, 0.2, 0.4};
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const PhasePointCartesian s = random_cartesian_state(rng);
        const DeformedGenerators g = realize_generators(s, spec, 3);
        const MpGenerators o = generators_oracle(s.q, s.p, spec.z, spec.b);
        CHECK(g.j_minus == doctest::Approx(double(o.jm)).epsilon(1e-14));
        CHECK(g.j_plus == doctest::Approx(double(o.jp)).epsilon(1e-14));
        CHECK(g.j_three == doctest::Approx(double(o.j3)).epsilon(1e-14));

        const CasimirValues cv = casimir_values(s, spec);
        const mp e1 = exp(mp(spec.z) * mp(s.q[0]) * s.q[0]);
        const mp e2 = exp(mp(spec.z) * mp(s.q[1]) * s.q[1]);
        const mp e3 = exp(mp(spec.z) * mp(s.q[2]) * s.q[2]);
        const mp c2o = casimir_pair_oracle(s.q, s.p, spec.z, spec.b[0], spec.b[1], 0, 1) +
                       mp(spec.b[0]) * e2 * e2 + mp(spec.b[1]) / (e1 * e1);
        CHECK(cv.c2 == doctest::Approx(double(c2o)).epsilon(1e-13));
        const mp c2lo = casimir_pair_oracle(s.q, s.p, spec.z, spec.b[1], spec.b[2], 1, 2) +
                        mp(spec.b[1]) * e3 * e3 + mp(spec.b[2]) / (e2 * e2);
        CHECK(cv.c2_lower == doctest::Approx(double(c2lo)).epsilon(1e-13));
        const mp c3o = casimir_pair_oracle(s.q, s.p, spec.z, spec.b[0], spec.b[1], 0, 1) * e3 * e3 +
                       casimir_pair_oracle(s.q, s.p, spec.z, spec.b[0], spec.b[2], 0, 2) +
                       casimir_pair_oracle(s.q, s.p, spec.z, spec.b[1], spec.b[2], 1, 2) /
                           (e1 * e1) +
                       mp(spec.b[0]) * e2 * e2 * e3 * e3 + mp(spec.b[1]) * e3 * e3 / (e1 * e1) +
                       mp(spec.b[2]) / (e1 * e1 * e2 * e2);
        CHECK(cv.c3 == doctest::Approx(double(c3o)).epsilon(1e-13));
    }
}

TEST_CASE("generators: centrifugal term requires q_i != 0") {
    SpaceSpec spec;
    spec.z = 0.5;
    spec.b = {1.0, 0.0, 0.0};
    PhasePointCartesian s{{0.0, 1.0, 1.0}, {0.1, 0.2, 0.3}};
    CHECK_THROWS_AS(realize_generators(s, spec, 3), DomainError);
    CHECK_THROWS_AS(casimir_values(s, spec), DomainError);
}

TEST_CASE("bracket stencil failures surface as EvaluationError") {
    PhasePointCartesian at{{0.4, 0.5, 0.6}, {0.1, 0.2, 0.3}};
    auto bad = [](const PhasePointCartesian& s) -> double {
        if (s.q[0] > 0.4) throw DomainError("outside");
        return s.q[0];
    };
    auto good = [](const PhasePointCartesian& s) { return s.p[0]; };
    CHECK_THROWS_AS(poisson_bracket(bad, good, at), EvaluationError);
}

TEST_CASE("canonical pairs under the finite-difference bracket") {
    PhasePointCartesian at{{0.4, -0.8, 1.2}, {0.3, 0.7, -0.2}};
    auto q1 = [](const PhasePointCartesian& s) { return s.q[0]; };
    auto p1 = [](const PhasePointCartesian& s) { return s.p[0]; };
    auto q2 = [](const PhasePointCartesian& s) { return s.q[1]; };
    CHECK(std::abs(poisson_bracket(q1, p1, at) - 1.0) <= 1e-9);
    CHECK(std::abs(poisson_bracket(q1, q2, at)) <= 1e-9);
}

TEST_CASE("bracket {J-, J+} = 4 J3 at the printed test state") {
    SpaceSpec spec;
    spec.z = 0.5;
    PhasePointCartesian at{{0.7, 0.4, 1.1}, {0.2, -0.5, 0.3}};
    auto jm = [&spec](const PhasePointCartesian& s) { return realize_generators(s, spec, 3).j_minus; };
    auto jp = [&spec](const PhasePointCartesian& s) { return realize_generators(s, spec, 3).j_plus; };
    const double lhs = poisson_bracket(jm, jp, at);
    const double rhs = 4.0 * realize_generators(at, spec, 3).j_three;
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("casimirs: angular-momentum limit and zero-momentum point") {
    SpaceSpec spec;
    spec.z = 0.0;
    PhasePointCartesian s{{1, 0, 0}, {0, 1, 0}};
    const CasimirValues cv = casimir_values(s, spec);
    CHECK(cv.c2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cv.c2_lower == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cv.c3 == doctest::Approx(1.0).epsilon(1e-14));

    SpaceSpec any;
    any.z = 0.8;
    PhasePointCartesian rest{{0.5, 0.7, 0.9}, {0, 0, 0}};
    const CasimirValues zero = casimir_values(rest, any);
    CHECK(zero.c2 == 0.0);
    CHECK(zero.c2_lower == 0.0);
    CHECK(zero.c3 == 0.0);
}

TEST_CASE("casimirs: z -> 0 limit by Richardson extrapolation") {
    SpaceSpec spec;
    spec.b = {0.3, 0.7, 0.5};
    PhasePointCartesian s{{0.6, -0.9, 1.1}, {0.6, -0.9, 1.1}}; // q = p
    spec.z = 1e-8;
    const CasimirValues c1 = casimir_values(s, spec);
    spec.z = 1e-9;
    const CasimirValues c2 = casimir_values(s, spec);
    spec.z = 0.0;
    const CasimirValues c0 = casimir_values(s, spec);
    // linear Richardson: E(0) ~ E(z2) + (E(z2)-E(z1)) z2/(z1-z2)
    auto extrapolate = [](double e1, double e2) { return e2 + (e2 - e1) * 1e-9 / (1e-8 - 1e-9); };
    CHECK(c0.c2 == doctest::Approx(extrapolate(c1.c2, c2.c2)).epsilon(1e-9));
    CHECK(c0.c2_lower == doctest::Approx(extrapolate(c1.c2_lower, c2.c2_lower)).epsilon(1e-9));
    CHECK(c0.c3 == doctest::Approx(extrapolate(c1.c3, c2.c3)).epsilon(1e-9));
}

TEST_CASE("bracket residuals vanish across deformations and signs") {
    Rng rng(23);
    for (double z : {0.0, 0.7, -0.4}) {
        SpaceSpec spec;
        spec.z = z;
        if (z != 0.0) spec.b = {0.1, 0.3, 0.2};
        for (int trial = 0; trial < 5; ++trial) {
            const PhasePointCartesian s = random_cartesian_state(rng);
            const auto res = bracket_residuals(s, spec);
            const DeformedGenerators g = realize_generators(s, spec, 3);
            const double u = z * g.j_minus;
            const std::array<double, 3> lhs{2.0 * g.j_plus * std::cosh(u),
                                            -2.0 * g.j_minus * sinhc(u), 4.0 * g.j_three};
            for (int i = 0; i < 3; ++i)
                CHECK(std::abs(res[i]) <= 1e-6 * (1.0 + std::abs(lhs[i])));
        }
    }
}

TEST_CASE("centrality: Casimirs commute with the generators of their sites") {
    SpaceSpec spec;
    spec.z = 0.6;
    spec.b = {0.2, 0.1, 0.3};
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const PhasePointCartesian s = random_cartesian_state(rng);
        for (int arity : {2, 3}) {
            auto cas = [&spec, arity](const PhasePointCartesian& p) {
                const CasimirValues cv = casimir_values(p, spec);
                return arity == 2 ? cv.c2 : cv.c3;
            };
            for (int gen = 0; gen < 3; ++gen) {
                auto jf = [&spec, arity, gen](const PhasePointCartesian& p) {
                    const DeformedGenerators g = realize_generators(p, spec, arity);
                    return gen == 0 ? g.j_minus : (gen == 1 ? g.j_plus : g.j_three);
                };
                const double br = poisson_bracket(cas, jf, s);
                const double scale = (1.0 + std::abs(cas(s))) * (1.0 + std::abs(jf(s)));
                CHECK(std::abs(br) <= 1e-6 * scale);
            }
        }
    }
}
