#include <doctest.h>

#include <cmath>

#include "slzflow/coalgebra.hpp"
#include "slzflow/numerics.hpp"

using namespace slz;

TEST_CASE("series kernels agree with direct evaluation across the switch") {
    for (double u : {1e-8, 1e-7, 9.9e-7, 1.01e-6, 1e-5, 0.1, 1.0, -0.3, -1e-7}) {
        const double direct_shc = std::sinh(u) / u;
        CHECK(std::abs(sinhc(u) - direct_shc) <= 1e-14 * std::abs(direct_shc));
        CHECK(std::abs(inv_sinhc(u) - u / std::sinh(u)) <= 1e-14);
        CHECK(std::abs(u_coth_u(u) - u / std::tanh(u)) <= 1e-14);
    }
    CHECK(sinhc(0.0) == 1.0);
    CHECK(inv_sinhc(0.0) == 1.0);
    CHECK(u_coth_u(0.0) == 1.0);
}

TEST_CASE("sinhc_prime matches a finite difference of sinhc") {
    for (double u : {2e-4, 0.02, 0.5, -0.7}) {
        const double h = 1e-6;
        const double fd = (sinhc(u + h) - sinhc(u - h)) / (2 * h);
        CHECK(std::abs(sinhc_prime(u) - fd) <= 1e-9);
    }
    CHECK(sinhc_prime(0.0) == 0.0);
}

TEST_CASE("kappa trigonometry identities") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const double kappa = rng.uniform(-2.0, 2.0);
        const double u = rng.uniform(-1.2, 1.2);
        const double C = kappa_c(kappa, u), S = kappa_s(kappa, u);
        CHECK(std::abs(C * C + kappa * S * S - 1.0) <= 1e-13);
        // derivative identities S' = C, C' = -kappa S
        const double h = 1e-6;
        CHECK(std::abs((kappa_s(kappa, u + h) - kappa_s(kappa, u - h)) / (2 * h) - C) <= 1e-9);
        CHECK(std::abs((kappa_c(kappa, u + h) - kappa_c(kappa, u - h)) / (2 * h) + kappa * S) <=
              1e-9);
    }
    // principal inverse
    CHECK(kappa_acos(1.0, kappa_c(1.0, 0.8)) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(kappa_acos(-1.0, kappa_c(-1.0, 0.8)) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK_THROWS_AS(kappa_acos(1.0, 1.5), DomainError);
    CHECK_THROWS_AS(kappa_acos(-1.0, 0.5), DomainError);
}

TEST_CASE("dual numbers differentiate composite expressions exactly") {
    auto f = [](auto q0, auto q1) {
        using std::exp;
        using std::sinh;
        return exp(q0 * q1) * sinh(q0) / (q1 + decltype(q1)(2.0));
    };
    const double a = 0.7, b = -0.4;
    const Dual3 r = f(Dual3::variable(a, 0), Dual3::variable(b, 1));
    const double h = 1e-6;
    const double d0 = (f(a + h, b) - f(a - h, b)) / (2 * h);
    const double d1 = (f(a, b + h) - f(a, b - h)) / (2 * h);
    CHECK(r.v == doctest::Approx(f(a, b)).epsilon(1e-15));
    CHECK(r.d[0] == doctest::Approx(d0).epsilon(1e-8));
    CHECK(r.d[1] == doctest::Approx(d1).epsilon(1e-8));
    CHECK(r.d[2] == 0.0);
}

TEST_CASE("symmetric eigenvalues on a known matrix") {
    // eigenvalues of [[2,1,0],[1,2,1],[0,1,2]] are 2 and 2 +- sqrt(2)
    std::array<std::array<double, 3>, 3> m{{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}};
    const auto eig = symmetric_eigenvalues<3>(m);
    CHECK(eig[0] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eig[2] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("conformal profiles: derivative consistency and the f<->g dictionary") {
    const auto custom = ConformalProfile::custom(
        [](double x) { return 1.0 + 0.3 * std::sin(x); },
        [](double x) { return 0.3 * std::cos(x); },
        [](double x) { return -0.3 * std::sin(x); });
    const ConformalProfile profiles[] = {
        ConformalProfile::identity(),      ConformalProfile::exponential(+1),
        ConformalProfile::exponential(-1), ConformalProfile::power_cosine(0.6),
        ConformalProfile::cos_cubed(),     custom};
    for (const auto& prof : profiles) {
        for (double x : {0.05, 0.4, 1.1}) {
            const double h = fd_step_first(x);
            const double fd = (prof.f(x + h) - prof.f(x - h)) / (2 * h);
            CHECK(std::abs(prof.f_prime(x) - fd) <=
                  1e-6 * std::max(1.0, std::abs(prof.f_prime(x))));
            const double fd2 = (prof.f_prime(x + h) - prof.f_prime(x - h)) / (2 * h);
            CHECK(std::abs(prof.f_second(x) - fd2) <=
                  1e-6 * std::max(1.0, std::abs(prof.f_second(x))));
        }
        // g(y) = f(x) under e^{-2x} = cos^2 y
        for (double y : {0.2, 0.7, 1.3}) {
            const double x = -std::log(std::cos(y));
            CHECK(prof.g(y) == doctest::Approx(prof.f(x)).epsilon(1e-13));
            const double h = 1e-6;
            const double gd = (prof.g(y + h) - prof.g(y - h)) / (2 * h);
            CHECK(std::abs(prof.g_prime(y) - gd) <=
                  1e-6 * std::max(1.0, std::abs(prof.g_prime(y))));
        }
    }
}

TEST_CASE("space validation") {
    SpaceSpec spec;
    spec.kappa2 = 0.0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec.kappa2 = 1.0;
    CHECK_NOTHROW(spec.validate());
    spec.profile = ConformalProfile::custom([](double) { return 2.0; }, [](double) { return 0.0; },
                                            [](double) { return 0.0; });
    CHECK_THROWS_AS(spec.validate(), DomainError);
}
