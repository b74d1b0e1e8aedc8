#include <benchmark/benchmark.h>

#include "slzflow/dynamics.hpp"
#include "slzflow/geometry.hpp"
#include "slzflow/potentials.hpp"

using namespace slz;

namespace {

SpaceSpec make_spec() {
    SpaceSpec spec;
    spec.z = 0.8;
    spec.kappa2 = 1.0;
    spec.profile = ConformalProfile::power_cosine(0.6);
    spec.b = {0.1, 0.2, 0.15};
    return spec;
}

void GeneratorsThreeSite(benchmark::State& state) {
    const SpaceSpec spec = make_spec();
    const PhasePointCartesian s{{0.5, 0.7, 0.9}, {0.3, -0.4, 0.2}};
    for (auto _ : state) benchmark::DoNotOptimize(realize_generators(s, spec, 3));
}
BENCHMARK(GeneratorsThreeSite);

void CasimirValues(benchmark::State& state) {
    const SpaceSpec spec = make_spec();
    const PhasePointCartesian s{{0.5, 0.7, 0.9}, {0.3, -0.4, 0.2}};
    for (auto _ : state) benchmark::DoNotOptimize(casimir_values(s, spec));
}
BENCHMARK(CasimirValues);

void CurvatureSphericalClosed(benchmark::State& state) {
    const SpaceSpec spec = make_spec();
    for (auto _ : state) benchmark::DoNotOptimize(curvature_spherical(0.7, 0.6, spec));
}
BENCHMARK(CurvatureSphericalClosed);

void CurvatureCartesianClosed(benchmark::State& state) {
    const SpaceSpec spec = make_spec();
    const Vec3 q{0.5, 0.7, 0.9};
    for (auto _ : state) benchmark::DoNotOptimize(curvature_cartesian(q, spec));
}
BENCHMARK(CurvatureCartesianClosed);

void CurvatureOracleFd(benchmark::State& state) {
    const SpaceSpec spec = make_spec();
    const auto fn = [&spec](const Vec3& x) { return metric_spherical(x[0], x[1], spec); };
    for (auto _ : state) benchmark::DoNotOptimize(curvature_oracle_fd(fn, {0.7, 0.6, 0.3}));
}
BENCHMARK(CurvatureOracleFd);

void CoordinateMapRoundTrip(benchmark::State& state) {
    const SpaceSpec spec = make_spec();
    const PhasePointCartesian s{{0.4, 0.5, 0.6}, {0.3, -0.4, 0.2}};
    for (auto _ : state) benchmark::DoNotOptimize(to_cartesian(to_spherical(s, spec), spec));
}
BENCHMARK(CoordinateMapRoundTrip);

void FlowDerivativesSpherical(benchmark::State& state) {
    const SpaceSpec spec = make_spec();
    const HamiltonianSpec hs{spec, IntrinsicPotential::kepler_coulomb(1.0),
                             Representation::spherical};
    const PhasePointSpherical s{0.7, 0.8, 0.9, 0.2, 0.3, 0.35};
    for (auto _ : state) benchmark::DoNotOptimize(flow_derivatives(s, hs));
}
BENCHMARK(FlowDerivativesSpherical);

void IntegrateUnitTime(benchmark::State& state) {
    SpaceSpec spec = make_spec();
    spec.b = {0.0, 0.0, 0.0};
    const HamiltonianSpec hs{spec, std::nullopt, Representation::spherical};
    const PhasePointSpherical s0{0.7, 0.8, 0.9, 0.2, 0.3, 0.35};
    IntegrationOptions opts;
    opts.tol = 1e-10;
    for (auto _ : state) benchmark::DoNotOptimize(integrate(s0, hs, 1.0, opts));
}
BENCHMARK(IntegrateUnitTime);

void GreenQuadrature(benchmark::State& state) {
    const ConformalProfile prof = ConformalProfile::identity();
    for (auto _ : state) benchmark::DoNotOptimize(green_quadrature(1.1, prof, 1.0));
}
BENCHMARK(GreenQuadrature);

void GreenClosedFormPowerCosine(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(green_closed_form(1.1, GreenCase::power_cosine, 1.0, 0.6));
}
BENCHMARK(GreenClosedFormPowerCosine);

} // namespace

BENCHMARK_MAIN();
