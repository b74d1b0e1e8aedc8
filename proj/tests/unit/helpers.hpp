#pragma once

#include <cmath>

#include "slzflow/dynamics.hpp"

namespace slz::testing {

inline PhasePointCartesian random_cartesian_state(Rng& rng) {
    PhasePointCartesian s;
    for (int i = 0; i < 3; ++i) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        s.q[i] = sign * rng.uniform(0.3, 1.1);
        s.p[i] = rng.uniform(-1.0, 1.0);
    }
    return s;
}

inline PhasePointSpherical random_spherical_state(Rng& rng, const SpaceSpec& spec) {
    PhasePointSpherical s;
    const double r_patch = spec.z > 0.0 ? M_PI_2 / std::sqrt(spec.z) : 2.0;
    s.r = rng.uniform(0.2, 0.85) * r_patch;
    const double th_patch = spec.kappa2 > 0.0 ? M_PI_2 / std::sqrt(spec.kappa2) : 1.2;
    s.theta = rng.uniform(0.15, 0.85) * th_patch;
    s.phi = rng.uniform(0.15, 0.85) * M_PI_2;
    s.p_r = rng.uniform(-1.0, 1.0);
    s.p_theta = rng.uniform(-1.0, 1.0);
    s.p_phi = rng.uniform(-1.0, 1.0);
    return s;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace slz::testing
