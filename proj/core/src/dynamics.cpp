#include "slzflow/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace slz {

namespace {

struct SphFrame {
    double C, S, T;     // C_z(r), S_z(r), T = S/C
    double Ck, Sk;      // C_k2(theta), S_k2(theta)
    double cphi, sphi;  // cos phi, sin phi
    double G, Gp;       // g(lambda1 r) as a function of r, and dG/dr
    double GC, GCp;     // G*C and its r-derivative
};

SphFrame sph_frame(const PhasePointSpherical& s, const SpaceSpec& spec) {
    const double z = spec.z;
    SphFrame fr{};
    fr.C = kappa_c(z, s.r);
    if (fr.C <= 0.0) throw DomainError("spherical Hamiltonian: r outside principal patch");
    fr.S = kappa_s(z, s.r);
    fr.T = fr.S / fr.C;
    fr.Ck = kappa_c(spec.kappa2, s.theta);
    fr.Sk = kappa_s(spec.kappa2, s.theta);
    fr.cphi = std::cos(s.phi);
    fr.sphi = std::sin(s.phi);
    const double x = -std::log(fr.C);
    fr.G = spec.profile.f(x);
    fr.Gp = spec.profile.f_prime(x) * z * fr.T;
    fr.GC = fr.G * fr.C;
    fr.GCp = fr.Gp * fr.C - fr.G * z * fr.S;
    return fr;
}

double potential_value(double r, const HamiltonianSpec& hspec) {
    if (!hspec.potential) return 0.0;
    return intrinsic_potential(r, *hspec.potential, hspec.space);
}

double potential_derivative(double r, const HamiltonianSpec& hspec) {
    if (!hspec.potential) return 0.0;
    return intrinsic_potential_derivative(r, *hspec.potential, hspec.space);
}

// centrifugal block b1/Ck^2 + b2/(Sk^2 cos^2) + b3/(Sk^2 sin^2), with the
// domain checks of each term
double centrifugal_block(const SphFrame& fr, const SpaceSpec& spec) {
    const auto& b = spec.b;
    double v = 0.0;
    if (b[0] != 0.0) {
        if (fr.Ck == 0.0) throw DomainError("centrifugal b1 term: cos(lambda2 theta) = 0");
        v += b[0] / (fr.Ck * fr.Ck);
    }
    if (b[1] != 0.0) {
        if (fr.Sk == 0.0 || fr.cphi == 0.0)
            throw DomainError("centrifugal b2 term: angular singularity");
        v += b[1] / (fr.Sk * fr.Sk * fr.cphi * fr.cphi);
    }
    if (b[2] != 0.0) {
        if (fr.Sk == 0.0 || fr.sphi == 0.0)
            throw DomainError("centrifugal b3 term: angular singularity");
        v += b[2] / (fr.Sk * fr.Sk * fr.sphi * fr.sphi);
    }
    return v;
}

// r(z J-) and dr/dq_i prefactor in the Cartesian chart; at z = 0 the
// spherical radius degenerates to sqrt(2)|q|
double radial_coordinate_cart(double z, double jm) {
    if (z == 0.0) return std::sqrt(2.0 * jm);
    return kappa_acos(z, std::exp(-z * jm));
}

} // namespace

// ---------------------------------------------------------------------------
// Hamiltonians and constants of motion
// ---------------------------------------------------------------------------

double hamiltonian(const PhasePointSpherical& state, const HamiltonianSpec& hspec) {
    const SpaceSpec& spec = hspec.space;
    const SphFrame fr = sph_frame(state, spec);

    const bool angular =
        state.p_theta != 0.0 || state.p_phi != 0.0 || spec.has_centrifugal();
    if (fr.S == 0.0 && angular)
        throw DomainError("spherical Hamiltonian: sin(lambda1 r) = 0 with angular terms");
    if (state.p_phi != 0.0 && fr.Sk == 0.0)
        throw DomainError("spherical Hamiltonian: sin(lambda2 theta) = 0 with p_phi != 0");

    double kin = state.p_r * state.p_r;
    if (state.p_theta != 0.0 || state.p_phi != 0.0) {
        double ang = state.p_theta * state.p_theta;
        if (state.p_phi != 0.0) ang += state.p_phi * state.p_phi / (fr.Sk * fr.Sk);
        kin += ang / (spec.kappa2 * fr.S * fr.S);
    }
    double h = 0.5 * fr.GC * kin;
    if (spec.has_centrifugal())
        h += fr.GC / (2.0 * fr.S * fr.S) * centrifugal_block(fr, spec);
    return h + potential_value(state.r, hspec);
}

double hamiltonian(const PhasePointCartesian& state, const HamiltonianSpec& hspec) {
    const SpaceSpec& spec = hspec.space;
    const DeformedGenerators g = realize_generators(state, spec, 3);
    const double x = spec.z * g.j_minus;
    double h = 0.5 * g.j_plus * spec.profile.f(x);
    if (hspec.potential) {
        const double r = radial_coordinate_cart(spec.z, g.j_minus);
        h += 2.0 * intrinsic_potential(r, *hspec.potential, spec);
    }
    return h;
}

MotionIntegrals integrals_of_motion(const PhasePointSpherical& state,
                                    const HamiltonianSpec& hspec) {
    const SpaceSpec& spec = hspec.space;
    const double k2 = spec.kappa2;
    const SphFrame fr = sph_frame(state, spec);
    const auto& b = spec.b;

    MotionIntegrals mi;
    mi.c2 = state.p_phi * state.p_phi;
    if (b[1] != 0.0) {
        if (fr.cphi == 0.0) throw DomainError("C2: cos(phi) = 0 with b2 != 0");
        mi.c2 += k2 * b[1] / (fr.cphi * fr.cphi);
    }
    if (b[2] != 0.0) {
        if (fr.sphi == 0.0) throw DomainError("C2: sin(phi) = 0 with b3 != 0");
        mi.c2 += k2 * b[2] / (fr.sphi * fr.sphi);
    }

    if (fr.Sk == 0.0) throw DomainError("C2_lower: sin(lambda2 theta) = 0");
    const double tk = fr.Sk / fr.Ck; // T_k2(theta); Ck = 0 handled per term below
    if (fr.Ck == 0.0 && (b[0] != 0.0 || state.p_phi != 0.0))
        throw DomainError("C2_lower: cos(lambda2 theta) = 0");
    const double rot = fr.cphi * state.p_theta - fr.sphi * state.p_phi / tk;
    mi.c2_lower = rot * rot;
    if (b[0] != 0.0) mi.c2_lower += b[0] * k2 * k2 * tk * tk * fr.cphi * fr.cphi;
    if (b[1] != 0.0) {
        if (fr.cphi == 0.0) throw DomainError("C2_lower: cos(phi) = 0 with b2 != 0");
        mi.c2_lower += b[1] * k2 / (tk * tk * fr.cphi * fr.cphi);
    }

    mi.c3 = c3_from_chain(state, spec, mi.c2);
    mi.h = hamiltonian(state, hspec);
    return mi;
}

double c3_from_chain(const PhasePointSpherical& state, const SpaceSpec& spec, double c2) {
    const double k2 = spec.kappa2;
    const double Ck = kappa_c(k2, state.theta), Sk = kappa_s(k2, state.theta);
    double c3 = state.p_theta * state.p_theta;
    if (spec.b[0] != 0.0) {
        if (Ck == 0.0) throw DomainError("C3: cos(lambda2 theta) = 0 with b1 != 0");
        c3 += spec.b[0] * k2 / (Ck * Ck);
    }
    if (c2 != 0.0) {
        if (Sk == 0.0) throw DomainError("C3: sin(lambda2 theta) = 0");
        c3 += c2 / (Sk * Sk);
    }
    return c3;
}

double extra_integral_staeckel(const PhasePointCartesian& state, const SpaceSpec& spec) {
    const double u = spec.z * state.q[0] * state.q[0];
    return 0.5 * sinhc(u) * std::exp(u) * state.p[0] * state.p[0];
}

double poisson_bracket_spherical(const SphericalFunction& fa, const SphericalFunction& fb,
                                 const PhasePointSpherical& at) {
    auto eval = [](const SphericalFunction& f, const PhasePointSpherical& s) {
        try {
            return f(s);
        } catch (const DomainError& e) {
            throw EvaluationError(std::string("poisson_bracket_spherical stencil point: ") +
                                  e.what());
        }
    };
    // coordinate/momentum slots as pointers-to-member for a uniform stencil
    static constexpr double PhasePointSpherical::* coords[3] = {
        &PhasePointSpherical::r, &PhasePointSpherical::theta, &PhasePointSpherical::phi};
    static constexpr double PhasePointSpherical::* momenta[3] = {
        &PhasePointSpherical::p_r, &PhasePointSpherical::p_theta, &PhasePointSpherical::p_phi};

    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        PhasePointSpherical s = at;
        const double hq = fd_step_first(at.*coords[i]);
        s.*coords[i] = at.*coords[i] + hq;
        const double fa_qp = eval(fa, s), fb_qp = eval(fb, s);
        s.*coords[i] = at.*coords[i] - hq;
        const double fa_qm = eval(fa, s), fb_qm = eval(fb, s);
        s.*coords[i] = at.*coords[i];

        const double hp = fd_step_first(at.*momenta[i]);
        s.*momenta[i] = at.*momenta[i] + hp;
        const double fa_pp = eval(fa, s), fb_pp = eval(fb, s);
        s.*momenta[i] = at.*momenta[i] - hp;
        const double fa_pm = eval(fa, s), fb_pm = eval(fb, s);

        sum += (fa_qp - fa_qm) / (2.0 * hq) * (fb_pp - fb_pm) / (2.0 * hp) -
               (fa_pp - fa_pm) / (2.0 * hp) * (fb_qp - fb_qm) / (2.0 * hq);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// analytic flow
// ---------------------------------------------------------------------------

PhasePointSpherical flow_derivatives(const PhasePointSpherical& state,
                                     const HamiltonianSpec& hspec) {
    const SpaceSpec& spec = hspec.space;
    const double k2 = spec.kappa2;
    const SphFrame fr = sph_frame(state, spec);
    const bool angular =
        state.p_theta != 0.0 || state.p_phi != 0.0 || spec.has_centrifugal();
    if (fr.S == 0.0 && angular)
        throw DomainError("flow: sin(lambda1 r) = 0 with angular terms");
    if (state.p_phi != 0.0 && fr.Sk == 0.0) throw DomainError("flow: sin(lambda2 theta) = 0");

    const double S2 = fr.S * fr.S;
    const double Sk2 = fr.Sk * fr.Sk;

    double ang = 0.0; // p_theta^2 + p_phi^2/Sk^2
    if (state.p_theta != 0.0) ang += state.p_theta * state.p_theta;
    if (state.p_phi != 0.0) ang += state.p_phi * state.p_phi / Sk2;

    PhasePointSpherical d;
    d.r = fr.GC * state.p_r;
    d.theta = (state.p_theta != 0.0) ? fr.GC / (k2 * S2) * state.p_theta : 0.0;
    d.phi = (state.p_phi != 0.0) ? fr.GC / (k2 * S2 * Sk2) * state.p_phi : 0.0;

    // dH/dr
    double dH_dr = 0.5 * fr.GCp * state.p_r * state.p_r;
    if (ang != 0.0)
        dH_dr += 0.5 * (fr.GCp / (k2 * S2) - 2.0 * fr.GC * fr.C / (k2 * S2 * fr.S)) * ang;
    if (spec.has_centrifugal()) {
        const double Bc = centrifugal_block(fr, spec);
        const double Wp = fr.GCp / (2.0 * S2) - fr.GC * fr.C / (S2 * fr.S);
        dH_dr += Wp * Bc;
    }
    dH_dr += potential_derivative(state.r, hspec);

    // dH/dtheta
    double dH_dth = 0.0;
    if (state.p_phi != 0.0)
        dH_dth += 0.5 * fr.GC / (k2 * S2) * state.p_phi * state.p_phi *
                  (-2.0 * fr.Ck / (Sk2 * fr.Sk));
    if (spec.has_centrifugal()) {
        const double W = fr.GC / (2.0 * S2);
        double dBc = 0.0;
        if (spec.b[0] != 0.0) dBc += spec.b[0] * 2.0 * k2 * fr.Sk / (fr.Ck * fr.Ck * fr.Ck);
        double dInvSk2 = -2.0 * fr.Ck / (Sk2 * fr.Sk);
        if (spec.b[1] != 0.0) dBc += spec.b[1] / (fr.cphi * fr.cphi) * dInvSk2;
        if (spec.b[2] != 0.0) dBc += spec.b[2] / (fr.sphi * fr.sphi) * dInvSk2;
        dH_dth += W * dBc;
    }

    // dH/dphi
    double dH_dphi = 0.0;
    if (spec.b[1] != 0.0 || spec.b[2] != 0.0) {
        const double W = fr.GC / (2.0 * S2);
        double dBc = 0.0;
        if (spec.b[1] != 0.0)
            dBc += spec.b[1] * 2.0 * fr.sphi / (Sk2 * fr.cphi * fr.cphi * fr.cphi);
        if (spec.b[2] != 0.0)
            dBc -= spec.b[2] * 2.0 * fr.cphi / (Sk2 * fr.sphi * fr.sphi * fr.sphi);
        dH_dphi = W * dBc;
    }

    d.p_r = -dH_dr;
    d.p_theta = -dH_dth;
    d.p_phi = -dH_dphi;
    return d;
}

PhasePointCartesian flow_derivatives(const PhasePointCartesian& state,
                                     const HamiltonianSpec& hspec) {
    const SpaceSpec& spec = hspec.space;
    const double z = spec.z;
    const auto& b = spec.b;

    std::array<double, 3> u, shc_, shcp, site, dsite_dq;
    for (int i = 0; i < 3; ++i) {
        const double qi = state.q[i], pi = state.p[i];
        u[i] = z * qi * qi;
        shc_[i] = sinhc(u[i]);
        shcp[i] = sinhc_prime(u[i]);
        site[i] = shc_[i] * pi * pi;
        dsite_dq[i] = pi * pi * shcp[i] * 2.0 * z * qi;
        if (b[i] != 0.0) {
            if (qi == 0.0) throw DomainError("flow: b_i != 0 with q_i = 0");
            const double w = qi * qi * shc_[i]; // sinh weight
            site[i] += b[i] / w;
            const double dw = 2.0 * qi * shc_[i] + 2.0 * z * qi * qi * qi * shcp[i];
            dsite_dq[i] -= b[i] * dw / (w * w);
        }
    }
    // dressing exponents sigma[j][i]: X_j = exp(z sum_i sigma_ji q_i^2)
    static constexpr int sigma[3][3] = {{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}};
    std::array<double, 3> X;
    for (int j = 0; j < 3; ++j) {
        double e = 0.0;
        for (int i = 0; i < 3; ++i) e += sigma[j][i] * u[i];
        X[j] = std::exp(e);
    }
    const double jminus = norm2(state.q);
    const double jplus = site[0] * X[0] + site[1] * X[1] + site[2] * X[2];
    const double x = z * jminus;
    const double f = spec.profile.f(x);
    const double fp = spec.profile.f_prime(x);

    double Upr = 0.0, drdq_pref = 0.0;
    if (hspec.potential) {
        const double r = radial_coordinate_cart(z, jminus);
        const double T = kappa_s(z, r) / kappa_c(z, r);
        Upr = 2.0 * intrinsic_potential_derivative(r, *hspec.potential, spec);
        drdq_pref = 2.0 / T; // dr/dq_i = 2 q_i / T_z(r)
    }

    PhasePointCartesian d;
    for (int i = 0; i < 3; ++i) {
        d.q[i] = f * shc_[i] * state.p[i] * X[i]; // dH/dp_i
        double dJp = dsite_dq[i] * X[i];
        for (int j = 0; j < 3; ++j) dJp += site[j] * X[j] * 2.0 * z * sigma[j][i] * state.q[i];
        double dH = 0.5 * (dJp * f + jplus * fp * 2.0 * z * state.q[i]);
        if (hspec.potential) dH += Upr * drdq_pref * state.q[i];
        d.p[i] = -dH;
    }
    return d;
}

// ---------------------------------------------------------------------------
// trajectory integration
// ---------------------------------------------------------------------------

PhasePointSpherical Trajectory::spherical_state(std::size_t i) const {
    const auto& s = states[i];
    return {s[0], s[1], s[2], s[3], s[4], s[5]};
}

PhasePointCartesian Trajectory::cartesian_state(std::size_t i) const {
    const auto& s = states[i];
    return {{s[0], s[1], s[2]}, {s[3], s[4], s[5]}};
}

std::array<double, 5> Trajectory::max_relative_drift() const {
    std::array<double, 5> drift{0, 0, 0, 0, 0};
    if (invariants_log.empty()) return drift;
    const InvariantsRow& first = invariants_log.front();
    auto rel = [](double v, double v0) { return std::abs(v - v0) / std::max(1.0, std::abs(v0)); };
    for (const auto& row : invariants_log) {
        drift[0] = std::max(drift[0], rel(row.h, first.h));
        drift[1] = std::max(drift[1], rel(row.c2, first.c2));
        drift[2] = std::max(drift[2], rel(row.c2_lower, first.c2_lower));
        drift[3] = std::max(drift[3], rel(row.c3, first.c3));
        if (row.staeckel && first.staeckel)
            drift[4] = std::max(drift[4], rel(*row.staeckel, *first.staeckel));
    }
    return drift;
}

namespace {

// distance (in the relevant coordinate) to the nearest singal locus of the
// spherical-chart Hamiltonian; infinity when no term is guarded
double singularity_distance(const PhasePointSpherical& s, const HamiltonianSpec& hspec) {
    const SpaceSpec& spec = hspec.space;
    double dist = HUGE_VAL;
    const bool angular =
        s.p_theta != 0.0 || s.p_phi != 0.0 || spec.has_centrifugal();
    if (angular) dist = std::min(dist, std::abs(s.r));
    if (spec.z > 0.0) {
        const double r_max = M_PI_2 / std::sqrt(spec.z);
        dist = std::min(dist, r_max - s.r);
    }
    const double k2 = spec.kappa2;
    if (s.p_phi != 0.0 || spec.b[1] != 0.0 || spec.b[2] != 0.0)
        dist = std::min(dist, std::abs(s.theta)); // S_k2(theta) = 0
    if (spec.b[0] != 0.0 && k2 > 0.0) {
        const double th_max = M_PI_2 / std::sqrt(k2);
        dist = std::min(dist, std::abs(th_max - s.theta));
    }
    if (spec.b[1] != 0.0) {
        // distance of phi to the nearest zero of cos
        const double m = std::remainder(s.phi - M_PI_2, M_PI);
        dist = std::min(dist, std::abs(m));
    }
    if (spec.b[2] != 0.0) {
        const double m = std::remainder(s.phi, M_PI);
        dist = std::min(dist, std::abs(m));
    }
    return dist;
}

double singularity_distance(const PhasePointCartesian& s, const HamiltonianSpec& hspec) {
    double dist = HUGE_VAL;
    for (int i = 0; i < 3; ++i)
        if (hspec.space.b[i] != 0.0) dist = std::min(dist, std::abs(s.q[i]));
    return dist;
}

std::array<double, 6> pack(const PhasePointSpherical& s) {
    return {s.r, s.theta, s.phi, s.p_r, s.p_theta, s.p_phi};
}
std::array<double, 6> pack(const PhasePointCartesian& s) {
    return {s.q[0], s.q[1], s.q[2], s.p[0], s.p[1], s.p[2]};
}
PhasePointSpherical unpack_sph(const std::array<double, 6>& y) {
    return {y[0], y[1], y[2], y[3], y[4], y[5]};
}
PhasePointCartesian unpack_cart(const std::array<double, 6>& y) {
    return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
}

template <class Point>
Point unpack(const std::array<double, 6>& y);
template <>
PhasePointSpherical unpack<PhasePointSpherical>(const std::array<double, 6>& y) {
    return unpack_sph(y);
}
template <>
PhasePointCartesian unpack<PhasePointCartesian>(const std::array<double, 6>& y) {
    return unpack_cart(y);
}

template <class Point>
InvariantsRow invariants_at(const Point& s, const HamiltonianSpec& hspec, bool log_staeckel);

template <>
InvariantsRow invariants_at(const PhasePointSpherical& s, const HamiltonianSpec& hspec,
                            bool log_staeckel) {
    InvariantsRow row;
    const MotionIntegrals mi = integrals_of_motion(s, hspec);
    row.h = mi.h;
    row.c2 = mi.c2;
    row.c2_lower = mi.c2_lower;
    row.c3 = mi.c3;
    if (log_staeckel) {
        try {
            row.staeckel = extra_integral_staeckel(to_cartesian(s, hspec.space), hspec.space);
        } catch (const std::exception&) {
            row.staeckel = std::nullopt;
        }
    }
    return row;
}

template <>
InvariantsRow invariants_at(const PhasePointCartesian& s, const HamiltonianSpec& hspec,
                            bool log_staeckel) {
    InvariantsRow row;
    const CasimirValues cv = casimir_values(s, hspec.space);
    row.h = hamiltonian(s, hspec);
    row.c2 = cv.c2;
    row.c2_lower = cv.c2_lower;
    row.c3 = cv.c3;
    if (log_staeckel) row.staeckel = extra_integral_staeckel(s, hspec.space);
    return row;
}

template <class Point>
Trajectory integrate_impl(const Point& initial, const HamiltonianSpec& hspec, double t_end,
                          const IntegrationOptions& opts) {
    if (!(opts.tol >= 1e-13 && opts.tol <= 1e-3))
        throw DomainError("integrate: tol must lie in [1e-13, 1e-3]");
    hspec.space.validate();

    Trajectory traj;
    traj.representation = std::is_same_v<Point, PhasePointSpherical>
                              ? Representation::spherical
                              : Representation::cartesian;

    auto rhs = [&hspec](double, const std::array<double, 6>& y) {
        return pack(flow_derivatives(unpack<Point>(y), hspec));
    };
    Dopri5<6> stepper(rhs, opts.tol, opts.tol);

    double t = 0.0;
    std::array<double, 6> y = pack(initial);

    // admissibility of the initial state (throws on inadmissible input)
    invariants_at<Point>(initial, hspec, false);

    auto log_state = [&](double time, const std::array<double, 6>& yy) {
        traj.times.push_back(time);
        traj.states.push_back(yy);
        traj.invariants_log.push_back(invariants_at<Point>(unpack<Point>(yy), hspec, opts.log_staeckel));
    };
    log_state(0.0, y);

    const double h_min = 1e-14 * t_end;
    double h = std::min(1e-3 * t_end, 0.1);
    traj.stop = StopReason::completed;

    while (t < t_end) {
        if (traj.step_stats.accepted + traj.step_stats.rejected > opts.max_steps)
            throw NumericalError("integrate: step budget exceeded");
        const bool last = (t + h >= t_end);
        const double h_try = last ? (t_end - t) : h;
        double h_next = h;
        StepOutcome outcome;
        try {
            outcome = stepper.try_step(t, y, h_try, h_next);
        } catch (const DomainError&) {
            // stencil ran into a singular locus; retreat
            h *= 0.25;
            stepper.reset_derivative();
            ++traj.step_stats.rejected;
            if (h < h_min) {
                traj.stop = StopReason::singularity_approach;
                break;
            }
            continue;
        }
        if (outcome == StepOutcome::accepted) {
            ++traj.step_stats.accepted;
            traj.step_stats.max_error_estimate =
                std::max(traj.step_stats.max_error_estimate, stepper.last_error());
            if (!last) h = h_next;
            log_state(t, y);
            if (singularity_distance(unpack<Point>(y), hspec) < opts.singularity_margin) {
                traj.stop = StopReason::singularity_approach;
                break;
            }
        } else {
            ++traj.step_stats.rejected;
            h = h_next;
            if (h < h_min) {
                traj.stop = StopReason::step_underflow;
                break;
            }
        }
    }
    traj.t_reached = t;
    return traj;
}

} // namespace

Trajectory integrate(const PhasePointSpherical& initial, const HamiltonianSpec& hspec,
                     double t_end, const IntegrationOptions& opts) {
    return integrate_impl(initial, hspec, t_end, opts);
}

Trajectory integrate(const PhasePointCartesian& initial, const HamiltonianSpec& hspec,
                     double t_end, const IntegrationOptions& opts) {
    return integrate_impl(initial, hspec, t_end, opts);
}

// ---------------------------------------------------------------------------
// radial reduction
// ---------------------------------------------------------------------------

RadialProblem radial_reduce(const HamiltonianSpec& hspec, double c2, double c3, double energy) {
    const SpaceSpec spec = hspec.space;
    const double k2 = spec.kappa2;

    if (k2 > 0.0 && spec.b[0] >= 0.0 && c2 >= 0.0) {
        const double c3_min = k2 * std::pow(std::sqrt(spec.b[0]) + std::sqrt(c2), 2);
        if (c3 < c3_min - 1e-12)
            throw DomainError("radial_reduce: c3 below its angular minimum for the given c2");
    }

    const HamiltonianSpec hcopy = hspec;
    auto veff = [hcopy, c3, k2](double r) {
        const double C = kappa_c(hcopy.space.z, r);
        if (C <= 0.0) throw DomainError("effective potential: r outside patch");
        const double S = kappa_s(hcopy.space.z, r);
        if (S == 0.0) throw DomainError("effective potential: r = 0");
        const double G = hcopy.space.profile.f(-std::log(C));
        double v = 0.5 * G * C * c3 / (k2 * S * S);
        if (hcopy.potential) v += intrinsic_potential(r, *hcopy.potential, hcopy.space);
        return v;
    };

    RadialProblem problem;
    problem.energy = energy;
    problem.c3 = c3;
    problem.effective_potential = veff;

    // geometric grid over the principal patch
    const double margin = 1e-8;
    double r_max;
    if (spec.z > 0.0)
        r_max = M_PI_2 / std::sqrt(spec.z) * (1.0 - 1e-9);
    else if (spec.z < 0.0)
        r_max = 50.0 / std::sqrt(-spec.z);
    else
        r_max = 1e6;
    const int n = 4096;
    const double lm = std::log(margin), lM = std::log(r_max);
    double prev_r = std::exp(lm), prev_v = veff(prev_r) - energy;
    bool any_below = prev_v <= 0.0;
    std::vector<std::pair<double, double>> brackets;
    for (int i = 1; i <= n; ++i) {
        const double r = std::exp(lm + (lM - lm) * i / n);
        const double v = veff(r) - energy;
        if (v <= 0.0) any_below = true;
        if ((prev_v < 0.0) != (v < 0.0)) brackets.emplace_back(prev_r, r);
        prev_r = r;
        prev_v = v;
    }
    if (!any_below) throw NoBoundRegion("radial_reduce: V_eff exceeds the energy everywhere");

    for (auto [lo, hi] : brackets) {
        double flo = veff(lo) - energy;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = veff(mid) - energy;
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        problem.turning_points.push_back(0.5 * (lo + hi));
    }
    return problem;
}

std::vector<std::array<double, 3>> radial_trajectory(const RadialProblem& problem,
                                                     const HamiltonianSpec& hspec, double r0,
                                                     double pr0, double t_end, double tol,
                                                     const std::vector<double>& sample_times) {
    const SpaceSpec& spec = hspec.space;
    const double k2 = spec.kappa2;
    const double c3 = problem.c3;

    auto rhs = [&](double, const std::array<double, 2>& y) -> std::array<double, 2> {
        const double r = y[0], pr = y[1];
        const double C = kappa_c(spec.z, r);
        if (C <= 0.0) throw DomainError("radial flow: r outside patch");
        const double S = kappa_s(spec.z, r);
        if (S == 0.0) throw DomainError("radial flow: r = 0");
        const double x = -std::log(C);
        const double G = spec.profile.f(x);
        const double Gp = spec.profile.f_prime(x) * spec.z * (S / C);
        const double GC = G * C, GCp = Gp * C - G * spec.z * S;
        double dV = 0.5 * c3 / k2 * (GCp / (S * S) - 2.0 * GC * C / (S * S * S));
        if (hspec.potential) dV += intrinsic_potential_derivative(r, *hspec.potential, spec);
        return {GC * pr, -(0.5 * GCp * pr * pr + dV)};
    };

    Dopri5<2> stepper(rhs, tol, tol);
    std::array<double, 2> y{r0, pr0};
    double t = 0.0;
    std::vector<std::array<double, 3>> out;
    std::size_t next = 0;
    if (next < sample_times.size() && sample_times[next] <= 0.0) {
        out.push_back({0.0, y[0], y[1]});
        ++next;
    }
    double h = std::min(1e-3 * t_end, 0.1);
    while (t < t_end && next < sample_times.size()) {
        const double target = sample_times[next];
        const double h_try = std::min(h, target - t);
        double h_next = h;
        if (stepper.try_step(t, y, h_try, h_next) == StepOutcome::accepted) {
            if (h_try >= h) h = h_next;
            if (t >= target - 1e-15) {
                out.push_back({t, y[0], y[1]});
                ++next;
            }
        } else {
            h = h_next;
            if (h < 1e-14 * t_end) throw NumericalError("radial_trajectory: step underflow");
        }
    }
    return out;
}

} // namespace slz
