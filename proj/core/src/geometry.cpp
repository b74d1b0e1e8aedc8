#include "slzflow/geometry.hpp"

#include <cmath>

namespace slz {

double CurvatureReport::riemann_component(int a, int b, int c, int d) const {
    for (const auto& rc : riemann) {
        if (rc.a == a && rc.b == b && rc.c == c && rc.d == d) return rc.value;
        if (rc.a == a && rc.b == b && rc.c == d && rc.d == c) return -rc.value;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Cartesian chart
// ---------------------------------------------------------------------------

Mat3 metric_cartesian(const Vec3& q, const SpaceSpec& spec) {
    const double z = spec.z;
    const double u1 = z * q[0] * q[0], u2 = z * q[1] * q[1], u3 = z * q[2] * q[2];
    const double f = spec.profile.f(u1 + u2 + u3);
    if (f == 0.0) throw DomainError("metric_cartesian: conformal factor f = 0");
    Mat3 m = mat3_zero();
    m[0][0] = std::exp(-u2 - u3) / (f * sinhc(u1));
    m[1][1] = std::exp(u1 - u3) / (f * sinhc(u2));
    m[2][2] = std::exp(u1 + u2) / (f * sinhc(u3));
    return m;
}

namespace {

double profile_rho_at(const ConformalProfile& prof, double x) { return prof.rho(x); }
Dual3 profile_rho_at(const ConformalProfile& prof, const Dual3& x) {
    const double r = prof.rho(x.v), rp = prof.rho_prime(x.v);
    return chain(r, rp, x);
}

template <class T>
using ChristoffelT = std::array<std::array<std::array<T, 3>, 3>, 3>;

template <class T>
ChristoffelT<T> christoffel_eval(const std::array<T, 3>& q, const SpaceSpec& spec) {
    using std::exp;
    const double z = spec.z;
    std::array<T, 3> u, shc;
    for (int i = 0; i < 3; ++i) {
        u[i] = T(z) * q[i] * q[i];
        shc[i] = sinhc(u[i]);
    }
    const T x = u[0] + u[1] + u[2];
    const T rho = profile_rho_at(spec.profile, x);
    const T one_plus = T(1.0) + rho, one_minus = T(1.0) - rho;

    ChristoffelT<T> G{};
    for (int i = 0; i < 3; ++i)
        G[i][i][i] = one_minus_u_coth_u_over(u[i], q[i]) - T(z) * rho * q[i];

    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            G[i][i][j] = G[i][j][i] = T(-z) * q[j] * one_plus;
            G[j][i][j] = G[j][j][i] = T(z) * q[i] * one_minus;
        }

    // adjacent pairs (1,2) and (2,3)
    for (int i = 0; i < 2; ++i) {
        const int j = i + 1;
        G[i][j][j] = T(-z) * q[i] * exp(u[i] + u[j]) * (shc[i] / shc[j]) * one_minus;
        G[j][i][i] = T(z) * q[j] * exp(T(0.0) - u[i] - u[j]) * (shc[j] / shc[i]) * one_plus;
    }
    // the outer pair (1,3) carries the full radial exponential
    G[0][2][2] = T(-z) * q[0] * exp(x + u[1]) * (shc[0] / shc[2]) * one_minus;
    G[2][0][0] = T(z) * q[2] * exp(T(0.0) - x - u[1]) * (shc[2] / shc[0]) * one_plus;
    return G;
}

} // namespace

Christoffel christoffel_cartesian(const Vec3& q, const SpaceSpec& spec) {
    if (spec.profile.f(spec.z * norm2(q)) == 0.0)
        throw DomainError("christoffel_cartesian: conformal factor f = 0");
    return christoffel_eval<double>({q[0], q[1], q[2]}, spec);
}

namespace {

struct RiemannRicci {
    std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3> riem; // R^i_{jkl}
    Mat3 ricci;
};

// R^i_{jkl} = d_k G^i_{lj} - d_l G^i_{kj} + G^i_{kp} G^p_{lj} - G^i_{lp} G^p_{kj}
RiemannRicci riemann_from_connection(
    const Christoffel& G, const std::array<std::array<Mat3, 3>, 3>& dG) {
    RiemannRicci out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double v = dG[k][i][l][j] - dG[l][i][k][j];
                    for (int p = 0; p < 3; ++p)
                        v += G[i][k][p] * G[p][l][j] - G[i][l][p] * G[p][k][j];
                    out.riem[i][j][k][l] = v;
                }
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
            double v = 0.0;
            for (int i = 0; i < 3; ++i) v += out.riem[i][j][i][l];
            out.ricci[j][l] = v;
        }
    return out;
}

std::vector<RiemannComponent> collect_riemann(
    const std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>& riem) {
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = k + 1; l < 3; ++l)
                    scale = std::max(scale, std::abs(riem[i][j][k][l]));
    std::vector<RiemannComponent> list;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = k + 1; l < 3; ++l)
                    if (std::abs(riem[i][j][k][l]) > 1e-13 * scale)
                        list.push_back({i, j, k, l, riem[i][j][k][l]});
    return list;
}

} // namespace

CurvatureReport curvature_cartesian(const Vec3& q, const SpaceSpec& spec) {
    const double z = spec.z;
    const double x = z * norm2(q);
    const auto& prof = spec.profile;
    const double f = prof.f(x);
    if (f == 0.0) throw DomainError("curvature_cartesian: conformal factor f = 0");
    const double fp = prof.f_prime(x), fpp = prof.f_second(x);

    CurvatureReport rep;
    rep.christoffel = christoffel_eval<double>({q[0], q[1], q[2]}, spec);

    // exact partial derivatives of the connection via forward-mode duals
    std::array<Dual3, 3> qd{Dual3::variable(q[0], 0), Dual3::variable(q[1], 1),
                            Dual3::variable(q[2], 2)};
    const ChristoffelT<Dual3> Gd = christoffel_eval<Dual3>(qd, spec);
    std::array<std::array<Mat3, 3>, 3> dG{}; // dG[m][i][j][k] = d_m Gamma^i_{jk}
    for (int m = 0; m < 3; ++m)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) dG[m][i][j][k] = Gd[i][j][k].d[m];

    const RiemannRicci rr = riemann_from_connection(rep.christoffel, dG);
    rep.riemann = collect_riemann(rr.riem);
    rep.ricci = rr.ricci;

    // closed-form sectional and scalar curvatures of the geodesic-flow line
    // element, functions of the exponentials of 2 z q_i^2 only
    const double u2 = z * q[1] * q[1], u3 = z * q[2] * q[2];
    const double E3 = std::exp(2.0 * u3);
    const double E23 = std::exp(2.0 * (u2 + u3));
    const double EX = std::exp(2.0 * x);
    const double W = f + fp * fp / f;
    const double pref = 0.25 * z * std::exp(-x);
    rep.sectional[0] = pref * ((1.0 + E3 - 2.0 * EX) * W + 2.0 * (1.0 + EX) * fp -
                               2.0 * (E3 - EX) * fpp);
    rep.sectional[1] = pref * ((2.0 - E3 + E23 - 2.0 * EX) * W + 2.0 * (1.0 + EX) * fp -
                               2.0 * (1.0 - E3 + E23 - EX) * fpp);
    rep.sectional[2] = pref * ((2.0 - E23 - EX) * W + 2.0 * (1.0 + EX) * fp -
                               2.0 * (1.0 - E23) * fpp);
    rep.scalar = z * (6.0 * fp * std::cosh(x) + (4.0 * fpp - 5.0 * W) * std::sinh(x));
    return rep;
}

// ---------------------------------------------------------------------------
// coordinate map
// ---------------------------------------------------------------------------

PhasePointSpherical to_spherical(const PhasePointCartesian& point, const SpaceSpec& spec) {
    const double z = spec.z;
    if (z == 0.0) throw DomainError("to_spherical: map requires z != 0");
    const double k2 = spec.kappa2;

    std::array<Dual3, 3> q{Dual3::variable(point.q[0], 0), Dual3::variable(point.q[1], 1),
                           Dual3::variable(point.q[2], 2)};
    std::array<Dual3, 3> u;
    for (int i = 0; i < 3; ++i) u[i] = Dual3(z) * q[i] * q[i];
    const Dual3 x = u[0] + u[1] + u[2];

    // squared building blocks of the defining relations (all share sign(z))
    const Dual3 D2 = expm1(Dual3(2.0) * u[0]);
    const Dual3 B2 = exp(Dual3(2.0) * u[0]) * expm1(Dual3(2.0) * u[1]);
    const Dual3 A2 = exp(Dual3(2.0) * (u[0] + u[1])) * expm1(Dual3(2.0) * u[2]);
    const Dual3 T2 = expm1(Dual3(2.0) * x);

    // radial coordinate: C_z(r) = e^{-x}
    const Dual3 w = exp(Dual3(0.0) - x);
    double r;
    try {
        r = kappa_acos(z, w.v);
    } catch (const DomainError&) {
        throw DomainError("to_spherical: point outside radial patch");
    }
    const double sr = kappa_s(z, r);
    Dual3 rd = (sr == 0.0) ? Dual3(r) : chain(r, -1.0 / (z * sr), w);

    // polar coordinate: C_kappa2(theta)^2 = A2/T2
    Dual3 thetad(0.0);
    if (T2.v != 0.0) {
        Dual3 c2 = A2 / T2;
        const double tol = 1e-12;
        if (c2.v < 0.0) {
            if (c2.v < -tol) throw DomainError("to_spherical: negative squared quantity (patch)");
            c2.v = 0.0;
        }
        if (k2 > 0.0 && c2.v > 1.0) {
            if (c2.v > 1.0 + tol)
                throw DomainError("to_spherical: squared quantity beyond patch range");
            c2.v = 1.0;
        }
        double theta;
        try {
            theta = kappa_acos(k2, std::sqrt(c2.v));
        } catch (const DomainError&) {
            throw DomainError("to_spherical: point outside angular patch for this kappa2");
        }
        const double ck = kappa_c(k2, theta), sk = kappa_s(k2, theta);
        const double dth_dc2 = (ck * sk == 0.0) ? 0.0 : -1.0 / (2.0 * k2 * ck * sk);
        thetad = chain(theta, dth_dc2, c2);
    }

    // azimuth: tan(phi) = sign(q1) sqrt(|D2|) / (sign(q2) sqrt(|B2|))
    Dual3 phid(0.0);
    if (D2.v != 0.0 || B2.v != 0.0) {
        const double sgn = (z > 0.0) ? 1.0 : -1.0;
        const double s1 = (point.q[0] < 0.0) ? -1.0 : 1.0;
        const double s2 = (point.q[1] < 0.0) ? -1.0 : 1.0;
        Dual3 n(0.0), m(0.0);
        if (D2.v != 0.0) n = Dual3(s1) * sqrt(Dual3(sgn) * D2);
        if (B2.v != 0.0) m = Dual3(s2) * sqrt(Dual3(sgn) * B2);
        phid = atan2(n, m);
        if (phid.v < 0.0) phid.v += 2.0 * M_PI;
    }

    PhasePointSpherical out;
    out.r = rd.v;
    out.theta = thetad.v;
    out.phi = phid.v;

    // cotangent lift: p_cart = J^T p_sph with J = d(r,theta,phi)/dq; the zero
    // covector maps to zero even where the chart degenerates on the axes
    if (point.p[0] == 0.0 && point.p[1] == 0.0 && point.p[2] == 0.0) return out;
    Mat3 jt;
    for (int i = 0; i < 3; ++i) {
        jt[i][0] = rd.d[i];
        jt[i][1] = thetad.d[i];
        jt[i][2] = phid.d[i];
    }
    Vec3 ps;
    try {
        ps = mat3_mul(mat3_inverse(jt), point.p);
    } catch (const NumericalError&) {
        throw DomainError("to_spherical: momentum transform singular on a coordinate axis");
    }
    out.p_r = ps[0];
    out.p_theta = ps[1];
    out.p_phi = ps[2];
    return out;
}

PhasePointCartesian to_cartesian(const PhasePointSpherical& point, const SpaceSpec& spec) {
    const double z = spec.z;
    if (z == 0.0) throw DomainError("to_cartesian: map requires z != 0");
    const double k2 = spec.kappa2;

    const Dual3 rv = Dual3::variable(point.r, 0);
    const Dual3 th = Dual3::variable(point.theta, 1);
    const Dual3 ph = Dual3::variable(point.phi, 2);

    const double cr = kappa_c(z, point.r);
    if (cr <= 0.0) throw DomainError("to_cartesian: r outside principal patch");
    const Dual3 C = chain(cr, -z * kappa_s(z, point.r), rv);
    const Dual3 S = chain(kappa_s(z, point.r), cr, rv);
    const Dual3 T = S / C;

    const Dual3 Sk = chain(kappa_s(k2, point.theta), kappa_c(k2, point.theta), th);
    const Dual3 Ck = chain(kappa_c(k2, point.theta), -k2 * kappa_s(k2, point.theta), th);

    const Dual3 sp = sin(ph), cp = cos(ph);

    const Dual3 zTT = Dual3(z) * T * T;
    const Dual3 a1 = zTT * Dual3(k2) * Sk * Sk * sp * sp;
    if (1.0 + a1.v <= 0.0) throw DomainError("to_cartesian: point outside patch (x1 <= 0)");
    const Dual3 lnx1 = log1p(a1);

    const Dual3 a2 = zTT * Dual3(k2) * Sk * Sk * cp * cp / exp(lnx1);
    if (1.0 + a2.v <= 0.0) throw DomainError("to_cartesian: point outside patch (x2 <= 0)");
    const Dual3 lnx2 = log1p(a2);

    const Dual3 x1x2 = Dual3(1.0) + zTT * Dual3(k2) * Sk * Sk;
    const Dual3 a3 = zTT * Ck * Ck / x1x2;
    if (1.0 + a3.v <= 0.0) throw DomainError("to_cartesian: point outside patch (x3 <= 0)");
    const Dual3 lnx3 = log1p(a3);

    const double s1 = (sp.v < 0.0) ? -1.0 : 1.0;
    const double s2 = (cp.v < 0.0) ? -1.0 : 1.0;
    const double tz = 2.0 * z;
    auto coord = [tz](const Dual3& lnx, double sign) {
        const double q2 = lnx.v / tz;
        if (q2 < 0.0) throw DomainError("to_cartesian: negative squared coordinate");
        if (q2 == 0.0) return Dual3(0.0);
        return Dual3(sign) * sqrt(lnx / Dual3(tz));
    };
    const Dual3 q1 = coord(lnx1, s1);
    const Dual3 q2 = coord(lnx2, s2);
    const Dual3 q3 = coord(lnx3, 1.0);

    PhasePointCartesian out;
    out.q = {q1.v, q2.v, q3.v};

    // p_sph = K^T p_cart with K = dq/d(r,theta,phi)  =>  p_cart = (K^T)^{-1} p_sph
    Mat3 kt;
    for (int a = 0; a < 3; ++a) {
        kt[a][0] = q1.d[a];
        kt[a][1] = q2.d[a];
        kt[a][2] = q3.d[a];
    }
    out.p = mat3_mul(mat3_inverse(kt), Vec3{point.p_r, point.p_theta, point.p_phi});
    return out;
}

// ---------------------------------------------------------------------------
// spherical chart metric and curvature (closed forms)
// ---------------------------------------------------------------------------

namespace {

struct SphericalFrame {
    double C, S, T;    // C_z(r), S_z(r), T_z(r)
    double Ck, Sk;     // C_kappa2(theta), S_kappa2(theta)
    double G, Gp, Gpp; // conformal factor g(lambda1 r) and r-derivatives
};

SphericalFrame spherical_frame(double r, double theta, const SpaceSpec& spec,
                               bool need_theta = true) {
    const double z = spec.z;
    SphericalFrame fr{};
    fr.C = kappa_c(z, r);
    if (fr.C <= 0.0) throw DomainError("spherical chart: r outside principal patch");
    fr.S = kappa_s(z, r);
    fr.T = fr.S / fr.C;
    if (need_theta) {
        fr.Ck = kappa_c(spec.kappa2, theta);
        fr.Sk = kappa_s(spec.kappa2, theta);
    }
    const double x = -std::log(fr.C);
    const auto& prof = spec.profile;
    const double f = prof.f(x), fp = prof.f_prime(x), fpp = prof.f_second(x);
    if (f == 0.0) throw DomainError("spherical chart: conformal factor g = 0");
    // g as a function of r: G(r) = f(-ln C_z(r)), G' = f' z T, G'' = f'' (zT)^2 + f' z/C^2
    fr.G = f;
    fr.Gp = fp * z * fr.T;
    fr.Gpp = fpp * z * z * fr.T * fr.T + fp * z / (fr.C * fr.C);
    return fr;
}

} // namespace

Mat3 metric_spherical(double r, double theta, const SpaceSpec& spec) {
    const SphericalFrame fr = spherical_frame(r, theta, spec);
    const double conf = 1.0 / (fr.G * fr.C);
    const double k2 = spec.kappa2;
    return mat3_diag(conf, k2 * fr.S * fr.S * conf, k2 * fr.S * fr.S * fr.Sk * fr.Sk * conf);
}

CurvatureReport curvature_spherical(double r, double theta, const SpaceSpec& spec) {
    const double z = spec.z, k2 = spec.kappa2;
    const SphericalFrame fr = spherical_frame(r, theta, spec);
    if (fr.S == 0.0) throw DomainError("curvature_spherical: sin(lambda1 r) = 0");
    if (fr.Sk == 0.0) throw DomainError("curvature_spherical: sin(lambda2 theta) = 0");

    const double C = fr.C, S = fr.S, T = fr.T, Ck = fr.Ck, Sk = fr.Sk;
    const double G = fr.G, Gp = fr.Gp, Gpp = fr.Gpp;
    const double rhog = Gp / G;

    const double A = (1.0 + C * C) / (2.0 * S * C) - 0.5 * rhog; // Gamma^theta_{theta r}
    const double B =
        0.5 * ((C / S) * rhog + Gpp / G - rhog * rhog - z * z * T * T); // R^theta_{r theta r}

    CurvatureReport rep;
    auto& Gm = rep.christoffel;
    Gm[0][0][0] = 0.5 * (z * T - rhog);
    Gm[1][2][2] = -Sk * Ck;
    Gm[2][2][1] = Gm[2][1][2] = Ck / Sk;
    Gm[1][1][0] = Gm[1][0][1] = A;
    Gm[2][2][0] = Gm[2][0][2] = A;
    Gm[0][1][1] = -k2 * S * S * A;
    Gm[0][2][2] = -k2 * S * S * Sk * Sk * A;

    const double SA2 = 1.0 - S * S * A * A;
    rep.riemann = {
        {1, 0, 1, 0, B},                        // R^theta_{r theta r}
        {2, 0, 2, 0, B},                        // R^phi_{r phi r}
        {0, 1, 0, 1, k2 * S * S * B},           // R^r_{theta r theta}
        {0, 2, 0, 2, S * S * Sk * Sk * k2 * B}, // R^r_{phi r phi}
        {2, 1, 2, 1, k2 * SA2},                 // R^phi_{theta phi theta}
        {1, 2, 1, 2, k2 * Sk * Sk * SA2},       // R^theta_{phi theta phi}
    };

    rep.ricci = mat3_zero();
    rep.ricci[0][0] = 2.0 * B;
    rep.ricci[1][1] = k2 * S * S *
                      ((1.0 + 2.0 * C * C) / (2.0 * S * C) * rhog + 0.5 * Gpp / G -
                       0.75 * rhog * rhog - 0.75 * z * z * T * T);
    rep.ricci[2][2] = Sk * Sk * rep.ricci[1][1];

    rep.sectional[0] = rep.sectional[1] =
        0.5 * C * ((C / S) * Gp + Gpp - Gp * Gp / G - z * z * T * T * G);
    rep.sectional[2] = C * G * (1.0 / (S * S) - A * A);
    rep.scalar = 2.0 * C *
                 ((1.0 + 3.0 * C * C) / (2.0 * S * C) * Gp + Gpp - 1.25 * Gp * Gp / G -
                  1.25 * z * z * T * T * G);
    return rep;
}

// ---------------------------------------------------------------------------
// finite-difference curvature oracle
// ---------------------------------------------------------------------------

CurvatureReport curvature_oracle_fd(const MetricFn& metric_fn, const Vec3& point) {
    const Mat3 g0 = metric_fn(point);
    const Mat3 ginv = mat3_inverse(g0);
    if (mat3_frobenius(g0) * mat3_frobenius(ginv) > 1e10)
        throw NumericalError("curvature_oracle_fd: metric conditioning exceeds 1e10");

    auto at = [&](int k, double hk, int l, double hl) {
        Vec3 x = point;
        x[k] += hk;
        x[l] += hl;
        return metric_fn(x);
    };

    std::array<double, 3> h;
    for (int k = 0; k < 3; ++k) h[k] = fd_step_second(point[k]);

    std::array<Mat3, 3> dg{};                 // dg[k] = d_k g
    std::array<std::array<Mat3, 3>, 3> ddg{}; // ddg[k][l] = d_k d_l g
    for (int k = 0; k < 3; ++k) {
        const Mat3 gp = at(k, h[k], k, 0.0), gm = at(k, -h[k], k, 0.0);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                dg[k][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h[k]);
                ddg[k][k][a][b] = (gp[a][b] - 2.0 * g0[a][b] + gm[a][b]) / (h[k] * h[k]);
            }
    }
    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l) {
            const Mat3 gpp = at(k, h[k], l, h[l]), gpm = at(k, h[k], l, -h[l]);
            const Mat3 gmp = at(k, -h[k], l, h[l]), gmm = at(k, -h[k], l, -h[l]);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    ddg[k][l][a][b] =
                        (gpp[a][b] - gpm[a][b] - gmp[a][b] + gmm[a][b]) / (4.0 * h[k] * h[l]);
                    ddg[l][k][a][b] = ddg[k][l][a][b];
                }
        }

    CurvatureReport rep;
    auto& G = rep.christoffel;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double v = 0.0;
                for (int l = 0; l < 3; ++l)
                    v += ginv[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
                G[i][j][k] = 0.5 * v;
            }

    // d_m g^{il} = -g^{ia} (d_m g_{ab}) g^{bl}
    std::array<Mat3, 3> dginv{};
    for (int m = 0; m < 3; ++m)
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l) {
                double v = 0.0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) v += ginv[i][a] * dg[m][a][b] * ginv[b][l];
                dginv[m][i][l] = -v;
            }

    std::array<std::array<Mat3, 3>, 3> dG{};
    for (int m = 0; m < 3; ++m)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double v = 0.0;
                    for (int l = 0; l < 3; ++l) {
                        v += dginv[m][i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
                        v += ginv[i][l] * (ddg[m][j][l][k] + ddg[m][k][l][j] - ddg[m][l][j][k]);
                    }
                    dG[m][i][j][k] = 0.5 * v;
                }

    const RiemannRicci rr = riemann_from_connection(G, dG);
    rep.riemann = collect_riemann(rr.riem);
    rep.ricci = rr.ricci;

    // sectional curvature of the coordinate 2-planes
    const int planes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int pidx = 0; pidx < 3; ++pidx) {
        const int i = planes[pidx][0], j = planes[pidx][1];
        double rijij = 0.0;
        for (int a = 0; a < 3; ++a) rijij += g0[i][a] * rr.riem[a][j][i][j];
        const double den = g0[i][i] * g0[j][j] - g0[i][j] * g0[i][j];
        rep.sectional[pidx] = rijij / den;
    }

    double scalar = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) scalar += ginv[a][b] * rr.ricci[a][b];
    rep.scalar = scalar;
    return rep;
}

} // namespace slz
