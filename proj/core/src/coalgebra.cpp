#include "slzflow/coalgebra.hpp"

#include <cmath>
#include <utility>

namespace slz {

// ---------------------------------------------------------------------------
// ConformalProfile
// ---------------------------------------------------------------------------

ConformalProfile ConformalProfile::identity() { return {Tag::identity, 0.0}; }

ConformalProfile ConformalProfile::exponential(int s) {
    if (s != 1 && s != -1) throw DomainError("ConformalProfile::exponential: s must be +-1");
    return {Tag::exponential, static_cast<double>(s)};
}

ConformalProfile ConformalProfile::power_cosine(double k) {
    if (k == 1.0) throw DomainError("ConformalProfile::power_cosine: k = 1 is excluded");
    return {Tag::power_cosine, k};
}

ConformalProfile ConformalProfile::cos_cubed() { return {Tag::cos_cubed, 0.0}; }

ConformalProfile ConformalProfile::custom(ScalarFn f, ScalarFn fp, ScalarFn fpp) {
    ConformalProfile p(Tag::custom, 0.0);
    p.f_ = std::move(f);
    p.fp_ = std::move(fp);
    p.fpp_ = std::move(fpp);
    return p;
}

double ConformalProfile::exponent() const {
    switch (tag_) {
    case Tag::identity: return 0.0;
    case Tag::exponential: return param_;
    case Tag::power_cosine: return 1.0 - 4.0 * param_;
    case Tag::cos_cubed: return -3.0;
    case Tag::custom: throw DomainError("ConformalProfile::exponent: custom profile");
    }
    return 0.0;
}

double ConformalProfile::f(double x) const {
    if (tag_ == Tag::custom) return f_(x);
    return std::exp(exponent() * x);
}

double ConformalProfile::f_prime(double x) const {
    if (tag_ == Tag::custom) return fp_(x);
    const double c = exponent();
    return c * std::exp(c * x);
}

double ConformalProfile::f_second(double x) const {
    if (tag_ == Tag::custom) return fpp_(x);
    const double c = exponent();
    return c * c * std::exp(c * x);
}

double ConformalProfile::rho(double x) const {
    if (tag_ != Tag::custom) return exponent();
    return fp_(x) / f_(x);
}

double ConformalProfile::rho_prime(double x) const {
    if (tag_ != Tag::custom) return 0.0;
    const double r = fp_(x) / f_(x);
    return fpp_(x) / f_(x) - r * r;
}

double ConformalProfile::g(double y) const {
    const double c = std::cos(y);
    if (c <= 0.0) throw DomainError("ConformalProfile::g: cos(y) <= 0");
    if (tag_ != Tag::custom) return std::pow(c, -exponent());
    return f_(-std::log(c));
}

double ConformalProfile::g_prime(double y) const {
    const double c = std::cos(y);
    if (c <= 0.0) throw DomainError("ConformalProfile::g_prime: cos(y) <= 0");
    if (tag_ != Tag::custom) {
        const double e = exponent();
        return e * std::sin(y) * std::pow(c, -e - 1.0);
    }
    return fp_(-std::log(c)) * std::tan(y);
}

double ConformalProfile::g_second(double y) const {
    const double c = std::cos(y);
    if (c <= 0.0) throw DomainError("ConformalProfile::g_second: cos(y) <= 0");
    if (tag_ != Tag::custom) {
        const double e = exponent();
        const double s = std::sin(y);
        return e * std::pow(c, -e) + e * (e + 1.0) * s * s * std::pow(c, -e - 2.0);
    }
    const double x = -std::log(c);
    const double t = std::tan(y);
    return fpp_(x) * t * t + fp_(x) / (c * c);
}

// ---------------------------------------------------------------------------
// SpaceSpec
// ---------------------------------------------------------------------------

void SpaceSpec::validate() const {
    if (kappa2 == 0.0)
        throw DomainError("SpaceSpec: kappa2 = 0 (degenerate Newton-Hooke metric) rejected");
    const double f0 = profile.f(1e-12);
    if (!(std::abs(f0 - 1.0) <= 1e-9))
        throw DomainError("SpaceSpec: profile does not satisfy f(x) -> 1 as x -> 0");
}

// ---------------------------------------------------------------------------
// generators and Casimirs
// ---------------------------------------------------------------------------

namespace {

struct SiteData {
    double u;    // z q_i^2
    double shc;  // sinh(u)/u
    double eplus; // e^{z q_i^2}
};

SiteData site_data(double z, double qi) {
    SiteData s;
    s.u = z * qi * qi;
    s.shc = sinhc(s.u);
    s.eplus = std::exp(s.u);
    return s;
}

// q_i^2 * sinhc(z q_i^2) == sinh(z q_i^2)/z, the z-regular "sinh weight" of a site
double sinh_weight(double qi, const SiteData& s) { return qi * qi * s.shc; }

void require_site_regular(double qi, double bi, int site) {
    if (bi != 0.0 && qi == 0.0)
        throw DomainError("centrifugal term diverges: b" + std::to_string(site) +
                          " != 0 with q" + std::to_string(site) + " = 0");
}

// One pair block of the Casimirs:
//   sinhc_i sinhc_j (q_i p_j - q_j p_i)^2 + b_i w_j/w_i + b_j w_i/w_j
// with w = sinh weight.  Requires q_i != 0 whenever b_i != 0.
double pair_block(const PhasePointCartesian& s, const SpaceSpec& spec, int i, int j,
                  const std::array<SiteData, 3>& sd) {
    require_site_regular(s.q[i], spec.b[i], i + 1);
    require_site_regular(s.q[j], spec.b[j], j + 1);
    const double lij = s.q[i] * s.p[j] - s.q[j] * s.p[i];
    double block = sd[i].shc * sd[j].shc * lij * lij;
    if (spec.b[i] != 0.0) block += spec.b[i] * sinh_weight(s.q[j], sd[j]) / sinh_weight(s.q[i], sd[i]);
    if (spec.b[j] != 0.0) block += spec.b[j] * sinh_weight(s.q[i], sd[i]) / sinh_weight(s.q[j], sd[j]);
    return block;
}

} // namespace

DeformedGenerators realize_generators(const PhasePointCartesian& state, const SpaceSpec& spec,
                                      int arity) {
    if (arity < 1 || arity > 3) throw DomainError("realize_generators: arity must be 1, 2 or 3");
    const double z = spec.z;

    std::array<SiteData, 3> sd{};
    for (int i = 0; i < arity; ++i) {
        sd[i] = site_data(z, state.q[i]);
        require_site_regular(state.q[i], spec.b[i], i + 1);
    }

    // exponential dressing of site i: e^{-z(q_1^2+..+q_{i-1}^2)} e^{+z(q_{i+1}^2+..)}
    std::array<double, 3> dress{1.0, 1.0, 1.0};
    for (int i = 0; i < arity; ++i) {
        double s = 0.0;
        for (int j = 0; j < i; ++j) s -= sd[j].u;
        for (int j = i + 1; j < arity; ++j) s += sd[j].u;
        dress[i] = std::exp(s);
    }

    DeformedGenerators g;
    for (int i = 0; i < arity; ++i) {
        const double qi = state.q[i], pi = state.p[i];
        g.j_minus += qi * qi;
        g.j_three += sd[i].shc * qi * pi * dress[i];
        double t = sd[i].shc * pi * pi;
        if (spec.b[i] != 0.0) t += spec.b[i] / sinh_weight(qi, sd[i]);
        g.j_plus += t * dress[i];
    }
    return g;
}

double poisson_bracket(const PhaseFunction& fa, const PhaseFunction& fb,
                       const PhasePointCartesian& at) {
    // centered first derivatives of both functions w.r.t. all six coordinates
    auto eval = [](const PhaseFunction& f, const PhasePointCartesian& s) {
        try {
            return f(s);
        } catch (const DomainError& e) {
            throw EvaluationError(std::string("poisson_bracket stencil point: ") + e.what());
        }
    };

    std::array<double, 3> dfa_dq{}, dfa_dp{}, dfb_dq{}, dfb_dp{};
    for (int i = 0; i < 3; ++i) {
        PhasePointCartesian s = at;
        const double hq = fd_step_first(at.q[i]);
        s.q[i] = at.q[i] + hq;
        const double fa_qp = eval(fa, s), fb_qp = eval(fb, s);
        s.q[i] = at.q[i] - hq;
        const double fa_qm = eval(fa, s), fb_qm = eval(fb, s);
        s.q[i] = at.q[i];
        dfa_dq[i] = (fa_qp - fa_qm) / (2.0 * hq);
        dfb_dq[i] = (fb_qp - fb_qm) / (2.0 * hq);

        const double hp = fd_step_first(at.p[i]);
        s.p[i] = at.p[i] + hp;
        const double fa_pp = eval(fa, s), fb_pp = eval(fb, s);
        s.p[i] = at.p[i] - hp;
        const double fa_pm = eval(fa, s), fb_pm = eval(fb, s);
        dfa_dp[i] = (fa_pp - fa_pm) / (2.0 * hp);
        dfb_dp[i] = (fb_pp - fb_pm) / (2.0 * hp);
    }

    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += dfa_dq[i] * dfb_dp[i] - dfa_dp[i] * dfb_dq[i];
    return sum;
}

CasimirValues casimir_values(const PhasePointCartesian& state, const SpaceSpec& spec) {
    const double z = spec.z;
    std::array<SiteData, 3> sd{};
    for (int i = 0; i < 3; ++i) sd[i] = site_data(z, state.q[i]);

    const double e1 = sd[0].eplus, e2 = sd[1].eplus, e3 = sd[2].eplus;
    const auto& b = spec.b;

    CasimirValues c;
    c.c2 = pair_block(state, spec, 0, 1, sd) * (e2 / e1) + b[0] * e2 * e2 + b[1] / (e1 * e1);
    c.c2_lower = pair_block(state, spec, 1, 2, sd) * (e3 / e2) + b[1] * e3 * e3 + b[2] / (e2 * e2);
    c.c3 = pair_block(state, spec, 0, 1, sd) * (e2 / e1) * e3 * e3 +
           pair_block(state, spec, 0, 2, sd) * (e3 / e1) +
           pair_block(state, spec, 1, 2, sd) * (e3 / e2) / (e1 * e1) +
           b[0] * e2 * e2 * e3 * e3 + b[1] * e3 * e3 / (e1 * e1) +
           b[2] / (e1 * e1 * e2 * e2);
    return c;
}

std::array<double, 3> bracket_residuals(const PhasePointCartesian& state, const SpaceSpec& spec) {
    auto jm = [&spec](const PhasePointCartesian& s) { return realize_generators(s, spec, 3).j_minus; };
    auto jp = [&spec](const PhasePointCartesian& s) { return realize_generators(s, spec, 3).j_plus; };
    auto j3 = [&spec](const PhasePointCartesian& s) { return realize_generators(s, spec, 3).j_three; };

    const DeformedGenerators g = realize_generators(state, spec, 3);
    const double z = spec.z;
    const double u = z * g.j_minus;

    const double r1 = poisson_bracket(j3, jp, state) - 2.0 * g.j_plus * std::cosh(u);
    // sinh(z J-)/z = J- * sinhc(z J-), regular at z = 0
    const double r2 = poisson_bracket(j3, jm, state) + 2.0 * g.j_minus * sinhc(u);
    const double r3 = poisson_bracket(jm, jp, state) - 4.0 * g.j_three;
    return {r1, r2, r3};
}

} // namespace slz
