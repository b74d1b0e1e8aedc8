#include "slzflow/potentials.hpp"

#include <cmath>

#include "slzflow/quadrature.hpp"

namespace slz {

namespace {

// flat-anchoring constant of the power-cosine incomplete-beta form,
// c(k) = -sqrt(pi) Gamma(k+1/2)/Gamma(k); 0 at k = 0 and at negative integers
double power_cosine_anchor(double k) {
    if (k <= -0.5) throw DomainError("power_cosine Green closed form requires k > -1/2");
    if (k == std::round(k) && k <= 0.0) return 0.0;
    return -std::sqrt(M_PI) * std::tgamma(k + 0.5) / std::tgamma(k);
}

void require_principal_R(double R) {
    if (!(R > 0.0 && R < M_PI_2))
        throw DomainError("Green function: R outside the principal patch (0, pi/2)");
}

// C_kappa(u) - 1 = -2 kappa S_kappa(u/2)^2, stable near u = 0
double kappa_cm1(double kappa, double u) {
    const double s = kappa_s(kappa, 0.5 * u);
    return -2.0 * kappa * s * s;
}

} // namespace

bool green_closed_case(const ConformalProfile& profile, GreenClosedForm& out) {
    using Tag = ConformalProfile::Tag;
    switch (profile.tag()) {
    case Tag::identity:
        out = {GreenCase::identity, 0.25};
        return true;
    case Tag::exponential:
        if (profile.parameter() > 0.0) {
            out = {GreenCase::constant_curvature, 0.0};
            return true;
        }
        out = {GreenCase::power_cosine, 0.5}; // g = cos y
        return true;
    case Tag::power_cosine:
        out = {GreenCase::power_cosine, profile.parameter()};
        return true;
    case Tag::cos_cubed:
        out = {GreenCase::cos_cubed, 1.0};
        return true;
    case Tag::custom: return false;
    }
    return false;
}

double green_printed_normalization(GreenCase gcase, double z) {
    if (gcase == GreenCase::identity || gcase == GreenCase::cos_cubed) {
        if (z <= 0.0) throw DomainError("green_printed_normalization: requires z > 0");
        return std::sqrt(z);
    }
    return 1.0;
}

double green_closed_form(double R, GreenCase gcase, double z, double k) {
    require_principal_R(R);
    if (z <= 0.0) throw DomainError("green_closed_form: the R chart requires z > 0");
    const double lambda1 = std::sqrt(z);
    switch (gcase) {
    case GreenCase::constant_curvature: return -1.0 / std::tan(R);
    case GreenCase::identity:
        return -lambda1 * (std::sqrt(std::cos(R)) / std::tan(R) +
                           incomplete_elliptic_e(0.5 * R, 2.0));
    case GreenCase::cos_cubed: return -lambda1 * (R + 1.0 / std::tan(R));
    case GreenCase::power_cosine: {
        if (k == 1.0) throw DomainError("green_closed_form: k = 1 belongs to the cos^3 case");
        const double s = std::sin(R);
        const double beta = incomplete_beta(1.0 / (s * s), 1.0 - k, 0.5 + k);
        // remove the complete [0,1] segment of the continuation and apply the
        // flat anchoring constant
        return -0.5 * (beta - complete_beta(1.0 - k, 0.5 + k)) + power_cosine_anchor(k);
    }
    }
    throw DomainError("green_closed_form: unknown case");
}

double green_quadrature(double R, const ConformalProfile& profile, double z) {
    require_principal_R(R);
    if (z <= 0.0) throw DomainError("green_quadrature: the R chart requires z > 0");

    const bool expfam = profile.is_exponential_family();
    const double c = expfam ? profile.exponent() : 0.0;
    auto smooth = [&](double Rp) {
        const double s = std::sin(Rp);
        const double cm1 = -2.0 * std::sin(0.5 * Rp) * std::sin(0.5 * Rp);
        double sqrt_h_m1;
        if (expfam) {
            // h = cos^{1-c}: sqrt(h)-1 = expm1((1-c)/2 * log cos)
            sqrt_h_m1 = std::expm1(0.5 * (1.0 - c) * std::log1p(cm1));
        } else {
            const double cosR = 1.0 + cm1;
            if (cosR <= 0.0) throw DomainError("green_quadrature: outside patch");
            const double h = cosR * profile.f(-std::log(cosR));
            if (h <= 0.0) throw DomainError("green_quadrature: h <= 0 on the range");
            sqrt_h_m1 = std::sqrt(h) - 1.0;
        }
        return sqrt_h_m1 / (s * s);
    };
    const QuadratureResult q = integrate_gk(smooth, 0.0, R, 1e-11);
    return -1.0 / std::tan(R) + q.value;
}

// ---------------------------------------------------------------------------
// GreenFunction (r chart, kappa form)
// ---------------------------------------------------------------------------

GreenFunction::GreenFunction(const ConformalProfile& profile, double z)
    : profile_(profile), z_(z) {
    has_closed_ = green_closed_case(profile, closed_);
    if (has_closed_ && z > 0.0) normalization_ = green_printed_normalization(closed_.gcase, z);
}

double GreenFunction::derivative(double r) const {
    const double C = kappa_c(z_, r);
    if (C <= 0.0) throw DomainError("GreenFunction: r outside principal patch");
    const double S = kappa_s(z_, r);
    if (S == 0.0) throw DomainError("GreenFunction: r = 0");
    const double g = profile_.f(-std::log(C));
    const double h = C * g;
    if (h <= 0.0) throw DomainError("GreenFunction: h <= 0");
    return std::sqrt(h) / (S * S);
}

double GreenFunction::value_by_quadrature(double r) const {
    const bool expfam = profile_.is_exponential_family();
    const double c = expfam ? profile_.exponent() : 0.0;
    const double z = z_;
    auto smooth = [&](double s) {
        const double S = kappa_s(z, s);
        const double lncz = std::log1p(kappa_cm1(z, s));
        double sqrt_h_m1;
        if (expfam) {
            sqrt_h_m1 = std::expm1(0.5 * (1.0 - c) * lncz);
        } else {
            const double C = std::exp(lncz);
            const double h = C * profile_.f(-lncz);
            if (h <= 0.0) throw DomainError("GreenFunction: h <= 0 on the range");
            sqrt_h_m1 = std::sqrt(h) - 1.0;
        }
        return sqrt_h_m1 / (S * S);
    };
    const double C = kappa_c(z, r);
    if (C <= 0.0) throw DomainError("GreenFunction: r outside principal patch");
    const double T = kappa_s(z, r) / C;
    if (T == 0.0) throw DomainError("GreenFunction: r = 0");
    return -1.0 / T + integrate_gk(smooth, 0.0, r, 1e-11).value;
}

double GreenFunction::value(double r) const {
    const double C = kappa_c(z_, r);
    if (C <= 0.0) throw DomainError("GreenFunction: r outside principal patch");
    const double S = kappa_s(z_, r);
    if (S == 0.0) throw DomainError("GreenFunction: r = 0");
    const double T = S / C;

    if (has_closed_) {
        switch (closed_.gcase) {
        case GreenCase::constant_curvature: return -1.0 / T;
        case GreenCase::cos_cubed: return -z_ * r - 1.0 / T;
        case GreenCase::identity:
        case GreenCase::power_cosine:
            if (z_ > 0.0) {
                const double lambda1 = std::sqrt(z_);
                const double closed = green_closed_form(lambda1 * r, closed_.gcase, z_, closed_.k);
                return lambda1 * closed / normalization_;
            }
            break; // z <= 0: fall through to quadrature
        }
    }
    if (z_ == 0.0) return -1.0 / r;
    return value_by_quadrature(r);
}

// ---------------------------------------------------------------------------
// intrinsic potentials
// ---------------------------------------------------------------------------

double intrinsic_potential(double r, const IntrinsicPotential& pot, const SpaceSpec& spec) {
    const GreenFunction green(spec.profile, spec.z);
    const double u = green.value(r);
    if (pot.kind == IntrinsicPotential::Kind::kepler_coulomb) return pot.coupling * u;
    if (u == 0.0) throw DomainError("oscillator potential: Green function zero");
    return pot.coupling / (u * u);
}

double intrinsic_potential_derivative(double r, const IntrinsicPotential& pot,
                                      const SpaceSpec& spec) {
    const GreenFunction green(spec.profile, spec.z);
    const double du = green.derivative(r);
    if (pot.kind == IntrinsicPotential::Kind::kepler_coulomb) return pot.coupling * du;
    const double u = green.value(r);
    if (u == 0.0) throw DomainError("oscillator potential: Green function zero");
    return -2.0 * pot.coupling * du / (u * u * u);
}

double hamiltonian_algebraic_form(const DeformedGenerators& generators,
                                  const IntrinsicPotential& pot, double z) {
    const double jm = generators.j_minus;
    const double u = z * jm;
    const double kinetic = 0.5 * generators.j_plus * std::exp(u);
    if (pot.kind == IntrinsicPotential::Kind::kepler_coulomb) {
        if (jm <= 0.0)
            throw DomainError("hamiltonian_algebraic_form: J- <= 0 at the KC square root");
        // z e^{-u}/sinh(u) = e^{-u}/(J- sinhc(u)), positive for either sign of z
        return kinetic - pot.coupling * std::sqrt(std::exp(-u) / (jm * sinhc(u)));
    }
    // sinh(z J-)/z = J- sinhc(z J-)
    return kinetic + pot.coupling * jm * sinhc(u) * std::exp(u);
}

} // namespace slz
