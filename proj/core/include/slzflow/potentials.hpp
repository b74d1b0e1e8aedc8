#pragma once

#include "slzflow/coalgebra.hpp"
#include "slzflow/special_functions.hpp"

namespace slz {

/// The four conformal-profile families with a closed-form radial Green
/// function (section references are to the profile's g = cos-power exponent):
/// g = 1/cos (constant curvature), g = 1, g = cos^{4k-1}, g = cos^3.
enum class GreenCase { constant_curvature, identity, power_cosine, cos_cubed };

/// Closed-form case of a profile, if any (power_cosine carries its k).
struct GreenClosedForm {
    GreenCase gcase;
    double k = 0.0;
};
bool green_closed_case(const ConformalProfile& profile, GreenClosedForm& out);

/// The printed closed forms of the radial Green function in the R = lambda1*r
/// chart (z > 0, R on the principal patch); the identity and cos^3 cases carry
/// the multiplicative lambda1 their printed expressions include, the other two
/// do not (see green_printed_normalization).  All four are anchored so the
/// finite part at R -> 0 vanishes (U = -1/R + o(1)); for the power-cosine
/// family this fixes the additive constant of the incomplete-beta form to
/// -sqrt(pi)*Gamma(k+1/2)/Gamma(k), which also absorbs the constant-phase
/// factor of its analytic continuation and makes the k = 0 and k = 1/4
/// branches coincide with the constant-curvature and identity cases exactly.
double green_closed_form(double R, GreenCase gcase, double z, double k = 0.0);

/// Multiplicative constant contained in the printed closed form relative to
/// the bare integral of sqrt(h)/sin^2: lambda1 for identity and cos_cubed,
/// 1 otherwise.
double green_printed_normalization(GreenCase gcase, double z);

/// The bare Green integral U(R) = int^R sqrt(h(R'))/sin^2 R' dR' by adaptive
/// Gauss-Kronrod quadrature, with the 1/sin^2 singularity integrated
/// analytically (int dR'/sin^2 = -1/tan R') and the smooth remainder from 0;
/// this fixes the additive constant to the same flat-anchored convention as
/// the closed forms.  Requires z > 0 and h > 0 on the range; absolute
/// accuracy 1e-10.
double green_quadrature(double R, const ConformalProfile& profile, double z);

/// Radial Green function of the Laplace-Beltrami operator in the r chart,
/// normalized so that value(r) -> -1/r as z -> 0 at fixed r.  Valid for
/// either sign of z (kappa-trigonometric form); closed forms are used for
/// the built-in profiles where available, quadrature otherwise.
class GreenFunction {
public:
    GreenFunction(const ConformalProfile& profile, double z);

    double value(double r) const;
    /// d value/dr = sqrt(C_z(r) g) / S_z(r)^2, in closed form for any profile.
    double derivative(double r) const;
    /// value() forced through the quadrature path regardless of closed forms.
    double value_by_quadrature(double r) const;

    const ConformalProfile& profile() const { return profile_; }
    double z() const { return z_; }
    /// The printed multiplicative constant of the matching closed form
    /// (1 when no closed form applies).
    double normalization() const { return normalization_; }

private:
    ConformalProfile profile_;
    double z_;
    bool has_closed_ = false;
    GreenClosedForm closed_{};
    double normalization_ = 1.0;
};

struct IntrinsicPotential {
    enum class Kind { kepler_coulomb, oscillator };
    Kind kind = Kind::kepler_coulomb;
    double coupling = 1.0; // alpha or beta

    static IntrinsicPotential kepler_coulomb(double alpha) {
        return {Kind::kepler_coulomb, alpha};
    }
    static IntrinsicPotential oscillator(double beta) { return {Kind::oscillator, beta}; }
};

/// U_KC = alpha * U(r), U_O = beta / U(r)^2 with the flat-normalized Green
/// function of the space's profile.  For the constant-curvature profile these
/// reduce to -alpha*lambda1/tan(lambda1 r) and beta*tan^2(lambda1 r)/lambda1^2.
double intrinsic_potential(double r, const IntrinsicPotential& pot, const SpaceSpec& spec);
double intrinsic_potential_derivative(double r, const IntrinsicPotential& pot,
                                      const SpaceSpec& spec);

/// The coalgebraic constant-curvature Hamiltonians
///   H_KC = (1/2) J+ e^{z J-} - alpha sqrt(z e^{-z J-} / sinh(z J-))
///   H_O  = (1/2) J+ e^{z J-} + beta (sinh(z J-)/z) e^{z J-}
/// expressed through the generator values.  Note their couplings relate to
/// the r-chart potentials with constant-curvature profile by
/// H_KC(alpha) = 2 H_sph(alpha' = alpha/sqrt(2)) and
/// H_O(beta) = 2 H_sph(beta' = beta/4) under the canonical coordinate map.
double hamiltonian_algebraic_form(const DeformedGenerators& generators,
                                  const IntrinsicPotential& pot, double z);

} // namespace slz
