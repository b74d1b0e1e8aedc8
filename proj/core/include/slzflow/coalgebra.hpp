#pragma once

#include <array>
#include <functional>

#include "slzflow/numerics.hpp"

namespace slz {

// ---------------------------------------------------------------------------
// conformal profile
//
// The kinetic deformation is governed by a smooth function f with f(0) = 1.
// Every built-in is of the form f(x) = exp(c x); the dictionary to the
// spherical chart is g(y) = f(-ln cos y) = (cos y)^{-c}.  A custom profile
// supplies f and its first two derivatives as callables.
// ---------------------------------------------------------------------------

class ConformalProfile {
public:
    enum class Tag { identity, exponential, power_cosine, cos_cubed, custom };
    using ScalarFn = std::function<double(double)>;

    /// f == 1 (g == 1).
    static ConformalProfile identity();
    /// f = e^{s x} with s = +1 or -1; s = +1 is the constant-curvature profile
    /// g = 1/cos(y).
    static ConformalProfile exponential(int s);
    /// g = (cos y)^{4k-1}, i.e. f = e^{(1-4k)x}; k = 1 is excluded (its Green
    /// function degenerates into the cos^3 family below).
    static ConformalProfile power_cosine(double k);
    /// g = cos^3(y), f = e^{-3x}.
    static ConformalProfile cos_cubed();
    static ConformalProfile custom(ScalarFn f, ScalarFn fp, ScalarFn fpp);

    Tag tag() const { return tag_; }
    /// s for exponential, k for power_cosine; 0 otherwise.
    double parameter() const { return param_; }

    /// True for every tag except custom; those have f(x) = exp(exponent()*x).
    bool is_exponential_family() const { return tag_ != Tag::custom; }
    double exponent() const;

    double f(double x) const;
    double f_prime(double x) const;
    double f_second(double x) const;

    /// rho = f'/f and its derivative; the Cartesian connection depends on f
    /// only through rho.
    double rho(double x) const;
    double rho_prime(double x) const;

    /// Conformal factor in the spherical chart, g(y) = f(-ln cos y), on the
    /// principal patch cos(y) > 0.
    double g(double y) const;
    double g_prime(double y) const;
    double g_second(double y) const;

private:
    ConformalProfile(Tag tag, double param) : tag_(tag), param_(param) {}

    Tag tag_ = Tag::identity;
    double param_ = 0.0;
    ScalarFn f_, fp_, fpp_; // custom only
};

// ---------------------------------------------------------------------------
// space specification
// ---------------------------------------------------------------------------

/// Full parameterization of one model: deformation z (= lambda1^2, may be
/// negative), signature label kappa2 (= lambda2^2, nonzero), conformal
/// profile, and the three centrifugal coefficients.
struct SpaceSpec {
    double z = 0.0;
    double kappa2 = 1.0;
    ConformalProfile profile = ConformalProfile::identity();
    Vec3 b{0.0, 0.0, 0.0};

    /// Rejects kappa2 == 0 (degenerate Newton-Hooke metrics) and profiles
    /// with f(0) != 1, checked numerically at x = 1e-12.
    void validate() const;

    bool has_centrifugal() const { return b[0] != 0.0 || b[1] != 0.0 || b[2] != 0.0; }
};

struct PhasePointCartesian {
    Vec3 q{0.0, 0.0, 0.0};
    Vec3 p{0.0, 0.0, 0.0};
};

/// Values of the deformed generators at a phase-space point.  In the z -> 0,
/// b = 0 limit: j_minus = |q|^2, j_plus = |p|^2, j_three = q.p.
struct DeformedGenerators {
    double j_minus = 0.0;
    double j_plus = 0.0;
    double j_three = 0.0;
};

/// Evaluates the one-, two- or three-site symplectic realization of the
/// deformed generators.  Throws DomainError if b_i != 0 with q_i = 0 for a
/// site i <= arity (the centrifugal term diverges there).
DeformedGenerators realize_generators(const PhasePointCartesian& state, const SpaceSpec& spec,
                                      int arity);

using PhaseFunction = std::function<double(const PhasePointCartesian&)>;

/// Canonical Poisson bracket {fa, fb} = sum_i (dfa/dq_i dfb/dp_i - dfa/dp_i dfb/dq_i),
/// evaluated by centered differences with per-coordinate step
/// cbrt(eps)*max(1,|coordinate|).  DomainError from a stencil point surfaces
/// as EvaluationError.
double poisson_bracket(const PhaseFunction& fa, const PhaseFunction& fb,
                       const PhasePointCartesian& at);

struct CasimirValues {
    double c2 = 0.0;       // two-site Casimir on sites 1x2
    double c2_lower = 0.0; // two-site Casimir on sites 2x3
    double c3 = 0.0;       // three-site Casimir
};

/// The three Casimir functions of the coalgebra in their Cartesian form.
/// At z -> 0, b = 0 they degenerate to (l12^2, l23^2, l12^2+l13^2+l23^2).
CasimirValues casimir_values(const PhasePointCartesian& state, const SpaceSpec& spec);

/// Residuals of the three deformed commutation rules evaluated with
/// finite-difference brackets of the three-site generators:
///   r1 = {J3,J+} - 2 J+ cosh(z J-)
///   r2 = {J3,J-} + 2 sinh(z J-)/z
///   r3 = {J-,J+} - 4 J3
/// All vanish to stencil accuracy when the realization is transcribed
/// correctly.
std::array<double, 3> bracket_residuals(const PhasePointCartesian& state, const SpaceSpec& spec);

} // namespace slz
