#pragma once

#include <functional>
#include <vector>

#include "slzflow/coalgebra.hpp"
#include "slzflow/numerics.hpp"

namespace slz {

/// Spherical-type phase point (r, theta, phi; p_r, p_theta, p_phi).
/// For z > 0 the principal patch is r in (0, pi/(2 lambda1)); for kappa2 > 0,
/// theta in (0, pi/(2 lambda2)); phi covers (0, 2 pi) in the free case and the
/// first quadrant when all centrifugal terms are switched on.
struct PhasePointSpherical {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double p_r = 0.0;
    double p_theta = 0.0;
    double p_phi = 0.0;
};

/// One stored component R^a_{bcd} of the Riemann tensor; components with
/// c > d follow from antisymmetry, everything else not listed is zero.
struct RiemannComponent {
    int a, b, c, d;
    double value;
};

struct CurvatureReport {
    Christoffel christoffel{};           // Gamma^i_{jk}
    std::vector<RiemannComponent> riemann;
    Mat3 ricci{};
    std::array<double, 3> sectional{};   // planes (0,1), (0,2), (1,2)
    double scalar = 0.0;

    /// Reconstructs R^a_{bcd} from the stored list using antisymmetry in the
    /// last index pair; unlisted components are zero.
    double riemann_component(int a, int b, int c, int d) const;
};

// ---------------------------------------------------------------------------
// Cartesian chart
//
// The metric returned here is the one consistent with the kinetic Hamiltonian
// H = (1/2) g^{ij} p_i p_j = (1/2) J+ f(z J-); the geodesic-flow line element
// of the underlying construction carries an overall factor 2 relative to it.
// Curvature reports refer to that line element (2x this metric), which is
// what the closed-form sectional/scalar expressions describe; Christoffel
// symbols, Riemann (1,3) components and Ricci are insensitive to the constant
// factor.
// ---------------------------------------------------------------------------

Mat3 metric_cartesian(const Vec3& q, const SpaceSpec& spec);
Christoffel christoffel_cartesian(const Vec3& q, const SpaceSpec& spec);
CurvatureReport curvature_cartesian(const Vec3& q, const SpaceSpec& spec);

// ---------------------------------------------------------------------------
// spherical-type chart
// ---------------------------------------------------------------------------

/// Canonical (cotangent-lifted) change of coordinates to the spherical-type
/// chart; positions solve the four defining relations with principal
/// branches, momenta transform with the inverse-transpose Jacobian so all
/// canonical brackets are preserved.  Requires z != 0.  Throws DomainError
/// when a squared quantity of the defining relations is negative (the point
/// lies outside the coordinate patch for the given kappa2 sign).
PhasePointSpherical to_spherical(const PhasePointCartesian& point, const SpaceSpec& spec);
PhasePointCartesian to_cartesian(const PhasePointSpherical& point, const SpaceSpec& spec);

/// Diagonal metric of the spherical-type chart,
///   diag(1, kappa2 S_z(r)^2, kappa2 S_z(r)^2 S_kappa2(theta)^2) / (g C_z(r)),
/// the line element whose geodesic Hamiltonian is the spherical-form H.
Mat3 metric_spherical(double r, double theta, const SpaceSpec& spec);
CurvatureReport curvature_spherical(double r, double theta, const SpaceSpec& spec);

// ---------------------------------------------------------------------------
// finite-difference curvature oracle
// ---------------------------------------------------------------------------

using MetricFn = std::function<Mat3(const Vec3&)>;

/// Connection, curvature tensors and scalars derived from metric values only,
/// via centered differences with step eps^(1/4) * max(1, |coordinate|).
/// Serves as the independent check of every closed-form curvature operation.
/// Throws NumericalError if the metric conditioning exceeds 1e10.
CurvatureReport curvature_oracle_fd(const MetricFn& metric_fn, const Vec3& point);

} // namespace slz
