#pragma once

#include "slzflow/errors.hpp"

namespace slz {

/// Carlson symmetric elliptic integral R_F(x,y,z); at most one argument may
/// be zero, all must be nonnegative.
double carlson_rf(double x, double y, double z);

/// Carlson symmetric elliptic integral R_D(x,y,z); z must be positive,
/// x,y nonnegative with at most one zero.
double carlson_rd(double x, double y, double z);

/// Incomplete elliptic integral of the second kind in trigonometric form,
///   E(x|m) = integral_0^x sqrt(1 - m sin^2 t) dt,
/// evaluated through Carlson forms on the real branch.  Requires |x| <= pi/2
/// and a nonnegative radicand 1 - m sin^2(x); throws DomainError otherwise
/// (the real-branch convention of the library stops where the integrand
/// leaves the real axis).
double incomplete_elliptic_e(double x, double m);

/// Gauss hypergeometric 2F1(a,b;c;x) for real parameters and x < 1, by the
/// defining series for small |x| and the 1-x connection formula otherwise.
/// Terminating parameter cases are summed exactly for any x.
double gauss_2f1(double a, double b, double c, double x);

/// Complete beta function Gamma(a)Gamma(b)/Gamma(a+b), continued to negative
/// non-integer arguments with correct sign.
double complete_beta(double a, double b);

/// Incomplete beta function B(x,a,b) = integral_0^x t^{a-1}(1-t)^{b-1} dt.
/// For x in [0,1] this is x^a/a * 2F1(a,1-b;a+1;x), the classical function
/// for a > 0 and its analytic continuation for negative non-integer a.
/// For x > 1 the integrand is continued on the real branch:
///   B(x,a,b) = B(1,a,b) + integral_1^x t^{a-1}(t-1)^{b-1} dt
/// (b > 0 and a away from nonpositive integers); this is the
/// principal-branch value with the constant-phase factor of the continuation
/// absorbed.
double incomplete_beta(double x, double a, double b);

} // namespace slz
