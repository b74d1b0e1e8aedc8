#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

#include "slzflow/errors.hpp"

namespace slz {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
/// christoffel[i][j][k] = Gamma^i_{jk}, symmetric in (j,k).
using Christoffel = std::array<Mat3, 3>;

inline constexpr double MACHINE_EPS = std::numeric_limits<double>::epsilon();

/// Step sizes balancing truncation against round-off for centered stencils.
inline double fd_step_first(double x) {
    static const double h0 = std::cbrt(MACHINE_EPS);
    return h0 * std::max(1.0, std::abs(x));
}
inline double fd_step_second(double x) {
    static const double h0 = std::sqrt(std::sqrt(MACHINE_EPS));
    return h0 * std::max(1.0, std::abs(x));
}

// ---------------------------------------------------------------------------
// forward-mode dual numbers (value + 3 partial derivatives)
// ---------------------------------------------------------------------------

struct Dual3 {
    double v = 0.0;
    std::array<double, 3> d{0.0, 0.0, 0.0};

    Dual3() = default;
    Dual3(double value) : v(value) {}
    Dual3(double value, const std::array<double, 3>& deriv) : v(value), d(deriv) {}

    static Dual3 variable(double value, int slot) {
        Dual3 x(value);
        x.d[slot] = 1.0;
        return x;
    }

    Dual3& operator+=(const Dual3& o) {
        v += o.v;
        for (int i = 0; i < 3; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual3& operator-=(const Dual3& o) {
        v -= o.v;
        for (int i = 0; i < 3; ++i) d[i] -= o.d[i];
        return *this;
    }
};

inline Dual3 operator+(Dual3 a, const Dual3& b) { return a += b; }
inline Dual3 operator-(Dual3 a, const Dual3& b) { return a -= b; }
inline Dual3 operator-(const Dual3& a) {
    return Dual3(-a.v, {-a.d[0], -a.d[1], -a.d[2]});
}
inline Dual3 operator*(const Dual3& a, const Dual3& b) {
    Dual3 r(a.v * b.v);
    for (int i = 0; i < 3; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
}
inline Dual3 operator/(const Dual3& a, const Dual3& b) {
    Dual3 r(a.v / b.v);
    const double ib2 = 1.0 / (b.v * b.v);
    for (int i = 0; i < 3; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * ib2;
    return r;
}

inline Dual3 chain(double value, double dvalue, const Dual3& a) {
    return Dual3(value, {dvalue * a.d[0], dvalue * a.d[1], dvalue * a.d[2]});
}

inline Dual3 exp(const Dual3& a) {
    const double e = std::exp(a.v);
    return chain(e, e, a);
}
inline Dual3 expm1(const Dual3& a) { return chain(std::expm1(a.v), std::exp(a.v), a); }
inline Dual3 log(const Dual3& a) { return chain(std::log(a.v), 1.0 / a.v, a); }
inline Dual3 log1p(const Dual3& a) { return chain(std::log1p(a.v), 1.0 / (1.0 + a.v), a); }
inline Dual3 sqrt(const Dual3& a) {
    const double s = std::sqrt(a.v);
    return chain(s, 0.5 / s, a);
}
inline Dual3 sin(const Dual3& a) { return chain(std::sin(a.v), std::cos(a.v), a); }
inline Dual3 cos(const Dual3& a) { return chain(std::cos(a.v), -std::sin(a.v), a); }
inline Dual3 sinh(const Dual3& a) { return chain(std::sinh(a.v), std::cosh(a.v), a); }
inline Dual3 cosh(const Dual3& a) { return chain(std::cosh(a.v), std::sinh(a.v), a); }

inline Dual3 atan2(const Dual3& y, const Dual3& x) {
    const double den = x.v * x.v + y.v * y.v;
    Dual3 r(std::atan2(y.v, x.v));
    for (int i = 0; i < 3; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / den;
    return r;
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual3& x) { return x.v; }

// ---------------------------------------------------------------------------
// guarded scalar kernels
//
// sinh(u)/u, u/sinh(u) and u*coth(u) appear throughout the deformed formulas
// with u = z*q_i^2; all are analytic at u = 0 but evaluate as 0/0.  Below the
// switch point the four-term Taylor series is accurate to ~1e-24 relative,
// far under double round-off.
// ---------------------------------------------------------------------------

inline constexpr double SERIES_SWITCH = 1e-6;

template <class T>
T sinhc(const T& u) {
    using std::abs;
    using std::sinh;
    if (std::abs(value_of(u)) < SERIES_SWITCH) {
        const T u2 = u * u;
        return T(1.0) + u2 * (T(1.0 / 6.0) + u2 * (T(1.0 / 120.0) + u2 * T(1.0 / 5040.0)));
    }
    return sinh(u) / u;
}

template <class T>
T inv_sinhc(const T& u) {
    using std::sinh;
    if (std::abs(value_of(u)) < SERIES_SWITCH) {
        const T u2 = u * u;
        return T(1.0) - u2 * (T(1.0 / 6.0) - u2 * (T(7.0 / 360.0) - u2 * T(31.0 / 15120.0)));
    }
    return u / sinh(u);
}

template <class T>
T u_coth_u(const T& u) {
    using std::cosh;
    using std::sinh;
    if (std::abs(value_of(u)) < SERIES_SWITCH) {
        const T u2 = u * u;
        return T(1.0) + u2 * (T(1.0 / 3.0) - u2 * (T(1.0 / 45.0) - u2 * T(2.0 / 945.0)));
    }
    return u * cosh(u) / sinh(u);
}

/// d/du [sinh(u)/u] = (cosh(u) - sinh(u)/u)/u, analytic (odd) at u = 0.
template <class T>
T sinhc_prime(const T& u) {
    using std::cosh;
    if (std::abs(value_of(u)) < 1e-4) {
        const T u2 = u * u;
        return u * (T(1.0 / 3.0) + u2 * (T(1.0 / 30.0) + u2 * (T(1.0 / 840.0) + u2 * T(1.0 / 45360.0))));
    }
    return (cosh(u) - sinhc(u)) / u;
}

/// (1 - u*coth(u)) / root with u = z*root^2; analytic odd function of root.
template <class T>
T one_minus_u_coth_u_over(const T& u, const T& root) {
    if (std::abs(value_of(u)) < SERIES_SWITCH) {
        const T u2 = u * u;
        // (1 - u coth u)/root = -u^2/(3 root) * (1 - u^2/15 + 2u^4/315 - u^6/1575)
        const T series =
            T(-1.0 / 3.0) + u2 * (T(1.0 / 45.0) - u2 * (T(2.0 / 945.0) - u2 * T(1.0 / 4725.0)));
        if (value_of(root) == 0.0) return T(0.0);
        return u2 * series / root;
    }
    return (T(1.0) - u_coth_u(u)) / root;
}

// ---------------------------------------------------------------------------
// kappa-trigonometry
//
// C_k and S_k solve X'' = -k X with C(0)=1, C'(0)=0, S(0)=0, S'(0)=1; they
// interpolate cos/cosh and sin/sinh as the sign of k changes, so formulas
// written for real curvature labels never touch complex arithmetic.
// Identities used everywhere: C^2 + k S^2 = 1, S' = C, C' = -k S.
// ---------------------------------------------------------------------------

inline double kappa_c(double kappa, double u) {
    if (kappa > 0.0) return std::cos(std::sqrt(kappa) * u);
    if (kappa < 0.0) return std::cosh(std::sqrt(-kappa) * u);
    return 1.0;
}

inline double kappa_s(double kappa, double u) {
    if (kappa > 0.0) {
        const double w = std::sqrt(kappa);
        return std::sin(w * u) / w;
    }
    if (kappa < 0.0) {
        const double w = std::sqrt(-kappa);
        return std::sinh(w * u) / w;
    }
    return u;
}

inline double kappa_t(double kappa, double u) { return kappa_s(kappa, u) / kappa_c(kappa, u); }

/// Principal inverse of C_k: the u >= 0 with C_k(u) = c.
inline double kappa_acos(double kappa, double c) {
    if (kappa > 0.0) {
        if (c < -1.0 || c > 1.0) throw DomainError("kappa_acos: argument outside [-1,1]");
        return std::acos(c) / std::sqrt(kappa);
    }
    if (kappa < 0.0) {
        if (c < 1.0) throw DomainError("kappa_acos: argument below 1 for negative kappa");
        return std::acosh(c) / std::sqrt(-kappa);
    }
    throw DomainError("kappa_acos: kappa must be nonzero");
}

// ---------------------------------------------------------------------------
// small dense linear algebra
// ---------------------------------------------------------------------------

inline Mat3 mat3_zero() { return Mat3{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}; }

inline Mat3 mat3_identity() {
    Mat3 m = mat3_zero();
    m[0][0] = m[1][1] = m[2][2] = 1.0;
    return m;
}

inline Mat3 mat3_diag(double a, double b, double c) {
    Mat3 m = mat3_zero();
    m[0][0] = a;
    m[1][1] = b;
    m[2][2] = c;
    return m;
}

inline double mat3_det(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 mat3_inverse(const Mat3& m) {
    const double det = mat3_det(m);
    if (det == 0.0 || !std::isfinite(det)) throw NumericalError("mat3_inverse: singular matrix");
    const double inv = 1.0 / det;
    Mat3 r;
    r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv;
    r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv;
    r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv;
    r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv;
    r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv;
    r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv;
    r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv;
    r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv;
    r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv;
    return r;
}

inline Vec3 mat3_mul(const Mat3& m, const Vec3& v) {
    Vec3 r{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
    return r;
}

inline double mat3_frobenius(const Mat3& m) {
    double s = 0;
    for (const auto& row : m)
        for (double x : row) s += x * x;
    return std::sqrt(s);
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3& a) { return dot(a, a); }

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations,
/// returned in descending order.
template <std::size_t N>
std::array<double, N> symmetric_eigenvalues(std::array<std::array<double, N>, N> a) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::array<double, N> eig;
    for (std::size_t i = 0; i < N; ++i) eig[i] = a[i][i];
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

// ---------------------------------------------------------------------------
// deterministic random numbers
//
// std::uniform_real_distribution is implementation-defined; audits need
// byte-identical output for a fixed seed, so draws come straight from the
// engine bits.
// ---------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 eng_;
};

} // namespace slz
