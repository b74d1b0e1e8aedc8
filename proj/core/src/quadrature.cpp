#include "slzflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace slz {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
constexpr double XGK[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double WGK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double result_g = WG[3] * fc;
    double result_k = WGK[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * XGK[j];
        const double fsum = f(c - dx) + f(c + dx);
        result_k += WGK[j] * fsum;
        if (j % 2 == 1) result_g += WG[j / 2] * fsum;
    }
    Interval iv;
    iv.a = a;
    iv.b = b;
    iv.value = result_k * h;
    iv.error = std::abs((result_k - result_g) * h);
    return iv;
}

} // namespace

QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_subdivisions) {
    if (a == b) return {0.0, 0.0, 0};
    std::priority_queue<Interval> heap;
    heap.push(gk15(f, a, b));
    double total = heap.top().value;
    double total_err = heap.top().error;
    int splits = 0;

    while (total_err > abs_tol) {
        if (splits >= max_subdivisions)
            throw QuadratureFailure("integrate_gk: accuracy target unmet after max subdivisions");
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b)
            throw QuadratureFailure("integrate_gk: interval vanished before reaching tolerance");
        const Interval left = gk15(f, worst.a, mid);
        const Interval right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    return {total, total_err, splits};
}

} // namespace slz
