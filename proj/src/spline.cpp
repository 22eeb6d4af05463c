#include "qpf/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpf {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n == 0 || y_.size() != n)
        throw std::invalid_argument("CubicSpline: need matching, nonempty knot vectors");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("CubicSpline: knot abscissae must increase");

    d2_.assign(n, 0.0);
    if (n < 3) return;  // natural spline is linear (or constant); second derivatives stay zero

    // Thomas solve of the tridiagonal system for interior second derivatives.
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double hr = x_[i + 1] - x_[i];
        diag[i] = 2.0 * (hl + hr);
        upper[i] = hr;
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double w = hl / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        d2_[i] = (rhs[i] - upper[i] * d2_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

double CubicSpline::operator()(double x) const {
    const std::size_t n = x_.size();
    if (n == 1) return y_[0];

    // interval containing x, clamped so out-of-range queries extrapolate
    std::size_t hi = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
    if (hi == 0) hi = 1;
    if (hi >= n) hi = n - 1;
    const std::size_t lo = hi - 1;

    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - x) / h;
    const double b = (x - x_[lo]) / h;
    return a * y_[lo] + b * y_[hi] +
           ((a * a * a - a) * d2_[lo] + (b * b * b - b) * d2_[hi]) * h * h / 6.0;
}

}  // namespace qpf
