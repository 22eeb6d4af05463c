#pragma once

#include <vector>

namespace qpf {

// Natural cubic spline through (x_i, y_i) with x strictly increasing.
// Degenerates to a constant for one point and a straight line for two.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d2_;  // second derivatives at the knots (zero at the ends)
};

}  // namespace qpf
