#include "ptsim/plant.hpp"

#include <cmath>

namespace ptsim {

namespace {
double fd_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }
} // namespace

double Plant::gamma_bound_deriv(double x1) const {
    const double h = fd_step(x1);
    return (gamma_bound(x1 + h) - gamma_bound(x1 - h)) / (2.0 * h);
}

double Plant::phi12_upper_deriv(double x1) const {
    const double h = fd_step(x1);
    return (phi12_upper(x1 + h) - phi12_upper(x1 - h)) / (2.0 * h);
}

} // namespace ptsim
