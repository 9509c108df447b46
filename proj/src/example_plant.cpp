#include "ptsim/example_plant.hpp"

#include <cmath>
#include <string>

namespace ptsim {

ExamplePlant::ExamplePlant(const Params& p) : params_(p) {
    if (!(p.c_beta > 0.0)) {
        throw std::invalid_argument("ExamplePlant: c_beta must be positive");
    }
}

double ExamplePlant::phi_upper(int i, const Vec& x, double) const {
    const double x1 = x(0);
    switch (i) {
        case 1: return 1.0 + x1 * x1;
        case 2: return 1.0 + x1 * x1 * x1 * x1;
        default:
            throw std::out_of_range("ExamplePlant::phi_upper: i must be 1 or 2");
    }
}

double ExamplePlant::gamma_bound(double x1) const {
    return params_.c_beta * std::max(std::exp(x1) * std::abs(x1), 1.0 + x1 * x1);
}

double ExamplePlant::phi_bound(int i, int j, const Vec&, double) const {
    if (i < 1 || i > 3 || j < 1 || j > i) {
        throw std::out_of_range("ExamplePlant::phi_bound: index out of range");
    }
    // phi_{(2,1)} = phi_{(2,2)} = phi_{(3,2)} = 1, all others 0.
    if ((i == 2 && j == 1) || (i == 2 && j == 2) || (i == 3 && j == 2)) return 1.0;
    return 0.0;
}

double ExamplePlant::eps_x1(int i) const {
    if (i < 1 || i > 3) throw std::out_of_range("ExamplePlant::eps_x1: i out of range");
    return i == 2 ? 1.0 : 0.0; // phi_{(2,1)}/phi_{(1,2)} <= 1
}

double ExamplePlant::eps_tilde(int i) const {
    if (i < 2 || i > 3) throw std::out_of_range("ExamplePlant::eps_tilde: i out of range");
    return 1.0; // phi_{(i,2)}/sqrt(phi_{(1,2)} phi_{(2,3)}) <= 1 for i = 2, 3
}

double ExamplePlant::eps(int i, int j) const {
    if (i < 2 || i > 3 || j < 2 || j > i) {
        throw std::out_of_range("ExamplePlant::eps: index out of range");
    }
    if ((i == 2 && j == 2) || (i == 3 && j == 2)) return 1.0;
    return 0.0; // phi_{(3,3)} = 0
}

double ExamplePlant::phi12_lower(double x1) const {
    const double s = x1 * x1;
    return (1.0 + s) / (1.0 + s * s);
}

double ExamplePlant::rho_upper(int) const {
    throw std::out_of_range("ExamplePlant::rho_upper: vacuous for n = 3");
}

double ExamplePlant::input_gain(const Vec& x, const Vec& z, double t) const {
    const double x1 = x(0);
    const double x14 = x1 * x1 * x1 * x1;
    return 1.0 + 0.5 * std::sin(t) * std::cos(z(1)) + x14 * (1.0 + std::exp(-std::abs(z(0))));
}

Vec ExamplePlant::rhs_x(const Vec& x, const Vec& z, double u, double t) const {
    const double x1 = x(0), x2 = x(1), x3 = x(2);
    const double x1sq = x1 * x1;
    const double x14 = x1sq * x1sq;
    Vec dx(3);
    dx(0) = (1.0 + x1sq) * x2;
    dx(1) = (1.0 + x14) * x3 + params_.theta_a * std::cos(x2 * z(0)) * x2 +
            params_.theta_b * (1.0 + std::cos(t * u)) * std::exp(x1) * x1sq * std::sin(z(1));
    dx(2) = input_gain(x, z, t) * u + params_.theta_c * x1sq * std::cos(x3 * z(0)) * x2 +
            params_.theta_d * (1.0 + x1sq);
    return dx;
}

Vec ExamplePlant::rhs_z(const Vec& x, const Vec& z, double u, double) const {
    Vec dz(2);
    dz(0) = -100.0 * z(0) + z(1);
    dz(1) = -100.0 * z(1) + x(2) * x(2) + u;
    return dz;
}

TruthConstants ExamplePlant::true_constants() const {
    TruthConstants c;
    c.theta = std::max({params_.theta_a, 2.0 * params_.theta_b, params_.theta_c}) / params_.c_beta;
    c.phi_n0 = params_.theta_d / params_.c_beta;
    c.h_lower = 0.5;
    return c;
}

} // namespace ptsim
