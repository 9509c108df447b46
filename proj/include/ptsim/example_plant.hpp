#pragma once

#include <algorithm>

#include "ptsim/plant.hpp"

namespace ptsim {

/// Ground-truth constants of a plant instance. Consumed only by monitors and
/// tests; the controller has no access path to these values.
struct TruthConstants {
    double theta = 0.0;     // disturbance scale in the A2 bounds
    double phi_n0 = 0.0;    // non-vanishing disturbance bound
    double h_lower = 0.0;   // input gain lower bound

    double theta_star() const { return 1.0 + theta + theta * theta; }
    double theta1_star() const {
        return std::max(1.0 / h_lower, phi_n0 / h_lower);
    }
};

/// Fifth-order example system (n = 3 nominal states, n_z = 2 appended):
///
///   dx1 = (1+x1^2) x2
///   dx2 = (1+x1^4) x3 + theta_a cos(x2 z1) x2 + theta_b [1+cos(t u)] e^{x1} x1^2 sin(z2)
///   dx3 = h(z,x,u,t) u + theta_c x1^2 cos(x3 z1) x2 + theta_d (1+x1^2)
///   dz1 = -100 z1 + z2
///   dz2 = -100 z2 + x3^2 + u
///
/// with h(z,x,u,t) = 1 + (1/2) sin(t) cos(z2) + x1^4 (1 + e^{-|z1|}).
///
/// Bound data: phi_{(1,2)} = 1+x1^2, phi_{(2,3)} = 1+x1^4, sigma = 1,
/// Gamma(x1) = c_beta * max(e^{x1}|x1|, 1+x1^2), phi12_upper = 3/2,
/// phi12_lower = (1+x1^2)/(1+x1^4). Active phi_{(i,j)} assignments are
/// phi_{(2,1)} = phi_{(2,2)} = phi_{(3,2)} = 1, all others 0; the
/// corresponding epsilon constants are 1 for the active entries, 0 otherwise.
class ExamplePlant final : public Plant {
public:
    struct Params {
        double theta_a = 2.0;
        double theta_b = 2.0;
        double theta_c = 2.0;
        double theta_d = 2.0;
        double c_beta = 1e-4;
    };

    ExamplePlant() = default;
    explicit ExamplePlant(const Params& p);

    int order() const override { return 3; }
    int appended_order() const override { return 2; }
    double sigma() const override { return 1.0; }

    double phi_upper(int i, const Vec& x, double t) const override;
    double gamma_bound(double x1) const override;
    double phi_bound(int i, int j, const Vec& x, double t) const override;
    double eps_x1(int i) const override;
    double eps_tilde(int i) const override;
    double eps(int i, int j) const override;
    double phi12_upper(double) const override { return 1.5; }
    double phi12_lower(double x1) const override;
    double phi12_upper_deriv(double) const override { return 0.0; }
    double rho_upper(int i) const override;

    Vec rhs_x(const Vec& x, const Vec& z, double u, double t) const override;
    Vec rhs_z(const Vec& x, const Vec& z, double u, double t) const override;

    double input_gain(const Vec& x, const Vec& z, double t) const;

    const Params& params() const { return params_; }

    /// theta = max(theta_a, 2 theta_b, theta_c)/c_beta, phi_n0 = theta_d/c_beta,
    /// h_lower = 0.5. Monitor/test input only.
    TruthConstants true_constants() const;

private:
    Params params_;
};

} // namespace ptsim
