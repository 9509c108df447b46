#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace ptsim {

using Vec = Eigen::VectorXd;

/// Plant interface for systems of the triangular form
///
///   dx_i/dt = phi_i(z,x,u,t) + phi_{(i,i+1)}(x,t) * x_{i+1},  i = 1..n-1
///   dx_n/dt = phi_n(z,x,u,t) + h(z,x,u,t) * u
///   dz/dt   = q(z,x,u,t)
///
/// where x (dimension n) is measured and z (dimension n_z) is not. The
/// controller consumes only the known bound data exposed here: the upper
/// diagonal functions, Gamma, the epsilon ratio constants, and the A5
/// sandwich functions. The uncertain phi_i, h, q appear only inside the
/// right-hand-side evaluators used by the simulator.
class Plant {
public:
    virtual ~Plant() = default;

    virtual int order() const = 0;          // n
    virtual int appended_order() const = 0; // n_z

    /// Lower bound sigma > 0 with phi_{(i,i+1)} >= sigma (A1).
    virtual double sigma() const = 0;

    /// Known upper diagonal phi_{(i,i+1)}(x,t), i = 1..n-1.
    virtual double phi_upper(int i, const Vec& x, double t) const = 0;

    /// Gamma(x1) from the A2 bounds; continuous and non-negative.
    virtual double gamma_bound(double x1) const = 0;

    /// d(Gamma)/dx1, needed only when eps(1,1) > 0 makes zeta1 depend on Gamma.
    /// Default: central finite difference of gamma_bound.
    virtual double gamma_bound_deriv(double x1) const;

    /// Bound functions phi_{(i,j)}(x,t), i = 1..n, j = 1..i (A2).
    virtual double phi_bound(int i, int j, const Vec& x, double t) const = 0;

    /// eps_{(i,1)}: sup of phi_{(i,1)}/phi_{(1,2)}, i = 1..n.
    virtual double eps_x1(int i) const = 0;
    /// eps~_{(i,2)}: sup of phi_{(i,2)}/sqrt(phi_{(1,2)} phi_{(2,3)}), i = 2..n.
    virtual double eps_tilde(int i) const = 0;
    /// eps_{(i,j)}: sup of phi_{(i,j)}/phi_{(2,3)}, i = 2..n, j = 2..i.
    virtual double eps(int i, int j) const = 0;

    /// A5 sandwich: phi12_lower(x1) <= phi_{(1,2)}/phi_{(2,3)} <= phi12_upper(x1).
    virtual double phi12_upper(double x1) const = 0;
    virtual double phi12_lower(double x1) const = 0;

    /// d(phi12_upper)/dx1. Default: central finite difference.
    virtual double phi12_upper_deriv(double x1) const;

    /// A4 cascading dominance constants rho_i, i = 3..n-1
    /// (phi_{(i,i+1)} >= rho_i * phi_{(i-1,i)}). Vacuous when n <= 3.
    virtual double rho_upper(int i) const = 0;

    /// Full right-hand sides, including the uncertain terms.
    virtual Vec rhs_x(const Vec& x, const Vec& z, double u, double t) const = 0;
    virtual Vec rhs_z(const Vec& x, const Vec& z, double u, double t) const = 0;
};

} // namespace ptsim
