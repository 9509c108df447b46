#pragma once

#include <optional>

#include "ptsim/lyapunov.hpp"
#include "ptsim/plant.hpp"
#include "ptsim/timewarp.hpp"

namespace ptsim {

/// Design constants of the adaptive controller.
struct ControllerGains {
    double zeta0 = 0.0;        // domination margin in q1 and the w-terms
    double zeta_floor = 0.0;   // floor inside zeta1
    double c_theta = 0.0;      // adaptation gain of theta_hat
    double c_theta1 = 0.0;     // adaptation gain of theta1_hat
    double epsilon_r = 0.0;    // width of the gate ramp
    double sign_smoothing = 0.0; // 0 = exact sign in u2; > 0 replaces S by a
                                 // saturating ramp (flagged as a deviation)

    void validate() const;
};

/// Dynamic controller state: all three are non-decreasing along trajectories,
/// with r >= max(1, alpha) and theta_hat >= max(1, alpha) maintained by the
/// dynamics plus initialization, and theta1_hat >= 0.
struct ControllerState {
    double r = 1.0;
    double theta_hat = 1.0;
    double theta1_hat = 0.0;
};

struct ControllerRates {
    double dr = 0.0;
    double dtheta = 0.0;
    double dtheta1 = 0.0;
};

/// Everything computed in one controller evaluation; recorded samples and the
/// tests read the intermediates.
struct ControllerEval {
    Vec eta;
    double zeta1 = 0.0;
    double zeta = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double ratio = 0.0;   // dtheta_hat/dt divided by phi_{(1,2)}
    double R = 0.0;
    double Omega = 0.0;
    double gate = 0.0;
    double chi = 0.0;
    double chi1 = 0.0;
    double Kc_eta = 0.0;  // K_c * eta
    double eta_PB = 0.0;  // eta^T P_c B
    double u1 = 0.0;
    double u2 = 0.0;
    double u = 0.0;
    ControllerRates rates;
};

/// Prescribed-time adaptive state-feedback controller. Pure functions of
/// (state, x, t, tau); safe for concurrent use from multiple simulations.
///
/// The u = u1 + u2 law:
///   u1 = -(r^n / gamma1(t)) K_c eta
///   u2 = -S(eta^T P_c B) { |K_c eta| r^n [1/gamma1 + theta1_hat]
///                          + Gamma(x1) [gamma2/gamma1 + theta1_hat] }
/// with the scaled state eta_2 = (x2 + zeta)/r, eta_i = x_i / r^{i-1}, and
/// zeta = theta_hat x1 zeta1(x1).
class Controller {
public:
    Controller(const Plant& plant, const TimeWarp& warp, LyapunovCertificate cert,
               ForcingConfig forcing, ControllerGains gains);

    const LyapunovCertificate& certificate() const { return cert_; }
    const ControllerGains& gains_config() const { return gains_; }
    const ForcingConfig& forcing() const { return forcing_; }
    double lambda_max_P() const { return lambda_max_; }

    // Bound-function compositions (section references by role, not source):
    double q1(double x1) const;           // phi12_upper/nu_c + 2 zeta0
    double q2(double x1) const;           // Gamma * eps_{(1,1)}
    double zeta1(double x1) const;        // 4 max(zeta_floor, q1 + q2)
    double zeta1_prime(double x1) const;  // derivative of the active branch
    double w1(double x1, double theta_hat, double ratio) const;
    double w2(double x1, double theta_hat) const;

    /// eta from x given r and the zeta value; length n-1.
    Vec scaled_eta(const Vec& x, double r, double zeta_value) const;
    /// Inverse of scaled_eta (x1 passes through unchanged).
    Vec unscale_eta(const Vec& eta, double x1, double r, double zeta_value) const;

    double big_R(double x1, double theta_hat, double ratio) const;
    double omega(double r, const Vec& x, double t, double theta_hat, double ratio) const;
    /// Gate: 1 for s >= 0, 0 for s <= -epsilon_r, linear ramp in between.
    double gate_lambda(double s) const;
    double chi(double r, const Vec& x, double t, double theta_hat, const Vec& eta) const;
    double chi1(double r, const Vec& eta, double Kc_eta, double Gamma_value) const;

    double u1(double r, double Kc_eta, double t) const;
    double u2(double r, double Kc_eta, double eta_PB, double Gamma_value, double theta1_hat,
              double t, bool dead_zone_active = false) const;

    /// Full evaluation at (state, x, t, tau). Checks every intermediate for
    /// finiteness and throws std::runtime_error naming the offending term.
    ControllerEval evaluate(const ControllerState& st, const Vec& x, double t, double tau,
                            bool dead_zone_active = false) const;

    /// Scaling-parameter and adaptation rates in tau, using the documented
    /// evaluation order: chi -> dtheta -> ratio -> (w1, R, Omega) -> dr -> dtheta1.
    ControllerRates rates(const ControllerState& st, const Vec& x, double t, double tau) const;

private:
    double sign_factor(double delta, bool dead_zone_active) const;
    double phi23(const Vec& x, double t) const;

    const Plant& plant_;
    const TimeWarp& warp_;
    LyapunovCertificate cert_;
    ForcingConfig forcing_;
    ControllerGains gains_;
    double lambda_max_ = 0.0;
    double eps_sum_x1_ = 0.0;   // sqrt(sum_{i=2}^n eps_{(i,1)}^2)
    double eps_sum_tilde_ = 0.0; // sqrt(sum_{i=2}^n eps~_{(i,2)}^2)
    double eps_sum_23_ = 0.0;   // sqrt(sum_{i=2}^n sum_{j=2}^i eps_{(i,j)}^2)
};

} // namespace ptsim
