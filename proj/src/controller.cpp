#include "ptsim/controller.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ptsim {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::runtime_error(std::string("controller: non-finite ") + name);
    }
}

} // namespace

void ControllerGains::validate() const {
    std::string errs;
    if (!(zeta0 > 0.0)) errs += "zeta0 must be positive; ";
    if (!(zeta_floor > 0.0)) errs += "zeta_floor must be positive; ";
    if (!(c_theta > 0.0)) errs += "c_theta must be positive; ";
    if (!(c_theta1 > 0.0)) errs += "c_theta1 must be positive; ";
    if (!(epsilon_r > 0.0)) errs += "epsilon_r must be positive; ";
    if (!(sign_smoothing >= 0.0)) errs += "sign_smoothing must be non-negative; ";
    if (!errs.empty()) throw std::invalid_argument("ControllerGains: " + errs);
}

Controller::Controller(const Plant& plant, const TimeWarp& warp, LyapunovCertificate cert,
                       ForcingConfig forcing, ControllerGains gains)
    : plant_(plant), warp_(warp), cert_(std::move(cert)), forcing_(forcing), gains_(gains) {
    gains_.validate();
    forcing_.validate();
    cert_.validate();
    if (cert_.n != plant_.order()) {
        throw std::invalid_argument("Controller: certificate order does not match plant");
    }
    lambda_max_ = cert_.lambda_max_P();

    const int n = plant_.order();
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int i = 2; i <= n; ++i) {
        s1 += plant_.eps_x1(i) * plant_.eps_x1(i);
        s2 += plant_.eps_tilde(i) * plant_.eps_tilde(i);
        for (int j = 2; j <= i; ++j) s3 += plant_.eps(i, j) * plant_.eps(i, j);
    }
    eps_sum_x1_ = std::sqrt(s1);
    eps_sum_tilde_ = std::sqrt(s2);
    eps_sum_23_ = std::sqrt(s3);
}

double Controller::phi23(const Vec& x, double t) const {
    return plant_.phi_upper(std::min(2, plant_.order() - 1), x, t);
}

double Controller::q1(double x1) const {
    return plant_.phi12_upper(x1) / cert_.nu_c + 2.0 * gains_.zeta0;
}

double Controller::q2(double x1) const {
    return plant_.gamma_bound(x1) * plant_.eps_x1(1);
}

double Controller::zeta1(double x1) const {
    return 4.0 * std::max(gains_.zeta_floor, q1(x1) + q2(x1));
}

double Controller::zeta1_prime(double x1) const {
    if (q1(x1) + q2(x1) <= gains_.zeta_floor) return 0.0;
    return 4.0 * (plant_.phi12_upper_deriv(x1) / cert_.nu_c +
                  plant_.gamma_bound_deriv(x1) * plant_.eps_x1(1));
}

double Controller::w1(double x1, double theta_hat, double ratio) const {
    const double z1 = zeta1(x1);
    const double z1p = zeta1_prime(x1);
    const double edge = z1p * x1 + z1;
    const double lm2 = lambda_max_ * lambda_max_;
    const double th2 = theta_hat * theta_hat;
    return 2.0 * theta_hat * lambda_max_ * std::abs(edge) +
           (2.0 / gains_.zeta0) * lm2 * ratio * ratio * z1 * z1 +
           (4.0 / gains_.zeta0) * lm2 * z1 * z1 * th2 * th2 * edge * edge;
}

double Controller::w2(double x1, double theta_hat) const {
    const double g = plant_.gamma_bound(x1);
    const double z1 = zeta1(x1);
    const double edge = zeta1_prime(x1) * x1 + z1;
    const double lm2 = lambda_max_ * lambda_max_;
    const double th2 = theta_hat * theta_hat;
    const double e11 = plant_.eps_x1(1);
    return 2.0 * lm2 * (g * g / gains_.zeta0) *
               (plant_.phi12_upper(x1) * eps_sum_x1_ + th2 * z1 * z1 * eps_sum_tilde_) +
           2.0 * g * lambda_max_ * eps_sum_23_ +
           (4.0 / gains_.zeta0) * e11 * e11 * plant_.phi12_upper(x1) * g * g * lm2 * edge *
               edge * th2;
}

Vec Controller::scaled_eta(const Vec& x, double r, double zeta_value) const {
    const int n = plant_.order();
    Vec eta(n - 1);
    eta(0) = (x(1) + zeta_value) / r;
    double rp = r;
    for (int i = 3; i <= n; ++i) {
        rp *= r;
        eta(i - 2) = x(i - 1) / rp;
    }
    return eta;
}

Vec Controller::unscale_eta(const Vec& eta, double x1, double r, double zeta_value) const {
    const int n = plant_.order();
    Vec x(n);
    x(0) = x1;
    x(1) = r * eta(0) - zeta_value;
    double rp = r;
    for (int i = 3; i <= n; ++i) {
        rp *= r;
        x(i - 1) = eta(i - 2) * rp;
    }
    return x;
}

double Controller::big_R(double x1, double theta_hat, double ratio) const {
    return std::max(1.0, (4.0 / cert_.nu_c) * (w1(x1, theta_hat, ratio) * plant_.phi12_upper(x1) +
                                               theta_hat * w2(x1, theta_hat)));
}

double Controller::omega(double r, const Vec& x, double t, double theta_hat,
                         double ratio) const {
    const double x1 = x(0);
    return (r / (cert_.nu_lower * warp_.a0())) *
           (w1(x1, theta_hat, ratio) * plant_.phi_upper(1, x, t) +
            theta_hat * w2(x1, theta_hat) * phi23(x, t));
}

double Controller::gate_lambda(double s) const {
    if (s >= 0.0) return 1.0;
    if (s <= -gains_.epsilon_r) return 0.0;
    return 1.0 + s / gains_.epsilon_r;
}

double Controller::chi(double r, const Vec& x, double t, double theta_hat,
                       const Vec& eta) const {
    const double x1 = x(0);
    return plant_.phi_upper(1, x, t) * q2(x1) * x1 * x1 +
           r * w2(x1, theta_hat) * phi23(x, t) * eta.squaredNorm();
}

double Controller::chi1(double r, const Vec& eta, double Kc_eta, double Gamma_value) const {
    const int n = plant_.order();
    const double eta_PB = (cert_.P_c * eta)(n - 2);
    const double r_pow = std::pow(r, n - 2);
    return 2.0 * r * r * std::abs(eta_PB * Kc_eta) + 2.0 * std::abs(eta_PB) * Gamma_value / r_pow;
}

double Controller::u1(double r, double Kc_eta, double t) const {
    const double g1 = gamma1(warp_, forcing_, t);
    return -std::pow(r, plant_.order()) / g1 * Kc_eta;
}

double Controller::sign_factor(double delta, bool dead_zone_active) const {
    if (dead_zone_active) return 0.0;
    if (gains_.sign_smoothing > 0.0) {
        return delta / std::max(std::abs(delta), gains_.sign_smoothing);
    }
    return delta >= 0.0 ? 1.0 : -1.0;
}

double Controller::u2(double r, double Kc_eta, double eta_PB, double Gamma_value,
                      double theta1_hat, double t, bool dead_zone_active) const {
    const double g1 = gamma1(warp_, forcing_, t);
    const double g2_over_g1 = gamma2_over_gamma1(warp_, forcing_, t);
    const double magnitude =
        std::abs(Kc_eta) * std::pow(r, plant_.order()) * (1.0 / g1 + theta1_hat) +
        Gamma_value * (g2_over_g1 + theta1_hat);
    return -sign_factor(eta_PB, dead_zone_active) * magnitude;
}

ControllerEval Controller::evaluate(const ControllerState& st, const Vec& x, double t,
                                    double tau, bool dead_zone_active) const {
    const int n = plant_.order();
    const double x1 = x(0);
    const double alpha = warp_.alpha(tau);
    const double alpha_tilde = warp_.alpha_prime(tau);

    ControllerEval ev;
    ev.zeta1 = zeta1(x1);
    require_finite(ev.zeta1, "zeta1");
    ev.zeta = st.theta_hat * x1 * ev.zeta1;
    require_finite(ev.zeta, "zeta");
    ev.eta = scaled_eta(x, st.r, ev.zeta);
    for (int i = 0; i < ev.eta.size(); ++i) require_finite(ev.eta(i), "eta");

    ev.chi = chi(st.r, x, t, st.theta_hat, ev.eta);
    require_finite(ev.chi, "chi");
    ev.rates.dtheta = alpha_tilde + gains_.c_theta * ev.chi / alpha;
    require_finite(ev.rates.dtheta, "dtheta_hat/dtau");

    const double theta_dot_t = alpha * ev.rates.dtheta;
    ev.ratio = theta_dot_t / plant_.phi_upper(1, x, t);
    require_finite(ev.ratio, "thetadot/phi12 ratio");

    ev.w1 = w1(x1, st.theta_hat, ev.ratio);
    require_finite(ev.w1, "w1");
    ev.w2 = w2(x1, st.theta_hat);
    require_finite(ev.w2, "w2");
    ev.R = big_R(x1, st.theta_hat, ev.ratio);
    require_finite(ev.R, "R");
    ev.Omega = omega(st.r, x, t, st.theta_hat, ev.ratio);
    require_finite(ev.Omega, "Omega");
    ev.gate = gate_lambda(ev.R + alpha - st.r);
    ev.rates.dr = ev.gate * (ev.Omega + alpha_tilde);
    require_finite(ev.rates.dr, "dr/dtau");

    const std::vector<double> ks = cert_.gains(x, t);
    ev.Kc_eta = 0.0;
    for (int i = 0; i < n - 1; ++i) ev.Kc_eta += ks[static_cast<std::size_t>(i)] * ev.eta(i);
    require_finite(ev.Kc_eta, "K_c eta");
    ev.eta_PB = (cert_.P_c * ev.eta)(n - 2);
    require_finite(ev.eta_PB, "eta^T P_c B");

    const double gamma_value = plant_.gamma_bound(x1);
    ev.chi1 = chi1(st.r, ev.eta, ev.Kc_eta, gamma_value);
    require_finite(ev.chi1, "chi1");
    ev.rates.dtheta1 = gains_.c_theta1 * ev.chi1 / alpha;
    require_finite(ev.rates.dtheta1, "dtheta1_hat/dtau");

    ev.u1 = u1(st.r, ev.Kc_eta, t);
    require_finite(ev.u1, "u1");
    ev.u2 = u2(st.r, ev.Kc_eta, ev.eta_PB, gamma_value, st.theta1_hat, t, dead_zone_active);
    require_finite(ev.u2, "u2");
    ev.u = ev.u1 + ev.u2;
    return ev;
}

ControllerRates Controller::rates(const ControllerState& st, const Vec& x, double t,
                                  double tau) const {
    return evaluate(st, x, t, tau).rates;
}

} // namespace ptsim
