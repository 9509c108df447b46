#include "ptsim/timewarp.hpp"

#include <cmath>
#include <string>

namespace ptsim {

RationalTimeWarp::RationalTimeWarp(double t_prescribed, double t_effective, double a0)
    : t_prescribed_(t_prescribed), t_effective_(t_effective), a0_(a0) {
    if (!(t_prescribed > 0.0)) {
        throw std::invalid_argument("RationalTimeWarp: T must be positive, got " +
                                    std::to_string(t_prescribed));
    }
    if (!(t_effective >= t_prescribed)) {
        throw std::invalid_argument("RationalTimeWarp: T_eff must satisfy T_eff >= T");
    }
    if (!(a0 > 0.0)) {
        throw std::invalid_argument("RationalTimeWarp: a0 must be positive");
    }
}

double RationalTimeWarp::warp(double t) const {
    if (!(t >= 0.0) || t >= t_effective_) {
        throw std::domain_error("RationalTimeWarp::warp: t outside [0, T_eff)");
    }
    return a0_ * t / (1.0 - t / t_effective_);
}

double RationalTimeWarp::unwarp(double tau) const {
    if (!(tau >= 0.0)) {
        throw std::domain_error("RationalTimeWarp::unwarp: tau must be >= 0");
    }
    return tau * t_effective_ / (a0_ * t_effective_ + tau);
}

double RationalTimeWarp::alpha(double tau) const {
    if (!(tau >= 0.0)) {
        throw std::domain_error("RationalTimeWarp::alpha: tau must be >= 0");
    }
    const double s = 1.0 + tau / (a0_ * t_effective_);
    return a0_ * s * s;
}

double RationalTimeWarp::alpha_prime(double tau) const {
    if (!(tau >= 0.0)) {
        throw std::domain_error("RationalTimeWarp::alpha_prime: tau must be >= 0");
    }
    return (2.0 / t_effective_) * (1.0 + tau / (a0_ * t_effective_));
}

void ForcingConfig::validate() const {
    std::string errs;
    if (!(c_gamma1 > 0.0)) errs += "c_gamma1 must be positive; ";
    if (!(c_gamma2 > 0.0)) errs += "c_gamma2 must be positive; ";
    if (!(c_tilde_gamma1 >= 0.0)) errs += "c_tilde_gamma1 must be non-negative; ";
    if (!(c_tilde_gamma2 >= 0.0)) errs += "c_tilde_gamma2 must be non-negative; ";
    if (!errs.empty()) throw std::invalid_argument("ForcingConfig: " + errs);
}

double gamma1(const TimeWarp& w, const ForcingConfig& f, double t) {
    const double a = w.alpha(w.warp(t));
    return 1.0 / (f.c_gamma1 * a + f.c_tilde_gamma1);
}

double gamma2_over_gamma1(const TimeWarp& w, const ForcingConfig& f, double t) {
    const double a = w.alpha(w.warp(t));
    return f.c_gamma2 * a + f.c_tilde_gamma2;
}

double gamma2(const TimeWarp& w, const ForcingConfig& f, double t) {
    return gamma2_over_gamma1(w, f, t) * gamma1(w, f, t);
}

} // namespace ptsim
