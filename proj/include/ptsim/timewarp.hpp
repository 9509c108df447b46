#pragma once

#include <memory>
#include <stdexcept>

namespace ptsim {

/// Time-scale transformation tau = a(t) mapping [0, T_eff) onto [0, inf).
///
/// Implementations must satisfy, on [0, T_eff):
///   - a(0) = 0, a strictly increasing, twice continuously differentiable
///   - a'(t) >= a0 > 0, so a is invertible
///   - alpha(tau) = a'(a^{-1}(tau)) and d(alpha)/d(tau) grow at most
///     polynomially in tau
/// Accessors expose the prescribed terminal time T and the (slightly larger)
/// effective terminal time T_eff actually used to build the map.
class TimeWarp {
public:
    virtual ~TimeWarp() = default;

    /// tau = a(t). Domain: 0 <= t < t_effective().
    virtual double warp(double t) const = 0;
    /// t = a^{-1}(tau). Domain: tau >= 0.
    virtual double unwarp(double tau) const = 0;
    /// alpha(tau) = a'(t) expressed in the warped time. Domain: tau >= 0.
    virtual double alpha(double tau) const = 0;
    /// d(alpha)/d(tau).
    virtual double alpha_prime(double tau) const = 0;

    virtual double t_prescribed() const = 0;
    virtual double t_effective() const = 0;
    virtual double a0() const = 0;
};

/// The shipped warp family a(t) = a0*t / (1 - t/T_eff).
///
/// Closed forms:
///   unwarp(tau) = tau*T_eff / (a0*T_eff + tau)
///   alpha(tau)  = a0 * (1 + tau/(a0*T_eff))^2
///   alpha'(tau) = (2/T_eff) * (1 + tau/(a0*T_eff))
class RationalTimeWarp final : public TimeWarp {
public:
    /// Throws std::invalid_argument unless T_eff >= T > 0 and a0 > 0.
    RationalTimeWarp(double t_prescribed, double t_effective, double a0);

    double warp(double t) const override;
    double unwarp(double tau) const override;
    double alpha(double tau) const override;
    double alpha_prime(double tau) const override;

    double t_prescribed() const override { return t_prescribed_; }
    double t_effective() const override { return t_effective_; }
    double a0() const override { return a0_; }

private:
    double t_prescribed_;
    double t_effective_;
    double a0_;
};

/// Constants of the temporal forcing functions gamma1, gamma2.
/// c_gamma1 and c_gamma2 must be positive; the tilde constants non-negative.
struct ForcingConfig {
    double c_gamma1 = 0.0;
    double c_tilde_gamma1 = 0.0;
    double c_gamma2 = 0.0;
    double c_tilde_gamma2 = 0.0;

    /// Throws std::invalid_argument listing every violated constraint.
    void validate() const;
};

/// gamma1(t) = 1 / (c_gamma1 * alpha(a(t)) + c_tilde_gamma1).
/// Positive and non-increasing in t. Domain: 0 <= t < T_eff.
double gamma1(const TimeWarp& w, const ForcingConfig& f, double t);

/// gamma2(t) = [c_gamma2 * alpha(a(t)) + c_tilde_gamma2] * gamma1(t).
double gamma2(const TimeWarp& w, const ForcingConfig& f, double t);

/// The exact multiplier gamma2(t)/gamma1(t) = c_gamma2 * alpha(a(t)) + c_tilde_gamma2.
double gamma2_over_gamma1(const TimeWarp& w, const ForcingConfig& f, double t);

} // namespace ptsim
