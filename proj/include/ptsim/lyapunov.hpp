#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "ptsim/plant.hpp"

namespace ptsim {

using Mat = Eigen::MatrixXd;

/// State-dependent gain entry of K_c = [k_2, ..., k_n].
using GainFn = std::function<double(const Vec& x, double t)>;

/// Certificate for the coupled Lyapunov inequalities
///
///   P_c A_c + A_c^T P_c <= -nu_c phi_{(2,3)} I
///   nu_lower I <= P_c D~_c + D~_c P_c <= nu_upper I
///
/// with D~_c = diag(1,...,n-1) - (1/2) I. P_c is (n-1)x(n-1) symmetric
/// positive-definite and K_c holds the n-1 gain functions k_2..k_n that
/// populate the last row of A_c.
struct LyapunovCertificate {
    int n = 0;
    Mat P_c;
    std::vector<GainFn> K_c;
    double nu_c = 0.0;
    double nu_lower = 0.0;
    double nu_upper = 0.0;

    /// lambda_max(P_c), cached on first use by callers that need it hot.
    double lambda_max_P() const;

    /// D~_c for this order.
    Mat D_tilde() const;

    /// Evaluate all gains at (x, t).
    std::vector<double> gains(const Vec& x, double t) const;

    /// Checks structural invariants: sizes, symmetry, positive-definiteness,
    /// 0 < nu_lower <= nu_upper, and the D~_c inequality (exact eigenvalue
    /// check on the constant matrix, tolerance tol). Throws std::invalid_argument.
    void validate(double tol = -1.0) const;
};

/// Verdict of a sampled certificate verification.
struct CertReport {
    long sampled_points = 0;
    /// Most positive eigenvalue of P_c A_c + A_c^T P_c + nu_c phi_{(2,3)} I
    /// over the samples; <= tol required.
    double worst_margin_first_ineq = 0.0;
    /// Sample index attaining the worst margin.
    long worst_sample = -1;
    /// Extreme eigenvalues of P_c D~_c + D~_c P_c (checked once).
    double second_ineq_eig_min = 0.0;
    double second_ineq_eig_max = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    std::string text() const;
    std::string key_values() const;
};

/// The explicit n = 3 certificate P_c = a~_c [[3,1],[1,1]], k_2 = 5 phi_{(2,3)},
/// k_3 = 4 phi_{(2,3)}, nu_c = 1.675 a~_c, nu_lower = a~_c, nu_upper = 5 a~_c.
/// The gains evaluate phi_{(2,3)}(x1) = 1 + x1^4 of the fifth-order example.
LyapunovCertificate example_certificate(double a_tilde_c);

/// A_c from already-evaluated data: superdiagonal entries phi_{(i+1,i+2)}
/// (size n-2) and last-row gains k_2..k_n (size n-1); zeros elsewhere.
/// Throws std::invalid_argument on dimension mismatch.
Mat build_Ac(const LyapunovCertificate& cert, const std::vector<double>& phi_values,
             const std::vector<double>& gain_values);

/// One (x, t) verification sample.
struct CertSample {
    Vec x;
    double t = 0.0;
};

/// Uniform grid over the box [lo, hi]^n with points_per_axis samples per axis,
/// all at time t.
std::vector<CertSample> grid_samples(int n, double lo, double hi, int points_per_axis,
                                     double t = 0.0);

/// Evaluates both coupled inequalities at every sample. The default tolerance
/// is 1e-9 * ||P_c||_F. Parallelized over samples with a deterministic
/// max-margin reduction (ties resolved toward the smaller sample index).
CertReport verify_certificate(const LyapunovCertificate& cert, const Plant& plant,
                              const std::vector<CertSample>& samples, double tol = -1.0);

/// Single-threaded reference implementation; must agree with
/// verify_certificate bit-for-bit.
CertReport verify_certificate_serial(const LyapunovCertificate& cert, const Plant& plant,
                                     const std::vector<CertSample>& samples,
                                     double tol = -1.0);

/// Decay constant kappa = min(3 zeta0 sigma / 2, nu_c sigma / (2 lambda_max(P_c))).
double kappa(const LyapunovCertificate& cert, double zeta0, double sigma);

} // namespace ptsim
