#include "ptsim/lyapunov.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptsim {

namespace {

/// phi_{(2,3)} slot used by the first coupled inequality. For n = 2 there is
/// no second upper diagonal; phi_{(1,2)} takes its place.
double phi23_slot(const Plant& plant, const Vec& x, double t) {
    const int i = std::min(2, plant.order() - 1);
    return plant.phi_upper(i, x, t);
}

double max_eig_sym(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

struct Worst {
    double margin = -std::numeric_limits<double>::infinity();
    long index = -1;

    void absorb(double margin_i, long index_i) {
        if (margin_i > margin || (margin_i == margin && index_i < index)) {
            margin = margin_i;
            index = index_i;
        }
    }
    void absorb(const Worst& o) { absorb(o.margin, o.index); }
};

double sample_margin(const LyapunovCertificate& cert, const Plant& plant,
                     const CertSample& s) {
    const int n = cert.n;
    std::vector<double> phis(static_cast<std::size_t>(n - 2));
    for (int i = 0; i < n - 2; ++i) {
        phis[static_cast<std::size_t>(i)] = plant.phi_upper(i + 2, s.x, s.t);
    }
    const std::vector<double> ks = cert.gains(s.x, s.t);
    for (double v : phis) {
        if (!std::isfinite(v)) throw std::runtime_error("verify_certificate: non-finite phi value at a sample");
    }
    for (double v : ks) {
        if (!std::isfinite(v)) throw std::runtime_error("verify_certificate: non-finite gain value at a sample");
    }
    const Mat Ac = build_Ac(cert, phis, ks);
    const double phi23 = phi23_slot(plant, s.x, s.t);
    Mat m = cert.P_c * Ac + Ac.transpose() * cert.P_c;
    m += cert.nu_c * phi23 * Mat::Identity(n - 1, n - 1);
    return max_eig_sym(m);
}

CertReport run_verification(const LyapunovCertificate& cert, const Plant& plant,
                            const std::vector<CertSample>& samples, double tol,
                            bool parallel) {
    if (samples.empty()) throw std::invalid_argument("verify_certificate: no samples");
    if (plant.order() != cert.n) {
        throw std::invalid_argument("verify_certificate: plant order does not match certificate");
    }
    cert.validate(tol);
    if (tol < 0.0) tol = 1e-9 * cert.P_c.norm();

    const long count = static_cast<long>(samples.size());
    Worst worst;
    std::string error;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
        {
            Worst local;
#pragma omp for schedule(static)
            for (long i = 0; i < count; ++i) {
                try {
                    local.absorb(sample_margin(cert, plant, samples[static_cast<std::size_t>(i)]), i);
                } catch (const std::exception& e) {
#pragma omp critical(ptsim_cert_error)
                    if (error.empty()) error = e.what();
                }
            }
#pragma omp critical(ptsim_cert_worst)
            worst.absorb(local);
        }
#else
        parallel = false;
#endif
    }
    if (!parallel) {
        for (long i = 0; i < count; ++i) {
            worst.absorb(sample_margin(cert, plant, samples[static_cast<std::size_t>(i)]), i);
        }
    }
    if (!error.empty()) throw std::runtime_error(error);

    Eigen::SelfAdjointEigenSolver<Mat> es(
        cert.P_c * cert.D_tilde() + cert.D_tilde() * cert.P_c, Eigen::EigenvaluesOnly);

    CertReport rep;
    rep.sampled_points = count;
    rep.worst_margin_first_ineq = worst.margin;
    rep.worst_sample = worst.index;
    rep.second_ineq_eig_min = es.eigenvalues().minCoeff();
    rep.second_ineq_eig_max = es.eigenvalues().maxCoeff();
    rep.tolerance = tol;
    rep.pass = worst.margin <= tol && rep.second_ineq_eig_min >= cert.nu_lower - tol &&
               rep.second_ineq_eig_max <= cert.nu_upper + tol;
    return rep;
}

} // namespace

double LyapunovCertificate::lambda_max_P() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(P_c, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Mat LyapunovCertificate::D_tilde() const {
    Mat d = Mat::Zero(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) d(i, i) = static_cast<double>(i + 1) - 0.5;
    return d;
}

std::vector<double> LyapunovCertificate::gains(const Vec& x, double t) const {
    std::vector<double> out(K_c.size());
    for (std::size_t i = 0; i < K_c.size(); ++i) out[i] = K_c[i](x, t);
    return out;
}

void LyapunovCertificate::validate(double tol) const {
    if (n < 2) throw std::invalid_argument("LyapunovCertificate: n must be >= 2");
    if (P_c.rows() != n - 1 || P_c.cols() != n - 1) {
        throw std::invalid_argument("LyapunovCertificate: P_c must be (n-1)x(n-1)");
    }
    if (static_cast<int>(K_c.size()) != n - 1) {
        throw std::invalid_argument("LyapunovCertificate: K_c must hold n-1 gains");
    }
    if (tol < 0.0) tol = 1e-9 * P_c.norm();
    if ((P_c - P_c.transpose()).norm() > tol) {
        throw std::invalid_argument("LyapunovCertificate: P_c must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat> pe(P_c, Eigen::EigenvaluesOnly);
    if (!(pe.eigenvalues().minCoeff() > 0.0)) {
        throw std::invalid_argument("LyapunovCertificate: P_c must be positive-definite");
    }
    if (!(nu_c > 0.0) || !(nu_lower > 0.0) || !(nu_lower <= nu_upper)) {
        throw std::invalid_argument("LyapunovCertificate: need 0 < nu_lower <= nu_upper and nu_c > 0");
    }
    Eigen::SelfAdjointEigenSolver<Mat> de(P_c * D_tilde() + D_tilde() * P_c,
                                          Eigen::EigenvaluesOnly);
    if (de.eigenvalues().minCoeff() < nu_lower - tol ||
        de.eigenvalues().maxCoeff() > nu_upper + tol) {
        throw std::invalid_argument(
            "LyapunovCertificate: spectrum of P_c D~_c + D~_c P_c outside [nu_lower, nu_upper]");
    }
}

LyapunovCertificate example_certificate(double a_tilde_c) {
    if (!(a_tilde_c > 0.0)) {
        throw std::invalid_argument("example_certificate: a_tilde_c must be positive");
    }
    LyapunovCertificate c;
    c.n = 3;
    c.P_c = Mat(2, 2);
    c.P_c << 3.0, 1.0, 1.0, 1.0;
    c.P_c *= a_tilde_c;
    const auto phi23 = [](const Vec& x, double) {
        const double s = x(0) * x(0);
        return 1.0 + s * s;
    };
    c.K_c.push_back([phi23](const Vec& x, double t) { return 5.0 * phi23(x, t); });
    c.K_c.push_back([phi23](const Vec& x, double t) { return 4.0 * phi23(x, t); });
    c.nu_c = 1.675 * a_tilde_c;
    c.nu_lower = a_tilde_c;
    c.nu_upper = 5.0 * a_tilde_c;
    return c;
}

Mat build_Ac(const LyapunovCertificate& cert, const std::vector<double>& phi_values,
             const std::vector<double>& gain_values) {
    const int n = cert.n;
    if (static_cast<int>(phi_values.size()) != n - 2) {
        throw std::invalid_argument("build_Ac: expected n-2 phi values");
    }
    if (static_cast<int>(gain_values.size()) != n - 1) {
        throw std::invalid_argument("build_Ac: expected n-1 gain values");
    }
    Mat ac = Mat::Zero(n - 1, n - 1);
    for (int i = 0; i < n - 2; ++i) ac(i, i + 1) = phi_values[static_cast<std::size_t>(i)];
    for (int j = 0; j < n - 1; ++j) ac(n - 2, j) = -gain_values[static_cast<std::size_t>(j)];
    return ac;
}

std::vector<CertSample> grid_samples(int n, double lo, double hi, int points_per_axis,
                                     double t) {
    if (n < 1 || points_per_axis < 1 || !(hi >= lo)) {
        throw std::invalid_argument("grid_samples: bad arguments");
    }
    long total = 1;
    for (int i = 0; i < n; ++i) total *= points_per_axis;
    std::vector<CertSample> out;
    out.reserve(static_cast<std::size_t>(total));
    for (long idx = 0; idx < total; ++idx) {
        Vec x(n);
        long rem = idx;
        for (int axis = 0; axis < n; ++axis) {
            const long k = rem % points_per_axis;
            rem /= points_per_axis;
            x(axis) = points_per_axis == 1
                          ? lo
                          : lo + (hi - lo) * static_cast<double>(k) /
                                    static_cast<double>(points_per_axis - 1);
        }
        out.push_back(CertSample{std::move(x), t});
    }
    return out;
}

CertReport verify_certificate(const LyapunovCertificate& cert, const Plant& plant,
                              const std::vector<CertSample>& samples, double tol) {
    return run_verification(cert, plant, samples, tol, true);
}

CertReport verify_certificate_serial(const LyapunovCertificate& cert, const Plant& plant,
                                     const std::vector<CertSample>& samples, double tol) {
    return run_verification(cert, plant, samples, tol, false);
}

double kappa(const LyapunovCertificate& cert, double zeta0, double sigma) {
    if (!(zeta0 > 0.0) || !(sigma > 0.0)) {
        throw std::invalid_argument("kappa: zeta0 and sigma must be positive");
    }
    const double first = 1.5 * zeta0 * sigma;
    const double second = cert.nu_c * sigma / (2.0 * cert.lambda_max_P());
    return std::min(first, second);
}

std::string CertReport::text() const {
    std::ostringstream os;
    os << "certificate verification (sampled, not proven)\n"
       << "  samples:                " << sampled_points << "\n"
       << "  worst margin (ineq 1):  " << worst_margin_first_ineq << " at sample "
       << worst_sample << " (require <= " << tolerance << ")\n"
       << "  D~ spectrum (ineq 2):   [" << second_ineq_eig_min << ", " << second_ineq_eig_max
       << "]\n"
       << "  verdict:                " << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string CertReport::key_values() const {
    std::ostringstream os;
    os << "sampled_points = " << sampled_points << "\n"
       << "worst_margin_first_ineq = " << worst_margin_first_ineq << "\n"
       << "worst_sample = " << worst_sample << "\n"
       << "second_ineq_eig_min = " << second_ineq_eig_min << "\n"
       << "second_ineq_eig_max = " << second_ineq_eig_max << "\n"
       << "tolerance = " << tolerance << "\n"
       << "pass = " << (pass ? "true" : "false") << "\n";
    return os.str();
}

} // namespace ptsim
