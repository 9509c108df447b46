#include "ptsim/assumptions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptsim {

namespace {

constexpr double kPassTol = 1e-12;

struct WorstMin {
    double margin = std::numeric_limits<double>::infinity();
    long index = -1;

    void absorb(double margin_i, long index_i) {
        if (index < 0 || margin_i < margin || (margin_i == margin && index_i < index)) {
            margin = margin_i;
            index = index_i;
        }
    }
    void absorb(const WorstMin& o) {
        if (o.index >= 0) absorb(o.margin, o.index);
    }
};

struct CheckDef {
    std::string name;
    bool vacuous = false;
};

/// Per-sample margins, one entry per non-vacuous check, in declaration order.
void sample_margins(const Plant& plant, const CertSample& s, std::vector<double>& out) {
    const int n = plant.order();
    const double x1 = s.x(0);
    std::size_t k = 0;

    // A1
    double a1 = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n - 1; ++i) a1 = std::min(a1, plant.phi_upper(i, s.x, s.t) - plant.sigma());
    out[k++] = a1;

    // A4 (skipped entirely when vacuous)
    if (n > 3) {
        double a4 = std::numeric_limits<double>::infinity();
        for (int i = 3; i <= n - 1; ++i) {
            a4 = std::min(a4, plant.phi_upper(i, s.x, s.t) -
                                  plant.rho_upper(i) * plant.phi_upper(i - 1, s.x, s.t));
        }
        out[k++] = a4;
    }

    const double phi12 = plant.phi_upper(1, s.x, s.t);
    const double phi23 = plant.phi_upper(std::min(2, n - 1), s.x, s.t);
    const double ratio12 = phi12 / phi23;

    // A5
    out[k++] = plant.phi12_upper(x1) - ratio12;
    out[k++] = ratio12 - plant.phi12_lower(x1);

    // A2 ratio bounds, one margin per family
    double e1 = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
        e1 = std::min(e1, plant.eps_x1(i) - plant.phi_bound(i, 1, s.x, s.t) / phi12);
    }
    out[k++] = e1;

    double e2 = std::numeric_limits<double>::infinity();
    const double denom2 = std::sqrt(phi12 * phi23);
    for (int i = 2; i <= n; ++i) {
        e2 = std::min(e2, plant.eps_tilde(i) - plant.phi_bound(i, 2, s.x, s.t) / denom2);
    }
    out[k++] = e2;

    if (n > 2) {
        double e3 = std::numeric_limits<double>::infinity();
        for (int i = 2; i <= n - 1; ++i) {
            for (int j = 2; j <= i; ++j) {
                e3 = std::min(e3, plant.eps(i, j) - plant.phi_bound(i, j, s.x, s.t) / phi23);
            }
        }
        out[k++] = e3;
    }

    if (!out.empty()) {
        for (double v : out) {
            if (!std::isfinite(v)) {
                throw std::runtime_error("check_assumptions: non-finite margin at a sample");
            }
        }
    }
}

AssumptionReport run_checks(const Plant& plant, const std::vector<CertSample>& grid,
                            bool parallel) {
    if (grid.empty()) throw std::invalid_argument("check_assumptions: empty grid");
    const int n = plant.order();
    for (const auto& s : grid) {
        if (s.x.size() != n) {
            throw std::invalid_argument("check_assumptions: grid sample dimension mismatch");
        }
        break; // sizes are uniform by construction; spot-check the first
    }

    std::vector<CheckDef> defs;
    defs.push_back({"A1", false});
    defs.push_back({"A4", n <= 3});
    defs.push_back({"A5_upper", false});
    defs.push_back({"A5_lower", false});
    defs.push_back({"eps_ratio_x1", false});
    defs.push_back({"eps_ratio_sqrt", false});
    defs.push_back({"eps_ratio_23", n <= 2});

    std::size_t active = 0;
    for (const auto& d : defs) {
        if (!d.vacuous) ++active;
    }

    const long count = static_cast<long>(grid.size());
    std::vector<WorstMin> worst(active);
    std::string error;

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
        {
            std::vector<WorstMin> local(active);
            std::vector<double> margins(active);
#pragma omp for schedule(static)
            for (long i = 0; i < count; ++i) {
                try {
                    sample_margins(plant, grid[static_cast<std::size_t>(i)], margins);
                    for (std::size_t c = 0; c < active; ++c) local[c].absorb(margins[c], i);
                } catch (const std::exception& e) {
#pragma omp critical(ptsim_assum_error)
                    if (error.empty()) error = e.what();
                }
            }
#pragma omp critical(ptsim_assum_worst)
            for (std::size_t c = 0; c < active; ++c) worst[c].absorb(local[c]);
        }
#else
        parallel = false;
#endif
    }
    if (!parallel) {
        std::vector<double> margins(active);
        for (long i = 0; i < count; ++i) {
            sample_margins(plant, grid[static_cast<std::size_t>(i)], margins);
            for (std::size_t c = 0; c < active; ++c) worst[c].absorb(margins[c], i);
        }
    }
    if (!error.empty()) throw std::runtime_error(error);

    AssumptionReport rep;
    rep.sampled_points = count;
    std::size_t c = 0;
    for (const auto& d : defs) {
        AssumptionMargin m;
        m.name = d.name;
        m.vacuous = d.vacuous;
        if (d.vacuous) {
            m.pass = true;
        } else {
            m.worst_margin = worst[c].margin;
            m.worst_sample = worst[c].index;
            m.worst_x = grid[static_cast<std::size_t>(worst[c].index)].x;
            m.pass = m.worst_margin >= -kPassTol;
            ++c;
        }
        rep.pass = rep.pass && m.pass;
        rep.checks.push_back(std::move(m));
    }
    return rep;
}

} // namespace

const AssumptionMargin* AssumptionReport::find(const std::string& name) const {
    for (const auto& m : checks) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

std::string AssumptionReport::text() const {
    std::ostringstream os;
    os << "assumption checks (sampled, not proven; " << sampled_points << " points)\n";
    for (const auto& m : checks) {
        os << "  " << m.name << ": ";
        if (m.vacuous) {
            os << "vacuously satisfied\n";
            continue;
        }
        os << (m.pass ? "PASS" : "FAIL") << "  worst margin " << m.worst_margin
           << " at sample " << m.worst_sample << " (x =";
        for (int i = 0; i < m.worst_x.size(); ++i) os << " " << m.worst_x(i);
        os << ")\n";
    }
    os << "  verdict: " << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string AssumptionReport::key_values() const {
    std::ostringstream os;
    os << "sampled_points = " << sampled_points << "\n";
    for (const auto& m : checks) {
        os << m.name << ".pass = " << (m.pass ? "true" : "false") << "\n";
        if (m.vacuous) {
            os << m.name << ".vacuous = true\n";
        } else {
            os << m.name << ".worst_margin = " << m.worst_margin << "\n";
            os << m.name << ".worst_sample = " << m.worst_sample << "\n";
        }
    }
    os << "pass = " << (pass ? "true" : "false") << "\n";
    return os.str();
}

AssumptionReport check_assumptions(const Plant& plant, const std::vector<CertSample>& grid) {
    return run_checks(plant, grid, true);
}

AssumptionReport check_assumptions_serial(const Plant& plant,
                                          const std::vector<CertSample>& grid) {
    return run_checks(plant, grid, false);
}

std::vector<CertSample> default_assumption_grid(const Plant& plant) {
    return grid_samples(plant.order(), -5.0, 5.0, 21, 0.0);
}

} // namespace ptsim
