#pragma once

#include <string>
#include <vector>

#include "ptsim/lyapunov.hpp"
#include "ptsim/plant.hpp"

namespace ptsim {

/// Margin of one checked inequality over a sample grid. A check passes when
/// its worst margin is >= 0 (margins are oriented so that "satisfied" means
/// non-negative). Results are sampled evidence, not proofs.
struct AssumptionMargin {
    std::string name;
    bool vacuous = false;
    bool pass = true;
    double worst_margin = 0.0;
    long worst_sample = -1;   // index into the grid, -1 when vacuous
    Vec worst_x;              // the sample attaining the worst margin
};

struct AssumptionReport {
    long sampled_points = 0;
    std::vector<AssumptionMargin> checks;
    bool pass = true;

    const AssumptionMargin* find(const std::string& name) const;
    std::string text() const;
    std::string key_values() const;
};

/// Numerically checks, at every grid sample:
///   A1:      phi_{(i,i+1)} - sigma >= 0 for i = 1..n-1
///   A4:      phi_{(i,i+1)} - rho_i phi_{(i-1,i)} >= 0 for i = 3..n-1 (vacuous for n <= 3)
///   A5:      phi12_lower <= phi_{(1,2)}/phi_{(2,3)} <= phi12_upper
///   ratios:  eps_{(i,1)} - phi_{(i,1)}/phi_{(1,2)} >= 0            (i = 1..n)
///            eps~_{(i,2)} - phi_{(i,2)}/sqrt(phi_{(1,2)} phi_{(2,3)}) >= 0  (i = 2..n)
///            eps_{(i,j)} - phi_{(i,j)}/phi_{(2,3)} >= 0            (i = 2..n-1, j = 2..i)
/// Parallelized over grid points with a deterministic worst-margin reduction.
AssumptionReport check_assumptions(const Plant& plant, const std::vector<CertSample>& grid);

/// Single-threaded reference; must agree with check_assumptions bit-for-bit.
AssumptionReport check_assumptions_serial(const Plant& plant,
                                          const std::vector<CertSample>& grid);

/// Default checker grid: 21 points per axis over [-5, 5]^n at t = 0.
std::vector<CertSample> default_assumption_grid(const Plant& plant);

} // namespace ptsim
