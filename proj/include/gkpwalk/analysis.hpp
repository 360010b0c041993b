#pragma once

#include <span>
#include <string>
#include <vector>

#include "gkpwalk/phase_space.hpp"

namespace gkpwalk {

// |<a|b>|^2 / (|a|^2 |b|^2); in [0,1], symmetric, 1 iff proportional.
// Throws zero_norm_error if either state has zero norm.
double fidelity(const CoherentSuperposition& a, const CoherentSuperposition& b);

struct GridSpec {
    double x_min = -6.0, x_max = 6.0;
    int nx = 512;
    double p_min = -6.0, p_max = 6.0;
    int np = 512;
};

// Phase-space grid covering all teeth plus 6 sigma of margin in both
// quadratures.
GridSpec default_grid_for(const CoherentSuperposition& state, int points_per_axis = 512);

// Sampled Wigner function, convention W(x,p) = (1/pi) Int conj(psi(x+y))
// psi(x-y) e^{2ipy} dy, so the vacuum peaks at 1/pi and the grid Riemann sum
// times the cell area approximates norm^2.
struct WignerGrid {
    GridSpec grid;
    std::vector<double> values;  // row-major: values[ix * np + ip]

    double x_at(int ix) const;
    double p_at(int ip) const;
    double value_at(int ix, int ip) const { return values[static_cast<std::size_t>(ix) * grid.np + ip]; }
};

// Closed-form cross-Wigner kernel of two equal-width displaced vacua
// (a Gaussian in (x,p) times a plane-wave phase); conj(c_i) c_j weighted
// pair sums of it build the full Wigner function.
Complex wigner_cross_kernel(PhasePoint bra_center, PhasePoint ket_center,
                            double x, double p, double sigma2);

double wigner_at(const CoherentSuperposition& state, double x, double p);

// Evaluates the pair sum on the grid; rows are computed in parallel, each
// point with a fixed-order reduction, so results are bit-stable across runs.
WignerGrid wigner_grid(const CoherentSuperposition& state, const GridSpec& grid);

struct DensityCurve {
    Axis quadrature = Axis::position;
    std::vector<std::pair<double, double>> samples;  // (coordinate, density)
};

// |wavefunction|^2 sampled at the given coordinates.
DensityCurve quadrature_density(const CoherentSuperposition& state, Axis quadrature,
                                std::span<const double> coordinates);

struct EnvelopeFit {
    double kappa_hat = 0.0;
    double residual = 0.0;  // rms of the log-weight fit residuals
    int n_points = 0;
};

// Least-squares fit of log|amplitude_r| against -kappa^2 (2rw)^2 / 2 with a
// free constant offset, over teeth with |amplitude| > 1e-10 * max. The term
// centers must lie on the 2w lattice along `axis` (walk outputs qualify).
// Throws insufficient_data_error with fewer than 3 usable teeth.
EnvelopeFit fit_envelope(const CoherentSuperposition& state, double w, Axis axis);

// <state| D(spacing) |state> for a normalized state; modulus approaches 1
// for combs matched to the spacing.
Complex stabilizer_expectation(const CoherentSuperposition& state, PhasePoint spacing);

struct EquivalenceCheck {
    std::string name;
    double fidelity = 0.0;
    bool pass = false;
};

struct EquivalenceReport {
    int half_steps = 0;
    double w = 0.0;
    std::vector<EquivalenceCheck> checks;
    bool pass = false;
};

// Cross-checks that the position and momentum walks are the same protocol in
// rotated frames (vacuum input): rotating either walk output onto the other,
// conjugating the momentum comb through the lens, and the interferometer
// realization. Each check must reach fidelity 1 - 1e-12. The rotation route
// only exists for the symmetric vacuum, so sigma2 != 1/2 is rejected.
EquivalenceReport equivalence_report(int half_steps, double w,
                                     double sigma2 = kSymmetricVacuumSigma2);

}  // namespace gkpwalk
