#pragma once

#include <vector>

#include "gkpwalk/phase_space.hpp"

namespace gkpwalk {

enum class Logical { zero, one };

// Target comb parameters. Logical zero puts teeth at even multiples of w,
// logical one at odd multiples; kappa is the Gaussian envelope width and
// sigma2 the per-tooth variance. r_max = 0 requests the automatic truncation
// radius (envelope tail below 1e-12 at the cut).
struct GkpTargetSpec {
    Logical logical = Logical::zero;
    double w = 1.0;
    double kappa = 0.1;
    double sigma2 = kSymmetricVacuumSigma2;
    int r_max = 0;  // 0 => auto
    Axis axis = Axis::position;
};

// Smallest truncation radius whose envelope weight at the cut is < 1e-12.
int auto_r_max(double kappa, double w);

// Normalized approximate GKP comb:
//   zero: N0 sum_{|r|<=r_max} e^{-kappa^2 (2rw)^2 / 2} |tooth at 2rw>
//   one:  N1 sum_{r=-r_max-1..r_max} e^{-kappa^2 ((1+2r)w)^2 / 2} |tooth at (1+2r)w>
// The normalization uses the exact Gram matrix, not the orthogonal-teeth
// approximation, so it stays correct for strongly overlapping teeth.
CoherentSuperposition approx_gkp(const GkpTargetSpec& spec);

// R_{pi/2} applied to the position-axis comb; matches the momentum-axis comb
// up to global phase. Requires sigma2 = 1/2.
CoherentSuperposition rotated_target(const GkpTargetSpec& spec);

// D(w) along `axis`: maps an even comb (teeth at 2rw) onto the odd comb at
// (1+2r)w. Commutes with the same-axis walk up to global phase.
CoherentSuperposition logical_one_from_zero(const CoherentSuperposition& state,
                                            double w, Axis axis);

// Tooth positions of the ideal (non-normalizable) comb, for annotation only:
// {2rw} or {(1+2r)w} with |r| <= r_max.
std::vector<double> ideal_comb_descriptor(Logical logical, double w, int r_max);

// Two-mode product states on a 2-D lattice. Overlaps factorize per mode.
struct TwoModeTerm {
    Complex amplitude{0.0, 0.0};
    PhasePoint center_mode1{};
    PhasePoint center_mode2{};
};

struct TwoModeSuperposition {
    double sigma2 = kSymmetricVacuumSigma2;
    std::vector<TwoModeTerm> terms;
};

// Tensor product of two single-mode combs; term count is the product and the
// result is normalized.
TwoModeSuperposition grid_state_2d(const GkpTargetSpec& spec1, const GkpTargetSpec& spec2);

Complex inner_product(const TwoModeSuperposition& a, const TwoModeSuperposition& b);
double norm(const TwoModeSuperposition& state);

}  // namespace gkpwalk
