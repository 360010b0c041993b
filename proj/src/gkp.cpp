#include "gkpwalk/gkp.hpp"

#include <cmath>

namespace gkpwalk {

namespace {

constexpr double kPiHalf = 1.57079632679489661923;
constexpr double kTailCut = 1e-12;

void check_spec(const GkpTargetSpec& spec) {
    if (!std::isfinite(spec.w) || spec.w <= 0.0) {
        throw invalid_parameter_error("gkp target: w must be positive");
    }
    if (!std::isfinite(spec.kappa) || spec.kappa <= 0.0) {
        throw invalid_parameter_error("gkp target: kappa must be positive");
    }
    if (!std::isfinite(spec.sigma2) || spec.sigma2 <= 0.0) {
        throw invalid_parameter_error("gkp target: sigma2 must be positive");
    }
    if (spec.r_max < 0) {
        throw invalid_parameter_error("gkp target: r_max must be >= 1 (or 0 for auto)");
    }
}

PhasePoint tooth_center(double site, Axis axis) {
    return axis == Axis::position ? PhasePoint{site, 0.0} : PhasePoint{0.0, site};
}

}  // namespace

int auto_r_max(double kappa, double w) {
    if (!std::isfinite(kappa) || kappa <= 0.0 || !std::isfinite(w) || w <= 0.0) {
        throw invalid_parameter_error("auto_r_max: kappa and w must be positive");
    }
    // e^{-kappa^2 (2 r w)^2 / 2} < kTailCut  <=>  r > sqrt(-2 ln cut) / (2 kappa w)
    const double r = std::sqrt(-2.0 * std::log(kTailCut)) / (2.0 * kappa * w);
    return std::max(1, static_cast<int>(std::ceil(r)));
}

CoherentSuperposition approx_gkp(const GkpTargetSpec& spec) {
    check_spec(spec);
    const int r_max = spec.r_max == 0 ? auto_r_max(spec.kappa, spec.w) : spec.r_max;

    std::vector<GaussianTerm> terms;
    if (spec.logical == Logical::zero) {
        terms.reserve(2 * r_max + 1);
        for (int r = -r_max; r <= r_max; ++r) {
            const double site = 2.0 * spec.w * static_cast<double>(r);
            const double weight = std::exp(-0.5 * spec.kappa * spec.kappa * site * site);
            terms.push_back(GaussianTerm{Complex{weight, 0.0}, tooth_center(site, spec.axis)});
        }
    } else {
        // r runs over -r_max-1 .. r_max so the odd teeth pair up symmetrically
        // as +/-w, +/-3w, ..., +/-(2 r_max + 1) w.
        terms.reserve(2 * r_max + 2);
        for (int r = -r_max - 1; r <= r_max; ++r) {
            const double site = (1.0 + 2.0 * static_cast<double>(r)) * spec.w;
            const double weight = std::exp(-0.5 * spec.kappa * spec.kappa * site * site);
            terms.push_back(GaussianTerm{Complex{weight, 0.0}, tooth_center(site, spec.axis)});
        }
    }
    return normalize(CoherentSuperposition(spec.sigma2, std::move(terms)));
}

CoherentSuperposition rotated_target(const GkpTargetSpec& spec) {
    if (spec.sigma2 != kSymmetricVacuumSigma2) {
        throw asymmetric_vacuum_error("rotated_target requires sigma2 = 1/2");
    }
    GkpTargetSpec position_spec = spec;
    position_spec.axis = Axis::position;
    return rotate(approx_gkp(position_spec), kPiHalf);
}

CoherentSuperposition logical_one_from_zero(const CoherentSuperposition& state,
                                            double w, Axis axis) {
    if (!std::isfinite(w) || w < 0.0) {
        throw invalid_parameter_error("logical_one_from_zero: w must be >= 0");
    }
    const PhasePoint delta =
        axis == Axis::position ? PhasePoint{w, 0.0} : PhasePoint{0.0, w};
    return displace(state, delta);
}

std::vector<double> ideal_comb_descriptor(Logical logical, double w, int r_max) {
    if (!std::isfinite(w) || w <= 0.0) {
        throw invalid_parameter_error("ideal comb: w must be positive");
    }
    if (r_max < 1) {
        throw invalid_parameter_error("ideal comb: r_max must be >= 1");
    }
    std::vector<double> sites;
    if (logical == Logical::zero) {
        sites.reserve(2 * r_max + 1);
        for (int r = -r_max; r <= r_max; ++r) {
            sites.push_back(2.0 * w * static_cast<double>(r));
        }
    } else {
        sites.reserve(2 * r_max + 2);
        for (int r = -r_max - 1; r <= r_max; ++r) {
            sites.push_back((1.0 + 2.0 * static_cast<double>(r)) * w);
        }
    }
    return sites;
}

TwoModeSuperposition grid_state_2d(const GkpTargetSpec& spec1, const GkpTargetSpec& spec2) {
    if (spec1.sigma2 != spec2.sigma2) {
        throw incompatible_width_error("grid_state_2d: modes must share sigma2");
    }
    const CoherentSuperposition mode1 = approx_gkp(spec1);
    const CoherentSuperposition mode2 = approx_gkp(spec2);
    TwoModeSuperposition grid;
    grid.sigma2 = spec1.sigma2;
    grid.terms.reserve(mode1.size() * mode2.size());
    for (const GaussianTerm& t1 : mode1.terms()) {
        for (const GaussianTerm& t2 : mode2.terms()) {
            grid.terms.push_back(TwoModeTerm{t1.amplitude * t2.amplitude, t1.center, t2.center});
        }
    }
    return grid;
}

Complex inner_product(const TwoModeSuperposition& a, const TwoModeSuperposition& b) {
    if (a.sigma2 != b.sigma2) {
        throw incompatible_width_error("two-mode inner_product: states must share sigma2");
    }
    Complex sum{0.0, 0.0};
    for (const TwoModeTerm& ta : a.terms) {
        const Complex ca = std::conj(ta.amplitude);
        for (const TwoModeTerm& tb : b.terms) {
            sum += ca * tb.amplitude *
                   gaussian_overlap(ta.center_mode1, tb.center_mode1, a.sigma2) *
                   gaussian_overlap(ta.center_mode2, tb.center_mode2, a.sigma2);
        }
    }
    return sum;
}

double norm(const TwoModeSuperposition& state) {
    return std::sqrt(std::max(0.0, inner_product(state, state).real()));
}

}  // namespace gkpwalk
