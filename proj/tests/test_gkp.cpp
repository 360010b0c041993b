#include <doctest.h>

#include <cmath>

#include "gkpwalk/analysis.hpp"
#include "gkpwalk/gkp.hpp"
#include "gkpwalk/walk.hpp"

using namespace gkpwalk;

namespace {

GkpTargetSpec zero_spec(double w, double kappa, int r_max = 0) {
    GkpTargetSpec spec;
    spec.logical = Logical::zero;
    spec.w = w;
    spec.kappa = kappa;
    spec.r_max = r_max;
    return spec;
}

double lattice_index(const GaussianTerm& t, double w, Axis axis) {
    const double along = axis == Axis::position ? t.center.x : t.center.p;
    return along / w;
}

}  // namespace

TEST_CASE("approx_gkp logical zero: teeth, weights, normalization") {
    const double w = 2.0;
    const double kappa = 0.25;
    const CoherentSuperposition state = approx_gkp(zero_spec(w, kappa, 1));
    REQUIRE(state.size() == 3);

    // Teeth at -2w, 0, 2w with envelope ratio e^{-2 kappa^2 w^2}.
    CHECK(state.terms()[0].center.x == doctest::Approx(-2.0 * w));
    CHECK(state.terms()[1].center.x == doctest::Approx(0.0));
    CHECK(state.terms()[2].center.x == doctest::Approx(2.0 * w));
    const double ratio = std::abs(state.terms()[0].amplitude / state.terms()[1].amplitude);
    CHECK(ratio == doctest::Approx(std::exp(-2.0 * kappa * kappa * w * w)).epsilon(1e-12));

    CHECK(norm(state) == doctest::Approx(1.0).epsilon(1e-12));

    // Strongly overlapping teeth still normalize through the exact Gram.
    const CoherentSuperposition overlapping = approx_gkp(zero_spec(0.3, 0.4, 3));
    CHECK(norm(overlapping) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("approx_gkp logical one: symmetric odd teeth") {
    const double w = 1.5;
    GkpTargetSpec spec = zero_spec(w, 0.3, 1);
    spec.logical = Logical::one;
    const CoherentSuperposition state = approx_gkp(spec);
    REQUIRE(state.size() == 4);
    CHECK(state.terms()[0].center.x == doctest::Approx(-3.0 * w));
    CHECK(state.terms()[1].center.x == doctest::Approx(-w));
    CHECK(state.terms()[2].center.x == doctest::Approx(w));
    CHECK(state.terms()[3].center.x == doctest::Approx(3.0 * w));
    CHECK(std::abs(state.terms()[0].amplitude - state.terms()[3].amplitude) < 1e-15);
    CHECK(std::abs(state.terms()[1].amplitude - state.terms()[2].amplitude) < 1e-15);
}

TEST_CASE("approx_gkp kappa -> 0 flattens the envelope") {
    const CoherentSuperposition state = approx_gkp(zero_spec(1.0, 1e-9, 2));
    const double mid = std::abs(state.terms()[2].amplitude);
    for (const GaussianTerm& t : state.terms()) {
        CHECK(std::abs(t.amplitude) == doctest::Approx(mid).epsilon(1e-12));
    }
}

TEST_CASE("approx_gkp lattice parity") {
    for (Axis axis : {Axis::position, Axis::momentum}) {
        GkpTargetSpec spec = zero_spec(1.3, 0.2, 4);
        spec.axis = axis;
        for (const GaussianTerm& t : approx_gkp(spec).terms()) {
            const double idx = lattice_index(t, spec.w, axis);
            CHECK(std::abs(idx - 2.0 * std::round(idx / 2.0)) < 1e-9);
        }
        spec.logical = Logical::one;
        for (const GaussianTerm& t : approx_gkp(spec).terms()) {
            const double idx = lattice_index(t, spec.w, axis);
            CHECK(std::abs(idx / 2.0 - std::round(idx / 2.0)) ==
                  doctest::Approx(0.5).epsilon(1e-9));
        }
    }
}

TEST_CASE("approx_gkp auto truncation keeps the envelope tail below 1e-12") {
    const double w = 3.0;
    const double kappa = 1.0 / 30.0;
    const int r_max = auto_r_max(kappa, w);
    CHECK(r_max >= 1);
    const double cut = std::exp(-0.5 * kappa * kappa * 4.0 * r_max * r_max * w * w);
    CHECK(cut < 1e-12);
    const double before_cut =
        std::exp(-0.5 * kappa * kappa * 4.0 * (r_max - 1.0) * (r_max - 1.0) * w * w);
    CHECK(before_cut >= 1e-12);
    CHECK(approx_gkp(zero_spec(w, kappa)).size() == 2 * static_cast<std::size_t>(r_max) + 1);
}

TEST_CASE("approx_gkp validation and degenerate envelopes") {
    CHECK_THROWS_AS(approx_gkp(zero_spec(-1.0, 0.1, 1)), invalid_parameter_error);
    CHECK_THROWS_AS(approx_gkp(zero_spec(1.0, 0.0, 1)), invalid_parameter_error);

    GkpTargetSpec degenerate = zero_spec(10.0, 100.0, 1);
    degenerate.logical = Logical::one;  // every odd tooth underflows to zero
    CHECK_THROWS_AS(approx_gkp(degenerate), zero_norm_error);
}

TEST_CASE("rotated_target matches the momentum-axis comb") {
    for (Logical logical : {Logical::zero, Logical::one}) {
        GkpTargetSpec spec = zero_spec(1.2, 0.3, 2);
        spec.logical = logical;
        GkpTargetSpec momentum_spec = spec;
        momentum_spec.axis = Axis::momentum;
        CHECK(fidelity(rotated_target(spec), approx_gkp(momentum_spec)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    // Two quarter turns flip the lattice sign; the even comb is invariant.
    const CoherentSuperposition zero = approx_gkp(zero_spec(1.2, 0.3, 2));
    const CoherentSuperposition flipped = rotate(rotate(zero, 1.5707963267948966),
                                                 1.5707963267948966);
    CHECK(fidelity(flipped, zero) == doctest::Approx(1.0).epsilon(1e-12));

    GkpTargetSpec bad = zero_spec(1.0, 0.1, 1);
    bad.sigma2 = 1.0;
    CHECK_THROWS_AS(rotated_target(bad), asymmetric_vacuum_error);
}

TEST_CASE("logical_one_from_zero shifts the comb onto the odd lattice") {
    const double w = 1.5;
    const CoherentSuperposition zero = approx_gkp(zero_spec(w, 0.2, 2));
    const CoherentSuperposition one = logical_one_from_zero(zero, w, Axis::position);
    for (const GaussianTerm& t : one.terms()) {
        const double idx = t.center.x / w;
        CHECK(std::abs(idx / 2.0 - std::round(idx / 2.0)) ==
              doctest::Approx(0.5).epsilon(1e-9));
    }

    CHECK(fidelity(logical_one_from_zero(zero, 0.0, Axis::position), zero) ==
          doctest::Approx(1.0).epsilon(1e-13));

    // Both preparation routes agree: walk on a displaced input vs displacing
    // the walk output.
    WalkConfig cfg;
    cfg.half_steps = 3;
    cfg.w = 2.0;
    cfg.input = displace(make_vacuum(0.5), PhasePoint{cfg.w, 0.0});
    const CoherentSuperposition route_a = run_walk(cfg).kept;
    cfg.input = make_vacuum(0.5);
    const CoherentSuperposition route_b =
        logical_one_from_zero(run_walk(cfg).kept, cfg.w, Axis::position);
    CHECK(fidelity(route_a, route_b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid_state_2d is a normalized product lattice") {
    const GkpTargetSpec a = zero_spec(1.0, 0.3, 1);
    GkpTargetSpec b = zero_spec(1.4, 0.25, 1);
    const TwoModeSuperposition grid = grid_state_2d(a, b);
    CHECK(grid.terms.size() == 9);
    CHECK(norm(grid) == doctest::Approx(1.0).epsilon(1e-12));

    const Complex self = inner_product(grid, grid);
    CHECK(std::abs(self - Complex{1.0, 0.0}) < 1e-12);

    GkpTargetSpec mismatched = b;
    mismatched.sigma2 = 0.7;
    CHECK_THROWS_AS(grid_state_2d(a, mismatched), incompatible_width_error);
}

TEST_CASE("ideal_comb_descriptor lists tooth positions") {
    CHECK(ideal_comb_descriptor(Logical::zero, 1.0, 2) ==
          std::vector<double>{-4.0, -2.0, 0.0, 2.0, 4.0});
    CHECK(ideal_comb_descriptor(Logical::one, 1.0, 1) ==
          std::vector<double>{-3.0, -1.0, 1.0, 3.0});
    CHECK_THROWS_AS(ideal_comb_descriptor(Logical::zero, 1.0, 0), invalid_parameter_error);
}

TEST_CASE("walk output converges to the matched GKP target") {
    const double w = 3.0;
    double previous = 0.0;
    for (int n : {5, 10, 25, 50}) {
        WalkConfig cfg;
        cfg.half_steps = n;
        cfg.w = w;
        cfg.input = make_vacuum(0.5);
        const CoherentSuperposition walked = normalize(run_walk(cfg).kept);
        const double kappa = 1.0 / std::sqrt(2.0 * n * w * w);
        const double f = fidelity(walked, approx_gkp(zero_spec(w, kappa)));
        CHECK(f >= previous);
        if (n >= 25) {
            CHECK(f >= 0.99);
        }
        previous = f;
    }
}
