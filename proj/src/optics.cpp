#include "gkpwalk/optics.hpp"

#include <cmath>

namespace gkpwalk {

namespace {

constexpr double kPiHalf = 1.57079632679489661923;
constexpr double kInvSqrt2 = 0.70710678118654752440;

const Complex kPlusInvSqrt2{kInvSqrt2, 0.0};
const Complex kMinusInvSqrt2{-kInvSqrt2, 0.0};

}  // namespace

std::vector<OpticalElement> standard_sagnac_elements(double w) {
    if (!std::isfinite(w) || w <= 0.0) {
        throw invalid_parameter_error("slant mirror: w must be positive");
    }
    using Kind = OpticalElement::Kind;
    return {
        OpticalElement{Kind::switchable_mirror, "M1", 0.0, MirrorMode::reflect, {}},
        OpticalElement{Kind::pol_rotator_minus, "R-", 0.0, {}, {}},
        OpticalElement{Kind::pbs, "PBS2", 0.0, {}, {}},
        OpticalElement{Kind::slant_mirror, "M2", w, {}, {}},
        OpticalElement{Kind::pol_rotator_plus, "R+", 0.0, {}, {}},
        OpticalElement{Kind::pbs, "PBS1", 0.0, {}, {}},
    };
}

HybridState apply_pol_rotator(const HybridState& state, RotatorKind which) {
    // R-: |H> -> |->, |V> -> |+>   =>  h' = (h+v)/sqrt2, v' = (v-h)/sqrt2
    // R+: |H> -> |+>, |V> -> |->   =>  h' = (h+v)/sqrt2, v' = (h-v)/sqrt2
    const Complex v_from_h = which == RotatorKind::minus ? kMinusInvSqrt2 : kPlusInvSqrt2;
    const Complex v_from_v = which == RotatorKind::minus ? kPlusInvSqrt2 : kMinusInvSqrt2;
    return HybridState{
        merge_terms(superpose({{kPlusInvSqrt2, state.branch_h}, {kPlusInvSqrt2, state.branch_v}})),
        merge_terms(superpose({{v_from_h, state.branch_h}, {v_from_v, state.branch_v}})),
    };
}

HybridState apply_slant_kick(const HybridState& state, double w) {
    return walk_step(state, w, Axis::momentum);
}

HybridState apply_pbs_recombine(const HybridState& state) {
    return HybridState{
        state.branch_h,
        superpose({{Complex{-1.0, 0.0}, state.branch_v}}),
    };
}

PbsSplit apply_pbs_postselect(const HybridState& state) {
    const double s2 = state.branch_h.sigma2();
    return PbsSplit{
        HybridState{state.branch_h, CoherentSuperposition(s2)},
        HybridState{CoherentSuperposition(s2), state.branch_v},
    };
}

HybridState apply_element(const HybridState& state, const OpticalElement& element) {
    using Kind = OpticalElement::Kind;
    switch (element.kind) {
        case Kind::pol_rotator_minus:
            return apply_pol_rotator(state, RotatorKind::minus);
        case Kind::pol_rotator_plus:
            return apply_pol_rotator(state, RotatorKind::plus);
        case Kind::slant_mirror:
            return apply_slant_kick(state, element.w);
        case Kind::switchable_mirror:
            return state;  // routing only; no amplitude action
        case Kind::fourier_lens:
            return HybridState{
                apply_fourier_lens(state.branch_h, element.direction),
                apply_fourier_lens(state.branch_v, element.direction),
            };
        case Kind::pbs:
            throw invalid_parameter_error(
                "pbs has two output ports; use apply_pbs_postselect");
    }
    throw invalid_parameter_error("unknown optical element");
}

ProtocolTrace run_sagnac_protocol(int half_steps, double w,
                                  const CoherentSuperposition& input) {
    if (half_steps < 1) {
        throw invalid_parameter_error("half_steps must be >= 1");
    }
    if (!std::isfinite(w) || w <= 0.0) {
        throw invalid_parameter_error("kick magnitude w must be positive");
    }
    if (input.empty()) {
        throw invalid_parameter_error("sagnac protocol: input state is the zero vector");
    }

    ProtocolTrace trace;
    trace.half_steps = half_steps;
    trace.w = w;
    trace.sigma2 = input.sigma2();

    const double input_norm2 = norm_squared(input);
    const int total_steps = 2 * half_steps;
    HybridState loop = make_hybrid(input, coin_v());
    trace.steps.reserve(total_steps);

    for (int step = 1; step <= total_steps; ++step) {
        SagnacStepRecord rec;
        rec.step = step;
        rec.mirror_mode = step == total_steps ? MirrorMode::transmit : MirrorMode::reflect;

        rec.after_r_minus = apply_pol_rotator(loop, RotatorKind::minus);
        rec.after_kick = apply_slant_kick(rec.after_r_minus, w);
        rec.recombine_discard_norm2 = 0.0;  // orthogonal polarizations: empty port
        rec.after_r_plus =
            apply_pol_rotator(apply_pbs_recombine(rec.after_kick), RotatorKind::plus);

        const double pre_split_norm2 = norm_squared(rec.after_r_plus);
        PbsSplit split = apply_pbs_postselect(rec.after_r_plus);
        rec.detector_port = std::move(split.detector_port);
        rec.kept_port = std::move(split.kept_port);
        rec.detector_norm2 = norm_squared(rec.detector_port);
        rec.kept_norm2 = norm_squared(rec.kept_port);
        rec.success_prob = pre_split_norm2 > 0.0 ? rec.kept_norm2 / pre_split_norm2 : 0.0;

        loop = rec.kept_port;
        trace.steps.push_back(std::move(rec));
    }

    trace.final_output = loop;
    trace.success_probability = norm_squared(trace.final_output) / input_norm2;
    return trace;
}

CoherentSuperposition apply_fourier_lens(const CoherentSuperposition& state,
                                         LensDirection direction) {
    if (state.sigma2() != kSymmetricVacuumSigma2) {
        throw asymmetric_vacuum_error("fourier lens requires sigma2 = 1/2");
    }
    return rotate(state, direction == LensDirection::forward ? -kPiHalf : kPiHalf);
}

}  // namespace gkpwalk
