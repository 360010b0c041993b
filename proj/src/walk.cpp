#include "gkpwalk/walk.hpp"

#include <cmath>

namespace gkpwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

PhasePoint kick_delta(double w, Axis axis) {
    return axis == Axis::position ? PhasePoint{w, 0.0} : PhasePoint{0.0, w};
}

void check_walk_params(int half_steps, double w) {
    if (half_steps < 1) {
        throw invalid_parameter_error("half_steps must be >= 1");
    }
    if (!std::isfinite(w) || w <= 0.0) {
        throw invalid_parameter_error("kick magnitude w must be positive");
    }
}

}  // namespace

CoinState coin_h() { return CoinState{Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }
CoinState coin_v() { return CoinState{Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }
CoinState coin_plus() { return CoinState{Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}}; }
CoinState coin_minus() { return CoinState{Complex{kInvSqrt2, 0.0}, Complex{-kInvSqrt2, 0.0}}; }

double coin_norm_squared(const CoinState& c) {
    return std::norm(c.h) + std::norm(c.v);
}

CoinState coin_orthogonal(const CoinState& c) {
    return CoinState{-std::conj(c.v), std::conj(c.h)};
}

HybridState make_hybrid(const CoherentSuperposition& walker, const CoinState& coin) {
    const Complex zero{0.0, 0.0};
    return HybridState{
        coin.h == zero ? CoherentSuperposition(walker.sigma2())
                       : superpose({{coin.h, walker}}),
        coin.v == zero ? CoherentSuperposition(walker.sigma2())
                       : superpose({{coin.v, walker}}),
    };
}

double norm_squared(const HybridState& state) {
    if (state.branch_h.sigma2() != state.branch_v.sigma2()) {
        throw incompatible_width_error("hybrid state branches must share sigma2");
    }
    return norm_squared(state.branch_h) + norm_squared(state.branch_v);
}

HybridState walk_step(const HybridState& state, double w, Axis axis) {
    if (!std::isfinite(w) || w <= 0.0) {
        throw invalid_parameter_error("kick magnitude w must be positive");
    }
    const PhasePoint delta = kick_delta(w, axis);
    return HybridState{
        displace(state.branch_h, delta),
        displace(state.branch_v, PhasePoint{-delta.x, -delta.p}),
    };
}

CoinProjection coin_project(const HybridState& state, const CoinState& bra) {
    if (std::abs(coin_norm_squared(bra) - 1.0) > 1e-9) {
        throw invalid_coin_error("coin_project: bra must be normalized");
    }
    CoherentSuperposition walker = superpose(
        {{std::conj(bra.h), state.branch_h}, {std::conj(bra.v), state.branch_v}});
    walker = merge_terms(walker);
    const double total = norm_squared(state);
    const double prob = total > 0.0 ? norm_squared(walker) / total : 0.0;
    return CoinProjection{std::move(walker), prob};
}

WalkResult run_walk(const WalkConfig& config) {
    check_walk_params(config.half_steps, config.w);
    if (std::abs(coin_norm_squared(config.coin_in) - 1.0) > 1e-9) {
        throw invalid_coin_error("run_walk: coin_in must be normalized");
    }
    if (config.input.empty()) {
        throw invalid_parameter_error("run_walk: input state is the zero vector");
    }

    const CoinState reject_bra = coin_orthogonal(config.coin_postselect);
    const double input_norm2 = norm_squared(config.input);

    WalkResult result;
    CoherentSuperposition walker = config.input;
    const int total_steps = 2 * config.half_steps;
    result.step_traces.reserve(total_steps);
    for (int step = 1; step <= total_steps; ++step) {
        const HybridState kicked =
            walk_step(make_hybrid(walker, config.coin_in), config.w, config.axis);
        CoinProjection kept = coin_project(kicked, config.coin_postselect);
        CoinProjection rejected = coin_project(kicked, reject_bra);
        if (kept.walker.empty()) {
            throw zero_norm_error("run_walk: post-selection annihilated the state");
        }
        WalkStepTrace trace;
        trace.step = step;
        trace.kept = kept.walker;
        trace.rejected = rejected.walker;
        trace.success_prob = kept.success_prob;
        trace.kept_norm2 = norm_squared(kept.walker);
        trace.rejected_norm2 = norm_squared(rejected.walker);
        result.step_traces.push_back(std::move(trace));
        walker = std::move(kept.walker);
    }
    result.kept = std::move(walker);
    result.success_probability = norm_squared(result.kept) / input_norm2;
    return result;
}

std::vector<double> binomial_weights(int half_steps) {
    if (half_steps < 1) {
        throw invalid_parameter_error("half_steps must be >= 1");
    }
    const int n2 = 2 * half_steps;
    const double log_central = std::lgamma(n2 + 1.0) -
                               2.0 * std::lgamma(half_steps + 1.0) -
                               n2 * std::log(2.0);
    std::vector<double> weights(n2 + 1);
    for (int r = 0; r <= half_steps; ++r) {
        // log C(2N, N-r) - log C(2N, N), added to the central log weight;
        // mirrored so the r -> -r symmetry is exact by construction.
        const double log_rel = 2.0 * std::lgamma(half_steps + 1.0) -
                               std::lgamma(half_steps - r + 1.0) -
                               std::lgamma(half_steps + r + 1.0);
        const double weight = std::exp(log_central + log_rel);
        weights[half_steps + r] = weight;
        weights[half_steps - r] = weight;
    }
    return weights;
}

namespace {

CoherentSuperposition lattice_sum(const std::vector<double>& weights, int half_steps,
                                  double w, Axis axis,
                                  const CoherentSuperposition& input) {
    std::vector<std::pair<Complex, CoherentSuperposition>> parts;
    parts.reserve(weights.size());
    for (int r = -half_steps; r <= half_steps; ++r) {
        const double site = 2.0 * w * static_cast<double>(r);
        parts.emplace_back(Complex{weights[r + half_steps], 0.0},
                           displace(input, kick_delta(site, axis)));
    }
    return merge_terms(superpose(parts));
}

}  // namespace

CoherentSuperposition binomial_state_direct(int half_steps, double w, Axis axis,
                                            const CoherentSuperposition& input) {
    check_walk_params(half_steps, w);
    return lattice_sum(binomial_weights(half_steps), half_steps, w, axis, input);
}

CoherentSuperposition gaussian_envelope_state(int half_steps, double w, Axis axis,
                                              const CoherentSuperposition& input) {
    check_walk_params(half_steps, w);
    const double n = static_cast<double>(half_steps);
    std::vector<double> weights(2 * half_steps + 1);
    const double prefactor = 1.0 / std::sqrt(kPi * n);
    for (int r = -half_steps; r <= half_steps; ++r) {
        weights[r + half_steps] = prefactor * std::exp(-static_cast<double>(r) * r / n);
    }
    return lattice_sum(weights, half_steps, w, axis, input);
}

}  // namespace gkpwalk
