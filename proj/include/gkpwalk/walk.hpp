#pragma once

#include <vector>

#include "gkpwalk/phase_space.hpp"

namespace gkpwalk {

// Polarization coin amplitudes on |H>, |V>.
struct CoinState {
    Complex h{0.0, 0.0};
    Complex v{0.0, 0.0};
};

CoinState coin_h();
CoinState coin_v();
CoinState coin_plus();   // (|H> + |V>) / sqrt(2)
CoinState coin_minus();  // (|H> - |V>) / sqrt(2)

double coin_norm_squared(const CoinState& c);

// Coin orthogonal to `c` (up to global phase): <c_perp|c> = 0.
CoinState coin_orthogonal(const CoinState& c);

// Walker-coin composite: one walker superposition per polarization label.
// Invariant: both branches share sigma2; total norm^2 is the branch sum.
struct HybridState {
    CoherentSuperposition branch_h;
    CoherentSuperposition branch_v;
};

HybridState make_hybrid(const CoherentSuperposition& walker, const CoinState& coin);

double norm_squared(const HybridState& state);

// One conditional kick: |H> branch displaced by +w along `axis`, |V> branch
// by -w. Unitary.
HybridState walk_step(const HybridState& state, double w, Axis axis);

struct CoinProjection {
    CoherentSuperposition walker;  // unnormalized
    double success_prob = 0.0;
};

// Projects the coin onto <bra| (bra must be normalized); returns the
// unnormalized walker conj(bra.h)*branch_h + conj(bra.v)*branch_v and the
// success probability norm^2(walker)/norm^2(state).
CoinProjection coin_project(const HybridState& state, const CoinState& bra);

struct WalkConfig {
    int half_steps = 1;  // N; the protocol runs 2N steps
    double w = 1.0;      // kick magnitude
    Axis axis = Axis::position;
    CoherentSuperposition input;  // defaults to the zero vector; callers set it
    CoinState coin_in = coin_plus();
    CoinState coin_postselect = coin_plus();
};

struct WalkStepTrace {
    int step = 0;
    CoherentSuperposition kept;      // amplitude-weighted post-selected walker
    CoherentSuperposition rejected;  // the orthogonal-port walker
    double success_prob = 0.0;
    double kept_norm2 = 0.0;
    double rejected_norm2 = 0.0;
};

struct WalkResult {
    CoherentSuperposition kept;  // unnormalized post-selected output
    std::vector<WalkStepTrace> step_traces;
    double success_probability = 0.0;
};

// 2N repetitions of [walk_step, project coin onto <coin_postselect|,
// re-prepare coin_in]. For the default +/- coins the kept state equals
// [(D(w) + D(-w))/2]^{2N} applied to the input, which is what
// binomial_state_direct builds in closed form.
WalkResult run_walk(const WalkConfig& config);

// Closed-form post-selected output: (1/2^{2N}) sum_r C(2N, N-r) D(2rw) input,
// r = -N..N along `axis`. Weights come from log-gamma re-exponentiated, and
// centers are exact integer multiples of 2w; unnormalized by construction.
CoherentSuperposition binomial_state_direct(int half_steps, double w, Axis axis,
                                            const CoherentSuperposition& input);

// Large-N surrogate: (pi N)^{-1/2} sum_r e^{-r^2/N} D(2rw) input, r = -N..N.
CoherentSuperposition gaussian_envelope_state(int half_steps, double w, Axis axis,
                                              const CoherentSuperposition& input);

// The binomial weight row C(2N, N-r)/2^{2N} for r = -N..N (length 2N+1),
// evaluated in the log domain; sums to 1 for N up to several hundred.
std::vector<double> binomial_weights(int half_steps);

}  // namespace gkpwalk
